// Copyright 2026 The csi-ibbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSI_IBBS_H
#define CSI_IBBS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(CSI_IBBS_BUILD)
#define IBBS_API __attribute__((visibility("default")))
#else
#define IBBS_API
#endif

#define IBBS_VERSION_MAJOR 0
#define IBBS_VERSION_MINOR 1
#define IBBS_VERSION_PATCH 0

/* Status codes. Nonzero values double as CLI exit codes. */
typedef enum ibbs_status {
  IBBS_OK = 0,
  IBBS_E_USAGE = 1,
  IBBS_E_INVALID_ARGUMENT = 2,
  IBBS_E_IO = 3,
  IBBS_E_DECODE = 4,
  IBBS_E_PROTOCOL = 5,
  IBBS_E_TRANSPORT = 6,
  IBBS_E_RETRY_LIMIT = 7,
  IBBS_E_VERIFY_FAILED = 8,
  IBBS_E_STATE = 9,
  IBBS_E_UNSATISFIABLE = 10,
  IBBS_E_NOT_IN_ORBIT = 11,
  IBBS_E_INTERNAL = 12,
  IBBS_E_REJECTED = 13
} ibbs_status;

typedef enum ibbs_backend { IBBS_BACKEND_TOY = 0, IBBS_BACKEND_CSIDH = 1 } ibbs_backend;
typedef enum ibbs_mode { IBBS_MODE_PAPER = 0, IBBS_MODE_OTTER = 1 } ibbs_mode;
typedef enum ibbs_id_mode { IBBS_ID_PAPER = 0, IBBS_ID_BINARY = 1 } ibbs_id_mode;
typedef enum ibbs_set_policy {
  IBBS_SET_SUPER = 0,
  IBBS_SET_PLAIN = 1,
  IBBS_SET_UNCHECKED = 2,
  IBBS_SET_AUTOMATIC = 3
} ibbs_set_policy;

typedef struct ibbs_rng ibbs_rng;
typedef struct ibbs_params ibbs_params;
typedef struct ibbs_msk ibbs_msk;
/* Identity, public key and (optionally) the secret key of one user. */
typedef struct ibbs_keys ibbs_keys;
typedef struct ibbs_signature ibbs_signature;

IBBS_API const char* ibbs_version(void);
IBBS_API const char* ibbs_status_name(int status);
/* Message of the last failed call on this thread, "" if none. */
IBBS_API const char* ibbs_last_error(void);

IBBS_API ibbs_status ibbs_rng_new_seeded(uint64_t seed, ibbs_rng** out);
IBBS_API ibbs_status ibbs_rng_new_os(ibbs_rng** out);
IBBS_API void ibbs_rng_free(ibbs_rng* rng);

typedef struct ibbs_setup_config {
  ibbs_backend backend;
  uint64_t modulus; /* toy N or csidh p; 0 selects 101 or 419 */
  size_t n;
  ibbs_mode mode;
  ibbs_set_policy policy;
  uint32_t retry_limit; /* 0 selects the mode default */
} ibbs_setup_config;

IBBS_API void ibbs_setup_config_default(ibbs_setup_config* cfg);

IBBS_API ibbs_status ibbs_setup(const ibbs_setup_config* cfg, ibbs_rng* rng, ibbs_params** out_params,
                                ibbs_msk** out_msk);
IBBS_API void ibbs_params_free(ibbs_params* params);
IBBS_API void ibbs_msk_free(ibbs_msk* msk);

IBBS_API size_t ibbs_params_n(const ibbs_params* params);
IBBS_API ibbs_mode ibbs_params_mode(const ibbs_params* params);
IBBS_API uint64_t ibbs_params_order(const ibbs_params* params);
IBBS_API uint32_t ibbs_params_retry_limit(const ibbs_params* params);

IBBS_API ibbs_status ibbs_params_save(const ibbs_params* params, const char* path);
IBBS_API ibbs_status ibbs_params_load(const char* path, ibbs_params** out);
IBBS_API ibbs_status ibbs_msk_save(const ibbs_params* params, const ibbs_msk* msk, const char* path);
IBBS_API ibbs_status ibbs_msk_load(const ibbs_params* params, const char* path, ibbs_msk** out);

IBBS_API ibbs_status ibbs_extract(const ibbs_params* params, const ibbs_msk* msk, const uint8_t* id, size_t id_len,
                                  ibbs_rng* rng, ibbs_keys** out);
IBBS_API void ibbs_keys_free(ibbs_keys* keys);
IBBS_API int ibbs_keys_has_secret(const ibbs_keys* keys);
/* Copies the identity; *len receives the full length even when cap is short. */
IBBS_API ibbs_status ibbs_keys_id(const ibbs_keys* keys, uint8_t* buf, size_t cap, size_t* len);

/* usk_path may be NULL to write only the public part. */
IBBS_API ibbs_status ibbs_keys_save(const ibbs_params* params, const ibbs_keys* keys, const char* usk_path,
                                    const char* upk_path);
/* usk_path may be NULL to load only the public part. */
IBBS_API ibbs_status ibbs_keys_load(const ibbs_params* params, const char* usk_path, const char* upk_path,
                                    ibbs_keys** out);

/* Runs the signer and user in one process. *attempts may be NULL. */
IBBS_API ibbs_status ibbs_sign_local(const ibbs_params* params, const ibbs_keys* keys, const uint8_t* msg,
                                     size_t msg_len, ibbs_rng* rng, ibbs_signature** out, uint32_t* attempts);

/* Transcript options for the session runners; path NULL disables logging,
   "-" writes to stderr. */
typedef struct ibbs_log_config {
  const char* path;
  int full_payloads;
} ibbs_log_config;

/* Signer role over a pair of file descriptors. Serves one user until it
   closes; max_sessions 0 imposes no cap beyond the user's. */
IBBS_API ibbs_status ibbs_serve_signer_fd(const ibbs_params* params, const ibbs_keys* keys, int in_fd, int out_fd,
                                          ibbs_rng* rng, const ibbs_log_config* log, uint32_t max_sessions,
                                          uint32_t* sessions);

/* User role. expected_upk may be NULL to accept the key announced by the
   signer for the given identity. limit 0 uses the params retry limit. */
IBBS_API ibbs_status ibbs_run_user_fd(const ibbs_params* params, const uint8_t* id, size_t id_len,
                                      const ibbs_keys* expected_upk, const uint8_t* msg, size_t msg_len, int in_fd,
                                      int out_fd, ibbs_rng* rng, const ibbs_log_config* log, uint32_t limit,
                                      ibbs_signature** out, ibbs_keys** out_upk, uint32_t* attempts);

IBBS_API ibbs_status ibbs_tcp_listen(const char* address, int* out_fd);
IBBS_API ibbs_status ibbs_tcp_bound_port(int listen_fd, uint16_t* port);
IBBS_API ibbs_status ibbs_tcp_accept(int listen_fd, int* out_fd);
IBBS_API ibbs_status ibbs_tcp_connect(const char* address, int timeout_ms, int* out_fd);
IBBS_API void ibbs_close_fd(int fd);

IBBS_API void ibbs_signature_free(ibbs_signature* sig);
IBBS_API ibbs_status ibbs_signature_save(const ibbs_params* params, const ibbs_signature* sig, const char* path);
IBBS_API ibbs_status ibbs_signature_load(const ibbs_params* params, const char* path, ibbs_signature** out);
/* Serialized signature file; same length contract as ibbs_keys_id. */
IBBS_API ibbs_status ibbs_signature_encode(const ibbs_params* params, const ibbs_signature* sig, uint8_t* buf,
                                           size_t cap, size_t* len);
IBBS_API ibbs_status ibbs_signature_decode(const ibbs_params* params, const uint8_t* buf, size_t len,
                                           ibbs_signature** out);
IBBS_API size_t ibbs_signature_payload_bits(const ibbs_params* params);

/* IBBS_OK on accept, IBBS_E_VERIFY_FAILED on reject. */
IBBS_API ibbs_status ibbs_verify(const ibbs_params* params, const ibbs_keys* keys, const ibbs_signature* sig,
                                 const uint8_t* msg, size_t msg_len);

typedef struct ibbs_size_row {
  unsigned level;
  unsigned p_bits;
  size_t n;
  unsigned n_bits;
  uint64_t mpk, msk, usk, upk, sig, id;
} ibbs_size_row;

IBBS_API ibbs_status ibbs_size_report(unsigned level, ibbs_size_row* out);
/* n_bits 0 takes ceil(log2 N) = p_bits. */
IBBS_API ibbs_status ibbs_size_report_custom(unsigned p_bits, size_t n, unsigned n_bits, ibbs_size_row* out);

typedef struct ibbs_op_counts {
  uint64_t setup, extract, s1, u1, s2, u2, verify;
} ibbs_op_counts;

IBBS_API ibbs_status ibbs_op_count_report(ibbs_backend backend, uint64_t modulus, size_t n, ibbs_mode mode,
                                          ibbs_rng* rng, ibbs_op_counts* out);

typedef struct ibbs_demo_result {
  uint32_t attempts;
  int verified;
  size_t signature_bytes;
  size_t frames;
} ibbs_demo_result;

/* Setup, Extract, a blind session over an in-process pipe and Verify. */
IBBS_API ibbs_status ibbs_demo(const ibbs_setup_config* cfg, const uint8_t* msg, size_t msg_len, ibbs_rng* rng,
                               const ibbs_log_config* log, ibbs_demo_result* out);

typedef struct ibbs_id_demo_config {
  ibbs_backend backend;
  uint64_t modulus;
  size_t n;
  ibbs_id_mode mode;
  ibbs_set_policy policy;
  uint32_t sessions;
  int use_socketpair; /* 0: in-process pipe */
} ibbs_id_demo_config;

IBBS_API void ibbs_id_demo_config_default(ibbs_id_demo_config* cfg);
IBBS_API ibbs_status ibbs_id_demo(const ibbs_id_demo_config* cfg, ibbs_rng* rng, const ibbs_log_config* log,
                                  uint32_t* accepted);

#ifdef __cplusplus
}
#endif

#endif
