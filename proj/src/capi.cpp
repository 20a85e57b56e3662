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

#include "csi_ibbs.h"

#include <sys/socket.h>

#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "csi/session.hpp"
#include "csi/transcript.hpp"
#include "csi/transport.hpp"
#include "csi/wire.hpp"

struct ibbs_rng {
  csi::Rng rng;
};

struct ibbs_params {
  csi::IbbsParams p;
};

struct ibbs_msk {
  csi::IbbsMasterSecret s;
};

struct ibbs_keys {
  csi::Bytes id;
  std::optional<csi::UserSecretKey> usk;
  csi::UserPublicKey upk;
};

struct ibbs_signature {
  csi::Signature sig;
  csi::IbbsMode mode = csi::IbbsMode::otter;
};

namespace {

thread_local std::string g_last_error;

ibbs_status set_error(ibbs_status code, const std::string& what) {
  g_last_error = what;
  return code;
}

template <class F>
ibbs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return IBBS_OK;
  } catch (const csi::Error& e) {
    return set_error(static_cast<ibbs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(IBBS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(IBBS_E_INTERNAL, e.what());
  }
}

void need(bool cond, const char* what) {
  if (!cond) csi::fail(csi::ErrorCode::invalid_argument, what);
}

csi::Bytes read_file(const char* path) {
  need(path != nullptr, "null path");
  std::ifstream in(path, std::ios::binary);
  if (!in) csi::fail(csi::ErrorCode::io, std::string("cannot open ") + path);
  csi::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) csi::fail(csi::ErrorCode::io, std::string("cannot read ") + path);
  return data;
}

void write_file(const char* path, const csi::Bytes& data) {
  need(path != nullptr, "null path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) csi::fail(csi::ErrorCode::io, std::string("cannot create ") + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) csi::fail(csi::ErrorCode::io, std::string("cannot write ") + path);
}

std::span<const std::uint8_t> view(const uint8_t* p, size_t len) {
  need(p != nullptr || len == 0, "null buffer");
  return {p, len};
}

ibbs_status copy_out(const csi::Bytes& data, uint8_t* buf, size_t cap, size_t* len) {
  if (len) *len = data.size();
  if (buf == nullptr && cap == 0) return IBBS_OK;
  if (cap < data.size()) return set_error(IBBS_E_INVALID_ARGUMENT, "buffer too small");
  if (!data.empty()) std::memcpy(buf, data.data(), data.size());
  return IBBS_OK;
}

csi::ActionPtr make_backend(ibbs_backend backend, uint64_t modulus, size_t n) {
  need(n >= 1, "n must be positive");
  switch (backend) {
    case IBBS_BACKEND_TOY: return csi::GroupAction::make_toy(modulus ? modulus : csi::kToyDefaultModulus, n);
    case IBBS_BACKEND_CSIDH: return csi::GroupAction::make_csidh(modulus ? modulus : csi::kDeskPrime, {3, 5, 7}, n);
  }
  csi::fail(csi::ErrorCode::invalid_argument, "unknown backend");
}

csi::SetPolicy to_policy(ibbs_set_policy p) {
  need(p >= IBBS_SET_SUPER && p <= IBBS_SET_AUTOMATIC, "unknown set policy");
  return static_cast<csi::SetPolicy>(p);
}

csi::IbbsMode to_mode(ibbs_mode m) {
  need(m == IBBS_MODE_PAPER || m == IBBS_MODE_OTTER, "unknown mode");
  return static_cast<csi::IbbsMode>(m);
}

class LogHolder {
 public:
  explicit LogHolder(const ibbs_log_config* cfg) {
    if (cfg == nullptr || cfg->path == nullptr) return;
    std::ostream* sink = &std::cerr;
    if (std::strcmp(cfg->path, "-") != 0) {
      file_.open(cfg->path, std::ios::app);
      if (!file_) csi::fail(csi::ErrorCode::io, std::string("cannot open log ") + cfg->path);
      sink = &file_;
    }
    log_.emplace(sink, cfg->full_payloads != 0);
  }
  csi::TranscriptLog* get() { return log_ ? &*log_ : nullptr; }

 private:
  std::ofstream file_;
  std::optional<csi::TranscriptLog> log_;
};

csi::Frame single_frame(const csi::Bytes& data, csi::MsgType want, const char* what) {
  csi::Frame f = csi::decode_frame(data);
  if (f.type != want) csi::fail(csi::ErrorCode::decode, std::string(what) + ": unexpected frame type");
  return f;
}

void fill_row(const csi::SizeRow& r, ibbs_size_row* out) {
  *out = ibbs_size_row{r.level, r.p_bits, r.n, r.n_bits, r.mpk, r.msk, r.usk, r.upk, r.sig, r.id};
}

ibbs_rng& rng_or_fail(ibbs_rng* rng) {
  need(rng != nullptr, "null rng");
  return *rng;
}

}  // namespace

extern "C" {

const char* ibbs_version(void) { return "0.1.0"; }

const char* ibbs_status_name(int status) {
  switch (status) {
    case IBBS_OK: return "ok";
    case IBBS_E_USAGE: return "usage";
    case IBBS_E_INVALID_ARGUMENT: return "invalid_argument";
    case IBBS_E_IO: return "io";
    case IBBS_E_DECODE: return "decode";
    case IBBS_E_PROTOCOL: return "protocol";
    case IBBS_E_TRANSPORT: return "transport";
    case IBBS_E_RETRY_LIMIT: return "retry_limit";
    case IBBS_E_VERIFY_FAILED: return "verification failed";
    case IBBS_E_STATE: return "state";
    case IBBS_E_UNSATISFIABLE: return "unsatisfiable";
    case IBBS_E_NOT_IN_ORBIT: return "not_in_orbit";
    case IBBS_E_INTERNAL: return "internal";
    case IBBS_E_REJECTED: return "rejected";
    default: return "unknown";
  }
}

const char* ibbs_last_error(void) { return g_last_error.c_str(); }

ibbs_status ibbs_rng_new_seeded(uint64_t seed, ibbs_rng** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    *out = new ibbs_rng{csi::Rng(seed)};
  });
}

ibbs_status ibbs_rng_new_os(ibbs_rng** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    *out = new ibbs_rng{csi::Rng::from_os()};
  });
}

void ibbs_rng_free(ibbs_rng* rng) { delete rng; }

void ibbs_setup_config_default(ibbs_setup_config* cfg) {
  if (cfg == nullptr) return;
  cfg->backend = IBBS_BACKEND_TOY;
  cfg->modulus = 0;
  cfg->n = 16;
  cfg->mode = IBBS_MODE_OTTER;
  cfg->policy = IBBS_SET_AUTOMATIC;
  cfg->retry_limit = 0;
}

ibbs_status ibbs_setup(const ibbs_setup_config* cfg, ibbs_rng* rng, ibbs_params** out_params, ibbs_msk** out_msk) {
  return guarded([&] {
    need(cfg != nullptr && out_params != nullptr && out_msk != nullptr, "null argument");
    csi::IbbsSetupOptions opt;
    opt.mode = to_mode(cfg->mode);
    opt.policy = to_policy(cfg->policy);
    opt.retry_limit = cfg->retry_limit;
    auto [p, s] = csi::ibbs_setup(make_backend(cfg->backend, cfg->modulus, cfg->n), cfg->n, rng_or_fail(rng).rng, opt);
    auto params = std::make_unique<ibbs_params>(ibbs_params{std::move(p)});
    *out_msk = new ibbs_msk{s};
    *out_params = params.release();
  });
}

void ibbs_params_free(ibbs_params* params) { delete params; }
void ibbs_msk_free(ibbs_msk* msk) { delete msk; }

size_t ibbs_params_n(const ibbs_params* params) { return params ? params->p.n() : 0; }
ibbs_mode ibbs_params_mode(const ibbs_params* params) {
  return params ? static_cast<ibbs_mode>(params->p.mode) : IBBS_MODE_OTTER;
}
uint64_t ibbs_params_order(const ibbs_params* params) { return params ? params->p.ga->order() : 0; }
uint32_t ibbs_params_retry_limit(const ibbs_params* params) { return params ? params->p.retry_limit : 0; }

ibbs_status ibbs_params_save(const ibbs_params* params, const char* path) {
  return guarded([&] {
    need(params != nullptr, "null params");
    write_file(path, csi::encode_frame(csi::encode_message(csi::describe(params->p), params->p.wire())));
  });
}

ibbs_status ibbs_params_load(const char* path, ibbs_params** out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    csi::Frame f = single_frame(read_file(path), csi::MsgType::params, "params file");
    auto msg = csi::decode_as<csi::ParamsMsg>(f, csi::WireContext{});
    *out = new ibbs_params{csi::to_ibbs_params(msg)};
  });
}

ibbs_status ibbs_msk_save(const ibbs_params* params, const ibbs_msk* msk, const char* path) {
  return guarded([&] {
    need(params != nullptr && msk != nullptr, "null argument");
    write_file(path, csi::encode_frame(csi::encode_message(csi::MskMsg{{msk->s.s0, msk->s.s1}}, params->p.wire())));
  });
}

ibbs_status ibbs_msk_load(const ibbs_params* params, const char* path, ibbs_msk** out) {
  return guarded([&] {
    need(params != nullptr && out != nullptr, "null argument");
    csi::Frame f = single_frame(read_file(path), csi::MsgType::msk, "msk file");
    auto msg = csi::decode_as<csi::MskMsg>(f, params->p.wire());
    if (msg.s.size() != 2) csi::fail(csi::ErrorCode::decode, "msk file: expected two secrets");
    *out = new ibbs_msk{{msg.s[0], msg.s[1]}};
  });
}

ibbs_status ibbs_extract(const ibbs_params* params, const ibbs_msk* msk, const uint8_t* id, size_t id_len,
                         ibbs_rng* rng, ibbs_keys** out) {
  return guarded([&] {
    need(params != nullptr && msk != nullptr && out != nullptr, "null argument");
    auto idv = view(id, id_len);
    auto keys = csi::ibbs_extract(params->p, msk->s, idv, rng_or_fail(rng).rng);
    *out = new ibbs_keys{csi::Bytes(idv.begin(), idv.end()), keys.usk, keys.upk};
  });
}

void ibbs_keys_free(ibbs_keys* keys) { delete keys; }

int ibbs_keys_has_secret(const ibbs_keys* keys) { return keys && keys->usk ? 1 : 0; }

ibbs_status ibbs_keys_id(const ibbs_keys* keys, uint8_t* buf, size_t cap, size_t* len) {
  if (keys == nullptr) return set_error(IBBS_E_INVALID_ARGUMENT, "null keys");
  return copy_out(keys->id, buf, cap, len);
}

ibbs_status ibbs_keys_save(const ibbs_params* params, const ibbs_keys* keys, const char* usk_path,
                           const char* upk_path) {
  return guarded([&] {
    need(params != nullptr && keys != nullptr, "null argument");
    const auto ctx = params->p.wire();
    if (usk_path != nullptr) {
      need(keys->usk.has_value(), "keys hold no secret part");
      write_file(usk_path, csi::encode_frame(csi::encode_message(csi::UskMsg{keys->id, *keys->usk}, ctx)));
    }
    write_file(upk_path, csi::encode_frame(csi::encode_message(csi::UpkMsg{keys->id, keys->upk}, ctx)));
  });
}

ibbs_status ibbs_keys_load(const ibbs_params* params, const char* usk_path, const char* upk_path, ibbs_keys** out) {
  return guarded([&] {
    need(params != nullptr && out != nullptr, "null argument");
    const auto ctx = params->p.wire();
    auto upk = csi::decode_as<csi::UpkMsg>(single_frame(read_file(upk_path), csi::MsgType::upk, "upk file"), ctx);
    auto keys = std::make_unique<ibbs_keys>(ibbs_keys{upk.id, std::nullopt, upk.upk});
    if (usk_path != nullptr) {
      auto usk = csi::decode_as<csi::UskMsg>(single_frame(read_file(usk_path), csi::MsgType::usk, "usk file"), ctx);
      if (usk.id != upk.id) csi::fail(csi::ErrorCode::invalid_argument, "usk and upk files name different identities");
      const auto want = params->p.mode == csi::IbbsMode::paper ? csi::WitnessKind::x : csi::WitnessKind::r;
      if (usk.usk.kind != want) csi::fail(csi::ErrorCode::invalid_argument, "usk witness does not match the mode");
      keys->usk = usk.usk;
    }
    *out = keys.release();
  });
}

ibbs_status ibbs_sign_local(const ibbs_params* params, const ibbs_keys* keys, const uint8_t* msg, size_t msg_len,
                            ibbs_rng* rng, ibbs_signature** out, uint32_t* attempts) {
  return guarded([&] {
    need(params != nullptr && keys != nullptr && out != nullptr, "null argument");
    need(keys->usk.has_value(), "keys hold no secret part");
    auto outcome =
        csi::ibbs_sign_with_retry(params->p, *keys->usk, keys->upk, keys->id, view(msg, msg_len), rng_or_fail(rng).rng);
    if (attempts) *attempts = outcome.attempts;
    *out = new ibbs_signature{std::move(outcome.signature), params->p.mode};
  });
}

ibbs_status ibbs_serve_signer_fd(const ibbs_params* params, const ibbs_keys* keys, int in_fd, int out_fd,
                                 ibbs_rng* rng, const ibbs_log_config* log, uint32_t max_sessions,
                                 uint32_t* sessions) {
  return guarded([&] {
    need(params != nullptr && keys != nullptr, "null argument");
    need(keys->usk.has_value(), "keys hold no secret part");
    LogHolder holder(log);
    csi::FdTransport t(in_fd, out_fd, false);
    auto report = csi::run_blind_signer(t, params->p, *keys->usk, keys->upk, keys->id, rng_or_fail(rng).rng,
                                        holder.get(), max_sessions);
    if (sessions) *sessions = report.sessions;
  });
}

ibbs_status ibbs_run_user_fd(const ibbs_params* params, const uint8_t* id, size_t id_len,
                             const ibbs_keys* expected_upk, const uint8_t* msg, size_t msg_len, int in_fd, int out_fd,
                             ibbs_rng* rng, const ibbs_log_config* log, uint32_t limit, ibbs_signature** out,
                             ibbs_keys** out_upk, uint32_t* attempts) {
  return guarded([&] {
    need(params != nullptr && out != nullptr, "null argument");
    LogHolder holder(log);
    csi::FdTransport t(in_fd, out_fd, false);
    std::optional<csi::UserPublicKey> expect;
    if (expected_upk) expect = expected_upk->upk;
    auto report = csi::run_blind_user(t, params->p, view(id, id_len), expect, view(msg, msg_len),
                                      rng_or_fail(rng).rng, holder.get(), limit);
    if (attempts) *attempts = report.attempts;
    if (!report.signature) {
      std::string where;
      for (const auto& m : report.last_mismatches) {
        where += " (" + std::to_string(m.side) + "," + std::to_string(m.index) + ")";
      }
      csi::fail(csi::ErrorCode::retry_limit, "every attempt was rejected; last mismatches:" + where);
    }
    if (out_upk) *out_upk = new ibbs_keys{report.id, std::nullopt, report.upk};
    *out = new ibbs_signature{std::move(*report.signature), params->p.mode};
  });
}

ibbs_status ibbs_tcp_listen(const char* address, int* out_fd) {
  return guarded([&] {
    need(address != nullptr && out_fd != nullptr, "null argument");
    *out_fd = csi::tcp_listen(address);
  });
}

ibbs_status ibbs_tcp_bound_port(int listen_fd, uint16_t* port) {
  return guarded([&] {
    need(port != nullptr, "null output");
    *port = csi::tcp_bound_port(listen_fd);
  });
}

ibbs_status ibbs_tcp_accept(int listen_fd, int* out_fd) {
  return guarded([&] {
    need(out_fd != nullptr, "null output");
    *out_fd = csi::tcp_accept(listen_fd);
  });
}

ibbs_status ibbs_tcp_connect(const char* address, int timeout_ms, int* out_fd) {
  return guarded([&] {
    need(address != nullptr && out_fd != nullptr, "null argument");
    *out_fd = csi::tcp_connect(address, timeout_ms > 0 ? timeout_ms : 5000);
  });
}

void ibbs_close_fd(int fd) { csi::close_fd(fd); }

void ibbs_signature_free(ibbs_signature* sig) { delete sig; }

ibbs_status ibbs_signature_save(const ibbs_params* params, const ibbs_signature* sig, const char* path) {
  return guarded([&] {
    need(params != nullptr && sig != nullptr, "null argument");
    write_file(path, csi::encode_signature_file(sig->sig, sig->mode, params->p.wire()));
  });
}

ibbs_status ibbs_signature_load(const ibbs_params* params, const char* path, ibbs_signature** out) {
  return guarded([&] {
    need(params != nullptr && out != nullptr, "null argument");
    auto sig = csi::decode_signature_file(read_file(path), params->p.mode, params->p.wire());
    *out = new ibbs_signature{std::move(sig), params->p.mode};
  });
}

ibbs_status ibbs_signature_encode(const ibbs_params* params, const ibbs_signature* sig, uint8_t* buf, size_t cap,
                                  size_t* len) {
  csi::Bytes data;
  ibbs_status st = guarded([&] {
    need(params != nullptr && sig != nullptr, "null argument");
    data = csi::encode_signature_file(sig->sig, sig->mode, params->p.wire());
  });
  if (st != IBBS_OK) return st;
  return copy_out(data, buf, cap, len);
}

ibbs_status ibbs_signature_decode(const ibbs_params* params, const uint8_t* buf, size_t len, ibbs_signature** out) {
  return guarded([&] {
    need(params != nullptr && out != nullptr, "null argument");
    auto sig = csi::decode_signature_file(view(buf, len), params->p.mode, params->p.wire());
    *out = new ibbs_signature{std::move(sig), params->p.mode};
  });
}

size_t ibbs_signature_payload_bits(const ibbs_params* params) {
  return params ? csi::signature_payload_bits(params->p.wire()) : 0;
}

ibbs_status ibbs_verify(const ibbs_params* params, const ibbs_keys* keys, const ibbs_signature* sig,
                        const uint8_t* msg, size_t msg_len) {
  bool ok = false;
  ibbs_status st = guarded([&] {
    need(params != nullptr && keys != nullptr && sig != nullptr, "null argument");
    ok = sig->mode == params->p.mode && csi::ibbs_verify(params->p, keys->upk, keys->id, sig->sig, view(msg, msg_len));
  });
  if (st != IBBS_OK) return st;
  return ok ? IBBS_OK : set_error(IBBS_E_VERIFY_FAILED, "signature does not verify");
}

ibbs_status ibbs_size_report(unsigned level, ibbs_size_row* out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    fill_row(csi::size_report(level), out);
  });
}

ibbs_status ibbs_size_report_custom(unsigned p_bits, size_t n, unsigned n_bits, ibbs_size_row* out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    fill_row(csi::size_report_custom(p_bits, n, n_bits ? std::optional<unsigned>(n_bits) : std::nullopt), out);
  });
}

ibbs_status ibbs_op_count_report(ibbs_backend backend, uint64_t modulus, size_t n, ibbs_mode mode, ibbs_rng* rng,
                                 ibbs_op_counts* out) {
  return guarded([&] {
    need(out != nullptr, "null output");
    auto ga = make_backend(backend, modulus, n);
    auto c = csi::op_count_report(*ga, n, to_mode(mode), rng_or_fail(rng).rng);
    *out = ibbs_op_counts{c.setup, c.extract, c.s1, c.u1, c.s2, c.u2, c.verify};
  });
}

ibbs_status ibbs_demo(const ibbs_setup_config* cfg, const uint8_t* msg, size_t msg_len, ibbs_rng* rng,
                      const ibbs_log_config* log, ibbs_demo_result* out) {
  return guarded([&] {
    need(cfg != nullptr && out != nullptr, "null argument");
    auto& r = rng_or_fail(rng).rng;
    csi::IbbsSetupOptions opt;
    opt.mode = to_mode(cfg->mode);
    opt.policy = to_policy(cfg->policy);
    opt.retry_limit = cfg->retry_limit;
    auto [params, msk] = csi::ibbs_setup(make_backend(cfg->backend, cfg->modulus, cfg->n), cfg->n, r, opt);
    const csi::Bytes id = {'d', 'e', 'm', 'o', '@', 'k', 'g', 'c'};
    auto keys = csi::ibbs_extract(params, msk, id, r);
    auto m = view(msg, msg_len);

    LogHolder holder(log);
    auto [a, b] = csi::make_pipe_pair();
    csi::Rng signer_rng = r.fork();
    std::optional<csi::Error> signer_error;
    std::thread signer([&] {
      try {
        csi::run_blind_signer(*a, params, keys.usk, keys.upk, id, signer_rng, holder.get());
      } catch (const csi::Error& e) {
        signer_error = e;
        a->close_write();
      }
    });
    csi::UserReport report;
    try {
      report = csi::run_blind_user(*b, params, id, keys.upk, m, r, holder.get());
    } catch (...) {
      b->close_write();
      signer.join();
      throw;
    }
    signer.join();
    if (!report.signature) {
      csi::fail(signer_error ? signer_error->code() : csi::ErrorCode::retry_limit, "demo: no signature produced");
    }
    out->attempts = report.attempts;
    out->verified = csi::ibbs_verify(params, keys.upk, id, *report.signature, m) ? 1 : 0;
    out->signature_bytes = csi::encode_signature_file(*report.signature, params.mode, params.wire()).size();
    out->frames = holder.get() ? holder.get()->entries().size() : 0;
    if (!out->verified) csi::fail(csi::ErrorCode::verify_failed, "demo: signature does not verify");
  });
}

void ibbs_id_demo_config_default(ibbs_id_demo_config* cfg) {
  if (cfg == nullptr) return;
  cfg->backend = IBBS_BACKEND_TOY;
  cfg->modulus = 0;
  cfg->n = 4;
  cfg->mode = IBBS_ID_BINARY;
  cfg->policy = IBBS_SET_AUTOMATIC;
  cfg->sessions = 1;
  cfg->use_socketpair = 0;
}

ibbs_status ibbs_id_demo(const ibbs_id_demo_config* cfg, ibbs_rng* rng, const ibbs_log_config* log,
                         uint32_t* accepted) {
  return guarded([&] {
    need(cfg != nullptr && accepted != nullptr, "null argument");
    need(cfg->mode == IBBS_ID_PAPER || cfg->mode == IBBS_ID_BINARY, "unknown identification mode");
    auto& r = rng_or_fail(rng).rng;
    csi::IbidSetupOptions opt;
    opt.mode = static_cast<csi::IbidMode>(cfg->mode);
    opt.policy = to_policy(cfg->policy);
    auto [params, s] = csi::ibid_setup(make_backend(cfg->backend, cfg->modulus, cfg->n), cfg->n, r, opt);
    const csi::Bytes id = {'p', 'r', 'o', 'v', 'e', 'r'};
    auto key = csi::ibid_extract(params, s, id, r);
    LogHolder holder(log);
    *accepted = 0;
    for (uint32_t k = 0; k < cfg->sessions; ++k) {
      std::unique_ptr<csi::Transport> a, b;
      if (cfg->use_socketpair) {
        int sv[2];
        if (::socketpair(AF_UNIX, SOCK_STREAM, 0, sv) != 0) csi::fail(csi::ErrorCode::transport, "socketpair failed");
        a = std::make_unique<csi::FdTransport>(sv[0], sv[0], true);
        b = std::make_unique<csi::FdTransport>(sv[1], sv[1], true);
      } else {
        std::tie(a, b) = csi::make_pipe_pair();
      }
      csi::Rng prover_rng = r.fork();
      std::optional<csi::Error> prover_error;
      std::thread prover([&] {
        try {
          csi::run_ibid_prover(*a, params, key, prover_rng, holder.get());
        } catch (const csi::Error& e) {
          prover_error = e;
          a->close_write();
        }
      });
      bool ok = false;
      try {
        ok = csi::run_ibid_verifier(*b, params, id, r, holder.get());
      } catch (...) {
        b->close_write();
        prover.join();
        throw;
      }
      prover.join();
      if (prover_error) throw *prover_error;
      *accepted += ok ? 1 : 0;
    }
  });
}

}  // extern "C"
