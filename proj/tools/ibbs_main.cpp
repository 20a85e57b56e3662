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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csi_ibbs.h"

namespace {

struct Failure {
  int code;
};

void check(ibbs_status st, const std::string& what) {
  if (st == IBBS_OK) return;
  std::string detail = ibbs_last_error();
  std::cerr << "ibbs: " << what << ": " << ibbs_status_name(st);
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  throw Failure{st};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  operator T*() const { return p; }
};

using Rng = Handle<ibbs_rng, ibbs_rng_free>;
using Params = Handle<ibbs_params, ibbs_params_free>;
using Msk = Handle<ibbs_msk, ibbs_msk_free>;
using Keys = Handle<ibbs_keys, ibbs_keys_free>;
using Sig = Handle<ibbs_signature, ibbs_signature_free>;

std::vector<uint8_t> read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "ibbs: cannot open " << path << "\n";
    throw Failure{IBBS_E_IO};
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const uint8_t* bytes(const std::string& s) { return reinterpret_cast<const uint8_t*>(s.data()); }

struct Common {
  std::string seed;
  std::string log;
  bool full = false;

  void add(CLI::App& app) {
    app.add_option("--seed", seed, "Deterministic RNG seed (default: operating system entropy)");
    app.add_option("--log", log, "Append a JSON-lines transcript to this file (- for stderr)");
    app.add_flag("--full-payloads", full, "Log full frame payloads (key frames are never logged)");
  }

  void make_rng(Rng& rng) const {
    if (seed.empty()) {
      check(ibbs_rng_new_os(rng.out()), "rng");
    } else {
      check(ibbs_rng_new_seeded(std::stoull(seed, nullptr, 0), rng.out()), "rng");
    }
  }

  ibbs_log_config log_config() const { return {log.empty() ? nullptr : log.c_str(), full ? 1 : 0}; }
};

const std::map<std::string, ibbs_backend> kBackends = {{"toy", IBBS_BACKEND_TOY}, {"csidh", IBBS_BACKEND_CSIDH}};
const std::map<std::string, ibbs_mode> kModes = {{"paper", IBBS_MODE_PAPER}, {"otter", IBBS_MODE_OTTER}};
const std::map<std::string, ibbs_id_mode> kIdModes = {{"paper", IBBS_ID_PAPER}, {"binary", IBBS_ID_BINARY}};
const std::map<std::string, ibbs_set_policy> kPolicies = {{"super", IBBS_SET_SUPER},
                                                          {"plain", IBBS_SET_PLAIN},
                                                          {"unchecked", IBBS_SET_UNCHECKED},
                                                          {"auto", IBBS_SET_AUTOMATIC}};

struct SetupArgs {
  ibbs_setup_config cfg{};
  SetupArgs() { ibbs_setup_config_default(&cfg); }

  void add(CLI::App& app) {
    app.add_option("--backend", cfg.backend, "toy | csidh")->transform(CLI::CheckedTransformer(kBackends));
    app.add_option("--modulus", cfg.modulus, "Toy modulus N or CSIDH prime p (0: 101 or 419)");
    app.add_option("--n", cfg.n, "Vector length")->check(CLI::PositiveNumber);
    app.add_option("--mode", cfg.mode, "paper | otter")->transform(CLI::CheckedTransformer(kModes));
    app.add_option("--policy", cfg.policy, "Exceptional set policy: super | plain | unchecked | auto")
        ->transform(CLI::CheckedTransformer(kPolicies));
    app.add_option("--retry-limit", cfg.retry_limit, "Signing attempts before giving up (0: mode default)");
  }
};

std::string default_address() {
  const char* env = std::getenv("IBBS_ADDR");
  return env && *env ? env : "127.0.0.1:7878";
}

void print_row(const ibbs_size_row& r) {
  std::printf("%-6u %-6u %-4zu MPK=%llu MSK=%llu USK=%llu UPK=%llu SIG=%llu\n", r.level, r.p_bits, r.n,
              static_cast<unsigned long long>(r.mpk), static_cast<unsigned long long>(r.msk),
              static_cast<unsigned long long>(r.usk), static_cast<unsigned long long>(r.upk),
              static_cast<unsigned long long>(r.sig));
}

double millis_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identity-based blind signatures over a class-group action"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ibbs_version());
  Common common;

  // setup
  auto* setup = app.add_subcommand("setup", "Generate public parameters and the master secret");
  SetupArgs setup_args;
  std::string params_path = "params.bin", msk_path = "msk.bin";
  setup_args.add(*setup);
  setup->add_option("--params", params_path, "Output parameter file");
  setup->add_option("--msk", msk_path, "Output master secret file");
  common.add(*setup);

  // extract
  auto* extract = app.add_subcommand("extract", "Issue a user key pair for an identity");
  std::string id, usk_path = "usk.bin", upk_path = "upk.bin";
  extract->add_option("--params", params_path, "Parameter file");
  extract->add_option("--msk", msk_path, "Master secret file");
  extract->add_option("--id", id, "Identity string")->required();
  extract->add_option("--usk", usk_path, "Output user secret key file");
  extract->add_option("--upk", upk_path, "Output user public key file");
  common.add(*extract);

  // sign
  auto* sign = app.add_subcommand("sign", "Run one side of the blind signing protocol");
  std::string role, transport = "pipe", address = default_address(), message_path, sig_path = "sig.bin";
  uint32_t limit = 0, max_sessions = 0, connections = 1;
  sign->add_option("--role", role, "signer | user")->required()->check(CLI::IsMember({"signer", "user"}));
  sign->add_option("--transport", transport, "pipe (stdin/stdout) | tcp")->check(CLI::IsMember({"pipe", "tcp"}));
  sign->add_option("--address", address, "host:port for tcp (default from IBBS_ADDR)");
  sign->add_option("--params", params_path, "Parameter file");
  sign->add_option("--usk", usk_path, "Signer: user secret key file");
  sign->add_option("--upk", upk_path, "Signer: public key file; user: expected key (optional)");
  sign->add_option("--id", id, "User: identity of the expected signer");
  sign->add_option("--message-file", message_path, "User: message to sign");
  sign->add_option("--sig", sig_path, "User: output signature file");
  sign->add_option("--limit", limit, "User: attempt limit (0: params default)");
  sign->add_option("--max-sessions", max_sessions, "Signer: cap on sessions per connection");
  sign->add_option("--connections", connections, "Signer, tcp: connections to serve before exiting");
  common.add(*sign);

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a signature file");
  verify->add_option("--params", params_path, "Parameter file");
  verify->add_option("--upk", upk_path, "Signer public key file");
  verify->add_option("--sig", sig_path, "Signature file")->required();
  verify->add_option("--message-file", message_path, "Signed message")->required();
  verify->add_option("--id", id, "Signer identity")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Size table and measured action counts");
  std::vector<unsigned> levels = {80, 100, 128, 192, 256};
  std::vector<size_t> bench_ns = {4, 16};
  bench->add_option("--levels", levels, "Security levels")->delimiter(',');
  bench->add_option("--n", bench_ns, "Vector lengths for the measured runs")->delimiter(',');
  bench->add_option("--seed", common.seed, "Deterministic RNG seed");

  // demo
  auto* demo = app.add_subcommand("demo", "Full in-process flow with a transcript log");
  SetupArgs demo_args;
  std::string demo_message = "an example message";
  demo_args.add(*demo);
  demo->add_option("--message", demo_message, "Message to sign");
  common.add(*demo);

  // id-demo
  auto* id_demo = app.add_subcommand("id-demo", "Identification sessions in-process or over a socket pair");
  ibbs_id_demo_config idc{};
  ibbs_id_demo_config_default(&idc);
  bool socketpair = false;
  id_demo->add_option("--backend", idc.backend, "toy | csidh")->transform(CLI::CheckedTransformer(kBackends));
  id_demo->add_option("--modulus", idc.modulus, "Toy modulus N or CSIDH prime p");
  id_demo->add_option("--n", idc.n, "Vector length")->check(CLI::PositiveNumber);
  id_demo->add_option("--mode", idc.mode, "paper | binary")->transform(CLI::CheckedTransformer(kIdModes));
  id_demo->add_option("--policy", idc.policy, "super | plain | unchecked | auto")
      ->transform(CLI::CheckedTransformer(kPolicies));
  id_demo->add_option("--sessions", idc.sessions, "Number of sessions");
  id_demo->add_flag("--socketpair", socketpair, "Run over a Unix socket pair instead of an in-process pipe");
  common.add(*id_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : IBBS_E_USAGE;
  }

  try {
    Rng rng;
    const auto log = common.log_config();

    if (*setup) {
      common.make_rng(rng);
      Params params;
      Msk msk;
      check(ibbs_setup(&setup_args.cfg, rng, params.out(), msk.out()), "setup");
      check(ibbs_params_save(params, params_path.c_str()), "setup");
      check(ibbs_msk_save(params, msk, msk_path.c_str()), "setup");
      std::printf("params: %s (n=%zu, N=%llu, retry limit %u)\nmsk: %s\n", params_path.c_str(), ibbs_params_n(params),
                  static_cast<unsigned long long>(ibbs_params_order(params)), ibbs_params_retry_limit(params),
                  msk_path.c_str());
    } else if (*extract) {
      common.make_rng(rng);
      Params params;
      Msk msk;
      Keys keys;
      check(ibbs_params_load(params_path.c_str(), params.out()), "extract");
      check(ibbs_msk_load(params, msk_path.c_str(), msk.out()), "extract");
      check(ibbs_extract(params, msk, bytes(id), id.size(), rng, keys.out()), "extract");
      check(ibbs_keys_save(params, keys, usk_path.c_str(), upk_path.c_str()), "extract");
      std::printf("usk: %s\nupk: %s\n", usk_path.c_str(), upk_path.c_str());
    } else if (*sign) {
      common.make_rng(rng);
      Params params;
      check(ibbs_params_load(params_path.c_str(), params.out()), "sign");
      if (role == "signer") {
        Keys keys;
        check(ibbs_keys_load(params, usk_path.c_str(), upk_path.c_str(), keys.out()), "sign");
        if (transport == "pipe") {
          uint32_t sessions = 0;
          check(ibbs_serve_signer_fd(params, keys, 0, 1, rng, &log, max_sessions, &sessions), "sign");
          std::fprintf(stderr, "signer: %u session(s)\n", sessions);
        } else {
          int lfd = -1;
          check(ibbs_tcp_listen(address.c_str(), &lfd), "listen");
          uint16_t port = 0;
          check(ibbs_tcp_bound_port(lfd, &port), "listen");
          std::fprintf(stderr, "signer: listening on port %u\n", port);
          for (uint32_t k = 0; k < connections; ++k) {
            int cfd = -1;
            check(ibbs_tcp_accept(lfd, &cfd), "accept");
            uint32_t sessions = 0;
            ibbs_status st = ibbs_serve_signer_fd(params, keys, cfd, cfd, rng, &log, max_sessions, &sessions);
            ibbs_close_fd(cfd);
            if (st != IBBS_OK) ibbs_close_fd(lfd);
            check(st, "sign");
            std::fprintf(stderr, "signer: connection %u, %u session(s)\n", k + 1, sessions);
          }
          ibbs_close_fd(lfd);
        }
      } else {
        if (id.empty() || message_path.empty()) {
          std::cerr << "ibbs: sign --role user needs --id and --message-file\n";
          return IBBS_E_USAGE;
        }
        const auto message = read_all(message_path);
        Keys expected;
        if (sign->count("--upk") > 0) check(ibbs_keys_load(params, nullptr, upk_path.c_str(), expected.out()), "sign");
        int in_fd = 0, out_fd = 1, sock = -1;
        if (transport == "tcp") {
          check(ibbs_tcp_connect(address.c_str(), 5000, &sock), "connect");
          in_fd = out_fd = sock;
        }
        Sig sig;
        Keys announced;
        uint32_t attempts = 0;
        ibbs_status st = ibbs_run_user_fd(params, bytes(id), id.size(), expected, message.data(), message.size(), in_fd,
                                          out_fd, rng, &log, limit, sig.out(), announced.out(), &attempts);
        if (sock >= 0) ibbs_close_fd(sock);
        check(st, "sign");
        check(ibbs_signature_save(params, sig, sig_path.c_str()), "sign");
        std::fprintf(stderr, "user: signature after %u attempt(s) written to %s\n", attempts, sig_path.c_str());
      }
    } else if (*verify) {
      Params params;
      Keys keys;
      Sig sig;
      check(ibbs_params_load(params_path.c_str(), params.out()), "verify");
      check(ibbs_keys_load(params, nullptr, upk_path.c_str(), keys.out()), "verify");
      size_t len = 0;
      check(ibbs_keys_id(keys, nullptr, 0, &len), "verify");
      std::string key_id(len, '\0');
      check(ibbs_keys_id(keys, reinterpret_cast<uint8_t*>(key_id.data()), len, &len), "verify");
      if (key_id != id) {
        std::cerr << "ibbs: verify: verification failed: key file belongs to another identity\n";
        return IBBS_E_VERIFY_FAILED;
      }
      const auto message = read_all(message_path);
      check(ibbs_signature_load(params, sig_path.c_str(), sig.out()), "verify");
      check(ibbs_verify(params, keys, sig, message.data(), message.size()), "verify");
      std::printf("signature OK\n");
    } else if (*bench) {
      common.make_rng(rng);
      std::printf("%-6s %-6s %-4s sizes in bits\n", "level", "p", "n");
      for (unsigned level : levels) {
        ibbs_size_row row{};
        check(ibbs_size_report(level, &row), "bench");
        print_row(row);
      }
      std::printf("\nmeasured group actions (desk scale)\n");
      for (auto backend : {IBBS_BACKEND_TOY, IBBS_BACKEND_CSIDH}) {
        for (ibbs_mode mode : {IBBS_MODE_OTTER, IBBS_MODE_PAPER}) {
          for (size_t n : bench_ns) {
            if (mode == IBBS_MODE_PAPER && n > 8) {
              std::printf("%-5s paper n=%-3zu skipped: a paper-mode session succeeds with probability 2^-n\n",
                          backend == IBBS_BACKEND_TOY ? "toy" : "csidh", n);
              continue;
            }
            ibbs_op_counts c{};
            check(ibbs_op_count_report(backend, 0, n, mode, rng, &c), "bench");
            std::printf("%-5s %-5s n=%-3zu setup=%llu extract=%llu s1=%llu u1=%llu s2=%llu u2=%llu verify=%llu\n",
                        backend == IBBS_BACKEND_TOY ? "toy" : "csidh", mode == IBBS_MODE_OTTER ? "otter" : "paper", n,
                        static_cast<unsigned long long>(c.setup), static_cast<unsigned long long>(c.extract),
                        static_cast<unsigned long long>(c.s1), static_cast<unsigned long long>(c.u1),
                        static_cast<unsigned long long>(c.s2), static_cast<unsigned long long>(c.u2),
                        static_cast<unsigned long long>(c.verify));
          }
        }
      }
      std::printf("\ntimings, otter mode, csidh-419\n");
      for (size_t n : bench_ns) {
        ibbs_setup_config cfg;
        ibbs_setup_config_default(&cfg);
        cfg.backend = IBBS_BACKEND_CSIDH;
        cfg.n = n;
        Params params;
        Msk msk;
        Keys keys;
        auto t0 = std::chrono::steady_clock::now();
        check(ibbs_setup(&cfg, rng, params.out(), msk.out()), "bench");
        const double t_setup = millis_since(t0);
        t0 = std::chrono::steady_clock::now();
        check(ibbs_extract(params, msk, bytes("bench"), 5, rng, keys.out()), "bench");
        const double t_extract = millis_since(t0);
        const int runs = 20;
        double t_sign = 0, t_verify = 0;
        for (int k = 0; k < runs; ++k) {
          Sig sig;
          t0 = std::chrono::steady_clock::now();
          check(ibbs_sign_local(params, keys, bytes("m"), 1, rng, sig.out(), nullptr), "bench");
          t_sign += millis_since(t0);
          t0 = std::chrono::steady_clock::now();
          check(ibbs_verify(params, keys, sig, bytes("m"), 1), "bench");
          t_verify += millis_since(t0);
        }
        std::printf("n=%-3zu setup=%.3fms extract=%.3fms sign=%.3fms verify=%.3fms\n", n, t_setup, t_extract,
                    t_sign / runs, t_verify / runs);
      }
    } else if (*demo) {
      common.make_rng(rng);
      ibbs_demo_result res{};
      check(ibbs_demo(&demo_args.cfg, bytes(demo_message), demo_message.size(), rng, &log, &res), "demo");
      std::printf("demo: n=%zu mode=%s attempts=%u signature=%zu bytes verified=%s\n", demo_args.cfg.n,
                  demo_args.cfg.mode == IBBS_MODE_OTTER ? "otter" : "paper", res.attempts, res.signature_bytes,
                  res.verified ? "yes" : "no");
    } else if (*id_demo) {
      common.make_rng(rng);
      idc.use_socketpair = socketpair ? 1 : 0;
      uint32_t accepted = 0;
      check(ibbs_id_demo(&idc, rng, &log, &accepted), "id-demo");
      std::printf("id-demo: %u of %u sessions accepted (%.4f)\n", accepted, idc.sessions,
                  idc.sessions ? static_cast<double>(accepted) / idc.sessions : 0.0);
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "ibbs: " << e.what() << "\n";
    return IBBS_E_USAGE;
  }
  return 0;
}
