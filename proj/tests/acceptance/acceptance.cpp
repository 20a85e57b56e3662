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

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "csi/action.hpp"
#include "csi/ibbs.hpp"
#include "csi/ibid.hpp"
#include "csi/session.hpp"
#include "csi/sigma_or.hpp"
#include "csi/transport.hpp"
#include "csi/wire.hpp"
#include "csi_ibbs.h"
#include "oracles/toy_cases.hpp"
#include "support/session_fixture.hpp"
#include "support/sigma_dist.hpp"
#include "support/wire_random.hpp"

using namespace csi;
using namespace fixtures;

namespace {

class Outcome {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (cond) return;
    ++failures_;
    if (failures_ <= 5) first_.push_back(what);
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }
  bool ok() const { return failures_ == 0; }

  std::string summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (failures_) s += ", " + std::to_string(failures_) + " failed";
    for (const auto& n : notes_) s += "; " + n;
    for (const auto& f : first_) s += "\n       failed: " + f;
    return s;
  }

 private:
  std::uint64_t checks_ = 0, failures_ = 0;
  std::vector<std::string> first_, notes_;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string label(const GroupAction& ga) {
  const auto& a = ga.params();
  return a.kind == BackendKind::toy ? "toy-" + std::to_string(a.N) : "csidh-" + std::to_string(a.p);
}

TernaryVec random_challenge(Rng& rng, std::size_t n) {
  TernaryVec c(n);
  for (std::size_t i = 0; i < n; ++i) c.set(i, rng.ternary());
  return c;
}

IbbsSetupOptions ibbs_options(IbbsMode mode) {
  IbbsSetupOptions opt;
  opt.mode = mode;
  opt.policy = SetPolicy::automatic;
  return opt;
}

// 1

void action_laws(Outcome& out) {
  for (auto gp : {GroupAction::make_toy(101), GroupAction::make_csidh()}) {
    const auto& ga = *gp;
    const auto orbit = ga.orbit();
    const std::uint64_t N = ga.order();
    out.expect(orbit.size() == N, label(ga) + ": orbit size");
    out.expect(ga.twist(ga.base()) == ga.base(), label(ga) + ": twist fixes E0");
    for (auto E : orbit) {
      out.expect(ga.act(0, E) == E, label(ga) + ": act(0, E)");
      out.expect(ga.twist(ga.twist(E)) == E, label(ga) + ": twist involution");
      for (std::uint64_t a = 0; a < N; ++a) {
        const Curve aE = ga.act(a, E);
        out.expect(ga.twist(aE) == ga.act((N - a) % N, ga.twist(E)), label(ga) + ": twist(act)");
        for (std::uint64_t b = 0; b < N; ++b) {
          out.expect(ga.act(b, aE) == ga.act((a + b) % N, E), label(ga) + ": composition");
        }
      }
    }
  }
}

// 2

void class_number(Outcome& out) {
  auto ga = GroupAction::make_csidh(419, {3, 5, 7});
  const std::uint64_t h = class_number_bqf(-1676);
  const auto orbit = ga->orbit();
  std::set<Curve> distinct(orbit.begin(), orbit.end());
  out.expect(orbit.size() == h, "orbit length equals h(-1676)");
  out.expect(distinct.size() == orbit.size(), "orbit curves are distinct");
  out.note("orbit " + std::to_string(orbit.size()) + ", h(-1676) = " + std::to_string(h));
}

// 3

OrTranscript honest_run(const GroupAction& ga, const OrKeypair& key, const TernaryVec& c, Rng& rng) {
  auto [com, st] = or_commit(ga, key, rng);
  return OrTranscript{com, c, or_respond(st, ga, key, c)};
}

void sigma_protocol(Outcome& out) {
  Rng rng(3);
  auto toy = GroupAction::make_toy(101);
  for (std::size_t n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      auto key = or_keygen(*toy, n, rng);
      for (const auto& c : all_challenges(n)) {
        auto t = honest_run(*toy, key, c, rng);
        out.expect(hadamard(t.rsp.c0, t.rsp.c1) == c, "toy challenge split");
        out.expect(or_verify(*toy, key.X0, key.X1, t), "toy completeness");
      }
    }
  }
  auto desk = GroupAction::make_csidh();
  for (int trial = 0; trial < 1000; ++trial) {
    auto key = or_keygen(*desk, 8, rng);
    out.expect(or_verify(*desk, key.X0, key.X1, honest_run(*desk, key, random_challenge(rng, 8), rng)),
               "csidh completeness");
  }

  auto g7 = GroupAction::make_toy(7);
  const std::uint64_t N = 7;
  std::uint64_t pairs = 0;
  for (std::uint64_t x0 = 0; x0 < N; ++x0) {
    for (std::uint64_t x1 = 0; x1 < N; ++x1) {
      const CurveVec X0{Curve{x0}}, X1{Curve{x1}};
      for (std::uint64_t y0 = 0; y0 < N; ++y0) {
        for (std::uint64_t y1 = 0; y1 < N; ++y1) {
          const OrCommitment com{{Curve{y0}}, {Curve{y1}}};
          std::vector<OrTranscript> accepting;
          for (int a = -1; a <= 1; ++a) {
            for (int b = -1; b <= 1; ++b) {
              const std::uint64_t r0 = g7->zn().sub(y0, g7->zn().mul_small(x0, a));
              const std::uint64_t r1 = g7->zn().sub(y1, g7->zn().mul_small(x1, b));
              TernaryVec ca(1), cb(1), cab(1);
              ca.set(0, a);
              cb.set(0, b);
              cab.set(0, a * b);
              OrTranscript t{com, cab, OrResponse{exp1(r0), exp1(r1), ca, cb}};
              out.expect(or_verify(*g7, X0, X1, t), "enumerated transcript verifies");
              accepting.push_back(t);
            }
          }
          for (const auto& t1 : accepting) {
            for (const auto& t2 : accepting) {
              if (t1.c == t2.c) continue;
              auto ex = or_extract(*g7, X0, X1, t1, t2);
              out.expect(g7->act(ex.witness, g7->base()) == (ex.side == 0 ? X0 : X1)[ex.index], "extracted witness");
              ++pairs;
            }
          }
        }
      }
    }
  }
  out.expect(pairs == 49ull * 49 * 48, "extractor pair count");

  std::uint64_t cases = 0;
  for (std::uint64_t x0 = 0; x0 < N; ++x0) {
    for (std::uint64_t x1 = 0; x1 < N; ++x1) {
      const Curve X0{x0}, X1{x1};
      for (int cv = -1; cv <= 1; ++cv) {
        TernaryVec c(1);
        c.set(0, cv);
        Dist honest = honest_dist(*g7, X0, X1, 0, c);
        for (const auto& [k, v] : honest_dist(*g7, X0, X1, 1, c)) honest[k] += v;
        Dist sim;
        for (int d = 0; d < 2; ++d) {
          for (int s : {-1, 1}) {
            for (std::uint64_t r0 = 0; r0 < N; ++r0) {
              for (std::uint64_t r1 = 0; r1 < N; ++r1) {
                auto t = or_simulate_with(*g7, {X0}, {X1}, c, OrSimCoins{d, sign1(s), exp1(r0), exp1(r1)});
                out.expect(or_verify(*g7, {X0}, {X1}, t), "simulated transcript verifies");
                sim[flatten(t)] += 1;
              }
            }
          }
        }
        out.expect(proportional(honest, 2 * N * 2 * N, sim, 2 * 2 * N * N), "HVZK distributions equal");
        ++cases;
      }
    }
  }
  out.note("extractor pairs " + std::to_string(pairs) + ", HVZK cases " + std::to_string(cases));
}

// 4

bool ibid_session(const IbidParams& params, const IbidUserKey& key, std::span<const std::uint8_t> id,
                  const TernaryVec& v, Rng& rng) {
  IbidProver prover(params, key);
  IbidVerifier verifier(params, Bytes(id.begin(), id.end()));
  verifier.receive_commitment(prover.commit(rng));
  return verifier.decide(prover.respond(verifier.challenge_with(v)));
}

void identification(Outcome& out) {
  Rng rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto [params, s] = ibid_setup(GroupAction::make_toy(101), n, rng);
    for (int trial = 0; trial < 10; ++trial) {
      auto key = ibid_extract(params, s, as_bytes("bob"), rng);
      for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        TernaryVec v(n);
        for (std::size_t i = 0; i < n; ++i) v.set(i, (mask >> i) & 1);
        out.expect(ibid_session(params, key, as_bytes("bob"), v, rng), "binary toy session");
      }
    }
  }
  {
    IbidSetupOptions opt;
    opt.policy = SetPolicy::automatic;
    auto [params, s] = ibid_setup(GroupAction::make_csidh(), 8, rng, opt);
    auto key = ibid_extract(params, s, as_bytes("carol"), rng);
    for (int trial = 0; trial < 1000; ++trial) {
      out.expect(ibid_session(params, key, as_bytes("carol"), ibid_challenge(params, rng), rng),
                 "binary csidh session");
    }
  }
  IbidSetupOptions opt;
  opt.mode = IbidMode::paper;
  auto [params, s] = ibid_setup(GroupAction::make_toy(101), 4, rng, opt);
  auto key = ibid_extract(params, s, as_bytes("dave"), rng);
  const int sessions = 20000;
  int accepted = 0;
  for (int k = 0; k < sessions; ++k) {
    accepted += ibid_session(params, key, as_bytes("dave"), ibid_challenge(params, rng), rng);
  }
  const double target = std::pow(oracle::toy_id_index_rate(7), 4);
  const double rate = static_cast<double>(accepted) / sessions;
  out.expect(std::abs(rate - target) <= 0.02, "paper rate within 0.02 of the oracle");
  out.note("paper rate " + fmt("%.4f", rate) + " vs " + fmt("%.4f", target));
}

// 5

void blind_signing(Outcome& out) {
  for (auto ga : {GroupAction::make_toy(101), GroupAction::make_csidh()}) {
    Rng rng(5);
    auto [p, msk] = ibbs_setup(ga, 16, rng, ibbs_options(IbbsMode::otter));
    auto keys = ibbs_extract(p, msk, as_bytes("otter"), rng);
    for (int i = 0; i < 1000; ++i) {
      const std::string m = "message " + std::to_string(i);
      auto res = ibbs_sign_with_retry(p, keys.usk, keys.upk, as_bytes("otter"), as_bytes(m), rng);
      out.expect(res.attempts == 1, label(*ga) + ": one attempt");
      out.expect(ibbs_verify(p, keys.upk, as_bytes("otter"), res.signature, as_bytes(m)), label(*ga) + ": verify");
    }
  }

  Rng rng(55);
  const std::size_t n = 4;
  auto [p, msk] = ibbs_setup(GroupAction::make_toy(101), n, rng, ibbs_options(IbbsMode::paper));
  auto keys = ibbs_extract(p, msk, as_bytes("paper"), rng);
  const int d = keys.usk.delta;
  const int sessions = 50000;
  int accepted = 0;
  for (int k = 0; k < sessions; ++k) {
    const std::string m = "msg" + std::to_string(k);
    auto [rho1, signer] = ibbs_s1(p, keys.usk, keys.upk, as_bytes("paper"), rng);
    auto [rho_u, user] = ibbs_u1(p, keys.upk, as_bytes("paper"), rho1, as_bytes(m), rng);
    const SignVec vd = user.v(d);
    auto rho2 = ibbs_s2(signer, p, keys.usk, rho_u);
    auto res = ibbs_u2(user, p, keys.upk, as_bytes("paper"), rho2);
    const TernaryVec& cd = d == 0 ? rho2.c0 : rho2.c1;
    std::vector<IndexRef> predicted;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(cd[i] == 1 || (cd[i] == 0 && vd[i] == 1))) predicted.push_back({d, i});
    }
    out.expect(res.mismatches == predicted, "failure set matches the predicate");
    out.expect(res.signature.has_value() == predicted.empty(), "accept iff no predicted failure");
    if (res.signature) {
      ++accepted;
      out.expect(ibbs_verify(p, keys.upk, as_bytes("paper"), *res.signature, as_bytes(m)), "paper verify");
    }
  }
  const double index_rate = oracle::toy_blind_index_rate(7);
  const double target = std::pow(index_rate, 4);
  const double rate = static_cast<double>(accepted) / sessions;
  out.expect(std::abs(rate - target) <= 0.01, "paper rate within 0.01 of the oracle");
  out.note("oracle index rate " + fmt("%.4f", index_rate) + ", paper rate " + fmt("%.4f", rate) + " vs " +
           fmt("%.4f", target));
}

// 6

void challenge_product(Outcome& out) {
  std::uint64_t sessions = 0;
  for (auto mode : {IbbsMode::paper, IbbsMode::otter}) {
    for (std::size_t n = 1; n <= 2; ++n) {
      Rng rng(6);
      IbbsSetupOptions opt;
      opt.mode = mode;
      auto [p, msk] = ibbs_setup(GroupAction::make_toy(101), n, rng, opt);
      auto keys = ibbs_extract(p, msk, as_bytes("prod"), rng);
      for (std::uint32_t mask = 0; mask < (1u << (3 * n)); ++mask) {
        UserCoins coins{SignVec(n), SignVec(n), p.ga->sample_exponent_vec(rng, n), p.ga->sample_exponent_vec(rng, n)};
        SignerCoins sc{p.ga->sample_exponent_vec(rng, n), SignVec(n), p.ga->sample_exponent_vec(rng, n)};
        for (std::size_t i = 0; i < n; ++i) {
          coins.v0.set(i, (mask >> (3 * i)) & 1 ? -1 : 1);
          coins.v1.set(i, (mask >> (3 * i + 1)) & 1 ? -1 : 1);
          sc.tilde_c_other.set(i, (mask >> (3 * i + 2)) & 1 ? -1 : 1);
        }
        const std::string m = "m" + std::to_string(mask);
        auto [rho1, signer] = ibbs_s1_with(p, keys.usk, keys.upk, as_bytes("prod"), sc);
        auto [rho_u, user] = ibbs_u1_with(p, keys.upk, as_bytes("prod"), rho1, as_bytes(m), coins);
        const TernaryVec c = user.c();
        auto rho2 = ibbs_s2(signer, p, keys.usk, rho_u);
        const TernaryVec c0 = hadamard(rho2.c0, TernaryVec(coins.v0));
        const TernaryVec c1 = hadamard(rho2.c1, TernaryVec(coins.v1));
        out.expect(hadamard(c0, c1) == c, std::string(ibbs_mode_name(mode)) + ": product identity");
        auto res = ibbs_u2(user, p, keys.upk, as_bytes("prod"), rho2);
        if (res.signature) out.expect(hadamard(res.signature->c0, res.signature->c1) == c, "signature product");
        ++sessions;
      }
    }
  }
  out.note(std::to_string(sessions) + " sessions");
}

// 7

void mutation_rejection(Outcome& out) {
  const std::size_t n = 16;
  const int trials = 1000;
  const int pool_size = 8;
  Rng rng(7);
  auto [p, msk] = ibbs_setup(GroupAction::make_toy(101), n, rng, ibbs_options(IbbsMode::paper));
  const Bytes id1 = {'i', 'd', '-', 'o', 'n', 'e'};
  const Bytes id2 = {'i', 'd', '-', 't', 'w', 'o'};
  auto k1 = ibbs_extract(p, msk, id1, rng);
  auto k2 = ibbs_extract(p, msk, id2, rng);
  const std::uint64_t N = p.ga->order();

  struct Entry {
    Bytes m;
    Signature sig;
  };
  std::vector<Entry> pool;
  std::uint64_t attempts = 0;
  for (int k = 0; k < pool_size; ++k) {
    Bytes m = {'m', 's', 'g', static_cast<std::uint8_t>(k)};
    auto res = ibbs_sign_with_retry(p, k1.usk, k1.upk, id1, m, rng, 0xffffffffu);
    attempts += res.attempts;
    out.expect(ibbs_verify(p, k1.upk, id1, res.signature, m), "pool signature verifies");
    pool.push_back({m, res.signature});
  }

  int sig_acc = 0, m_acc = 0, id_acc = 0, pk_acc = 0, cross_acc = 0;
  for (int t = 0; t < trials; ++t) {
    const auto& e = pool[t % pool_size];
    const std::size_t i = rng.uniform(n);

    Signature s = e.sig;
    switch (rng.uniform(4)) {
      case 0: s.c0.set(i, (s.c0[i] + 2 + static_cast<int>(rng.uniform(2))) % 3 - 1); break;
      case 1: s.c1.set(i, (s.c1[i] + 2 + static_cast<int>(rng.uniform(2))) % 3 - 1); break;
      case 2: s.r0[i] = p.ga->zn().add(s.r0[i], 1 + rng.uniform(N - 1)); break;
      default: s.r1[i] = p.ga->zn().add(s.r1[i], 1 + rng.uniform(N - 1)); break;
    }
    sig_acc += ibbs_verify(p, k1.upk, id1, s, e.m);

    Bytes m2 = e.m;
    m2[rng.uniform(m2.size())] ^= static_cast<std::uint8_t>(1u << rng.uniform(8));
    m_acc += ibbs_verify(p, k1.upk, id1, e.sig, m2);

    Bytes id_mut = id1;
    id_mut[rng.uniform(id_mut.size())] ^= static_cast<std::uint8_t>(1 + rng.uniform(255));
    id_acc += ibbs_verify(p, k1.upk, id_mut, e.sig, e.m);

    auto pk = k1.upk;
    auto& X = rng.bit() ? pk.X1 : pk.X0;
    X[i] = p.ga->act(1 + rng.uniform(N - 1), X[i]);
    pk_acc += ibbs_verify(p, pk, id1, e.sig, e.m);

    cross_acc += ibbs_verify(p, k2.upk, id2, e.sig, e.m);
  }
  out.expect(sig_acc == 0, "signature mutations rejected");
  out.expect(m_acc == 0, "message mutations rejected");
  out.expect(id_acc == 0, "identity mutations rejected");
  out.expect(pk_acc == 0, "public-key mutations rejected");
  out.expect(cross_acc == 0, "cross-identity rejected");
  out.note("paper n=16, " + std::to_string(pool_size) + " signatures from " + std::to_string(attempts) +
           " sessions; false accepts per " + std::to_string(trials) + ": sig " + std::to_string(sig_acc) + ", m " +
           std::to_string(m_acc) + ", id " + std::to_string(id_acc) + ", pk " + std::to_string(pk_acc) +
           ", cross " + std::to_string(cross_acc));
}

// 8

void blindness(Outcome& out) {
  Rng rng(8);
  auto [p, msk] = ibbs_setup(GroupAction::make_toy(101), 8, rng, ibbs_options(IbbsMode::otter));
  auto keys = ibbs_extract(p, msk, as_bytes("blind"), rng);
  struct View {
    RhoS1 rho1;
    RhoU rho_u;
    RhoS2 rho2;
    Bytes m;
    Signature sig;
  };
  std::vector<View> views;
  for (int k = 0; k < 1000; ++k) {
    const std::string m = "m" + std::to_string(k);
    auto [rho1, signer] = ibbs_s1(p, keys.usk, keys.upk, as_bytes("blind"), rng);
    auto [rho_u, user] = ibbs_u1(p, keys.upk, as_bytes("blind"), rho1, as_bytes(m), rng);
    const UserCoins coins{user.v(0), user.v(1), user.w(0), user.w(1)};
    auto rho2 = ibbs_s2(signer, p, keys.usk, rho_u);
    auto res = ibbs_u2(user, p, keys.upk, as_bytes("blind"), rho2);
    out.expect(res.signature.has_value(), "otter session accepts");
    if (!res.signature) continue;
    auto st = reconstruct_blinding(p, rho1, rho2, *res.signature);
    out.expect(st.v0 == coins.v0 && st.v1 == coins.v1 && st.w0 == coins.w0 && st.w1 == coins.w1,
               "reconstructed state equals the user's coins");
    views.push_back({rho1, rho_u, rho2, Bytes(m.begin(), m.end()), *res.signature});
  }
  // Fixed signer view B against every other signature A.
  const auto& B = views.front();
  std::set<std::vector<std::uint64_t>> states;
  for (std::size_t a = 1; a < views.size(); ++a) {
    const auto& A = views[a];
    auto st = reconstruct_blinding(p, B.rho1, B.rho2, A.sig);
    auto [rho_u, user] =
        ibbs_u1_with(p, keys.upk, as_bytes("blind"), B.rho1, A.m, UserCoins{st.v0, st.v1, st.w0, st.w1});
    out.expect(rho_u == B.rho_u, "state regenerates the viewed challenge");
    auto res = ibbs_u2(user, p, keys.upk, as_bytes("blind"), B.rho2);
    out.expect(res.signature && *res.signature == A.sig, "state regenerates the signature");
    std::vector<std::uint64_t> flat;
    for (auto x : st.v0) flat.push_back(static_cast<std::uint64_t>(x + 1));
    for (auto x : st.v1) flat.push_back(static_cast<std::uint64_t>(x + 1));
    flat.insert(flat.end(), st.w0.begin(), st.w0.end());
    flat.insert(flat.end(), st.w1.begin(), st.w1.end());
    out.expect(states.insert(flat).second, "distinct signatures give distinct states");
  }
  out.note(std::to_string(views.size()) + " sessions, " + std::to_string(states.size()) + " distinct states");
}

// 9

void size_accounting(Outcome& out) {
  const std::pair<unsigned, std::uint64_t> rows[] = {
      {80, 29624}, {100, 46632}, {128, 76072}, {192, 170940}, {256, 303696}};
  for (auto [level, sig] : rows) {
    auto r = size_report(level);
    out.expect(r.sig == sig, "SIG at level " + std::to_string(level));
    out.expect(r.sig == 4 * r.n + 2 * r.n * r.n_bits, "SIG formula at level " + std::to_string(level));
  }
  for (auto ga : {GroupAction::make_toy(101), GroupAction::make_toy(251), GroupAction::make_csidh()}) {
    const std::size_t n = 16;
    Rng rng(9);
    auto [p, msk] = ibbs_setup(ga, n, rng, ibbs_options(IbbsMode::otter));
    auto keys = ibbs_extract(p, msk, as_bytes("size"), rng);
    auto sig = ibbs_sign_with_retry(p, keys.usk, keys.upk, as_bytes("size"), as_bytes("m"), rng).signature;
    const auto ctx = p.wire();
    const Bytes file = encode_signature_file(sig, IbbsMode::otter, ctx);
    const std::size_t payload = (file.size() - kSigHeaderBytes) * 8;
    const std::size_t bits = ga->exponent_bits();
    const std::size_t formula = 4 * n + 2 * n * bits;
    const std::size_t rounded = 4 * n + 2 * n * 8 * ((bits + 7) / 8);
    out.expect(payload == signature_payload_bits(ctx), label(*ga) + ": payload bits");
    out.expect(payload == rounded, label(*ga) + ": byte-rounded formula");
    if (bits % 8 == 0) out.expect(payload == formula, label(*ga) + ": exact formula");
    out.expect(decode_signature_file(file, IbbsMode::otter, ctx) == sig, label(*ga) + ": file round trip");
    out.note(label(*ga) + " " + std::to_string(payload) + "/" + std::to_string(formula) + " bits");
  }
}

// 10

void operation_counts(Outcome& out) {
  for (auto ga : {GroupAction::make_toy(101), GroupAction::make_csidh()}) {
    for (std::size_t n : {4u, 16u}) {
      Rng rng(10);
      auto c = op_count_report(*ga, n, IbbsMode::otter, rng);
      const std::string tag = label(*ga) + " n=" + std::to_string(n);
      out.expect(c.setup == 2 * n, tag + ": Setup");
      out.expect(c.extract == 2 * n, tag + ": Extract");
      out.expect(c.s1 == 2 * n, tag + ": S1");
      out.expect(c.u1 == 2 * n, tag + ": U1");
      out.expect(c.s2 == 0, tag + ": S2");
      out.expect(c.u2 == 2 * n, tag + ": U2");
      out.expect(c.verify == 2 * n, tag + ": Verify");
    }
  }
}

// 11

void wire(Outcome& out) {
  Rng rng(11);
  auto toy = GroupAction::make_toy(101);
  auto desk = GroupAction::make_csidh();
  std::set<MsgType> kinds;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto& ga = trial % 2 ? *desk : *toy;
    const std::size_t n = 1 + rng.uniform(16);
    Message msg = random_message(ga, n, trial % 12, rng);
    auto ctx = wire_context(ga, n);
    Frame f = encode_message(msg, ctx);
    kinds.insert(f.type);
    out.expect(decode_message(decode_frame(encode_frame(f)), ctx) == msg, "frame round trip");
  }
  out.expect(kinds.size() == 12, "every message type exercised");

  auto code_of = [](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };

  {
    auto f = make_fixture(toy, 8, IbbsMode::otter, 12);
    const auto ctx = f.params.wire();
    std::unique_ptr<FlipTransport> flip;
    auto run = run_pipe(f, as_bytes("fault"), 1, 2, nullptr, nullptr, [&](Transport& inner) -> Transport& {
      flip = std::make_unique<FlipTransport>(inner, MsgType::rho_s2, 4 + ctx.n + 3, 0);
      return *flip;
    });
    const bool decoded = !run.user_error;
    out.expect(!run.user.signature, "RHO_S2 flip: no signature");
    if (decoded) {
      out.expect(run.user.last_mismatches == std::vector<IndexRef>{{1, 3}}, "RHO_S2 flip: failing index");
      out.expect(run.signer_error && run.signer_error->code() == ErrorCode::retry_limit, "RHO_S2 flip: retry_limit");
    } else {
      out.expect(run.user_error->code() == ErrorCode::decode, "RHO_S2 flip: decode");
    }
  }
  {
    auto f = make_fixture(toy, 4, IbbsMode::otter, 13);
    auto [a, b] = make_pipe_pair();
    std::thread peer([&] {
      Bytes junk = {'C', 'I', 'B', 'S', 0x01, 0x02, 0, 0};
      a->write_all(junk);
      a->close_write();
    });
    Rng r(3);
    out.expect(code_of([&] { run_blind_user(*b, f.params, f.id, std::nullopt, as_bytes("m"), r); }) ==
                   ErrorCode::transport,
               "truncated stream: transport");
    peer.join();
  }
  out.expect(code_of([&] { decode_message(Frame{MsgType::rho_u, {0b01110001}}, wire_context(*toy, 4)); }) ==
                 ErrorCode::decode,
             "ternary code 11: decode");
  {
    auto f = make_fixture(toy, 4, IbbsMode::otter, 14);
    auto [a, b] = make_pipe_pair();
    std::optional<Error> serr;
    std::thread signer([&] {
      Rng r(4);
      try {
        run_blind_signer(*a, f.params, f.keys.usk, f.keys.upk, f.id, r);
      } catch (const Error& e) {
        serr = e;
      }
    });
    recv_frame(*b);
    recv_frame(*b);
    TernaryVec ones(4);
    for (std::size_t i = 0; i < 4; ++i) ones.set(i, 1);
    send_frame(*b, encode_message(IdChallengeMsg{ones}, f.params.wire()));
    recv_frame(*b);
    b->close_write();
    signer.join();
    out.expect(serr && serr->code() == ErrorCode::protocol, "unexpected frame to signer: protocol");
  }
  {
    auto [params, s] = ibid_setup(toy, 3, rng);
    auto [a, b] = make_pipe_pair();
    TernaryVec v(3);
    v.set(0, 1);
    std::thread rogue([&] {
      send_frame(*a, encode_message(IdChallengeMsg{v}, params.wire()));
      recv_frame(*a);
      a->close_write();
    });
    out.expect(code_of([&] { run_ibid_verifier(*b, params, as_bytes("x"), rng); }) == ErrorCode::protocol,
               "out-of-order challenge: protocol");
    rogue.join();
  }

  ibbs_rng* crng = nullptr;
  out.expect(ibbs_rng_new_seeded(15, &crng) == IBBS_OK, "rng");
  for (auto backend : {IBBS_BACKEND_TOY, IBBS_BACKEND_CSIDH}) {
    ibbs_setup_config cfg;
    ibbs_setup_config_default(&cfg);
    cfg.backend = backend;
    ibbs_demo_result res{};
    const uint8_t msg[] = {'d', 'e', 'm', 'o'};
    out.expect(ibbs_demo(&cfg, msg, sizeof msg, crng, nullptr, &res) == IBBS_OK && res.verified == 1,
               "demo signature verifies");
  }

  ibbs_setup_config cfg;
  ibbs_setup_config_default(&cfg);
  cfg.backend = IBBS_BACKEND_CSIDH;
  ibbs_params* params = nullptr;
  ibbs_msk* msk = nullptr;
  ibbs_keys* keys = nullptr;
  const uint8_t id[] = {'t', 'c', 'p'};
  out.expect(ibbs_setup(&cfg, crng, &params, &msk) == IBBS_OK, "tcp setup");
  out.expect(ibbs_extract(params, msk, id, sizeof id, crng, &keys) == IBBS_OK, "tcp extract");
  int lfd = -1;
  uint16_t port = 0;
  out.expect(ibbs_tcp_listen("127.0.0.1:0", &lfd) == IBBS_OK, "listen");
  out.expect(ibbs_tcp_bound_port(lfd, &port) == IBBS_OK, "bound port");
  ibbs_status signer_status = IBBS_E_INTERNAL;
  std::thread server([&] {
    ibbs_rng* r = nullptr;
    ibbs_rng_new_seeded(16, &r);
    int cfd = -1;
    if (ibbs_tcp_accept(lfd, &cfd) == IBBS_OK) {
      signer_status = ibbs_serve_signer_fd(params, keys, cfd, cfd, r, nullptr, 0, nullptr);
      ibbs_close_fd(cfd);
    }
    ibbs_rng_free(r);
  });
  const std::string addr = "127.0.0.1:" + std::to_string(port);
  int fd = -1;
  ibbs_signature* sig = nullptr;
  ibbs_keys* upk = nullptr;
  const uint8_t m[] = {'o', 'v', 'e', 'r', ' ', 't', 'c', 'p'};
  ibbs_status user_status = ibbs_tcp_connect(addr.c_str(), 2000, &fd);
  if (user_status == IBBS_OK) {
    user_status = ibbs_run_user_fd(params, id, sizeof id, nullptr, m, sizeof m, fd, fd, crng, nullptr, 0, &sig, &upk,
                                   nullptr);
    ibbs_close_fd(fd);
  }
  server.join();
  ibbs_close_fd(lfd);
  out.expect(user_status == IBBS_OK && signer_status == IBBS_OK, "tcp session completes");
  out.expect(sig && ibbs_verify(params, keys, sig, m, sizeof m) == IBBS_OK, "tcp signature verifies");
  out.expect(sig && ibbs_verify(params, upk, sig, m, sizeof m) == IBBS_OK, "tcp signature verifies under the announced key");
  ibbs_signature_free(sig);
  ibbs_keys_free(upk);
  ibbs_keys_free(keys);
  ibbs_msk_free(msk);
  ibbs_params_free(params);
  ibbs_rng_free(crng);
}

struct Criterion {
  int number;
  const char* name;
  double limit_s;  // 0: no runtime bound
  void (*run)(Outcome&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "action laws", 5, action_laws},
      {2, "class-number cross-check", 5, class_number},
      {3, "sigma protocol", 60, sigma_protocol},
      {4, "identification", 60, identification},
      {5, "blind signing", 120, blind_signing},
      {6, "challenge-product identity", 0, challenge_product},
      {7, "mutation rejection", 0, mutation_rejection},
      {8, "blindness reconstruction", 0, blindness},
      {9, "size accounting", 0, size_accounting},
      {10, "operation counts", 0, operation_counts},
      {11, "wire", 0, wire},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.expect(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    if (!in_time) out.expect(false, "runtime over limit");
    const bool ok = out.ok();
    failed += !ok;
    std::string timing = fmt("%.2f s", secs);
    if (c.limit_s > 0) timing += fmt(", limit %.0f s", c.limit_s);
    std::printf("[%s] %2d %-28s (%s) %s\n", ok ? "PASS" : "FAIL", c.number, c.name, timing.c_str(),
                out.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
