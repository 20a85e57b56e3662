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

#include "csi/ibbs.hpp"

#include <limits>
#include <string>

namespace csi {

namespace {

SignVec random_signs(Rng& rng, std::size_t n) {
  SignVec s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, rng.sign());
  return s;
}

void require_len(std::size_t got, std::size_t n, const char* what) {
  if (got != n) fail(ErrorCode::invalid_argument, std::string(what) + ": length mismatch");
}

void check_keys(const IbbsParams& params, const UserSecretKey& usk, const UserPublicKey& upk) {
  const std::size_t n = params.n();
  require_len(upk.X0.size(), n, "user public key X0");
  require_len(upk.X1.size(), n, "user public key X1");
  require_len(usk.witness.size(), n, "user secret key");
  if (usk.delta != 0 && usk.delta != 1) fail(ErrorCode::invalid_argument, "user secret key: delta must be 0 or 1");
  const WitnessKind want = params.mode == IbbsMode::paper ? WitnessKind::x : WitnessKind::r;
  if (usk.kind != want) fail(ErrorCode::invalid_argument, "user secret key: witness form does not match the mode");
}

ExponentVec scaled_set(const IbbsParams& params, std::uint64_t s) {
  const auto& zn = params.ga->zn();
  ExponentVec out(params.set.c.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = zn.mul(zn.reduce(s), params.set.c[i]);
  return out;
}

}  // namespace

const char* ibbs_mode_name(IbbsMode mode) noexcept { return mode == IbbsMode::paper ? "paper" : "otter"; }

std::uint32_t default_retry_limit(IbbsMode mode, std::size_t n) noexcept {
  if (mode == IbbsMode::otter) return 1;
  if (n >= 30) return std::numeric_limits<std::uint32_t>::max();
  return static_cast<std::uint32_t>(4u << n);
}

IbbsParams ibbs_setup_with(ActionPtr ga, ExceptionalSet set, SetPolicy policy, const IbbsMasterSecret& msk,
                           IbbsMode mode, std::uint32_t retry_limit) {
  if (ga->order() % 2 == 0) fail(ErrorCode::invalid_argument, "ibbs setup: N must be odd");
  if (set.c.empty()) fail(ErrorCode::invalid_argument, "ibbs setup: empty set");
  IbbsParams params;
  params.set = std::move(set);
  params.policy = policy;
  params.mode = mode;
  params.retry_limit = retry_limit == 0 ? default_retry_limit(mode, params.set.c.size()) : retry_limit;
  params.ga = std::move(ga);
  params.E0 = params.ga->act_base(scaled_set(params, msk.s0));
  params.E1 = params.ga->act_base(scaled_set(params, msk.s1));
  return params;
}

std::pair<IbbsParams, IbbsMasterSecret> ibbs_setup(ActionPtr ga, std::size_t n, Rng& rng,
                                                   const IbbsSetupOptions& options) {
  SetPolicy achieved{};
  ExceptionalSet set = make_exceptional_set(options.policy, n, ga->order(), &achieved);
  IbbsMasterSecret msk;
  do {
    msk.s0 = ga->sample_exponent(rng);
  } while (options.require_nonzero_s && msk.s0 == 0);
  do {
    msk.s1 = ga->sample_exponent(rng);
  } while (options.require_nonzero_s && msk.s1 == 0);
  auto params = ibbs_setup_with(std::move(ga), std::move(set), achieved, msk, options.mode, options.retry_limit);
  return {std::move(params), msk};
}

SignVec ibbs_identity_hash(const IbbsParams& params, std::span<const std::uint8_t> id, const CurveVec& X_b) {
  return hash_pm1(identity_hash_input(id, X_b, params.wire()), params.n());
}

UserKeys ibbs_extract_with(const IbbsParams& params, const IbbsMasterSecret& msk, std::span<const std::uint8_t> id,
                           const ExponentVec& r0, const ExponentVec& r1, int delta, ExtractTrace* trace) {
  const auto& ga = *params.ga;
  const auto& zn = ga.zn();
  const std::size_t n = params.n();
  require_len(r0.size(), n, "ibbs_extract r0");
  require_len(r1.size(), n, "ibbs_extract r1");
  if (delta != 0 && delta != 1) fail(ErrorCode::invalid_argument, "ibbs_extract: delta must be 0 or 1");

  UserKeys keys;
  keys.upk.X0 = ga.act_base(r0);
  keys.upk.X1 = ga.act_base(r1);
  SignVec u[2] = {ibbs_identity_hash(params, id, keys.upk.X0), ibbs_identity_hash(params, id, keys.upk.X1)};
  const ExponentVec* r[2] = {&r0, &r1};
  ExponentVec x[2] = {ExponentVec(n), ExponentVec(n)};
  for (int b = 0; b < 2; ++b) {
    const std::uint64_t s = zn.reduce(msk.s(b));
    for (std::size_t i = 0; i < n; ++i) {
      x[b][i] = zn.sub((*r[b])[i], zn.mul_small(zn.mul(s, params.set.c[i]), u[b][i]));
    }
  }
  keys.usk.delta = delta;
  if (params.mode == IbbsMode::paper) {
    keys.usk.kind = WitnessKind::x;
    keys.usk.witness = x[delta];
  } else {
    keys.usk.kind = WitnessKind::r;
    keys.usk.witness = *r[delta];
  }
  if (trace) *trace = ExtractTrace{r0, r1, x[0], x[1], u[0], u[1]};
  return keys;
}

UserKeys ibbs_extract(const IbbsParams& params, const IbbsMasterSecret& msk, std::span<const std::uint8_t> id,
                      Rng& rng) {
  const auto& ga = *params.ga;
  ExponentVec r0 = ga.sample_exponent_vec(rng, params.n());
  ExponentVec r1 = ga.sample_exponent_vec(rng, params.n());
  int delta = rng.bit() ? 1 : 0;
  return ibbs_extract_with(params, msk, id, r0, r1, delta);
}

std::pair<RhoS1, SignerSession> ibbs_s1_with(const IbbsParams& params, const UserSecretKey& usk,
                                             const UserPublicKey& upk, std::span<const std::uint8_t> id,
                                             SignerCoins coins) {
  check_keys(params, usk, upk);
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  require_len(coins.y.size(), n, "ibbs_s1 y");
  require_len(coins.tilde_c_other.size(), n, "ibbs_s1 c~");
  require_len(coins.r_other.size(), n, "ibbs_s1 r*");
  const int d = usk.delta;
  const int o = 1 - d;

  CurveVec Y_delta(n);
  if (params.mode == IbbsMode::paper) {
    const SignVec u_delta = ibbs_identity_hash(params, id, upk.X(d));
    for (std::size_t i = 0; i < n; ++i) Y_delta[i] = ga.act(coins.y[i], ga.curve_power(params.E(d)[i], u_delta[i]));
  } else {
    Y_delta = ga.act_base(coins.y);
  }
  const SignVec u_other = ibbs_identity_hash(params, id, upk.X(o));
  TernaryVec c_star_other(hadamard(coins.tilde_c_other, u_other));
  CurveVec Y_other(n);
  for (std::size_t i = 0; i < n; ++i) {
    Y_other[i] = ga.act(coins.r_other[i], ga.curve_power(upk.X(o)[i], c_star_other[i]));
  }

  RhoS1 rho;
  rho.Y0 = d == 0 ? std::move(Y_delta) : std::move(Y_other);
  rho.Y1 = d == 0 ? std::move(Y_other) : std::move(Y_delta);
  SignerSession session;
  session.delta_ = d;
  session.y_ = std::move(coins.y);
  session.c_star_other_ = std::move(c_star_other);
  session.r_star_other_ = std::move(coins.r_other);
  session.used_ = false;
  return {std::move(rho), std::move(session)};
}

std::pair<RhoS1, SignerSession> ibbs_s1(const IbbsParams& params, const UserSecretKey& usk,
                                        const UserPublicKey& upk, std::span<const std::uint8_t> id, Rng& rng) {
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  SignerCoins coins;
  coins.y = ga.sample_exponent_vec(rng, n);
  coins.tilde_c_other = random_signs(rng, n);
  coins.r_other = ga.sample_exponent_vec(rng, n);
  return ibbs_s1_with(params, usk, upk, id, std::move(coins));
}

RhoS2 ibbs_s2(SignerSession& session, const IbbsParams& params, const UserSecretKey& usk, const RhoU& rho_u) {
  if (session.used_) fail(ErrorCode::state, "ibbs_s2: signer session already used");
  const std::size_t n = params.n();
  require_len(rho_u.c_star.size(), n, "ibbs_s2 c*");
  require_len(usk.witness.size(), n, "ibbs_s2 witness");
  if (usk.delta != session.delta_) fail(ErrorCode::invalid_argument, "ibbs_s2: key does not match the session");
  if (params.mode == IbbsMode::otter && rho_u.c_star.has_zero()) {
    fail(ErrorCode::protocol, "ibbs_s2: zero challenge entry in otter mode");
  }
  session.used_ = true;
  const auto& zn = params.ga->zn();
  TernaryVec c_star_delta = hadamard(rho_u.c_star, session.c_star_other_);
  ExponentVec r_star_delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    r_star_delta[i] = zn.sub(session.y_[i], zn.mul_small(usk.witness[i], c_star_delta[i]));
  }
  RhoS2 rho;
  if (session.delta_ == 0) {
    rho = RhoS2{std::move(c_star_delta), session.c_star_other_, std::move(r_star_delta), session.r_star_other_};
  } else {
    rho = RhoS2{session.c_star_other_, std::move(c_star_delta), session.r_star_other_, std::move(r_star_delta)};
  }
  session.y_ = {};
  return rho;
}

TernaryVec ibbs_challenge_hash(const IbbsParams& params, const CurveVec& Z0, const CurveVec& Z1,
                               std::span<const std::uint8_t> m) {
  const auto ctx = params.wire();
  ByteWriter w;
  w.curves(Z0, ctx);
  w.curves(Z1, ctx);
  w.bytes(m);
  if (params.mode == IbbsMode::otter) return TernaryVec(hash_pm1(w.data(), params.n()));
  return hash_ternary(w.data(), params.n());
}

std::pair<RhoU, UserSession> ibbs_u1_with(const IbbsParams& params, const UserPublicKey& upk,
                                          std::span<const std::uint8_t> id, const RhoS1& rho_s1,
                                          std::span<const std::uint8_t> m, UserCoins coins) {
  (void)id;
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  require_len(upk.X0.size(), n, "ibbs_u1 X0");
  require_len(upk.X1.size(), n, "ibbs_u1 X1");
  require_len(rho_s1.Y0.size(), n, "ibbs_u1 Y0");
  require_len(rho_s1.Y1.size(), n, "ibbs_u1 Y1");
  require_len(coins.v0.size(), n, "ibbs_u1 v0");
  require_len(coins.v1.size(), n, "ibbs_u1 v1");
  require_len(coins.w0.size(), n, "ibbs_u1 w0");
  require_len(coins.w1.size(), n, "ibbs_u1 w1");

  UserSession session;
  session.Z0_.resize(n);
  session.Z1_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    session.Z0_[i] = ga.act(coins.w0[i], ga.curve_power(rho_s1.Y0[i], coins.v0[i]));
    session.Z1_[i] = ga.act(coins.w1[i], ga.curve_power(rho_s1.Y1[i], coins.v1[i]));
  }
  session.c_ = ibbs_challenge_hash(params, session.Z0_, session.Z1_, m);
  session.c_star_ = hadamard(session.c_, TernaryVec(hadamard(coins.v0, coins.v1)));
  session.m_.assign(m.begin(), m.end());
  session.coins_ = std::move(coins);
  session.used_ = false;
  RhoU rho{session.c_star_};
  return {std::move(rho), std::move(session)};
}

std::pair<RhoU, UserSession> ibbs_u1(const IbbsParams& params, const UserPublicKey& upk,
                                     std::span<const std::uint8_t> id, const RhoS1& rho_s1,
                                     std::span<const std::uint8_t> m, Rng& rng) {
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  UserCoins coins;
  coins.v0 = random_signs(rng, n);
  coins.v1 = random_signs(rng, n);
  coins.w0 = ga.sample_exponent_vec(rng, n);
  coins.w1 = ga.sample_exponent_vec(rng, n);
  return ibbs_u1_with(params, upk, id, rho_s1, m, std::move(coins));
}

std::optional<std::pair<CurveVec, CurveVec>> ibbs_recompute(const IbbsParams& params, const UserPublicKey& upk,
                                                            std::span<const std::uint8_t> id,
                                                            const Signature& sig) {
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  for (auto sz : {sig.c0.size(), sig.c1.size(), sig.r0.size(), sig.r1.size(), upk.X0.size(), upk.X1.size()}) {
    if (sz != n) fail(ErrorCode::invalid_argument, "malformed signature or public key: length mismatch");
  }
  for (int b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      if (sig.r(b)[i] >= ga.order() || !ga.in_orbit(upk.X(b)[i])) return std::nullopt;
      if (params.mode == IbbsMode::otter && sig.c(b)[i] == 0) return std::nullopt;
    }
  }
  std::pair<CurveVec, CurveVec> Z{CurveVec(n), CurveVec(n)};
  for (int b = 0; b < 2; ++b) {
    CurveVec& Zb = b == 0 ? Z.first : Z.second;
    const bool any_zero = sig.c(b).has_zero();
    const SignVec u = any_zero ? ibbs_identity_hash(params, id, upk.X(b)) : SignVec(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = sig.c(b)[i];
      Curve base = c == 0 ? ga.curve_power(params.E(b)[i], u[i]) : ga.curve_power(upk.X(b)[i], c);
      Zb[i] = ga.act(sig.r(b)[i], base);
    }
  }
  return Z;
}

U2Result ibbs_u2(UserSession& session, const IbbsParams& params, const UserPublicKey& upk,
                 std::span<const std::uint8_t> id, const RhoS2& rho_s2) {
  if (session.used_) fail(ErrorCode::state, "ibbs_u2: user session already used");
  const std::size_t n = params.n();
  for (auto sz : {rho_s2.c0.size(), rho_s2.c1.size(), rho_s2.r0.size(), rho_s2.r1.size()}) {
    require_len(sz, n, "ibbs_u2 rho_S2");
  }
  const auto& zn = params.ga->zn();
  for (const auto* r : {&rho_s2.r0, &rho_s2.r1}) {
    for (auto e : *r) {
      if (e >= zn.value()) fail(ErrorCode::invalid_argument, "ibbs_u2: r* not reduced mod N");
    }
  }
  session.used_ = true;

  Signature sig;
  sig.c0 = hadamard(rho_s2.c0, TernaryVec(session.coins_.v0));
  sig.c1 = hadamard(rho_s2.c1, TernaryVec(session.coins_.v1));
  sig.r0 = ExponentVec(n);
  sig.r1 = ExponentVec(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig.r0[i] = zn.add(session.coins_.w0[i], zn.mul_small(rho_s2.r0[i], session.coins_.v0[i]));
    sig.r1[i] = zn.add(session.coins_.w1[i], zn.mul_small(rho_s2.r1[i], session.coins_.v1[i]));
  }

  U2Result result;
  auto Zt = ibbs_recompute(params, upk, id, sig);
  if (!Zt) {
    for (int b = 0; b < 2; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        if (sig.c(b)[i] == 0) result.mismatches.push_back({b, i});
      }
    }
    return result;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (Zt->first[i] != session.Z0_[i]) result.mismatches.push_back({0, i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (Zt->second[i] != session.Z1_[i]) result.mismatches.push_back({1, i});
  }
  result.hash_ok = ibbs_challenge_hash(params, Zt->first, Zt->second, session.m_) == hadamard(sig.c0, sig.c1);
  if (result.hash_ok && result.mismatches.empty()) result.signature = std::move(sig);
  return result;
}

bool ibbs_verify(const IbbsParams& params, const UserPublicKey& upk, std::span<const std::uint8_t> id,
                 const Signature& sig, std::span<const std::uint8_t> m) {
  auto Zt = ibbs_recompute(params, upk, id, sig);
  if (!Zt) return false;
  return ibbs_challenge_hash(params, Zt->first, Zt->second, m) == hadamard(sig.c0, sig.c1);
}

SignOutcome ibbs_sign_with_retry(const IbbsParams& params, const UserSecretKey& usk, const UserPublicKey& upk,
                                 std::span<const std::uint8_t> id, std::span<const std::uint8_t> m, Rng& rng,
                                 std::uint32_t limit) {
  if (limit == 0) limit = params.retry_limit;
  for (std::uint32_t attempt = 1; attempt <= limit; ++attempt) {
    auto [rho1, signer] = ibbs_s1(params, usk, upk, id, rng);
    auto [rho_u, user] = ibbs_u1(params, upk, id, rho1, m, rng);
    RhoS2 rho2 = ibbs_s2(signer, params, usk, rho_u);
    U2Result out = ibbs_u2(user, params, upk, id, rho2);
    if (out.signature) return SignOutcome{std::move(*out.signature), attempt};
    if (attempt == limit) break;
  }
  fail(ErrorCode::retry_limit, "blind signing: no signature within " + std::to_string(limit) + " attempt(s)");
}

BlindingState reconstruct_blinding(const IbbsParams& params, const RhoS1& rho_s1, const RhoS2& rho_s2,
                                   const Signature& sig) {
  const std::size_t n = params.n();
  require_len(rho_s1.Y0.size(), n, "reconstruct Y0");
  require_len(rho_s1.Y1.size(), n, "reconstruct Y1");
  for (auto sz : {rho_s2.c0.size(), rho_s2.c1.size(), rho_s2.r0.size(), rho_s2.r1.size(), sig.c0.size(),
                  sig.c1.size(), sig.r0.size(), sig.r1.size()}) {
    require_len(sz, n, "reconstruct");
  }
  const auto& zn = params.ga->zn();
  BlindingState st{SignVec(n), SignVec(n), ExponentVec(n), ExponentVec(n)};
  for (int b = 0; b < 2; ++b) {
    const TernaryVec& cs = b == 0 ? rho_s2.c0 : rho_s2.c1;
    const ExponentVec& rs = b == 0 ? rho_s2.r0 : rho_s2.r1;
    SignVec& v = b == 0 ? st.v0 : st.v1;
    ExponentVec& w = b == 0 ? st.w0 : st.w1;
    for (std::size_t i = 0; i < n; ++i) {
      const int prod = sig.c(b)[i] * cs[i];
      if (prod == 0) {
        fail(ErrorCode::invalid_argument,
             "reconstruct_blinding: zero challenge entry at side " + std::to_string(b) + " index " +
                 std::to_string(i));
      }
      v.set(i, prod);
      w[i] = zn.sub(sig.r(b)[i], zn.mul_small(rs[i], prod));
    }
  }
  return st;
}

namespace {

struct LevelRow {
  unsigned level, p_bits;
  std::size_t n;
};

constexpr LevelRow kLevels[] = {{80, 320, 46}, {100, 400, 58}, {128, 512, 74}, {192, 768, 111}, {256, 1024, 148}};

}  // namespace

SizeRow size_report_custom(unsigned p_bits, std::size_t n, std::optional<unsigned> n_bits) {
  if (p_bits == 0 || n == 0) fail(ErrorCode::invalid_argument, "size_report: p_bits and n must be positive");
  SizeRow row;
  row.p_bits = p_bits;
  row.n = n;
  row.n_bits_from_p = !n_bits.has_value();
  row.n_bits = n_bits.value_or(p_bits);
  const std::uint64_t lp = p_bits, lN = row.n_bits, nn = n;
  row.mpk = 2 * nn * lp;
  row.msk = 2 * lN;
  row.usk = 1 + nn * lN;
  row.upk = 2 * nn * lp;
  row.sig = 4 * nn + 2 * nn * lN;
  row.id = nn;
  return row;
}

SizeRow size_report(unsigned level) {
  for (const auto& r : kLevels) {
    if (r.level == level) {
      SizeRow row = size_report_custom(r.p_bits, r.n);
      row.level = level;
      return row;
    }
  }
  fail(ErrorCode::invalid_argument, "size_report: unknown security level " + std::to_string(level));
}

OpCounts op_count_report(const GroupAction& backend, std::size_t n, IbbsMode mode, Rng& rng, SetPolicy policy) {
  ActionPtr ga = backend.with_length(n);
  OpCounts counts;
  auto measure = [&](std::uint64_t& slot, auto&& fn) {
    ga->reset_action_count();
    fn();
    slot = ga->action_count();
  };
  IbbsSetupOptions opts;
  opts.mode = mode;
  opts.policy = policy;
  std::optional<std::pair<IbbsParams, IbbsMasterSecret>> setup;
  measure(counts.setup, [&] { setup = ibbs_setup(ga, n, rng, opts); });
  const auto& [params, msk] = *setup;
  const Bytes id = {'o', 'p', 's'};
  const Bytes m = {'m'};
  UserKeys keys;
  measure(counts.extract, [&] { keys = ibbs_extract(params, msk, id, rng); });
  std::optional<std::pair<RhoS1, SignerSession>> s1;
  measure(counts.s1, [&] { s1 = ibbs_s1(params, keys.usk, keys.upk, id, rng); });
  std::optional<std::pair<RhoU, UserSession>> u1;
  measure(counts.u1, [&] { u1 = ibbs_u1(params, keys.upk, id, s1->first, m, rng); });
  RhoS2 rho2;
  measure(counts.s2, [&] { rho2 = ibbs_s2(s1->second, params, keys.usk, u1->first); });
  U2Result u2;
  measure(counts.u2, [&] { u2 = ibbs_u2(u1->second, params, keys.upk, id, rho2); });
  Signature sig = u2.signature ? *u2.signature : Signature{};
  if (!u2.signature) sig = ibbs_sign_with_retry(params, keys.usk, keys.upk, id, m, rng).signature;
  measure(counts.verify, [&] { (void)ibbs_verify(params, keys.upk, id, sig, m); });
  return counts;
}

}  // namespace csi
