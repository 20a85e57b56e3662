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

#include "csi/sigma_or.hpp"

namespace csi {

OrKeypair or_keygen(const GroupAction& ga, std::size_t n, Rng& rng) {
  OrKeypair key;
  key.delta = rng.bit() ? 1 : 0;
  key.x_delta = ga.sample_exponent_vec(rng, n);
  ExponentVec x_other = ga.sample_exponent_vec(rng, n);
  CurveVec X_delta = ga.act_base(key.x_delta);
  CurveVec X_other = ga.act_base(x_other);
  key.X0 = key.delta == 0 ? X_delta : X_other;
  key.X1 = key.delta == 0 ? X_other : X_delta;
  return key;
}

std::pair<OrCommitment, OrProverState> or_commit_with(const GroupAction& ga, const OrKeypair& key,
                                                      OrProverCoins coins) {
  const std::size_t n = key.x_delta.size();
  require_same_length(coins.y_delta.size(), n, "or_commit: y length");
  require_same_length(coins.c_other.size(), n, "or_commit: c length");
  require_same_length(coins.r_other.size(), n, "or_commit: r length");
  const CurveVec& X_other = key.X(1 - key.delta);
  require_same_length(X_other.size(), n, "or_commit: statement length");

  CurveVec Y_delta = ga.act_base(coins.y_delta);
  CurveVec Y_other(n);
  for (std::size_t i = 0; i < n; ++i) {
    Y_other[i] = ga.act(coins.r_other[i], ga.curve_power(X_other[i], coins.c_other[i]));
  }
  OrCommitment com;
  com.Y0 = key.delta == 0 ? std::move(Y_delta) : std::move(Y_other);
  com.Y1 = key.delta == 0 ? std::move(Y_other) : std::move(Y_delta);

  OrProverState state;
  state.coins_ = std::move(coins);
  state.used_ = false;
  return {std::move(com), std::move(state)};
}

std::pair<OrCommitment, OrProverState> or_commit(const GroupAction& ga, const OrKeypair& key, Rng& rng) {
  const std::size_t n = key.x_delta.size();
  OrProverCoins coins;
  coins.y_delta = ga.sample_exponent_vec(rng, n);
  coins.c_other = SignVec(n);
  for (std::size_t i = 0; i < n; ++i) coins.c_other.set(i, rng.sign());
  coins.r_other = ga.sample_exponent_vec(rng, n);
  return or_commit_with(ga, key, std::move(coins));
}

OrResponse or_respond(OrProverState& state, const GroupAction& ga, const OrKeypair& key, const TernaryVec& c) {
  if (state.used_) fail(ErrorCode::state, "or_respond: prover state already used or never committed");
  require_same_length(c.size(), key.x_delta.size(), "or_respond: challenge length");
  state.used_ = true;
  const auto& zn = ga.zn();
  const std::size_t n = c.size();

  TernaryVec c_other(state.coins_.c_other);
  TernaryVec c_delta = hadamard(c, c_other);
  ExponentVec r_delta(n);
  for (std::size_t i = 0; i < n; ++i) {
    r_delta[i] = zn.sub(state.coins_.y_delta[i], zn.mul_small(key.x_delta[i], c_delta[i]));
  }
  OrResponse rsp;
  if (key.delta == 0) {
    rsp = OrResponse{std::move(r_delta), state.coins_.r_other, std::move(c_delta), std::move(c_other)};
  } else {
    rsp = OrResponse{state.coins_.r_other, std::move(r_delta), std::move(c_other), std::move(c_delta)};
  }
  state.coins_ = {};
  return rsp;
}

Curve or_recompute(const GroupAction& ga, Curve X, int c, std::uint64_t r) {
  if (c == 0) return ga.act(r, ga.base());
  return ga.act(r, ga.curve_power(X, c));
}

bool or_verify(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const OrTranscript& t) {
  const std::size_t n = t.c.size();
  for (const auto* v : {&X0, &X1, &t.com.Y0, &t.com.Y1}) {
    if (v->size() != n) fail(ErrorCode::invalid_argument, "or_verify: malformed lengths");
  }
  if (t.rsp.r0.size() != n || t.rsp.r1.size() != n || t.rsp.c0.size() != n || t.rsp.c1.size() != n) {
    fail(ErrorCode::invalid_argument, "or_verify: malformed lengths");
  }
  if (hadamard(t.rsp.c0, t.rsp.c1) != t.c) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!ga.in_orbit(X0[i]) || !ga.in_orbit(X1[i])) return false;
    if (t.rsp.r0[i] >= ga.order() || t.rsp.r1[i] >= ga.order()) return false;
    if (or_recompute(ga, X0[i], t.rsp.c0[i], t.rsp.r0[i]) != t.com.Y0[i]) return false;
    if (or_recompute(ga, X1[i], t.rsp.c1[i], t.rsp.r1[i]) != t.com.Y1[i]) return false;
  }
  return true;
}

OrTranscript or_simulate_per_index_with(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1,
                                        const TernaryVec& c0, const TernaryVec& c1, const ExponentVec& r0,
                                        const ExponentVec& r1) {
  const std::size_t n = c0.size();
  require_same_length(c1.size(), n, "or_simulate: c1 length");
  require_same_length(r0.size(), n, "or_simulate: r0 length");
  require_same_length(r1.size(), n, "or_simulate: r1 length");
  require_same_length(X0.size(), n, "or_simulate: X0 length");
  require_same_length(X1.size(), n, "or_simulate: X1 length");
  OrTranscript t;
  t.c = hadamard(c0, c1);
  t.rsp = OrResponse{r0, r1, c0, c1};
  t.com.Y0.resize(n);
  t.com.Y1.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.com.Y0[i] = or_recompute(ga, X0[i], c0[i], r0[i]);
    t.com.Y1[i] = or_recompute(ga, X1[i], c1[i], r1[i]);
  }
  return t;
}

OrTranscript or_simulate_with(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const TernaryVec& c,
                              const OrSimCoins& coins) {
  if (coins.side != 0 && coins.side != 1) fail(ErrorCode::invalid_argument, "or_simulate: side must be 0 or 1");
  require_same_length(coins.c_other.size(), c.size(), "or_simulate: c_other length");
  TernaryVec c_other(coins.c_other);
  TernaryVec c_side = hadamard(c, c_other);
  const TernaryVec& c0 = coins.side == 0 ? c_side : c_other;
  const TernaryVec& c1 = coins.side == 0 ? c_other : c_side;
  return or_simulate_per_index_with(ga, X0, X1, c0, c1, coins.r0, coins.r1);
}

OrTranscript or_simulate(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const TernaryVec& c,
                         Rng& rng) {
  const std::size_t n = c.size();
  OrSimCoins coins;
  coins.side = rng.bit() ? 1 : 0;
  coins.c_other = SignVec(n);
  for (std::size_t i = 0; i < n; ++i) coins.c_other.set(i, rng.sign());
  coins.r0 = ga.sample_exponent_vec(rng, n);
  coins.r1 = ga.sample_exponent_vec(rng, n);
  return or_simulate_with(ga, X0, X1, c, coins);
}

OrExtraction or_extract(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const OrTranscript& t1,
                        const OrTranscript& t2) {
  if (t1.com != t2.com) fail(ErrorCode::invalid_argument, "or_extract: commitments differ");
  if (t1.c == t2.c) fail(ErrorCode::invalid_argument, "or_extract: challenges are identical");
  if (!or_verify(ga, X0, X1, t1) || !or_verify(ga, X0, X1, t2)) {
    fail(ErrorCode::invalid_argument, "or_extract: transcripts must both accept");
  }
  const auto& zn = ga.zn();
  for (std::size_t i = 0; i < t1.c.size(); ++i) {
    for (int b = 0; b < 2; ++b) {
      const int c = b == 0 ? t1.rsp.c0[i] : t1.rsp.c1[i];
      const int cp = b == 0 ? t2.rsp.c0[i] : t2.rsp.c1[i];
      if (c == cp) continue;
      const std::uint64_t r = b == 0 ? t1.rsp.r0[i] : t1.rsp.r1[i];
      const std::uint64_t rp = b == 0 ? t2.rsp.r0[i] : t2.rsp.r1[i];
      const std::uint64_t x = zn.mul(zn.sub(rp, r), zn.inv(zn.from_signed(c - cp)));
      return OrExtraction{b, i, x};
    }
  }
  fail(ErrorCode::internal, "or_extract: no differing side found");
}

}  // namespace csi
