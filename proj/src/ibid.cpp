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

#include "csi/ibid.hpp"

namespace csi {

const char* ibid_mode_name(IbidMode mode) noexcept { return mode == IbidMode::paper ? "paper" : "binary"; }

IbidParams ibid_setup_with(ActionPtr ga, ExceptionalSet set, SetPolicy policy, std::uint64_t s, IbidMode mode) {
  const auto& zn = ga->zn();
  ExponentVec sc(set.c.size());
  for (std::size_t i = 0; i < set.c.size(); ++i) sc[i] = zn.mul(zn.reduce(s), set.c[i]);
  IbidParams params;
  params.E = ga->act_base(sc);
  params.ga = std::move(ga);
  params.set = std::move(set);
  params.policy = policy;
  params.mode = mode;
  return params;
}

std::pair<IbidParams, std::uint64_t> ibid_setup(ActionPtr ga, std::size_t n, Rng& rng,
                                                const IbidSetupOptions& options) {
  SetPolicy achieved{};
  ExceptionalSet set = make_exceptional_set(options.policy, n, ga->order(), &achieved);
  std::uint64_t s = ga->sample_exponent(rng);
  while (options.require_nonzero_s && s == 0) s = ga->sample_exponent(rng);
  auto params = ibid_setup_with(std::move(ga), std::move(set), achieved, s, options.mode);
  return {std::move(params), s};
}

IbidUserKey ibid_extract_with(const IbidParams& params, std::uint64_t s, std::span<const std::uint8_t> id,
                              const ExponentVec& r) {
  const auto& ga = *params.ga;
  const auto& zn = ga.zn();
  const std::size_t n = params.n();
  require_same_length(r.size(), n, "ibid_extract: r length");
  IbidUserKey key;
  key.X = ga.act_base(r);
  key.u = hash_pm1(identity_hash_input(id, key.X, params.wire()), n);
  key.x = ExponentVec(n);
  const std::uint64_t sr = zn.reduce(s);
  for (std::size_t i = 0; i < n; ++i) {
    key.x[i] = zn.sub(r[i], zn.mul_small(zn.mul(sr, params.set.c[i]), key.u[i]));
  }
  return key;
}

IbidUserKey ibid_extract(const IbidParams& params, std::uint64_t s, std::span<const std::uint8_t> id, Rng& rng) {
  return ibid_extract_with(params, s, id, params.ga->sample_exponent_vec(rng, params.n()));
}

TernaryVec ibid_challenge(const IbidParams& params, Rng& rng) {
  TernaryVec v(params.n());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v.set(i, params.mode == IbidMode::paper ? rng.ternary() : (rng.bit() ? 1 : 0));
  }
  return v;
}

bool ibid_verify(const IbidParams& params, std::span<const std::uint8_t> id, const IbidCommitment& msg,
                 const TernaryVec& v, const ExponentVec& z) {
  const auto& ga = *params.ga;
  const std::size_t n = params.n();
  if (msg.X.size() != n || msg.K.size() != n || v.size() != n || z.size() != n) {
    fail(ErrorCode::invalid_argument, "ibid_verify: malformed lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!ga.in_orbit(msg.X[i]) || z[i] >= ga.order()) return false;
    if (params.mode == IbidMode::binary && v[i] == -1) return false;
  }
  const SignVec u = hash_pm1(identity_hash_input(id, msg.X, params.wire()), n);
  for (std::size_t i = 0; i < n; ++i) {
    Curve base = v[i] == 0 ? ga.curve_power(params.E[i], u[i]) : ga.curve_power(msg.X[i], v[i]);
    if (ga.act(z[i], base) != msg.K[i]) return false;
  }
  return true;
}

IbidProver::IbidProver(const IbidParams& params, const IbidUserKey& key) : params_(params), key_(key) {
  require_same_length(key.x.size(), params.n(), "ibid prover: key length");
}

IbidCommitment IbidProver::commit_with(ExponentVec k) {
  if (phase_ != Phase::fresh) fail(ErrorCode::state, "ibid prover: commit called twice");
  require_same_length(k.size(), params_.n(), "ibid prover: k length");
  const auto& ga = *params_.ga;
  IbidCommitment msg;
  msg.X = key_.X;
  msg.K.resize(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    msg.K[i] = ga.act(k[i], ga.curve_power(params_.E[i], key_.u[i]));
  }
  k_ = std::move(k);
  phase_ = Phase::committed;
  return msg;
}

IbidCommitment IbidProver::commit(Rng& rng) { return commit_with(params_.ga->sample_exponent_vec(rng, params_.n())); }

ExponentVec IbidProver::respond(const TernaryVec& v) {
  if (phase_ == Phase::fresh) fail(ErrorCode::state, "ibid prover: respond before commit");
  if (phase_ == Phase::done) fail(ErrorCode::state, "ibid prover: state already used");
  require_same_length(v.size(), params_.n(), "ibid prover: challenge length");
  phase_ = Phase::done;
  const auto& zn = params_.ga->zn();
  ExponentVec z(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = zn.sub(k_[i], zn.mul_small(key_.x[i], v[i]));
  k_ = {};
  return z;
}

IbidVerifier::IbidVerifier(const IbidParams& params, Bytes id) : params_(params), id_(std::move(id)) {}

void IbidVerifier::receive_commitment(IbidCommitment msg) {
  if (phase_ != Phase::fresh) fail(ErrorCode::protocol, "ibid verifier: commitment out of order");
  if (msg.X.size() != params_.n() || msg.K.size() != params_.n()) {
    fail(ErrorCode::invalid_argument, "ibid verifier: commitment length");
  }
  msg_ = std::move(msg);
  phase_ = Phase::committed;
}

TernaryVec IbidVerifier::challenge_with(TernaryVec v) {
  if (phase_ != Phase::committed) fail(ErrorCode::protocol, "ibid verifier: challenge out of order");
  require_same_length(v.size(), params_.n(), "ibid verifier: challenge length");
  v_ = std::move(v);
  phase_ = Phase::challenged;
  return v_;
}

TernaryVec IbidVerifier::challenge(Rng& rng) { return challenge_with(ibid_challenge(params_, rng)); }

bool IbidVerifier::decide(const ExponentVec& z) {
  if (phase_ != Phase::challenged) fail(ErrorCode::protocol, "ibid verifier: response out of order");
  phase_ = Phase::done;
  if (z.size() != params_.n()) fail(ErrorCode::invalid_argument, "ibid verifier: response length");
  return ibid_verify(params_, id_, msg_, v_, z);
}

}  // namespace csi
