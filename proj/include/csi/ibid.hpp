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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "csi/action.hpp"
#include "csi/codec.hpp"
#include "csi/hash.hpp"
#include "csi/rng.hpp"

namespace csi {

/// `paper`: challenges over {-1,0,1}. `binary`: challenges over {0,1}.
enum class IbidMode : std::uint8_t { paper = 0, binary = 1 };

const char* ibid_mode_name(IbidMode mode) noexcept;

struct IbidParams {
  ActionPtr ga;
  ExceptionalSet set;
  SetPolicy policy = SetPolicy::super;
  CurveVec E;  // E_i = [g^(s c_i)] * E0
  IbidMode mode = IbidMode::binary;

  std::size_t n() const noexcept { return E.size(); }
  WireContext wire() const { return wire_context(*ga, n()); }
};

struct IbidSetupOptions {
  IbidMode mode = IbidMode::binary;
  SetPolicy policy = SetPolicy::super;
  bool require_nonzero_s = true;
};

/// Generates s and the master curves. Returns (params, s).
std::pair<IbidParams, std::uint64_t> ibid_setup(ActionPtr ga, std::size_t n, Rng& rng,
                                                const IbidSetupOptions& options = {});
IbidParams ibid_setup_with(ActionPtr ga, ExceptionalSet set, SetPolicy policy, std::uint64_t s, IbidMode mode);

struct IbidUserKey {
  SignVec u;
  ExponentVec x;
  CurveVec X;
};

/// x = r - s c (.) u with u = H(id || R), R = [g^r] * E0; X = R.
IbidUserKey ibid_extract_with(const IbidParams& params, std::uint64_t s, std::span<const std::uint8_t> id,
                              const ExponentVec& r);
IbidUserKey ibid_extract(const IbidParams& params, std::uint64_t s, std::span<const std::uint8_t> id, Rng& rng);

struct IbidCommitment {
  CurveVec X, K;

  friend bool operator==(const IbidCommitment&, const IbidCommitment&) = default;
};

TernaryVec ibid_challenge(const IbidParams& params, Rng& rng);

/// Decision rule of the verifier, recomputing u = H(id || X).
bool ibid_verify(const IbidParams& params, std::span<const std::uint8_t> id, const IbidCommitment& msg,
                 const TernaryVec& v, const ExponentVec& z);

/// Prover: commit -> respond, once.
class IbidProver {
 public:
  IbidProver(const IbidParams& params, const IbidUserKey& key);

  IbidCommitment commit_with(ExponentVec k);
  IbidCommitment commit(Rng& rng);
  /// z = k - v (.) x.
  ExponentVec respond(const TernaryVec& v);

 private:
  enum class Phase { fresh, committed, done };
  const IbidParams& params_;
  const IbidUserKey& key_;
  ExponentVec k_;
  Phase phase_ = Phase::fresh;
};

/// Verifier: receive commitment -> challenge -> decide, once.
class IbidVerifier {
 public:
  IbidVerifier(const IbidParams& params, Bytes id);

  void receive_commitment(IbidCommitment msg);
  TernaryVec challenge_with(TernaryVec v);
  TernaryVec challenge(Rng& rng);
  bool decide(const ExponentVec& z);

 private:
  enum class Phase { fresh, committed, challenged, done };
  const IbidParams& params_;
  Bytes id_;
  IbidCommitment msg_;
  TernaryVec v_;
  Phase phase_ = Phase::fresh;
};

}  // namespace csi
