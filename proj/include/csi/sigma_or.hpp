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
#include <utility>
#include <vector>

#include "csi/action.hpp"
#include "csi/rng.hpp"
#include "csi/types.hpp"

namespace csi {

/// Statement (X0, X1) and witness (delta, x_delta) with
/// X_delta = [g^x_delta] * E0 componentwise.
struct OrKeypair {
  int delta = 0;
  ExponentVec x_delta;
  CurveVec X0, X1;

  const CurveVec& X(int b) const { return b == 0 ? X0 : X1; }
};

struct OrCommitment {
  CurveVec Y0, Y1;

  const CurveVec& Y(int b) const { return b == 0 ? Y0 : Y1; }
  friend bool operator==(const OrCommitment&, const OrCommitment&) = default;
};

struct OrResponse {
  ExponentVec r0, r1;
  TernaryVec c0, c1;

  friend bool operator==(const OrResponse&, const OrResponse&) = default;
};

struct OrTranscript {
  OrCommitment com;
  TernaryVec c;
  OrResponse rsp;

  friend bool operator==(const OrTranscript&, const OrTranscript&) = default;
};

/// Prover coins: y_delta, the presampled c_{1-delta} and r_{1-delta}.
struct OrProverCoins {
  ExponentVec y_delta;
  SignVec c_other;
  ExponentVec r_other;
};

/// One-shot prover state; `or_respond` consumes it.
class OrProverState {
 public:
  bool used() const noexcept { return used_; }

 private:
  friend std::pair<OrCommitment, OrProverState> or_commit_with(const GroupAction&, const OrKeypair&,
                                                               OrProverCoins);
  friend OrResponse or_respond(OrProverState&, const GroupAction&, const OrKeypair&, const TernaryVec&);

  OrProverCoins coins_;
  bool used_ = true;
};

OrKeypair or_keygen(const GroupAction& ga, std::size_t n, Rng& rng);

std::pair<OrCommitment, OrProverState> or_commit_with(const GroupAction& ga, const OrKeypair& key,
                                                      OrProverCoins coins);
std::pair<OrCommitment, OrProverState> or_commit(const GroupAction& ga, const OrKeypair& key, Rng& rng);

/// c_delta = c (.) c_{1-delta}, r_delta = y_delta - x_delta (.) c_delta.
/// Throws ErrorCode::state when the state was already used.
OrResponse or_respond(OrProverState& state, const GroupAction& ga, const OrKeypair& key, const TernaryVec& c);

/// Curve the verifier recomputes for one index: [g^r] * E0 when c = 0,
/// otherwise [g^r] * X^c.
Curve or_recompute(const GroupAction& ga, Curve X, int c, std::uint64_t r);

bool or_verify(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const OrTranscript& t);

/// Simulator coins: a side bit d used for the whole vector, the sign
/// vector c_{1-d}, and both responses.
struct OrSimCoins {
  int side = 0;
  SignVec c_other;
  ExponentVec r0, r1;
};

OrTranscript or_simulate_with(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const TernaryVec& c,
                              const OrSimCoins& coins);
OrTranscript or_simulate(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const TernaryVec& c,
                         Rng& rng);

/// Per-index simulator: (c0_i, c1_i) drawn from all pairs with product c_i,
/// zero pairs included. Kept for comparison with the honest distribution.
OrTranscript or_simulate_per_index_with(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1,
                                        const TernaryVec& c0, const TernaryVec& c1, const ExponentVec& r0,
                                        const ExponentVec& r1);

struct OrExtraction {
  int side = 0;
  std::size_t index = 0;
  std::uint64_t witness = 0;
};

/// From two accepting transcripts with equal commitment and different
/// challenges: x = (r' - r) / (c - c') at the first differing (side, index).
OrExtraction or_extract(const GroupAction& ga, const CurveVec& X0, const CurveVec& X1, const OrTranscript& t1,
                        const OrTranscript& t2);

}  // namespace csi
