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
#include <span>

#include "csi/types.hpp"
#include "csi/xof.hpp"

namespace csi {

/// H: {0,1}* -> {-1,1}^n. SHAKE256("H1" || data); bit i of the output
/// stream (LSB-first within each byte) maps 0 -> +1 and 1 -> -1.
SignVec hash_pm1(std::span<const std::uint8_t> data, std::size_t n);

/// H~: {0,1}* -> {-1,0,1}^n. SHAKE256("H2" || data) read as 2-bit chunks
/// (LSB-first) with 00 -> 0, 01 -> 1, 10 -> -1 and 11 rejected.
TernaryVec hash_ternary(std::span<const std::uint8_t> data, std::size_t n);

/// (Super-)exceptional set {c_1 = 1, c_2, ..., c_n} subset of Z_N.
struct ExceptionalSet {
  ExponentVec c;
  bool super = false;

  friend bool operator==(const ExceptionalSet&, const ExceptionalSet&) = default;
};

/// True iff c_1 = 1, entries are in [0, N) and distinct, every difference
/// c_i - c_j (i != j) is a unit mod N and, when `super`, every sum
/// c_i + c_j (i = j included) is a unit.
bool check_exceptional_set(const ExponentVec& c, std::uint64_t N, bool super);

/// c_i = i when that satisfies the constraints, otherwise a randomized
/// greedy search seeded deterministically from (n, N). Throws
/// `unsatisfiable` when no set is found.
ExceptionalSet gen_exceptional_set(std::size_t n, std::uint64_t N, bool super);

/// c_i = i (mod N) without validating invertibility.
ExceptionalSet canonical_set_unchecked(std::size_t n, std::uint64_t N);

/// How Setup obtains its set. `automatic` tries super, then plain, then
/// falls back to the unchecked canonical set.
enum class SetPolicy : std::uint8_t { super = 0, plain = 1, unchecked = 2, automatic = 3 };

const char* set_policy_name(SetPolicy policy) noexcept;

/// Builds the set for a policy and reports the policy actually satisfied
/// (never `automatic`).
ExceptionalSet make_exceptional_set(SetPolicy policy, std::size_t n, std::uint64_t N, SetPolicy* achieved = nullptr);

}  // namespace csi
