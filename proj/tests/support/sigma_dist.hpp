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

// Exhaustive transcript-distribution helpers for the OR proof at n = 1.

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "csi/sigma_or.hpp"

namespace fixtures {

using namespace csi;

inline ExponentVec exp1(std::uint64_t e) { return ExponentVec(std::vector<std::uint64_t>{e}); }
inline SignVec sign1(int s) { return SignVec(std::vector<std::int8_t>{static_cast<std::int8_t>(s)}); }

inline std::vector<TernaryVec> all_challenges(std::size_t n) {
  std::vector<TernaryVec> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t k = 0; k < total; ++k) {
    TernaryVec c(n);
    std::size_t v = k;
    for (std::size_t i = 0; i < n; ++i, v /= 3) c.set(i, static_cast<int>(v % 3) - 1);
    out.push_back(c);
  }
  return out;
}

using Key1 = std::array<std::int64_t, 6>;
using Dist = std::map<Key1, std::uint64_t>;

inline Key1 flatten(const OrTranscript& t) {
  return {static_cast<std::int64_t>(t.com.Y0[0].value), static_cast<std::int64_t>(t.com.Y1[0].value), t.rsp.c0[0],
          t.rsp.c1[0], static_cast<std::int64_t>(t.rsp.r0[0]), static_cast<std::int64_t>(t.rsp.r1[0])};
}

// Honest n = 1 transcripts over all prover coins, for a fixed delta.
inline Dist honest_dist(const GroupAction& ga, Curve X0, Curve X1, int delta, const TernaryVec& c) {
  Dist d;
  const std::uint64_t N = ga.order();
  OrKeypair key;
  key.delta = delta;
  key.X0 = {X0};
  key.X1 = {X1};
  key.x_delta = exp1(ga.gaip_bruteforce(delta == 0 ? X0 : X1));
  for (std::uint64_t y = 0; y < N; ++y) {
    for (int s : {-1, 1}) {
      for (std::uint64_t r = 0; r < N; ++r) {
        auto [com, st] = or_commit_with(ga, key, OrProverCoins{exp1(y), sign1(s), exp1(r)});
        OrTranscript t{com, c, or_respond(st, ga, key, c)};
        d[flatten(t)] += 1;
      }
    }
  }
  return d;
}

inline bool proportional(const Dist& a, std::uint64_t total_a, const Dist& b, std::uint64_t total_b) {
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || v * total_b != it->second * total_a) return false;
  }
  for (const auto& [k, v] : b) {
    if (!a.count(k)) return false;
  }
  return true;
}

}  // namespace fixtures
