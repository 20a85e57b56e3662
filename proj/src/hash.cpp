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

#include "csi/hash.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "csi/rng.hpp"

namespace csi {

namespace {

Bytes tagged(std::string_view tag, std::span<const std::uint8_t> data) {
  Bytes input(tag.size() + data.size());
  std::copy(tag.begin(), tag.end(), input.begin());
  std::copy(data.begin(), data.end(), input.begin() + static_cast<std::ptrdiff_t>(tag.size()));
  return input;
}

}  // namespace

SignVec hash_pm1(std::span<const std::uint8_t> data, std::size_t n) {
  Bytes stream = shake256(tagged("H1", data), (n + 7) / 8);
  std::vector<std::int8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = ((stream[i / 8] >> (i % 8)) & 1) ? -1 : 1;
  }
  return SignVec(std::move(out));
}

TernaryVec hash_ternary(std::span<const std::uint8_t> data, std::size_t n) {
  XofStream xof(tagged("H2", data), (n + 3) / 4 + 8);
  std::vector<std::int8_t> out;
  out.reserve(n);
  while (out.size() < n) {
    std::uint8_t byte = xof.next_byte();
    for (int k = 0; k < 4 && out.size() < n; ++k) {
      switch ((byte >> (2 * k)) & 3) {
        case 0: out.push_back(0); break;
        case 1: out.push_back(1); break;
        case 2: out.push_back(-1); break;
        default: break;
      }
    }
  }
  return TernaryVec(std::move(out));
}

bool check_exceptional_set(const ExponentVec& c, std::uint64_t N, bool super) {
  if (N < 2 || c.empty() || c[0] != 1 % N) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= N) return false;
    if (super && gcd_u64((c[i] + c[i]) % N, N) != 1) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const std::uint64_t diff = (c[i] + N - c[j]) % N;
      if (gcd_u64(diff, N) != 1) return false;
      if (super && gcd_u64((c[i] + c[j]) % N, N) != 1) return false;
    }
  }
  return true;
}

ExceptionalSet canonical_set_unchecked(std::size_t n, std::uint64_t N) {
  if (N < 2) fail(ErrorCode::invalid_argument, "exceptional set: N must be at least 2");
  ExponentVec c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = (i + 1) % N;
  return ExceptionalSet{std::move(c), false};
}

ExceptionalSet gen_exceptional_set(std::size_t n, std::uint64_t N, bool super) {
  if (n == 0) fail(ErrorCode::invalid_argument, "exceptional set: n must be positive");
  if (N < 3 || N % 2 == 0) fail(ErrorCode::invalid_argument, "exceptional set: N must be odd and >= 3");
  if (n < N) {
    ExceptionalSet canonical = canonical_set_unchecked(n, N);
    if (check_exceptional_set(canonical.c, N, super)) return {std::move(canonical.c), super};
  }
  if (n > N) fail(ErrorCode::unsatisfiable, "exceptional set: n exceeds N");

  auto compatible = [&](const ExponentVec& set, std::uint64_t x) {
    if (super && gcd_u64((x + x) % N, N) != 1) return false;
    for (auto c : set) {
      if (gcd_u64((x + N - c) % N, N) != 1) return false;
      if (super && gcd_u64((x + c) % N, N) != 1) return false;
    }
    return true;
  };

  std::vector<std::uint64_t> candidates;
  if (N <= (1u << 20)) {
    for (std::uint64_t x = 2; x < N; ++x) candidates.push_back(x);
  }
  Rng rng(std::uint64_t{n} * 0x9e3779b97f4a7c15ull ^ N);
  for (int attempt = 0; attempt < 64; ++attempt) {
    ExponentVec set(std::vector<std::uint64_t>{1});
    if (!compatible(ExponentVec{}, 1)) break;
    if (!candidates.empty()) {
      for (std::size_t i = candidates.size(); i > 1; --i) std::swap(candidates[i - 1], candidates[rng.uniform(i)]);
      for (auto x : candidates) {
        if (set.size() == n) break;
        if (compatible(set, x)) set.push_back(x);
      }
    } else {
      for (int tries = 0; set.size() < n && tries < 1 << 16; ++tries) {
        std::uint64_t x = 2 + rng.uniform(N - 2);
        if (compatible(set, x)) set.push_back(x);
      }
    }
    if (set.size() == n) return {std::move(set), super};
  }
  fail(ErrorCode::unsatisfiable, "exceptional set: no " + std::string(super ? "super-" : "") +
                                     "exceptional set of size " + std::to_string(n) + " mod " +
                                     std::to_string(N) + " found");
}

const char* set_policy_name(SetPolicy policy) noexcept {
  switch (policy) {
    case SetPolicy::super: return "super";
    case SetPolicy::plain: return "plain";
    case SetPolicy::unchecked: return "unchecked";
    case SetPolicy::automatic: return "auto";
  }
  return "unknown";
}

ExceptionalSet make_exceptional_set(SetPolicy policy, std::size_t n, std::uint64_t N, SetPolicy* achieved) {
  auto report = [&](SetPolicy p) {
    if (achieved) *achieved = p;
  };
  switch (policy) {
    case SetPolicy::super: report(policy); return gen_exceptional_set(n, N, true);
    case SetPolicy::plain: report(policy); return gen_exceptional_set(n, N, false);
    case SetPolicy::unchecked: report(policy); return canonical_set_unchecked(n, N);
    case SetPolicy::automatic: break;
  }
  for (SetPolicy p : {SetPolicy::super, SetPolicy::plain}) {
    try {
      auto set = make_exceptional_set(p, n, N, achieved);
      return set;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unsatisfiable) throw;
    }
  }
  report(SetPolicy::unchecked);
  return canonical_set_unchecked(n, N);
}

}  // namespace csi
