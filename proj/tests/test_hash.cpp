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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <string>

#include "csi/hash.hpp"
#include "csi/rng.hpp"
#include "csi/xof.hpp"

using namespace csi;

namespace {

// Regression vectors produced once with an independent SHAKE256 (Python
// hashlib) applying the same tag and bit conventions.
constexpr const char* kPm1Stream =
    "-+--------++--++----++-++--------+-+-++-+---+-++-+++---+--++-+-+--+-+++++--+-++-+++--+++---+++-+++--++--++-+---+"
    "--+-++++-+----++++++---+---+-+-+-+-++++-++-----+----++--++-+--++--+-+++----++++-+-+-++-+--++-+++-++-+--++----"
    "---+-+++-+-+----+-+++---+--+-++----++-++---+++-----+--+--++++--+--++-+-++--+-+-";
constexpr const char* kTernaryStream =
    "-+0-0+-0+++++0+0+0++-00+---+0+0---++-0--+--0+++00-+++-0-0+++++---0+-0++0-0+0++0+0-+-0+0++---+00--0+++-0++++-+0--"
    "-0+-00000+++00++000-000--00-++---000000-00--0--+-++0+0-0++00+0-+---00-0--0+0++0-0+0+++00-00+00+--+0-++-0+-00-0"
    "++--0-+++00+00--+++00-+0+-0+0++00-0+0++++-0-000-+++--+---0+0++0+00+-++00+-0+++";

std::string render(std::span<const std::int8_t> v) {
  std::string s;
  for (auto x : v) s.push_back(x == 0 ? '0' : (x == 1 ? '+' : '-'));
  return s;
}

}  // namespace

TEST_CASE("shake256 known answer") {
  CHECK(to_hex(shake256(std::span<const std::uint8_t>{}, 32)) ==
        "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");
  auto short_out = shake256(as_bytes("abc"), 16);
  auto long_out = shake256(as_bytes("abc"), 64);
  CHECK(std::equal(short_out.begin(), short_out.end(), long_out.begin()));
}

TEST_CASE("hex helpers") {
  CHECK(from_hex("00ff10") == Bytes{0x00, 0xff, 0x10});
  CHECK(to_hex(Bytes{0xde, 0xad}) == "dead");
  CHECK_THROWS_AS(from_hex("abc"), Error);
  CHECK_THROWS_AS(from_hex("zz"), Error);
}

TEST_CASE("hash_pm1 regression and determinism") {
  auto h = hash_pm1(as_bytes("abc"), 4);
  CHECK(h.raw() == std::vector<std::int8_t>{1, -1, 1, 1});
  CHECK(hash_pm1(as_bytes("abc"), 4) == h);
  CHECK(hash_pm1(as_bytes("abc"), 16).raw() ==
        std::vector<std::int8_t>{1, -1, 1, 1, -1, -1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1});
  CHECK(render(hash_pm1(as_bytes("stream-test"), 300).view()) == kPm1Stream);
  CHECK(hash_pm1(as_bytes("abd"), 64) != hash_pm1(as_bytes("abc"), 64));
  CHECK(hash_pm1(as_bytes(""), 0).size() == 0);
}

TEST_CASE("hash_ternary regression and unbounded stream") {
  auto h = hash_ternary(as_bytes("abc"), 4);
  CHECK(h.raw() == std::vector<std::int8_t>{0, -1, 0, 0});
  CHECK(hash_ternary(as_bytes("abc"), 16).raw() ==
        std::vector<std::int8_t>{0, -1, 0, 0, 1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0});
  CHECK(render(hash_ternary(as_bytes("stream-test"), 300).view()) == kTernaryStream);
  auto big = hash_ternary(as_bytes("x"), 5000);
  CHECK(big.size() == 5000);
  for (auto t : big) CHECK((t >= -1 && t <= 1));
}

TEST_CASE("hashes are domain separated") {
  auto a = hash_pm1(as_bytes("abc"), 64);
  auto b = hash_ternary(as_bytes("abc"), 64);
  CHECK_FALSE(b.is_sign_vector());
  CHECK(TernaryVec(a) != b);
}

TEST_CASE("hash_ternary frequencies") {
  std::array<double, 3> counts{};
  const int hashes = 100000;
  const std::size_t n = 4;
  for (int i = 0; i < hashes; ++i) {
    std::string in = "freq" + std::to_string(i);
    for (auto t : hash_ternary(as_bytes(in), n)) counts[t + 1] += 1;
  }
  for (auto c : counts) CHECK(std::abs(c / (hashes * n) - 1.0 / 3) < 0.01);
}

TEST_CASE("exceptional set checks") {
  CHECK(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 2, 3}), 101, true));
  CHECK_FALSE(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 4}), 6, false));
  CHECK_FALSE(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 4}), 10, true));
  CHECK(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 4}), 10, false));
  CHECK_FALSE(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{2, 3}), 101, false));
  CHECK_FALSE(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 1}), 101, false));
  CHECK_FALSE(check_exceptional_set(ExponentVec(std::vector<std::uint64_t>{1, 200}), 101, false));
}

TEST_CASE("exceptional set generation") {
  auto s = gen_exceptional_set(3, 101, true);
  CHECK(s.c.raw() == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(s.super);
  CHECK_THROWS_AS(gen_exceptional_set(2, 6, true), Error);
  for (std::uint64_t N : {7ull, 27ull, 35ull, 101ull, 105ull, 65521ull}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      for (bool super : {false, true}) {
        try {
          auto set = gen_exceptional_set(n, N, super);
          CHECK(check_exceptional_set(set.c, N, super));
          CHECK(set.c.size() == n);
          CHECK(set.c[0] == 1);
          if (n >= 2) {
            ExponentVec dup = set.c;
            dup[1] = dup[0];
            CHECK_FALSE(check_exceptional_set(dup, N, super));
          }
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::unsatisfiable);
        }
      }
    }
  }
}

TEST_CASE("set limits for composite N = 27") {
  // Every residue class mod 3 holds at most one element of an exceptional
  // set mod 27, and 2c must be a unit for a super set.
  CHECK(gen_exceptional_set(3, 27, false).c.size() == 3);
  CHECK_THROWS_AS(gen_exceptional_set(4, 27, false), Error);
  CHECK(gen_exceptional_set(1, 27, true).c.size() == 1);
  CHECK_THROWS_AS(gen_exceptional_set(2, 27, true), Error);
  SetPolicy got{};
  auto fallback = make_exceptional_set(SetPolicy::automatic, 8, 27, &got);
  CHECK(got == SetPolicy::unchecked);
  CHECK(fallback.c.raw() == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8});
  make_exceptional_set(SetPolicy::automatic, 3, 27, &got);
  CHECK(got == SetPolicy::plain);
  make_exceptional_set(SetPolicy::automatic, 8, 101, &got);
  CHECK(got == SetPolicy::super);
}

TEST_CASE("non-canonical search for composite moduli") {
  // Mod 35 a plain set holds at most 5 elements, one per residue mod 5.
  for (std::size_t n = 1; n <= 5; ++n) CHECK(check_exceptional_set(gen_exceptional_set(n, 35, false).c, 35, false));
  CHECK_THROWS_AS(gen_exceptional_set(6, 35, false), Error);
  CHECK(check_exceptional_set(gen_exceptional_set(3, 105, false).c, 105, false));
  CHECK_THROWS_AS(gen_exceptional_set(4, 105, false), Error);
}
