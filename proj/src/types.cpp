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

#include "csi/types.hpp"

#include <bit>
#include <string>

namespace csi {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::io: return "io";
    case ErrorCode::decode: return "decode";
    case ErrorCode::protocol: return "protocol";
    case ErrorCode::transport: return "transport";
    case ErrorCode::retry_limit: return "retry-limit-exceeded";
    case ErrorCode::verify_failed: return "verification-failed";
    case ErrorCode::state: return "state-reuse";
    case ErrorCode::unsatisfiable: return "unsatisfiable";
    case ErrorCode::not_in_orbit: return "curve-not-in-orbit";
    case ErrorCode::internal: return "internal";
    case ErrorCode::rejected: return "rejected";
  }
  return "unknown";
}

SignVec::SignVec(std::vector<std::int8_t> v) : BasicVec(std::move(v)) {
  for (auto s : v_) {
    if (s != 1 && s != -1) fail(ErrorCode::invalid_argument, "sign vector entry outside {-1,1}");
  }
}

void SignVec::set(std::size_t i, int s) {
  if (s != 1 && s != -1) fail(ErrorCode::invalid_argument, "invalid sign");
  v_.at(i) = static_cast<std::int8_t>(s);
}

TernaryVec::TernaryVec(std::vector<std::int8_t> v) : BasicVec(std::move(v)) {
  for (auto t : v_) {
    if (t < -1 || t > 1) fail(ErrorCode::invalid_argument, "ternary vector entry outside {-1,0,1}");
  }
}

void TernaryVec::set(std::size_t i, int t) {
  if (t < -1 || t > 1) fail(ErrorCode::invalid_argument, "invalid ternary value");
  v_.at(i) = static_cast<std::int8_t>(t);
}

bool TernaryVec::has_zero() const {
  for (auto t : v_) {
    if (t == 0) return true;
  }
  return false;
}

SignVec TernaryVec::as_sign() const { return SignVec(v_); }

TernaryVec hadamard(const TernaryVec& a, const TernaryVec& b) {
  require_same_length(a.size(), b.size(), "hadamard: length mismatch");
  std::vector<std::int8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::int8_t>(a[i] * b[i]);
  return TernaryVec(std::move(out));
}

SignVec hadamard(const SignVec& a, const SignVec& b) {
  require_same_length(a.size(), b.size(), "hadamard: length mismatch");
  std::vector<std::int8_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::int8_t>(a[i] * b[i]);
  return SignVec(std::move(out));
}

Modulus::Modulus(std::uint64_t n) : n_(n) {
  if (n < 2 || n >= (std::uint64_t{1} << 63)) fail(ErrorCode::invalid_argument, "modulus out of range");
}

std::uint64_t Modulus::from_signed(std::int64_t a) const noexcept {
  auto n = static_cast<std::int64_t>(n_);
  auto r = a % n;
  if (r < 0) r += n;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t Modulus::add(std::uint64_t a, std::uint64_t b) const noexcept {
  std::uint64_t s = a + b;  // no overflow: a, b < 2^63
  return s >= n_ ? s - n_ : s;
}

std::uint64_t Modulus::sub(std::uint64_t a, std::uint64_t b) const noexcept {
  return a >= b ? a - b : a + n_ - b;
}

std::uint64_t Modulus::neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : n_ - a; }

std::uint64_t Modulus::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n_);
}

std::uint64_t Modulus::mul_small(std::uint64_t a, int s) const noexcept {
  if (s == 0) return 0;
  std::uint64_t m = mul(a, static_cast<std::uint64_t>(s < 0 ? -s : s) % n_);
  return s < 0 ? neg(m) : m;
}

bool Modulus::is_invertible(std::uint64_t a) const noexcept { return gcd_u64(a % n_, n_) == 1; }

std::uint64_t Modulus::inv(std::uint64_t a) const {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(n_), new_r = static_cast<std::int64_t>(a % n_);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) fail(ErrorCode::invalid_argument, "element not invertible mod N: " + std::to_string(a));
  return from_signed(t);
}

std::int64_t Modulus::centered(std::uint64_t a) const noexcept {
  a %= n_;
  return a >= (n_ + 1) / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(n_)
                           : static_cast<std::int64_t>(a);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned ceil_log2(std::uint64_t x) noexcept {
  if (x <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(x - 1));
}

}  // namespace csi
