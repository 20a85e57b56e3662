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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "csi/errors.hpp"

namespace csi {

/// Element of the orbit of E0. For the CSIDH backend `value` is the
/// Montgomery coefficient A of y^2 = x^3 + Ax^2 + x over F_p; for the toy
/// backend it is the residue z in Z_N. E0 is value 0 in both backends.
struct Curve {
  std::uint64_t value = 0;

  friend auto operator<=>(const Curve&, const Curve&) = default;
};

using CurveVec = std::vector<Curve>;

template <class T, class Tag>
class BasicVec {
 public:
  using value_type = T;

  BasicVec() = default;
  explicit BasicVec(std::size_t n, T fill = T{}) : v_(n, fill) {}
  explicit BasicVec(std::vector<T> v) : v_(std::move(v)) {}

  std::size_t size() const noexcept { return v_.size(); }
  bool empty() const noexcept { return v_.empty(); }
  const T& operator[](std::size_t i) const { return v_[i]; }
  auto begin() const noexcept { return v_.begin(); }
  auto end() const noexcept { return v_.end(); }
  std::span<const T> view() const noexcept { return v_; }
  const std::vector<T>& raw() const noexcept { return v_; }

  friend bool operator==(const BasicVec&, const BasicVec&) = default;
  friend auto operator<=>(const BasicVec&, const BasicVec&) = default;

 protected:
  std::vector<T> v_;
};

struct ExponentTag {};

/// Vector over Z_N, entries kept in the canonical range [0, N). The modulus
/// lives with the backend; arithmetic helpers take a `Modulus`.
class ExponentVec : public BasicVec<std::uint64_t, ExponentTag> {
 public:
  using BasicVec::BasicVec;
  std::uint64_t& operator[](std::size_t i) { return v_[i]; }
  using BasicVec::operator[];
  void push_back(std::uint64_t e) { v_.push_back(e); }
};

struct SignTag {};
struct TernaryTag {};

/// Vector over {-1, 1}.
class SignVec : public BasicVec<std::int8_t, SignTag> {
 public:
  SignVec() = default;
  explicit SignVec(std::size_t n) : BasicVec(n, std::int8_t{1}) {}
  explicit SignVec(std::vector<std::int8_t> v);

  void set(std::size_t i, int s);
};

/// Vector over {-1, 0, 1}.
class TernaryVec : public BasicVec<std::int8_t, TernaryTag> {
 public:
  TernaryVec() = default;
  explicit TernaryVec(std::size_t n) : BasicVec(n, std::int8_t{0}) {}
  explicit TernaryVec(std::vector<std::int8_t> v);
  TernaryVec(const SignVec& s) : BasicVec(s.raw()) {}  // NOLINT: {-1,1} ⊂ {-1,0,1}

  void set(std::size_t i, int t);
  bool has_zero() const;
  bool is_sign_vector() const { return !has_zero(); }
  SignVec as_sign() const;
};

/// Componentwise products. Lengths must match.
TernaryVec hadamard(const TernaryVec& a, const TernaryVec& b);
SignVec hadamard(const SignVec& a, const SignVec& b);

/// Arithmetic in Z_N for N < 2^63.
class Modulus {
 public:
  explicit Modulus(std::uint64_t n);

  std::uint64_t value() const noexcept { return n_; }
  std::uint64_t reduce(std::uint64_t a) const noexcept { return a % n_; }
  std::uint64_t from_signed(std::int64_t a) const noexcept;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t neg(std::uint64_t a) const noexcept;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  /// a * s for a small signed factor s (a sign or ternary entry).
  std::uint64_t mul_small(std::uint64_t a, int s) const noexcept;
  bool is_invertible(std::uint64_t a) const noexcept;
  /// Variable-time inverse via extended gcd; throws if gcd(a, N) != 1.
  std::uint64_t inv(std::uint64_t a) const;
  /// Centered representative in [-N/2, N/2).
  std::int64_t centered(std::uint64_t a) const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::uint64_t n_;
};

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;

/// ceil(log2(x)) for x >= 1; the bit width needed for values in [0, x).
unsigned ceil_log2(std::uint64_t x) noexcept;

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) fail(ErrorCode::invalid_argument, what);
}

}  // namespace csi
