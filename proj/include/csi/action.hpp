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

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "csi/rng.hpp"
#include "csi/types.hpp"

namespace csi {

enum class BackendKind : std::uint8_t { toy = 0, csidh = 1 };

const char* backend_name(BackendKind kind) noexcept;

/// Description of a class-group action backend.
struct ActionParams {
  BackendKind kind = BackendKind::toy;
  std::uint64_t p = 0;              // csidh only
  std::vector<std::uint64_t> ells;  // csidh only
  std::uint64_t N = 0;              // class number / toy modulus
  std::size_t n = 0;                // protocol vector length
  std::string generator;            // convention tag for g

  friend bool operator==(const ActionParams&, const ActionParams&) = default;
};

inline constexpr std::uint64_t kToyDefaultModulus = 101;
inline constexpr std::uint64_t kDeskPrime = 419;
inline constexpr const char* kToyGenerator = "toy-shift";
inline constexpr const char* kCsidhGenerator = "(3,pi-1)";

bool is_prime_u64(std::uint64_t n) noexcept;

/// Number of reduced primitive positive-definite binary quadratic forms of
/// discriminant D (D < 0, D = 0 or 1 mod 4).
std::uint64_t class_number_bqf(std::int64_t D);

/// F_p for an odd prime p < 2^63.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sqr(std::uint64_t a) const noexcept { return mul(a, a); }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
  std::uint64_t inv(std::uint64_t a) const;
  /// Legendre symbol: 0, 1 or -1.
  int legendre(std::uint64_t a) const noexcept;

 private:
  std::uint64_t p_;
};

namespace montgomery {

/// Projective x-line point (X : Z); Z = 0 is the identity.
struct XZ {
  std::uint64_t X = 1;
  std::uint64_t Z = 0;
};

XZ xdbl(const PrimeField& F, std::uint64_t a24, XZ P);
XZ xadd(const PrimeField& F, XZ P, XZ Q, XZ diff);
/// [k] x on y^2 = x^3 + Ax^2 + x, with a24 = (A + 2) / 4.
XZ ladder(const PrimeField& F, std::uint64_t a24, std::uint64_t k, std::uint64_t x);

/// Codomain coefficient of the odd-degree isogeny whose kernel has affine
/// x-coordinates `kernel_x` = x(P), x(2P), ..., x(dP):
/// A' = tau^2 (A - 6 sigma), tau = prod x_i, sigma = sum (x_i - 1/x_i).
std::uint64_t velu_codomain(const PrimeField& F, std::uint64_t A, std::span<const std::uint64_t> kernel_x);

/// One degree-ell step for the ideal (ell, pi - direction). Samples x in
/// F_p, keeps it when the Legendre symbol of x^3 + Ax^2 + x equals the
/// direction, projects by [(p+1)/ell] and retries on the identity.
std::uint64_t velu_step(const PrimeField& F, std::uint64_t A, std::uint64_t ell, int direction, Rng& rng,
                        unsigned retry_budget = 256);

}  // namespace montgomery

/// Commutative class-group action [g^a] * E with two backends. Immutable
/// after construction apart from the action-invocation counter.
class GroupAction {
 public:
  static std::shared_ptr<const GroupAction> make_toy(std::uint64_t N = kToyDefaultModulus, std::size_t n = 1);
  static std::shared_ptr<const GroupAction> make_csidh(std::uint64_t p = kDeskPrime,
                                                       std::vector<std::uint64_t> ells = {3, 5, 7},
                                                       std::size_t n = 1, std::size_t orbit_bound = 1u << 20);
  /// Rebuilds a backend from a parameter description and checks that N
  /// agrees with the enumerated orbit.
  static std::shared_ptr<const GroupAction> make(const ActionParams& params);

  /// The same backend with a different protocol vector length.
  std::shared_ptr<const GroupAction> with_length(std::size_t n) const;

  const ActionParams& params() const noexcept { return params_; }
  BackendKind kind() const noexcept { return params_.kind; }
  const Modulus& zn() const noexcept { return zn_; }
  std::uint64_t order() const noexcept { return params_.N; }
  std::size_t n() const noexcept { return params_.n; }

  Curve base() const noexcept { return Curve{0}; }
  CurveVec base_vec(std::size_t n) const { return CurveVec(n, base()); }
  bool in_orbit(Curve E) const noexcept;

  /// [g^e] * E.
  Curve act(std::uint64_t e, Curve E) const;
  CurveVec act_vec(const ExponentVec& e, const CurveVec& Es) const;
  /// [g^e] * E0 componentwise.
  CurveVec act_base(const ExponentVec& e) const;

  Curve twist(Curve E) const;
  /// E for s = 1, twist(E) for s = -1.
  Curve curve_power(Curve E, int s) const;

  /// csidh only: a direct Vélu step, not served from the orbit table.
  Curve velu_step(Curve E, std::uint64_t ell, int direction, Rng& rng) const;
  /// [E0, g*E0, g^2*E0, ...]; ends before returning to E0. The toy orbit
  /// is materialized on request (N <= 2^24).
  CurveVec orbit() const;

  /// Unique a with act(a, E0) = E, by exhaustive search.
  std::uint64_t gaip_bruteforce(Curve E) const;
  /// For targets E_1..E_k, some (i, j, a) with i != j and E_j = [g^a] * E_i.
  struct MtGaipSolution {
    std::size_t i = 0, j = 0;
    std::uint64_t a = 0;
  };
  MtGaipSolution mt_gaip_bruteforce(std::span<const Curve> targets) const;

  std::uint64_t sample_exponent(Rng& rng) const { return rng.uniform(params_.N); }
  ExponentVec sample_exponent_vec(Rng& rng, std::size_t n) const;

  unsigned curve_bits() const noexcept;
  unsigned exponent_bits() const noexcept { return ceil_log2(params_.N); }
  std::size_t curve_bytes() const noexcept { return (curve_bits() + 7) / 8; }
  std::size_t exponent_bytes() const noexcept { return (exponent_bits() + 7) / 8; }
  /// Exclusive upper bound on the serialized curve value.
  std::uint64_t curve_bound() const noexcept;

  std::uint64_t action_count() const noexcept { return actions_.load(std::memory_order_relaxed); }
  void reset_action_count() const noexcept { actions_.store(0, std::memory_order_relaxed); }

  GroupAction(const GroupAction&) = delete;
  GroupAction& operator=(const GroupAction&) = delete;

 private:
  struct Token {};

 public:
  GroupAction(Token, ActionParams params, CurveVec orbit);

 private:
  std::uint64_t index_of(Curve E) const;
  void check_member(Curve E) const;
  Curve shift(Curve E, std::uint64_t e) const;

  ActionParams params_;
  Modulus zn_;
  CurveVec orbit_;
  std::unordered_map<std::uint64_t, std::uint64_t> index_;
  mutable std::atomic<std::uint64_t> actions_{0};
};

using ActionPtr = std::shared_ptr<const GroupAction>;

/// Orbit of E0 under repeated degree-3 steps in direction +1 (the generator
/// (3, pi - 1)).
CurveVec enumerate_csidh_orbit(const PrimeField& F, std::size_t bound, Rng& rng);

}  // namespace csi
