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

#include "csi/action.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace csi {

const char* backend_name(BackendKind kind) noexcept {
  return kind == BackendKind::toy ? "toy" : "csidh";
}

bool is_prime_u64(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t class_number_bqf(std::int64_t D) {
  if (D >= 0) fail(ErrorCode::invalid_argument, "class_number_bqf: discriminant must be negative");
  const std::int64_t rem = ((D % 4) + 4) % 4;
  if (rem != 0 && rem != 1) fail(ErrorCode::invalid_argument, "class_number_bqf: D must be 0 or 1 mod 4");
  const __int128 absD = -static_cast<__int128>(D);
  std::uint64_t count = 0;
  // Reduced forms: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
  for (std::int64_t a = 1; 3 * static_cast<__int128>(a) * a <= absD; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      __int128 num = static_cast<__int128>(b) * b - D;
      if (num % (4 * a) != 0) continue;
      auto c = static_cast<std::int64_t>(num / (4 * a));
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      auto g = std::gcd(std::gcd(a, b < 0 ? -b : b), c);
      if (g != 1) continue;
      ++count;
    }
  }
  return count;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (std::uint64_t{1} << 63) || !is_prime_u64(p)) {
    fail(ErrorCode::invalid_argument, "PrimeField: modulus must be an odd prime below 2^63");
  }
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const noexcept {
  std::uint64_t s = a + b;
  return s >= p_ ? s - p_ : s;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const noexcept {
  return a >= b ? a - b : a + p_ - b;
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
  std::uint64_t r = 1;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) fail(ErrorCode::internal, "PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

int PrimeField::legendre(std::uint64_t a) const noexcept {
  a %= p_;
  if (a == 0) return 0;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

namespace montgomery {

XZ xdbl(const PrimeField& F, std::uint64_t a24, XZ P) {
  auto t1 = F.sqr(F.add(P.X, P.Z));
  auto t2 = F.sqr(F.sub(P.X, P.Z));
  auto t3 = F.sub(t1, t2);  // 4XZ
  return XZ{F.mul(t1, t2), F.mul(t3, F.add(t2, F.mul(a24, t3)))};
}

XZ xadd(const PrimeField& F, XZ P, XZ Q, XZ diff) {
  auto u = F.mul(F.sub(P.X, P.Z), F.add(Q.X, Q.Z));
  auto v = F.mul(F.add(P.X, P.Z), F.sub(Q.X, Q.Z));
  return XZ{F.mul(diff.Z, F.sqr(F.add(u, v))), F.mul(diff.X, F.sqr(F.sub(u, v)))};
}

XZ ladder(const PrimeField& F, std::uint64_t a24, std::uint64_t k, std::uint64_t x) {
  if (k == 0) return XZ{};
  const XZ P{x % F.p(), 1};
  XZ R0 = P;
  XZ R1 = xdbl(F, a24, P);
  for (int bit = std::bit_width(k) - 2; bit >= 0; --bit) {
    if ((k >> bit) & 1) {
      R0 = xadd(F, R0, R1, P);
      R1 = xdbl(F, a24, R1);
    } else {
      R1 = xadd(F, R0, R1, P);
      R0 = xdbl(F, a24, R0);
    }
  }
  return R0;
}

std::uint64_t velu_codomain(const PrimeField& F, std::uint64_t A, std::span<const std::uint64_t> kernel_x) {
  std::uint64_t tau = 1, sigma = 0;
  for (auto xi : kernel_x) {
    tau = F.mul(tau, xi);
    sigma = F.add(sigma, F.sub(xi, F.inv(xi)));
  }
  return F.mul(F.sqr(tau), F.sub(A % F.p(), F.mul(6 % F.p(), sigma)));
}

std::uint64_t velu_step(const PrimeField& F, std::uint64_t A, std::uint64_t ell, int direction, Rng& rng,
                        unsigned retry_budget) {
  const std::uint64_t p = F.p();
  if (ell < 3 || ell % 2 == 0 || (p + 1) % ell != 0) {
    fail(ErrorCode::invalid_argument, "velu_step: ell must be an odd prime dividing p + 1");
  }
  if (direction != 1 && direction != -1) fail(ErrorCode::invalid_argument, "velu_step: direction must be +1 or -1");
  const std::uint64_t a24 = F.mul(F.add(A % p, 2), F.inv(4));
  const std::uint64_t cofactor = (p + 1) / ell;
  const std::size_t d = (ell - 1) / 2;

  for (unsigned attempt = 0; attempt < retry_budget;) {
    std::uint64_t x = rng.uniform(p);
    std::uint64_t rhs = F.mul(x, F.add(F.mul(x, F.add(x, A % p)), 1));
    int chi = F.legendre(rhs);
    if (chi != direction) continue;  // wrong curve (or 2-torsion); does not consume the budget
    ++attempt;
    XZ Q = ladder(F, a24, cofactor, x);
    if (Q.Z == 0) continue;
    const std::uint64_t xq = F.mul(Q.X, F.inv(Q.Z));
    if (ladder(F, a24, ell, xq).Z != 0) continue;

    std::vector<std::uint64_t> kernel_x;
    kernel_x.reserve(d);
    const XZ base{xq, 1};
    XZ prev = base, cur = base;
    bool ok = true;
    for (std::size_t i = 1; i <= d; ++i) {
      if (i == 2) {
        cur = xdbl(F, a24, base);
      } else if (i > 2) {
        XZ next = xadd(F, cur, base, prev);
        prev = cur;
        cur = next;
      }
      if (cur.Z == 0) {
        ok = false;
        break;
      }
      kernel_x.push_back(F.mul(cur.X, F.inv(cur.Z)));
    }
    if (!ok) continue;
    return velu_codomain(F, A, kernel_x);
  }
  fail(ErrorCode::internal, "velu_step: no point of order " + std::to_string(ell) + " found within retry budget");
}

}  // namespace montgomery

CurveVec enumerate_csidh_orbit(const PrimeField& F, std::size_t bound, Rng& rng) {
  CurveVec orbit{Curve{0}};
  std::unordered_set<std::uint64_t> seen{0};
  for (;;) {
    std::uint64_t next = montgomery::velu_step(F, orbit.back().value, 3, +1, rng);
    if (next == 0) break;
    if (!seen.insert(next).second) fail(ErrorCode::internal, "enumerate_orbit: walk cycled without returning to E0");
    orbit.push_back(Curve{next});
    if (orbit.size() > bound) {
      fail(ErrorCode::invalid_argument, "enumerate_orbit: orbit exceeds configured bound (wrong generator?)");
    }
  }
  return orbit;
}

GroupAction::GroupAction(Token, ActionParams params, CurveVec orbit)
    : params_(std::move(params)), zn_(params_.N), orbit_(std::move(orbit)) {
  if (params_.kind == BackendKind::csidh) {
    index_.reserve(orbit_.size());
    for (std::size_t i = 0; i < orbit_.size(); ++i) index_.emplace(orbit_[i].value, i);
  }
}

std::shared_ptr<const GroupAction> GroupAction::make_toy(std::uint64_t N, std::size_t n) {
  if (N < 3 || N % 2 == 0) fail(ErrorCode::invalid_argument, "toy backend: N must be odd and >= 3");
  ActionParams params{BackendKind::toy, 0, {}, N, n, kToyGenerator};
  return std::make_shared<const GroupAction>(Token{}, std::move(params), CurveVec{});
}

std::shared_ptr<const GroupAction> GroupAction::make_csidh(std::uint64_t p, std::vector<std::uint64_t> ells,
                                                           std::size_t n, std::size_t orbit_bound) {
  if (ells.empty()) fail(ErrorCode::invalid_argument, "csidh backend: empty ell list");
  std::sort(ells.begin(), ells.end());
  if (std::adjacent_find(ells.begin(), ells.end()) != ells.end()) {
    fail(ErrorCode::invalid_argument, "csidh backend: ell list has duplicates");
  }
  if (ells.front() != 3) fail(ErrorCode::invalid_argument, "csidh backend: generator convention needs ell = 3");
  unsigned __int128 prod = 4;
  for (auto ell : ells) {
    if (ell % 2 == 0 || !is_prime_u64(ell)) fail(ErrorCode::invalid_argument, "csidh backend: ells must be odd primes");
    prod *= ell;
    if (prod > (static_cast<unsigned __int128>(1) << 62)) fail(ErrorCode::invalid_argument, "csidh backend: p too large");
  }
  if (static_cast<std::uint64_t>(prod - 1) != p) {
    fail(ErrorCode::invalid_argument, "csidh backend: p != 4 * prod(ell) - 1");
  }
  PrimeField F(p);  // checks primality
  Rng rng(std::uint64_t{0x0b17});
  CurveVec orbit = enumerate_csidh_orbit(F, orbit_bound, rng);
  const std::uint64_t N = orbit.size();
  if (N % 2 == 0) fail(ErrorCode::invalid_argument, "csidh backend: class number is even");
  if (class_number_bqf(-4 * static_cast<std::int64_t>(p)) != N) {
    fail(ErrorCode::internal, "csidh backend: orbit size disagrees with class_number_bqf(-4p)");
  }
  ActionParams params{BackendKind::csidh, p, std::move(ells), N, n, kCsidhGenerator};
  return std::make_shared<const GroupAction>(Token{}, std::move(params), std::move(orbit));
}

std::shared_ptr<const GroupAction> GroupAction::make(const ActionParams& params) {
  std::shared_ptr<const GroupAction> g;
  if (params.kind == BackendKind::toy) {
    if (params.generator != kToyGenerator) fail(ErrorCode::invalid_argument, "toy backend: unknown generator tag");
    g = make_toy(params.N, params.n);
  } else {
    if (params.generator != kCsidhGenerator) fail(ErrorCode::invalid_argument, "csidh backend: unknown generator tag");
    g = make_csidh(params.p, params.ells, params.n);
    if (g->order() != params.N) fail(ErrorCode::invalid_argument, "csidh backend: N does not match the orbit");
  }
  return g;
}

std::shared_ptr<const GroupAction> GroupAction::with_length(std::size_t n) const {
  ActionParams params = params_;
  params.n = n;
  return std::make_shared<const GroupAction>(Token{}, std::move(params), orbit_);
}

bool GroupAction::in_orbit(Curve E) const noexcept {
  if (params_.kind == BackendKind::toy) return E.value < params_.N;
  return index_.contains(E.value);
}

std::uint64_t GroupAction::index_of(Curve E) const {
  if (params_.kind == BackendKind::toy) return E.value;
  return index_.at(E.value);
}

void GroupAction::check_member(Curve E) const {
  if (!in_orbit(E)) fail(ErrorCode::not_in_orbit, "curve not in the orbit of E0: " + std::to_string(E.value));
}

Curve GroupAction::shift(Curve E, std::uint64_t e) const {
  const std::uint64_t idx = zn_.add(index_of(E), zn_.reduce(e));
  return params_.kind == BackendKind::toy ? Curve{idx} : orbit_[idx];
}

Curve GroupAction::act(std::uint64_t e, Curve E) const {
  check_member(E);
  actions_.fetch_add(1, std::memory_order_relaxed);
  return shift(E, e);
}

CurveVec GroupAction::act_vec(const ExponentVec& e, const CurveVec& Es) const {
  require_same_length(e.size(), Es.size(), "act_vec: length mismatch");
  CurveVec out(Es.size());
  for (std::size_t i = 0; i < Es.size(); ++i) out[i] = act(e[i], Es[i]);
  return out;
}

CurveVec GroupAction::act_base(const ExponentVec& e) const { return act_vec(e, base_vec(e.size())); }

Curve GroupAction::twist(Curve E) const {
  check_member(E);
  if (params_.kind == BackendKind::toy) return Curve{zn_.neg(E.value)};
  return Curve{E.value == 0 ? 0 : params_.p - E.value};
}

Curve GroupAction::curve_power(Curve E, int s) const {
  if (s == 1) {
    check_member(E);
    return E;
  }
  if (s == -1) return twist(E);
  fail(ErrorCode::invalid_argument, "curve_power: sign must be +1 or -1");
}

Curve GroupAction::velu_step(Curve E, std::uint64_t ell, int direction, Rng& rng) const {
  if (params_.kind != BackendKind::csidh) fail(ErrorCode::invalid_argument, "velu_step: csidh backend only");
  if (std::find(params_.ells.begin(), params_.ells.end(), ell) == params_.ells.end()) {
    fail(ErrorCode::invalid_argument, "velu_step: ell not in the backend's prime list");
  }
  check_member(E);
  PrimeField F(params_.p);
  return Curve{montgomery::velu_step(F, E.value, ell, direction, rng)};
}

CurveVec GroupAction::orbit() const {
  if (params_.kind == BackendKind::csidh) return orbit_;
  if (params_.N > (std::uint64_t{1} << 24)) fail(ErrorCode::invalid_argument, "orbit: toy modulus too large to list");
  CurveVec out(params_.N);
  for (std::uint64_t z = 0; z < params_.N; ++z) out[z] = Curve{z};
  return out;
}

std::uint64_t GroupAction::gaip_bruteforce(Curve E) const {
  check_member(E);
  for (std::uint64_t a = 0; a < params_.N; ++a) {
    if (shift(base(), a) == E) return a;
  }
  fail(ErrorCode::not_in_orbit, "gaip_bruteforce: no preimage");
}

GroupAction::MtGaipSolution GroupAction::mt_gaip_bruteforce(std::span<const Curve> targets) const {
  if (targets.size() < 2) fail(ErrorCode::invalid_argument, "mt_gaip_bruteforce: need at least two targets");
  for (auto E : targets) check_member(E);
  for (std::size_t j = 1; j < targets.size(); ++j) {
    for (std::uint64_t a = 0; a < params_.N; ++a) {
      if (shift(targets[0], a) == targets[j]) return {0, j, a};
    }
  }
  fail(ErrorCode::not_in_orbit, "mt_gaip_bruteforce: no solution");
}

ExponentVec GroupAction::sample_exponent_vec(Rng& rng, std::size_t n) const {
  ExponentVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sample_exponent(rng);
  return out;
}

unsigned GroupAction::curve_bits() const noexcept {
  return ceil_log2(params_.kind == BackendKind::toy ? params_.N : params_.p);
}

std::uint64_t GroupAction::curve_bound() const noexcept {
  return params_.kind == BackendKind::toy ? params_.N : params_.p;
}

}  // namespace csi
