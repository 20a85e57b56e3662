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

// Independent isogeny oracle for small p: short-Weierstrass arithmetic,
// full kernel enumeration, Velu's (t, w) formulas, and normalization back
// to Montgomery form by exhaustive search. Shares no code with the library.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

class Weierstrass {
 public:
  explicit Weierstrass(std::int64_t p) : p_(p) {}

  std::int64_t md(std::int64_t a) const { return ((a % p_) + p_) % p_; }
  std::int64_t pw(std::int64_t a, std::int64_t e) const {
    std::int64_t r = 1;
    a = md(a);
    while (e) {
      if (e & 1) r = r * a % p_;
      a = a * a % p_;
      e >>= 1;
    }
    return r;
  }
  std::int64_t inv(std::int64_t a) const { return pw(a, p_ - 2); }
  bool is_square(std::int64_t a) const { return pw(a, (p_ - 1) / 2) == 1; }
  std::optional<std::int64_t> sqrt(std::int64_t a) const {
    a = md(a);
    for (std::int64_t r = 0; r < p_; ++r) {
      if (r * r % p_ == a) return r;
    }
    return std::nullopt;
  }

  using Point = std::optional<std::pair<std::int64_t, std::int64_t>>;

  Point add(const Point& P, const Point& Q, std::int64_t a) const {
    if (!P) return Q;
    if (!Q) return P;
    auto [x1, y1] = *P;
    auto [x2, y2] = *Q;
    if (x1 == x2 && md(y1 + y2) == 0) return std::nullopt;
    std::int64_t l = (P == Q) ? md((3 * x1 % p_ * x1 + a) % p_ * inv(2 * y1))
                              : md(md(y2 - y1) * inv(md(x2 - x1)));
    std::int64_t x3 = md(l * l - x1 - x2);
    std::int64_t y3 = md(l * md(x1 - x3) - y1);
    return std::make_pair(x3, y3);
  }

  Point mul(std::int64_t k, Point P, std::int64_t a) const {
    Point R;
    while (k) {
      if (k & 1) R = add(R, P, a);
      P = add(P, P, a);
      k >>= 1;
    }
    return R;
  }

  /// Montgomery A -> Weierstrass (a, b) via x = X - A/3.
  std::pair<std::int64_t, std::int64_t> from_montgomery(std::int64_t A) const {
    const std::int64_t i3 = inv(3), i27 = inv(27);
    std::int64_t a = md(1 - A * A % p_ * i3);
    std::int64_t b = md(2 * pw(A, 3) % p_ * i27 - A * i3);
    return {a, b};
  }

  /// All Montgomery coefficients isomorphic over F_p to y^2 = x^3 + ax + b.
  std::set<std::int64_t> to_montgomery(std::int64_t a, std::int64_t b) const {
    std::set<std::int64_t> out;
    for (std::int64_t al = 0; al < p_; ++al) {
      if (md(pw(al, 3) + a * al + b) != 0) continue;
      std::int64_t s2 = md(3 * al % p_ * al + a);
      if (!is_square(s2)) continue;
      auto s = *sqrt(s2);
      for (std::int64_t ss : {s, md(-s)}) {
        if (is_square(inv(ss))) out.insert(md(3 * al % p_ * inv(ss)));
      }
    }
    return out;
  }

  /// Codomain of the isogeny whose kernel is generated by an F_p-rational
  /// point of order ell on the Montgomery curve A.
  std::int64_t rational_step(std::int64_t A, std::int64_t ell) const {
    auto [a, b] = from_montgomery(A);
    for (std::int64_t x = 0; x < p_; ++x) {
      std::int64_t rhs = md(pw(x, 3) + a * x + b);
      if (rhs == 0 || !is_square(rhs)) continue;
      Point P = std::make_pair(x, *sqrt(rhs));
      Point Q = mul((p_ + 1) / ell, P, a);
      if (!Q) continue;
      std::int64_t t = 0, w = 0;
      std::set<std::int64_t> seen;
      for (std::int64_t i = 1; i < ell; ++i) {
        auto R = mul(i, Q, a);
        auto [xr, yr] = *R;
        (void)yr;
        if (!seen.insert(xr).second) continue;
        std::int64_t gx = md(3 * xr % p_ * xr + a);
        std::int64_t tq = md(2 * gx);
        std::int64_t uq = md(4 * md(pw(xr, 3) + a * xr + b));
        t = md(t + tq);
        w = md(w + uq + xr * tq);
      }
      auto c = to_montgomery(md(a - 5 * t), md(b - 7 * w));
      if (c.size() != 1) throw std::logic_error("oracle: ambiguous Montgomery normalization");
      return *c.begin();
    }
    throw std::logic_error("oracle: no point of order ell");
  }

  /// Direction +1 uses rational points of E; -1 goes through the twist.
  std::int64_t step(std::int64_t A, std::int64_t ell, int dir) const {
    if (dir > 0) return rational_step(A, ell);
    return md(-rational_step(md(-A), ell));
  }

  std::int64_t p() const { return p_; }

 private:
  std::int64_t p_;
};

/// Number of reduced primitive forms (a, b, c), b^2 - 4ac = D, counted by
/// a different loop order than the library (c outer, a inner).
inline std::uint64_t class_number_reference(std::int64_t D) {
  std::uint64_t h = 0;
  const std::int64_t absD = -D;
  for (std::int64_t a = 1; 3 * a * a <= absD; ++a) {
    for (std::int64_t c = a; 4 * a * c <= absD + a * a; ++c) {
      for (std::int64_t b = -a; b <= a; ++b) {
        if (b * b - 4 * a * c != D) continue;
        if (b == -a) continue;
        if (a == c && b < 0) continue;
        std::int64_t g = a, x = b < 0 ? -b : b, y = c;
        auto gcd = [](std::int64_t u, std::int64_t v) {
          while (v) {
            auto t = u % v;
            u = v;
            v = t;
          }
          return u;
        };
        if (gcd(gcd(g, x), y) == 1) ++h;
      }
    }
  }
  return h;
}

}  // namespace oracle
