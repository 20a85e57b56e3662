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

#include <array>
#include <cstdint>
#include <span>

#include "csi/xof.hpp"

namespace csi {

/// Deterministic random stream: SHAKE256("CSI-RNG" || seed || counter) in
/// blocks. Not thread-safe; each session owns its own instance.
class Rng {
 public:
  explicit Rng(std::span<const std::uint8_t> seed);
  explicit Rng(std::uint64_t seed);

  /// Seeded from the operating system CSPRNG.
  static Rng from_os();

  std::uint64_t next_u64();
  /// Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t uniform(std::uint64_t bound);
  bool bit();
  int sign();     // uniform over {-1, 1}
  int ternary();  // uniform over {-1, 0, 1}

  /// Independent child stream, e.g. one per session.
  Rng fork();

 private:
  void refill();

  Bytes seed_;
  std::uint64_t counter_ = 0;
  Bytes block_;
  std::size_t pos_ = 0;
};

}  // namespace csi
