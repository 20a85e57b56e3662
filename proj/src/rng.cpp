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

#include "csi/rng.hpp"

#include <openssl/rand.h>

#include "csi/errors.hpp"

namespace csi {

namespace {
constexpr std::string_view kRngTag = "CSI-RNG";
constexpr std::size_t kBlockBytes = 1024;
}  // namespace

Rng::Rng(std::span<const std::uint8_t> seed) : seed_(seed.begin(), seed.end()) {}

Rng::Rng(std::uint64_t seed) {
  seed_.resize(8);
  for (int i = 0; i < 8; ++i) seed_[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
}

Rng Rng::from_os() {
  std::array<std::uint8_t, 32> seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    fail(ErrorCode::internal, "operating system RNG unavailable");
  }
  return Rng(seed);
}

void Rng::refill() {
  std::array<std::uint8_t, 8> ctr{};
  for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  std::span<const std::uint8_t> parts[] = {as_bytes(kRngTag), seed_, ctr};
  block_ = shake256(parts, kBlockBytes);
  pos_ = 0;
}

std::uint64_t Rng::next_u64() {
  if (pos_ + 8 > block_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = v << 8 | block_[pos_ + i];
  pos_ += 8;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::invalid_argument, "uniform: bound must be positive");
  // 2^64 mod bound; values below it are rejected so the rest is a whole
  // number of residue cycles.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = next_u64();
    if (x >= threshold) return x % bound;
  }
}

bool Rng::bit() { return (next_u64() & 1) != 0; }

int Rng::sign() { return bit() ? -1 : 1; }

int Rng::ternary() { return static_cast<int>(uniform(3)) - 1; }

Rng Rng::fork() {
  std::array<std::uint8_t, 32> child{};
  for (std::size_t i = 0; i < child.size(); i += 8) {
    auto v = next_u64();
    for (int j = 0; j < 8; ++j) child[i + j] = static_cast<std::uint8_t>(v >> (56 - 8 * j));
  }
  return Rng(child);
}

}  // namespace csi
