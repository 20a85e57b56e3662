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

// Randomized wire messages and a transport that corrupts one frame.

#include <cstdint>

#include "csi/transport.hpp"
#include "csi/wire.hpp"

namespace fixtures {

using namespace csi;

inline Bytes random_bytes(Rng& rng, std::size_t len) {
  Bytes b(len);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng.uniform(256));
  return b;
}

inline TernaryVec random_ternary(Rng& rng, std::size_t n) {
  TernaryVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.ternary());
  return v;
}

inline CurveVec random_curves(const GroupAction& ga, Rng& rng, std::size_t n) {
  return ga.act_base(ga.sample_exponent_vec(rng, n));
}

inline Message random_message(const GroupAction& ga, std::size_t n, int kind, Rng& rng) {
  switch (kind) {
    case 0: {
      IbbsSetupOptions opt;
      opt.mode = rng.bit() ? IbbsMode::paper : IbbsMode::otter;
      opt.policy = SetPolicy::automatic;
      auto ga_ptr = ga.with_length(n);
      if (rng.bit()) {
        auto [p, msk] = ibbs_setup(ga_ptr, n, rng, opt);
        return describe(p);
      }
      IbidSetupOptions io;
      io.policy = SetPolicy::automatic;
      io.mode = rng.bit() ? IbidMode::paper : IbidMode::binary;
      auto [p, s] = ibid_setup(ga_ptr, n, rng, io);
      return describe(p);
    }
    case 1: return UpkMsg{random_bytes(rng, rng.uniform(40)), {random_curves(ga, rng, n), random_curves(ga, rng, n)}};
    case 2: return RhoS1{random_curves(ga, rng, n), random_curves(ga, rng, n)};
    case 3: return RhoU{random_ternary(rng, n)};
    case 4:
      return RhoS2{random_ternary(rng, n), random_ternary(rng, n), ga.sample_exponent_vec(rng, n),
                   ga.sample_exponent_vec(rng, n)};
    case 5:
      return Signature{random_ternary(rng, n), random_ternary(rng, n), ga.sample_exponent_vec(rng, n),
                       ga.sample_exponent_vec(rng, n)};
    case 6: return IbidCommitment{random_curves(ga, rng, n), random_curves(ga, rng, n)};
    case 7: return IdChallengeMsg{random_ternary(rng, n)};
    case 8: return IdResponseMsg{ga.sample_exponent_vec(rng, n)};
    case 9: {
      auto text = random_bytes(rng, rng.uniform(60));
      return ErrorMsg{static_cast<ErrorCode>(2 + rng.uniform(12)), std::string(text.begin(), text.end())};
    }
    case 10: return MskMsg{{ga.sample_exponent(rng), ga.sample_exponent(rng)}};
    default:
      return UskMsg{random_bytes(rng, rng.uniform(20)),
                    UserSecretKey{static_cast<int>(rng.bit()), rng.bit() ? WitnessKind::x : WitnessKind::r,
                                  ga.sample_exponent_vec(rng, n)}};
  }
}

/// Corrupts one payload bit of the first frame of a given type written
/// through it. One frame per write_all, as send_frame does.
class FlipTransport final : public Transport {
 public:
  FlipTransport(Transport& inner, MsgType target, std::size_t byte, int bit)
      : inner_(inner), target_(target), byte_(byte), bit_(bit) {}

  void write_all(std::span<const std::uint8_t> data) override {
    Bytes copy(data.begin(), data.end());
    if (!done_ && copy.size() > kFrameHeaderBytes && copy[5] == static_cast<std::uint8_t>(target_)) {
      copy[kFrameHeaderBytes + byte_] ^= static_cast<std::uint8_t>(1u << bit_);
      done_ = true;
    }
    inner_.write_all(copy);
  }
  bool read_exact(std::span<std::uint8_t> out) override { return inner_.read_exact(out); }
  void close_write() override { inner_.close_write(); }

 private:
  Transport& inner_;
  MsgType target_;
  std::size_t byte_;
  int bit_;
  bool done_ = false;
};

}  // namespace fixtures
