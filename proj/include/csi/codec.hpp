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

#include <cstdint>
#include <span>
#include <string>

#include "csi/action.hpp"
#include "csi/types.hpp"
#include "csi/xof.hpp"

namespace csi {

/// Widths and bounds for the fixed-width big-endian encodings.
struct WireContext {
  std::size_t n = 0;
  std::size_t curve_bytes = 0;
  std::size_t exp_bytes = 0;
  std::uint64_t N = 0;
  std::uint64_t curve_bound = 0;

  friend bool operator==(const WireContext&, const WireContext&) = default;
};

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void uint_be(std::uint64_t v, std::size_t width);
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  /// 2-byte length prefix followed by the bytes.
  void blob16(std::span<const std::uint8_t> b);
  void curves(const CurveVec& v, const WireContext& ctx);
  void exponents(const ExponentVec& v, const WireContext& ctx);
  /// 2 bits per entry (00 = 0, 01 = +1, 10 = -1), MSB-first, zero padded.
  void ternary(const TernaryVec& v);

  const Bytes& data() const noexcept { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

/// Bounds-checked reader; every failure throws ErrorCode::decode.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint64_t uint_be(std::size_t width);
  std::span<const std::uint8_t> bytes(std::size_t len);
  Bytes blob16();
  CurveVec curves(std::size_t count, const WireContext& ctx);
  ExponentVec exponents(std::size_t count, const WireContext& ctx);
  TernaryVec ternary(std::size_t count);
  SignVec signs(std::size_t count);

  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  void expect_end(const char* what) const;

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

WireContext wire_context(const GroupAction& ga, std::size_t n);

inline std::size_t packed_ternary_bytes(std::size_t n) { return (n + 3) / 4; }

/// Curve vectors as hash input: fixed-width big-endian, index order.
Bytes encode_curves(const CurveVec& v, const WireContext& ctx);

/// id || X as hashed by Extract and Verify.
Bytes identity_hash_input(std::span<const std::uint8_t> id, const CurveVec& X, const WireContext& ctx);

}  // namespace csi
