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

#include "csi/codec.hpp"

#include <string>

namespace csi {

void ByteWriter::uint_be(std::uint64_t v, std::size_t width) {
  if (width < 8 && (v >> (8 * width)) != 0) fail(ErrorCode::internal, "value does not fit its encoding width");
  for (std::size_t i = width; i-- > 0;) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::blob16(std::span<const std::uint8_t> b) {
  if (b.size() > 0xFFFF) fail(ErrorCode::invalid_argument, "blob longer than 65535 bytes");
  uint_be(b.size(), 2);
  bytes(b);
}

void ByteWriter::curves(const CurveVec& v, const WireContext& ctx) {
  for (auto E : v) {
    if (E.value >= ctx.curve_bound) fail(ErrorCode::internal, "curve value out of range for encoding");
    uint_be(E.value, ctx.curve_bytes);
  }
}

void ByteWriter::exponents(const ExponentVec& v, const WireContext& ctx) {
  for (auto e : v) {
    if (e >= ctx.N) fail(ErrorCode::internal, "exponent not canonical");
    uint_be(e, ctx.exp_bytes);
  }
}

void ByteWriter::ternary(const TernaryVec& v) {
  std::uint8_t acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint8_t code = v[i] == 0 ? 0 : (v[i] == 1 ? 1 : 2);
    acc |= static_cast<std::uint8_t>(code << (6 - 2 * (i % 4)));
    if (i % 4 == 3) {
      out_.push_back(acc);
      acc = 0;
    }
  }
  if (v.size() % 4 != 0) out_.push_back(acc);
}

std::uint8_t ByteReader::u8() { return bytes(1)[0]; }

std::uint64_t ByteReader::uint_be(std::size_t width) {
  auto b = bytes(width);
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

std::span<const std::uint8_t> ByteReader::bytes(std::size_t len) {
  if (len > remaining()) fail(ErrorCode::decode, "truncated payload");
  auto out = in_.subspan(pos_, len);
  pos_ += len;
  return out;
}

Bytes ByteReader::blob16() {
  auto len = uint_be(2);
  auto b = bytes(len);
  return Bytes(b.begin(), b.end());
}

CurveVec ByteReader::curves(std::size_t count, const WireContext& ctx) {
  CurveVec out(count);
  for (auto& E : out) {
    E.value = uint_be(ctx.curve_bytes);
    if (E.value >= ctx.curve_bound) fail(ErrorCode::decode, "curve value out of range");
  }
  return out;
}

ExponentVec ByteReader::exponents(std::size_t count, const WireContext& ctx) {
  ExponentVec out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = uint_be(ctx.exp_bytes);
    if (out[i] >= ctx.N) fail(ErrorCode::decode, "exponent not in [0, N)");
  }
  return out;
}

TernaryVec ByteReader::ternary(std::size_t count) {
  auto b = bytes(packed_ternary_bytes(count));
  std::vector<std::int8_t> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    int code = (b[i / 4] >> (6 - 2 * (i % 4))) & 3;
    if (code == 3) fail(ErrorCode::decode, "invalid ternary code 11");
    out[i] = static_cast<std::int8_t>(code == 0 ? 0 : (code == 1 ? 1 : -1));
  }
  if (count % 4 != 0) {
    const unsigned pad_bits = 2 * (4 - count % 4);
    if ((b.back() & ((1u << pad_bits) - 1)) != 0) fail(ErrorCode::decode, "nonzero ternary padding");
  }
  return TernaryVec(std::move(out));
}

SignVec ByteReader::signs(std::size_t count) {
  auto t = ternary(count);
  if (t.has_zero()) fail(ErrorCode::decode, "zero entry in a sign vector");
  return t.as_sign();
}

void ByteReader::expect_end(const char* what) const {
  if (remaining() != 0) fail(ErrorCode::decode, std::string(what) + ": trailing bytes");
}

WireContext wire_context(const GroupAction& ga, std::size_t n) {
  return WireContext{n, ga.curve_bytes(), ga.exponent_bytes(), ga.order(), ga.curve_bound()};
}

Bytes encode_curves(const CurveVec& v, const WireContext& ctx) {
  ByteWriter w;
  w.curves(v, ctx);
  return w.take();
}

Bytes identity_hash_input(std::span<const std::uint8_t> id, const CurveVec& X, const WireContext& ctx) {
  ByteWriter w;
  w.bytes(id);
  w.curves(X, ctx);
  return w.take();
}

}  // namespace csi
