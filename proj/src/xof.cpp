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

#include "csi/xof.hpp"

#include <openssl/evp.h>

#include <memory>

#include "csi/errors.hpp"

namespace csi {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
using MdCtx = std::unique_ptr<EVP_MD_CTX, MdCtxDeleter>;

MdCtx new_ctx(const EVP_MD* md) {
  MdCtx ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) fail(ErrorCode::internal, "digest init failed");
  return ctx;
}

}  // namespace

Bytes shake256(std::span<const std::span<const std::uint8_t>> parts, std::size_t out_len) {
  auto ctx = new_ctx(EVP_shake256());
  for (auto part : parts) {
    if (!part.empty() && EVP_DigestUpdate(ctx.get(), part.data(), part.size()) != 1) {
      fail(ErrorCode::internal, "shake256 update failed");
    }
  }
  Bytes out(out_len);
  if (out_len > 0 && EVP_DigestFinalXOF(ctx.get(), out.data(), out_len) != 1) {
    fail(ErrorCode::internal, "shake256 squeeze failed");
  }
  return out;
}

Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len) {
  std::span<const std::uint8_t> parts[] = {data};
  return shake256(parts, out_len);
}

Bytes sha256(std::span<const std::uint8_t> data) {
  auto ctx = new_ctx(EVP_sha256());
  if (!data.empty()) EVP_DigestUpdate(ctx.get(), data.data(), data.size());
  Bytes out(32);
  unsigned len = 0;
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1) fail(ErrorCode::internal, "sha256 failed");
  return out;
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * data.size());
  for (auto b : data) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) fail(ErrorCode::invalid_argument, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]), lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) fail(ErrorCode::invalid_argument, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

XofStream::XofStream(Bytes input, std::size_t initial) : input_(std::move(input)) {
  buf_ = shake256(input_, initial == 0 ? 64 : initial);
}

std::uint8_t XofStream::next_byte() {
  if (pos_ == buf_.size()) buf_ = shake256(input_, 2 * buf_.size());
  return buf_[pos_++];
}

}  // namespace csi
