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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace csi {

using Bytes = std::vector<std::uint8_t>;

/// SHAKE256 over the concatenation of `parts`, squeezed to `out_len` bytes.
/// Longer outputs extend shorter ones (XOF prefix property).
Bytes shake256(std::span<const std::span<const std::uint8_t>> parts, std::size_t out_len);
Bytes shake256(std::span<const std::uint8_t> data, std::size_t out_len);

/// SHA-256 digest, used for transcript payload digests.
Bytes sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Unbounded output stream of SHAKE256(prefix). Reads past the current
/// buffer re-squeeze a longer output.
class XofStream {
 public:
  explicit XofStream(Bytes input, std::size_t initial = 64);

  std::uint8_t next_byte();

 private:
  Bytes input_;
  Bytes buf_;
  std::size_t pos_ = 0;
};

}  // namespace csi
