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
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "csi/wire.hpp"

namespace csi {

struct TranscriptEntry {
  std::string timestamp;  // ISO-8601 UTC, millisecond resolution
  std::string role;
  std::string direction;  // "send" | "recv"
  MsgType type = MsgType::error;
  std::size_t length = 0;
  std::string sha256;   // hex digest of the payload
  std::string payload;  // hex, only with full payloads enabled and never for key frames
};

/// Append-only frame log, optionally mirrored as JSON lines to a stream.
class TranscriptLog {
 public:
  explicit TranscriptLog(std::ostream* sink = nullptr, bool full_payloads = false);

  void record(const std::string& role, const std::string& direction, const Frame& frame);
  std::vector<TranscriptEntry> entries() const;
  static std::string to_json_line(const TranscriptEntry& e);

 private:
  mutable std::mutex mu_;
  std::ostream* sink_;
  bool full_;
  std::vector<TranscriptEntry> entries_;
};

}  // namespace csi
