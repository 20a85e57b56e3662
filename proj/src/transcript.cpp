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

#include "csi/transcript.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace csi {

namespace {

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()) % 1000;
  const std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms.count() << 'Z';
  return os.str();
}

bool is_key_frame(MsgType t) { return t == MsgType::msk || t == MsgType::usk; }

}  // namespace

TranscriptLog::TranscriptLog(std::ostream* sink, bool full_payloads) : sink_(sink), full_(full_payloads) {}

void TranscriptLog::record(const std::string& role, const std::string& direction, const Frame& frame) {
  TranscriptEntry e;
  e.timestamp = utc_now();
  e.role = role;
  e.direction = direction;
  e.type = frame.type;
  e.length = frame.payload.size();
  e.sha256 = to_hex(sha256(frame.payload));
  if (full_ && !is_key_frame(frame.type)) e.payload = to_hex(frame.payload);
  std::lock_guard lock(mu_);
  if (sink_) *sink_ << to_json_line(e) << '\n' << std::flush;
  entries_.push_back(std::move(e));
}

std::vector<TranscriptEntry> TranscriptLog::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::string TranscriptLog::to_json_line(const TranscriptEntry& e) {
  nlohmann::ordered_json j;
  j["ts"] = e.timestamp;
  j["role"] = e.role;
  j["dir"] = e.direction;
  j["type"] = msg_type_name(e.type);
  j["len"] = e.length;
  j["sha256"] = e.sha256;
  if (!e.payload.empty()) j["payload"] = e.payload;
  return j.dump();
}

}  // namespace csi
