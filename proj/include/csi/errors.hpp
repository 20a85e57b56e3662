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

#include <stdexcept>
#include <string>

namespace csi {

// Numeric values match the C API status codes and the CLI exit codes.
enum class ErrorCode : int {
  invalid_argument = 2,
  io = 3,
  decode = 4,
  protocol = 5,
  transport = 6,
  retry_limit = 7,
  verify_failed = 8,
  state = 9,
  unsatisfiable = 10,
  not_in_orbit = 11,
  internal = 12,
  rejected = 13,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace csi
