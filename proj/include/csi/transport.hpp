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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "csi/wire.hpp"

namespace csi {

/// Ordered, reliable byte stream.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual void write_all(std::span<const std::uint8_t> data) = 0;
  /// Fills `out` completely. Returns false on end-of-stream before the
  /// first byte; throws ErrorCode::transport on a partial read.
  virtual bool read_exact(std::span<std::uint8_t> out) = 0;
  /// Signals end-of-stream to the peer (write side).
  virtual void close_write() = 0;
};

/// Reads from `in_fd` and writes to `out_fd`; closes them on destruction
/// when `owns` is set.
class FdTransport final : public Transport {
 public:
  FdTransport(int in_fd, int out_fd, bool owns = false);
  ~FdTransport() override;
  FdTransport(const FdTransport&) = delete;
  FdTransport& operator=(const FdTransport&) = delete;

  void write_all(std::span<const std::uint8_t> data) override;
  bool read_exact(std::span<std::uint8_t> out) override;
  void close_write() override;

 private:
  int in_fd_, out_fd_;
  bool owns_;
  bool write_closed_ = false;
};

/// Two connected in-process endpoints.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe_pair();

void send_frame(Transport& t, const Frame& frame);
/// Empty on a clean end-of-stream at a frame boundary.
std::optional<Frame> recv_frame(Transport& t);

/// "host:port" (IPv4 or a resolvable name). Port 0 picks a free port.
int tcp_listen(const std::string& address, int backlog = 16);
std::uint16_t tcp_bound_port(int listen_fd);
int tcp_accept(int listen_fd);
/// Retries refused connections until `timeout_ms` elapses.
int tcp_connect(const std::string& address, int timeout_ms = 5000);
void close_fd(int fd) noexcept;

}  // namespace csi
