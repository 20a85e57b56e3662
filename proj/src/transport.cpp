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

#include "csi/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

namespace csi {

namespace {

[[noreturn]] void fail_errno(const std::string& what) {
  fail(ErrorCode::transport, what + ": " + std::strerror(errno));
}

std::pair<std::string, std::string> split_address(const std::string& address) {
  auto colon = address.rfind(':');
  if (colon == std::string::npos || colon + 1 == address.size()) {
    fail(ErrorCode::invalid_argument, "address must be host:port, got '" + address + "'");
  }
  std::string host = address.substr(0, colon);
  if (host.empty()) host = "127.0.0.1";
  return {host, address.substr(colon + 1)};
}

struct AddrInfoDeleter {
  void operator()(addrinfo* ai) const { freeaddrinfo(ai); }
};

std::unique_ptr<addrinfo, AddrInfoDeleter> resolve(const std::string& address, bool passive) {
  auto [host, port] = split_address(address);
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  int rc = getaddrinfo(host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) fail(ErrorCode::transport, "cannot resolve '" + address + "': " + gai_strerror(rc));
  return std::unique_ptr<addrinfo, AddrInfoDeleter>(res);
}

/// Shared byte queue for one direction of the in-process pipe.
struct Channel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> buf;
  bool closed = false;
};

class PipeEnd final : public Transport {
 public:
  PipeEnd(std::shared_ptr<Channel> in, std::shared_ptr<Channel> out) : in_(std::move(in)), out_(std::move(out)) {}
  ~PipeEnd() override { close_write(); }

  void write_all(std::span<const std::uint8_t> data) override {
    std::lock_guard lock(out_->mu);
    if (out_->closed) fail(ErrorCode::transport, "write on closed pipe");
    out_->buf.insert(out_->buf.end(), data.begin(), data.end());
    out_->cv.notify_all();
  }

  bool read_exact(std::span<std::uint8_t> out) override {
    std::unique_lock lock(in_->mu);
    std::size_t got = 0;
    while (got < out.size()) {
      in_->cv.wait(lock, [&] { return !in_->buf.empty() || in_->closed; });
      if (in_->buf.empty()) {
        if (got == 0) return false;
        fail(ErrorCode::transport, "pipe closed mid-message");
      }
      while (got < out.size() && !in_->buf.empty()) {
        out[got++] = in_->buf.front();
        in_->buf.pop_front();
      }
    }
    return true;
  }

  void close_write() override {
    std::lock_guard lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<Channel> in_, out_;
};

}  // namespace

FdTransport::FdTransport(int in_fd, int out_fd, bool owns) : in_fd_(in_fd), out_fd_(out_fd), owns_(owns) {}

FdTransport::~FdTransport() {
  if (!owns_) return;
  close_fd(in_fd_);
  if (out_fd_ != in_fd_) close_fd(out_fd_);
}

void FdTransport::write_all(std::span<const std::uint8_t> data) {
  std::size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::send(out_fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) n = ::write(out_fd_, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail_errno("write");
    }
    done += static_cast<std::size_t>(n);
  }
}

bool FdTransport::read_exact(std::span<std::uint8_t> out) {
  std::size_t got = 0;
  while (got < out.size()) {
    ssize_t n = ::read(in_fd_, out.data() + got, out.size() - got);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail_errno("read");
    }
    if (n == 0) {
      if (got == 0) return false;
      fail(ErrorCode::transport, "stream closed mid-message");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void FdTransport::close_write() {
  if (write_closed_) return;
  write_closed_ = true;
  if (::shutdown(out_fd_, SHUT_WR) != 0 && errno == ENOTSOCK && out_fd_ != in_fd_) {
    ::close(out_fd_);
    out_fd_ = -1;
  }
}

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_pipe_pair() {
  auto a = std::make_shared<Channel>();
  auto b = std::make_shared<Channel>();
  return {std::make_unique<PipeEnd>(a, b), std::make_unique<PipeEnd>(b, a)};
}

void send_frame(Transport& t, const Frame& frame) { t.write_all(encode_frame(frame)); }

std::optional<Frame> recv_frame(Transport& t) {
  std::uint8_t header[kFrameHeaderBytes];
  if (!t.read_exact(header)) return std::nullopt;
  auto [type, len] = decode_frame_header(header);
  Frame f{type, Bytes(len)};
  if (len > 0 && !t.read_exact(f.payload)) fail(ErrorCode::transport, "stream closed before frame payload");
  return f;
}

int tcp_listen(const std::string& address, int backlog) {
  auto ai = resolve(address, true);
  int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
  if (fd < 0) fail_errno("socket");
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, ai->ai_addr, ai->ai_addrlen) != 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    fail_errno("bind " + address);
  }
  if (::listen(fd, backlog) != 0) {
    int saved = errno;
    ::close(fd);
    errno = saved;
    fail_errno("listen");
  }
  return fd;
}

std::uint16_t tcp_bound_port(int listen_fd) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(listen_fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail_errno("getsockname");
  return ntohs(addr.sin_port);
}

int tcp_accept(int listen_fd) {
  for (;;) {
    int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd >= 0) {
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return fd;
    }
    if (errno != EINTR) fail_errno("accept");
  }
}

int tcp_connect(const std::string& address, int timeout_ms) {
  auto ai = resolve(address, false);
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) fail_errno("socket");
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return fd;
    }
    int saved = errno;
    ::close(fd);
    if ((saved != ECONNREFUSED && saved != EINTR) || std::chrono::steady_clock::now() >= deadline) {
      errno = saved;
      fail_errno("connect " + address);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

void close_fd(int fd) noexcept {
  if (fd >= 0) ::close(fd);
}

}  // namespace csi
