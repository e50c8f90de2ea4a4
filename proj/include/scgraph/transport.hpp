/*
Copyright (c) 2026 The scgraph authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <condition_variable>
#include <cstring>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#ifndef _WIN32
#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>
#endif

#include "scgraph/types.hpp"

namespace scg {

// Little-endian scalar codec shared by batch payloads and TCP framing.
inline void put_u32(std::string& buf, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}
inline void put_u64(std::string& buf, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}
inline void put_f64(std::string& buf, double x) {
  std::uint64_t bits;
  std::memcpy(&bits, &x, 8);
  put_u64(buf, bits);
}

struct ByteReader {
  const char* p;
  const char* end;
  explicit ByteReader(const std::string& s) : p(s.data()), end(s.data() + s.size()) {}
  void need(std::size_t n) const {
    if (static_cast<std::size_t>(end - p) < n) throw ProtocolError("truncated batch payload");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    p += 4;
    return x;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    p += 8;
    return x;
  }
  double f64() {
    const std::uint64_t bits = u64();
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
  }
  bool done() const { return p == end; }
};

// Moves opaque batch payloads between workers during one exchange phase.
// Batches are delivered exactly once, intact, before the phase completes.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void start(int n_workers) = 0;
  virtual void send(int from, int to, std::string payload) = 0;
  // All batches addressed to `to` in the current phase, one per worker.
  // Blocks until every peer's batch has arrived.
  virtual std::vector<std::string> collect(int to) = 0;
};

// Default transport: a mutex-guarded mailbox. Used by all tests and by the
// single-process engine.
class InProcessTransport final : public Transport {
 public:
  void start(int n_workers) override {
    n_ = n_workers;
    boxes_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), {});
    present_.assign(boxes_.size(), false);
  }
  void send(int from, int to, std::string payload) override {
    std::lock_guard<std::mutex> lk(mu_);
    const std::size_t slot = idx(from, to);
    if (present_[slot]) throw ProtocolError("duplicate batch in phase");
    boxes_[slot] = std::move(payload);
    present_[slot] = true;
    cv_.notify_all();
  }
  std::vector<std::string> collect(int to) override {
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [&] {
      for (int from = 0; from < n_; ++from) {
        if (!present_[idx(from, to)]) return false;
      }
      return true;
    });
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int from = 0; from < n_; ++from) {
      const std::size_t slot = idx(from, to);
      out.push_back(std::move(boxes_[slot]));
      present_[slot] = false;
    }
    return out;
  }

 private:
  std::size_t idx(int from, int to) const {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(to);
  }
  int n_ = 0;
  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::string> boxes_;
  std::vector<bool> present_;
};

// Length-prefixed frame: 8-byte little-endian payload length, then the
// payload (origin partition id, pair count, records).
inline void write_frame(std::string& wire, const std::string& payload) {
  put_u64(wire, payload.size());
  wire += payload;
}

#ifndef _WIN32

inline void write_all_fd(int fd, const char* data, std::size_t len) {
  while (len > 0) {
    const ssize_t w = ::write(fd, data, len);
    if (w <= 0) throw ProtocolError("tcp transport: connection lost on write");
    data += w;
    len -= static_cast<std::size_t>(w);
  }
}
inline void read_all_fd(int fd, char* data, std::size_t len) {
  while (len > 0) {
    const ssize_t r = ::read(fd, data, len);
    if (r <= 0) throw ProtocolError("tcp transport: connection lost on read");
    data += r;
    len -= static_cast<std::size_t>(r);
  }
}

// Loopback TCP transport. Every worker listens on base_port + id; a full
// mesh of persistent connections is opened at start(). A reader thread per
// incoming connection drains frames into the mailbox so large batches never
// stall the sender.
class TcpTransport final : public Transport {
 public:
  explicit TcpTransport(std::uint16_t base_port) : base_port_(base_port) {}
  ~TcpTransport() override { shutdown(); }

  void start(int n_workers) override {
    n_ = n_workers;
    inbox_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), {});
    present_.assign(inbox_.size(), false);
    std::vector<int> listeners(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) listeners[static_cast<std::size_t>(i)] = listen_on(port_of(i));
    out_fds_.assign(inbox_.size(), -1);
    in_fds_.assign(inbox_.size(), -1);
    // Connect row-major so accepts pair up deterministically: each connection
    // starts with a 4-byte origin id.
    std::thread acceptor([&] {
      for (int to = 0; to < n_; ++to) {
        for (int cnt = 0; cnt < n_; ++cnt) {
          const int fd = ::accept(listeners[static_cast<std::size_t>(to)], nullptr, nullptr);
          if (fd < 0) throw ProtocolError("tcp transport: accept failed");
          char idbuf[4];
          read_all_fd(fd, idbuf, 4);
          std::uint32_t from = 0;
          std::memcpy(&from, idbuf, 4);
          in_fds_[slot(static_cast<int>(from), to)] = fd;
        }
      }
    });
    for (int to = 0; to < n_; ++to) {
      for (int from = 0; from < n_; ++from) {
        const int fd = connect_to(port_of(to));
        std::uint32_t id = static_cast<std::uint32_t>(from);
        char idbuf[4];
        std::memcpy(idbuf, &id, 4);
        write_all_fd(fd, idbuf, 4);
        out_fds_[slot(from, to)] = fd;
      }
    }
    acceptor.join();
    for (int fd : listeners) ::close(fd);
    // One reader per incoming connection.
    stop_ = false;
    for (int from = 0; from < n_; ++from) {
      for (int to = 0; to < n_; ++to) {
        readers_.emplace_back([this, from, to] { reader_loop(from, to); });
      }
    }
  }

  void send(int from, int to, std::string payload) override {
    std::string wire;
    wire.reserve(payload.size() + 8);
    write_frame(wire, payload);
    std::lock_guard<std::mutex> lk(send_mu_[0]);
    write_all_fd(out_fds_[slot(from, to)], wire.data(), wire.size());
  }

  std::vector<std::string> collect(int to) override {
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [&] {
      if (error_) return true;
      for (int from = 0; from < n_; ++from) {
        if (!present_[slot(from, to)]) return false;
      }
      return true;
    });
    if (error_) throw ProtocolError("tcp transport: " + error_text_);
    std::vector<std::string> out;
    for (int from = 0; from < n_; ++from) {
      out.push_back(std::move(inbox_[slot(from, to)]));
      present_[slot(from, to)] = false;
    }
    return out;
  }

  void shutdown() {
    if (stop_) return;
    stop_ = true;
    for (int fd : out_fds_) {
      if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
    }
    for (auto& t : readers_) {
      if (t.joinable()) t.join();
    }
    for (int fd : out_fds_) {
      if (fd >= 0) ::close(fd);
    }
    for (int fd : in_fds_) {
      if (fd >= 0) ::close(fd);
    }
    out_fds_.clear();
    in_fds_.clear();
  }

 private:
  std::size_t slot(int from, int to) const {
    return static_cast<std::size_t>(from) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(to);
  }
  std::uint16_t port_of(int i) const { return static_cast<std::uint16_t>(base_port_ + i); }

  static int listen_on(std::uint16_t port) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw ProtocolError("tcp transport: socket failed");
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      throw ProtocolError("tcp transport: bind failed on port " + std::to_string(port));
    }
    if (::listen(fd, 64) != 0) throw ProtocolError("tcp transport: listen failed");
    return fd;
  }
  static int connect_to(std::uint16_t port) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw ProtocolError("tcp transport: socket failed");
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      throw ProtocolError("tcp transport: connect failed on port " + std::to_string(port));
    }
    return fd;
  }

  void reader_loop(int from, int to) {
    const int fd = in_fds_[slot(from, to)];
    while (!stop_) {
      char lenbuf[8];
      {
        const ssize_t r = ::read(fd, lenbuf, 1);
        if (r <= 0) return;  // peer closed at job end
      }
      try {
        read_all_fd(fd, lenbuf + 1, 7);
        std::uint64_t len = 0;
        for (int i = 0; i < 8; ++i) {
          len |= static_cast<std::uint64_t>(static_cast<unsigned char>(lenbuf[i])) << (8 * i);
        }
        std::string payload(len, '\0');
        if (len > 0) read_all_fd(fd, payload.data(), len);
        std::lock_guard<std::mutex> lk(mu_);
        if (present_[slot(from, to)]) {
          error_ = true;
          error_text_ = "unexpected extra batch";
        } else {
          inbox_[slot(from, to)] = std::move(payload);
          present_[slot(from, to)] = true;
        }
        cv_.notify_all();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(mu_);
        error_ = true;
        error_text_ = e.what();
        cv_.notify_all();
        return;
      }
    }
  }

  std::uint16_t base_port_;
  int n_ = 0;
  std::vector<int> out_fds_, in_fds_;
  std::vector<std::thread> readers_;
  std::mutex mu_;
  std::mutex send_mu_[1];
  std::condition_variable cv_;
  std::vector<std::string> inbox_;
  std::vector<bool> present_;
  bool error_ = false;
  std::string error_text_;
  bool stop_ = true;
};

#endif  // !_WIN32

}  // namespace scg
