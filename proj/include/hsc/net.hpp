#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>

#include "hsc/stream.hpp"

namespace hsc {

/// Owning wrapper around a connected stream socket.
class SocketStream final : public ByteStream {
 public:
  explicit SocketStream(int fd) : fd_(fd) {}
  ~SocketStream() override;
  SocketStream(SocketStream&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  SocketStream& operator=(SocketStream&& other) noexcept;
  SocketStream(const SocketStream&) = delete;
  SocketStream& operator=(const SocketStream&) = delete;

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(ByteView data) override;

  /// Reads block at most this long before throwing IoError.
  void set_read_timeout(std::chrono::milliseconds timeout);
  void shutdown_write();
  void close();
  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  /// Binds and listens; port 0 picks an ephemeral port.
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  SocketStream accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

/// Connects, retrying refused connections until `timeout` elapses.
SocketStream connect_tcp(const std::string& host, std::uint16_t port,
                         std::chrono::milliseconds timeout = std::chrono::milliseconds(0));

/// Two connected ends of a local stream socket.
std::pair<SocketStream, SocketStream> socket_pair();

}  // namespace hsc
