#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "hsc/bytes.hpp"

namespace hsc {

/// Reliable, ordered byte stream (a TCP connection, a socketpair end, or
/// an in-memory buffer). One reader and one writer at a time.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  /// Reads up to out.size() bytes; returns 0 only at end of stream.
  virtual std::size_t read_some(std::span<std::uint8_t> out) = 0;
  virtual void write_all(ByteView data) = 0;

  /// Reads exactly out.size() bytes and returns how many arrived before
  /// end of stream.
  std::size_t read_full(std::span<std::uint8_t> out);
};

/// In-memory stream: reads drain `input`, writes append to `output`.
class MemoryStream final : public ByteStream {
 public:
  MemoryStream() = default;
  explicit MemoryStream(Bytes input) : input_(std::move(input)) {}

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(ByteView data) override { append(output_, data); }

  const Bytes& output() const { return output_; }
  std::size_t unread() const { return input_.size() - pos_; }

 private:
  Bytes input_;
  std::size_t pos_ = 0;
  Bytes output_;
};

}  // namespace hsc
