#include "hsc/stream.hpp"

#include <algorithm>
#include <cstring>

namespace hsc {

std::size_t ByteStream::read_full(std::span<std::uint8_t> out) {
  std::size_t got = 0;
  while (got < out.size()) {
    std::size_t n = read_some(out.subspan(got));
    if (n == 0) break;
    got += n;
  }
  return got;
}

std::size_t MemoryStream::read_some(std::span<std::uint8_t> out) {
  std::size_t n = std::min(out.size(), input_.size() - pos_);
  if (n > 0) std::memcpy(out.data(), input_.data() + pos_, n);
  pos_ += n;
  return n;
}

}  // namespace hsc
