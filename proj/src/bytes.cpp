#include "hsc/bytes.hpp"

#include "hsc/errors.hpp"

namespace hsc {

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

namespace {
int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw DomainError("hex string has odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) throw DomainError("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

void append_u8(Bytes& out, std::uint8_t v) { out.push_back(v); }

void append_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

ByteView ByteReader::take(std::size_t n) {
  if (n > remaining()) {
    throw DecodeError(DecodeErrc::kTruncated,
                      "need " + std::to_string(n) + " bytes, have " + std::to_string(remaining()));
  }
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint16_t ByteReader::u16() {
  auto b = take(2);
  return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::uint32_t ByteReader::u32() {
  auto b = take(4);
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) |
         std::uint32_t{b[3]};
}

ByteView ByteReader::rest() { return take(remaining()); }

void ByteReader::expect_done() const {
  if (!done()) {
    throw DecodeError(DecodeErrc::kTrailingBytes, std::to_string(remaining()) + " unexpected bytes");
  }
}

const char* to_string(DecodeErrc code) {
  switch (code) {
    case DecodeErrc::kWrongLength: return "wrong_length";
    case DecodeErrc::kTruncated: return "truncated";
    case DecodeErrc::kTrailingBytes: return "trailing_bytes";
    case DecodeErrc::kBadDirection: return "bad_direction";
    case DecodeErrc::kNonCanonicalScalar: return "non_canonical_scalar";
    case DecodeErrc::kZeroScalar: return "zero_scalar";
    case DecodeErrc::kMalformedElement: return "malformed_element";
    case DecodeErrc::kOffGroupElement: return "off_group_element";
    case DecodeErrc::kBadMagic: return "bad_magic";
    case DecodeErrc::kBadVersion: return "bad_version";
    case DecodeErrc::kWrongKind: return "wrong_kind";
    case DecodeErrc::kUnknownGroup: return "unknown_group";
    case DecodeErrc::kGroupMismatch: return "group_mismatch";
    case DecodeErrc::kParamsMismatch: return "params_mismatch";
    case DecodeErrc::kInconsistentKey: return "inconsistent_key";
    case DecodeErrc::kUnsupportedHash: return "unsupported_hash";
  }
  return "unknown";
}

}  // namespace hsc
