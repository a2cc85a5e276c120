#pragma once

#include <stdexcept>
#include <string>

namespace hsc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by caller-supplied values (oversize message, invert(0), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The random source could not deliver bytes. Treated as fatal by callers.
class EntropyError : public Error {
 public:
  using Error::Error;
};

/// A partial private key failed the validity equation d*P = T + H1(ID, T)*Ppub.
class AuthenticityError : public Error {
 public:
  using Error::Error;
};

/// x_c + d == 0 mod q; the CLC key cannot be used as a CPHS sender.
class DegenerateKeyError : public Error {
 public:
  using Error::Error;
};

enum class DecodeErrc {
  kWrongLength,
  kTruncated,
  kTrailingBytes,
  kBadDirection,
  kNonCanonicalScalar,
  kZeroScalar,
  kMalformedElement,
  kOffGroupElement,
  kBadMagic,
  kBadVersion,
  kWrongKind,
  kUnknownGroup,
  kGroupMismatch,
  kParamsMismatch,
  kInconsistentKey,
  kUnsupportedHash,
};

const char* to_string(DecodeErrc code);

class DecodeError : public Error {
 public:
  DecodeError(DecodeErrc code, const std::string& what)
      : Error(std::string(to_string(code)) + ": " + what), code_(code) {}

  DecodeErrc code() const noexcept { return code_; }

 private:
  DecodeErrc code_;
};

/// Frame-level violation: oversize length, unknown type tag.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// The stream ended before a complete frame was read.
class EndOfStream : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsc
