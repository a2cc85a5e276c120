#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>

#include "hsc/bytes.hpp"
#include "hsc/group.hpp"

namespace hsc {

/// Which XOF instantiates H1/H2/H3 and the domain tag prepended to each.
struct HashConfig {
  std::string algorithm = "SHAKE256";
  std::array<Bytes, 3> tags = {to_bytes("HSC-H1"), to_bytes("HSC-H2"), to_bytes("HSC-H3")};

  /// Throws DomainError on an unsupported algorithm, empty or repeated tags.
  void validate() const;

  friend bool operator==(const HashConfig&, const HashConfig&) = default;
};

/// The three random oracles of the schemes:
///   H1: {0,1}* x G1 -> Zq*,  H2: message x G1 -> Zq*,  H3: G1 -> {0,1}^len.
/// Every call is tallied as one hash in the active CountingScope.
class HashOracles {
 public:
  HashOracles(std::shared_ptr<const Group> group, std::size_t max_message_len)
      : group_(std::move(group)), max_message_len_(max_message_len) {}
  virtual ~HashOracles() = default;

  const Group& group() const { return *group_; }
  std::size_t max_message_len() const { return max_message_len_; }

  Scalar h1(ByteView id, const GroupElement& t) const;
  /// Throws DomainError if |m| exceeds max_message_len().
  Scalar h2(ByteView m, const GroupElement& r1) const;
  /// Mask of exactly out_len bytes; throws DomainError past max_message_len().
  Bytes h3(const GroupElement& r2, std::size_t out_len) const;

 protected:
  virtual Scalar do_h1(ByteView id, const GroupElement& t) const = 0;
  virtual Scalar do_h2(ByteView m, const GroupElement& r1) const = 0;
  virtual Bytes do_h3(const GroupElement& r2, std::size_t out_len) const = 0;

 private:
  std::shared_ptr<const Group> group_;
  std::size_t max_message_len_;
};

/// Production oracles: one XOF, three domain tags.
///   h1 absorbs tag1 || u32(|id|) || id || enc(T)
///   h2 absorbs tag2 || u32(|m|)  || m  || enc(R1)
///   h3 absorbs tag3 || enc(R2), squeezed to the requested length
/// Hash-to-scalar squeezes 2*scalar_len bytes and reduces mod q; a zero
/// result is retried with a counter byte appended to the input.
class XofOracles final : public HashOracles {
 public:
  XofOracles(std::shared_ptr<const Group> group, HashConfig config, std::size_t max_message_len);

  const HashConfig& config() const { return config_; }

  Bytes h1_input(ByteView id, const GroupElement& t) const;
  Bytes h2_input(ByteView m, const GroupElement& r1) const;
  Bytes h3_input(const GroupElement& r2) const;

 protected:
  Scalar do_h1(ByteView id, const GroupElement& t) const override;
  Scalar do_h2(ByteView m, const GroupElement& r1) const override;
  Bytes do_h3(const GroupElement& r2, std::size_t out_len) const override;

 private:
  HashConfig config_;
};

/// Test oracle answering from pre-programmed tables. Any query that was not
/// scripted throws std::logic_error.
class ScriptedOracle final : public HashOracles {
 public:
  using HashOracles::HashOracles;

  void script_h1(ByteView id, const GroupElement& t, const Scalar& out);
  void script_h2(ByteView m, const GroupElement& r1, const Scalar& out);
  /// h3 queries of length L answer with the first L bytes of `mask`.
  void script_h3(const GroupElement& r2, Bytes mask);

 protected:
  Scalar do_h1(ByteView id, const GroupElement& t) const override;
  Scalar do_h2(ByteView m, const GroupElement& r1) const override;
  Bytes do_h3(const GroupElement& r2, std::size_t out_len) const override;

 private:
  Bytes key(ByteView data, const GroupElement& x) const;

  std::map<Bytes, Scalar> h1_map_;
  std::map<Bytes, Scalar> h2_map_;
  std::map<Bytes, Bytes> h3_map_;
};

/// Raw XOF: `out_len` bytes of the named algorithm over `input`.
Bytes xof(const std::string& algorithm, ByteView input, std::size_t out_len);

/// Nonzero scalar from arbitrary bytes: 2*scalar_len bytes of XOF output
/// reduced mod q; on zero, retried over input || counter (counter = 1, 2, ...).
Scalar hash_to_scalar(const std::string& algorithm, const ScalarField& field, ByteView input);

}  // namespace hsc
