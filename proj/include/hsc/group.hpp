#pragma once

#include <openssl/bn.h>
#include <openssl/ec.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "hsc/bytes.hpp"
#include "hsc/op_counter.hpp"
#include "hsc/random.hpp"

namespace hsc {

namespace detail {
/// Per-thread scratch context for BIGNUM / EC arithmetic.
BN_CTX* bn_ctx();
}  // namespace detail

/// Immutable element of Z_q. Cheap to copy (shared, never mutated).
class Scalar {
 public:
  /// Zero.
  Scalar();

  const BIGNUM* bn() const { return value_.get(); }
  bool is_zero() const { return BN_is_zero(value_.get()); }
  /// Throws DomainError if the value does not fit in 64 bits.
  std::uint64_t to_u64() const;
  std::string to_hex() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return BN_cmp(a.bn(), b.bn()) == 0; }

 private:
  friend class ScalarField;
  explicit Scalar(BIGNUM* owned);
  std::shared_ptr<const BIGNUM> value_;
};

/// Arithmetic modulo the prime group order q. Every Scalar it returns is
/// fully reduced.
class ScalarField {
 public:
  explicit ScalarField(const BIGNUM* q);

  const BIGNUM* order() const { return q_.get(); }
  int bits() const { return BN_num_bits(q_.get()); }
  std::size_t byte_len() const { return static_cast<std::size_t>((bits() + 7) / 8); }

  Scalar zero() const { return Scalar(); }
  Scalar from_u64(std::uint64_t v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  /// Throws DomainError for a == 0.
  Scalar invert(const Scalar& a) const;

  /// Uniform over [1, q-1] by rejection sampling on bits(q)-bit strings.
  Scalar random_nonzero(RandomSource& rng) const;
  /// Big-endian integer of any length, reduced mod q.
  Scalar reduce(ByteView big_endian) const;

  /// Fixed-width big-endian, byte_len() bytes.
  Bytes encode(const Scalar& a) const;
  /// Rejects wrong length and values >= q. Zero is accepted.
  Scalar decode(ByteView bytes) const;

 private:
  std::shared_ptr<const BIGNUM> q_;
};

struct GroupDescriptor {
  std::string name;
  std::shared_ptr<const BIGNUM> order;
  std::size_t scalar_len = 0;
  std::size_t element_len = 0;
};

/// Opaque element of a prime-order group. Only meaningful together with the
/// Group that produced it; compare with Group::equal.
class GroupElement {
 public:
  GroupElement() = default;

 private:
  friend class ToyGroup;
  friend class EcGroup;
  using EcPoint = std::shared_ptr<const EC_POINT>;
  explicit GroupElement(std::uint64_t v) : rep_(v) {}
  explicit GroupElement(EcPoint p) : rep_(std::move(p)) {}
  std::variant<std::uint64_t, EcPoint> rep_;
};

/// Prime-order cyclic group G1 with its scalar field. Scalar multiplications
/// and additions are tallied in the active CountingScope.
class Group {
 public:
  virtual ~Group() = default;
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  const GroupDescriptor& descriptor() const { return desc_; }
  const std::string& name() const { return desc_.name; }
  const ScalarField& scalars() const { return field_; }
  std::size_t scalar_len() const { return desc_.scalar_len; }
  std::size_t element_len() const { return desc_.element_len; }

  virtual GroupElement generator() const = 0;
  virtual GroupElement identity() const = 0;

  GroupElement mul(const Scalar& k, const GroupElement& x) const;
  GroupElement mul_base(const Scalar& k) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement sub(const GroupElement& x, const GroupElement& y) const;
  GroupElement neg(const GroupElement& x) const { return do_neg(x); }

  virtual bool equal(const GroupElement& x, const GroupElement& y) const = 0;
  virtual bool is_identity(const GroupElement& x) const = 0;

  /// Canonical fixed-width encoding, element_len() bytes.
  virtual Bytes encode(const GroupElement& x) const = 0;
  /// Inverse of encode. Throws DecodeError: kWrongLength for a bad size,
  /// kMalformedElement / kOffGroupElement for bytes that are not a canonical
  /// encoding of a group element.
  virtual GroupElement decode(ByteView bytes) const = 0;

 protected:
  explicit Group(GroupDescriptor desc) : desc_(std::move(desc)), field_(desc_.order.get()) {}

  virtual GroupElement do_mul(const Scalar& k, const GroupElement& x) const = 0;
  virtual GroupElement do_mul_base(const Scalar& k) const { return do_mul(k, generator()); }
  virtual GroupElement do_add(const GroupElement& x, const GroupElement& y) const = 0;
  virtual GroupElement do_neg(const GroupElement& x) const = 0;

 private:
  GroupDescriptor desc_;
  ScalarField field_;
};

/// Additive integers mod a small prime q with generator 1. Insecure; exists
/// to produce hand-checkable vectors. Elements and scalars share the same
/// big-endian fixed-width encoding.
class ToyGroup final : public Group {
 public:
  /// q must be prime and below 2^32.
  explicit ToyGroup(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  GroupElement element(std::uint64_t v) const { return GroupElement(v % q_); }
  std::uint64_t value_of(const GroupElement& x) const;

  GroupElement generator() const override { return GroupElement(std::uint64_t{1}); }
  GroupElement identity() const override { return GroupElement(std::uint64_t{0}); }
  bool equal(const GroupElement& x, const GroupElement& y) const override;
  bool is_identity(const GroupElement& x) const override { return value_of(x) == 0; }
  Bytes encode(const GroupElement& x) const override;
  GroupElement decode(ByteView bytes) const override;

 protected:
  GroupElement do_mul(const Scalar& k, const GroupElement& x) const override;
  GroupElement do_add(const GroupElement& x, const GroupElement& y) const override;
  GroupElement do_neg(const GroupElement& x) const override;

 private:
  std::uint64_t q_;
};

/// Prime-order short-Weierstrass curve via OpenSSL. Elements use the SEC1
/// compressed form; the identity encodes as element_len zero bytes.
class EcGroup final : public Group {
 public:
  EcGroup(int curve_nid, std::string name);

  GroupElement generator() const override { return generator_; }
  GroupElement identity() const override { return identity_; }
  bool equal(const GroupElement& x, const GroupElement& y) const override;
  bool is_identity(const GroupElement& x) const override;
  Bytes encode(const GroupElement& x) const override;
  GroupElement decode(ByteView bytes) const override;

 protected:
  GroupElement do_mul(const Scalar& k, const GroupElement& x) const override;
  GroupElement do_mul_base(const Scalar& k) const override;
  GroupElement do_add(const GroupElement& x, const GroupElement& y) const override;
  GroupElement do_neg(const GroupElement& x) const override;

 private:
  EcGroup(int curve_nid, std::string name, std::shared_ptr<EC_GROUP> curve);
  const EC_POINT* point(const GroupElement& x) const;
  GroupElement wrap(EC_POINT* owned) const;

  std::shared_ptr<EC_GROUP> curve_;
  GroupElement generator_;
  GroupElement identity_;
};

/// Name of the production group used when none is specified.
inline constexpr std::string_view kDefaultGroup = "P-256";

/// "P-256", "secp256k1", or "toy-<q>" for a prime q < 2^32.
/// Throws DecodeError(kUnknownGroup) for anything else.
std::shared_ptr<const Group> make_group(std::string_view name);

}  // namespace hsc
