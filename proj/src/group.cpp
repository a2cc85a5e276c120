#include "hsc/group.hpp"

#include <openssl/err.h>
#include <openssl/obj_mac.h>

#include <charconv>
#include <mutex>
#include <unordered_map>

#include "hsc/errors.hpp"

namespace hsc {

namespace detail {

BN_CTX* bn_ctx() {
  struct Holder {
    BN_CTX* ctx = BN_CTX_new();
    ~Holder() { BN_CTX_free(ctx); }
  };
  thread_local Holder holder;
  if (holder.ctx == nullptr) throw std::bad_alloc();
  return holder.ctx;
}

}  // namespace detail

namespace {

BIGNUM* new_bn() {
  BIGNUM* bn = BN_new();
  if (bn == nullptr) throw std::bad_alloc();
  return bn;
}

void check(int ok, const char* what) {
  if (ok != 1) throw Error(std::string("OpenSSL failure: ") + what);
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : Scalar(new_bn()) {}

Scalar::Scalar(BIGNUM* owned) : value_(owned, BN_clear_free) {}

std::uint64_t Scalar::to_u64() const {
  if (BN_num_bits(bn()) > 64) throw DomainError("scalar does not fit in 64 bits");
  Bytes buf(8);
  BN_bn2binpad(bn(), buf.data(), 8);
  std::uint64_t v = 0;
  for (auto b : buf) v = (v << 8) | b;
  return v;
}

std::string Scalar::to_hex() const {
  char* s = BN_bn2hex(bn());
  std::string out(s);
  OPENSSL_free(s);
  return out;
}

// ---------------------------------------------------------------- ScalarField

ScalarField::ScalarField(const BIGNUM* q) {
  BIGNUM* copy = BN_dup(q);
  if (copy == nullptr) throw std::bad_alloc();
  q_.reset(copy, BN_free);
}

Scalar ScalarField::from_u64(std::uint64_t v) const {
  BIGNUM* r = new_bn();
  Scalar out(r);
  Bytes buf(8);
  for (int i = 7; i >= 0; --i, v >>= 8) buf[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  check(BN_bin2bn(buf.data(), 8, r) != nullptr, "BN_bin2bn");
  check(BN_nnmod(r, r, order(), detail::bn_ctx()), "BN_nnmod");
  return out;
}

Scalar ScalarField::add(const Scalar& a, const Scalar& b) const {
  BIGNUM* r = new_bn();
  Scalar out(r);
  check(BN_mod_add(r, a.bn(), b.bn(), order(), detail::bn_ctx()), "BN_mod_add");
  return out;
}

Scalar ScalarField::sub(const Scalar& a, const Scalar& b) const {
  BIGNUM* r = new_bn();
  Scalar out(r);
  check(BN_mod_sub(r, a.bn(), b.bn(), order(), detail::bn_ctx()), "BN_mod_sub");
  return out;
}

Scalar ScalarField::mul(const Scalar& a, const Scalar& b) const {
  BIGNUM* r = new_bn();
  Scalar out(r);
  check(BN_mod_mul(r, a.bn(), b.bn(), order(), detail::bn_ctx()), "BN_mod_mul");
  return out;
}

Scalar ScalarField::neg(const Scalar& a) const { return sub(zero(), a); }

Scalar ScalarField::invert(const Scalar& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero scalar");
  BIGNUM* r = new_bn();
  Scalar out(r);
  check(BN_mod_inverse(r, a.bn(), order(), detail::bn_ctx()) != nullptr, "BN_mod_inverse");
  return out;
}

Scalar ScalarField::random_nonzero(RandomSource& rng) const {
  const std::size_t len = byte_len();
  const int excess_bits = static_cast<int>(len * 8) - bits();
  const auto top_mask = static_cast<std::uint8_t>(0xff >> excess_bits);
  Bytes buf(len);
  for (;;) {
    rng.fill(buf);
    buf[0] &= top_mask;
    BIGNUM* r = new_bn();
    Scalar candidate(r);
    check(BN_bin2bn(buf.data(), static_cast<int>(len), r) != nullptr, "BN_bin2bn");
    if (!BN_is_zero(r) && BN_cmp(r, order()) < 0) {
      OPENSSL_cleanse(buf.data(), buf.size());
      return candidate;
    }
  }
}

Scalar ScalarField::reduce(ByteView big_endian) const {
  BN_CTX* ctx = detail::bn_ctx();
  BN_CTX_start(ctx);
  BIGNUM* wide = BN_CTX_get(ctx);
  BIGNUM* r = BN_new();
  if (wide == nullptr || r == nullptr || BN_bin2bn(big_endian.data(), static_cast<int>(big_endian.size()), wide) == nullptr ||
      BN_nnmod(r, wide, order(), ctx) != 1) {
    BN_free(r);
    BN_CTX_end(ctx);
    throw Error("OpenSSL failure: reduce");
  }
  BN_CTX_end(ctx);
  return Scalar(r);
}

Bytes ScalarField::encode(const Scalar& a) const {
  Bytes out(byte_len());
  check(BN_bn2binpad(a.bn(), out.data(), static_cast<int>(out.size())) >= 0 ? 1 : 0, "BN_bn2binpad");
  return out;
}

Scalar ScalarField::decode(ByteView bytes) const {
  if (bytes.size() != byte_len()) {
    throw DecodeError(DecodeErrc::kWrongLength, "scalar needs " + std::to_string(byte_len()) + " bytes");
  }
  BIGNUM* r = new_bn();
  Scalar out(r);
  check(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), r) != nullptr, "BN_bin2bn");
  if (BN_cmp(r, order()) >= 0) throw DecodeError(DecodeErrc::kNonCanonicalScalar, "scalar >= q");
  return out;
}

// ---------------------------------------------------------------- Group

GroupElement Group::mul(const Scalar& k, const GroupElement& x) const {
  OpTally::scalar_mult();
  return do_mul(k, x);
}

GroupElement Group::mul_base(const Scalar& k) const {
  OpTally::scalar_mult();
  return do_mul_base(k);
}

GroupElement Group::add(const GroupElement& x, const GroupElement& y) const {
  OpTally::group_add();
  return do_add(x, y);
}

GroupElement Group::sub(const GroupElement& x, const GroupElement& y) const {
  OpTally::group_add();
  return do_add(x, do_neg(y));
}

// ---------------------------------------------------------------- ToyGroup

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::shared_ptr<BIGNUM> bn_from_u64(std::uint64_t v) {
  std::shared_ptr<BIGNUM> bn(new_bn(), BN_free);
  check(BN_set_word(bn.get(), v), "BN_set_word");
  return bn;
}

GroupDescriptor toy_descriptor(std::uint64_t q) {
  if (q >= (std::uint64_t{1} << 32) || !is_prime_u64(q)) {
    throw DomainError("toy group order must be a prime below 2^32, got " + std::to_string(q));
  }
  GroupDescriptor d;
  d.name = "toy-" + std::to_string(q);
  d.order = bn_from_u64(q);
  d.scalar_len = static_cast<std::size_t>((BN_num_bits(d.order.get()) + 7) / 8);
  d.element_len = d.scalar_len;
  return d;
}

}  // namespace

ToyGroup::ToyGroup(std::uint64_t q) : Group(toy_descriptor(q)), q_(q) {}

std::uint64_t ToyGroup::value_of(const GroupElement& x) const {
  const auto* v = std::get_if<std::uint64_t>(&x.rep_);
  if (v == nullptr) throw DomainError("element does not belong to " + name());
  return *v;
}

bool ToyGroup::equal(const GroupElement& x, const GroupElement& y) const { return value_of(x) == value_of(y); }

Bytes ToyGroup::encode(const GroupElement& x) const {
  std::uint64_t v = value_of(x);
  Bytes out(element_len());
  for (std::size_t i = out.size(); i-- > 0; v >>= 8) out[i] = static_cast<std::uint8_t>(v);
  return out;
}

GroupElement ToyGroup::decode(ByteView bytes) const {
  if (bytes.size() != element_len()) {
    throw DecodeError(DecodeErrc::kWrongLength, "element needs " + std::to_string(element_len()) + " bytes");
  }
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  if (v >= q_) throw DecodeError(DecodeErrc::kOffGroupElement, "value >= q");
  return GroupElement(v);
}

GroupElement ToyGroup::do_mul(const Scalar& k, const GroupElement& x) const {
  return GroupElement((k.to_u64() % q_) * value_of(x) % q_);
}

GroupElement ToyGroup::do_add(const GroupElement& x, const GroupElement& y) const {
  return GroupElement((value_of(x) + value_of(y)) % q_);
}

GroupElement ToyGroup::do_neg(const GroupElement& x) const { return GroupElement((q_ - value_of(x)) % q_); }

// ---------------------------------------------------------------- EcGroup

namespace {

std::shared_ptr<EC_GROUP> new_curve(int nid) {
  EC_GROUP* g = EC_GROUP_new_by_curve_name(nid);
  if (g == nullptr) throw Error("unsupported curve nid " + std::to_string(nid));
  std::shared_ptr<EC_GROUP> curve(g, EC_GROUP_free);
  if (!BN_is_one(EC_GROUP_get0_cofactor(g))) throw Error("curve must have cofactor 1");
  return curve;
}

GroupDescriptor ec_descriptor(std::string name, const EC_GROUP* curve) {
  GroupDescriptor d;
  d.name = std::move(name);
  BIGNUM* q = BN_dup(EC_GROUP_get0_order(curve));
  if (q == nullptr) throw std::bad_alloc();
  d.order.reset(q, BN_free);
  d.scalar_len = static_cast<std::size_t>((BN_num_bits(q) + 7) / 8);
  d.element_len = 1 + static_cast<std::size_t>((EC_GROUP_get_degree(curve) + 7) / 8);
  return d;
}

}  // namespace

EcGroup::EcGroup(int curve_nid, std::string name) : EcGroup(curve_nid, std::move(name), new_curve(curve_nid)) {}

EcGroup::EcGroup(int /*curve_nid*/, std::string name, std::shared_ptr<EC_GROUP> curve)
    : Group(ec_descriptor(std::move(name), curve.get())),
      curve_(std::move(curve)) {
  EC_POINT* g = EC_POINT_dup(EC_GROUP_get0_generator(curve_.get()), curve_.get());
  if (g == nullptr) throw std::bad_alloc();
  generator_ = wrap(g);
  EC_POINT* inf = EC_POINT_new(curve_.get());
  if (inf == nullptr) throw std::bad_alloc();
  check(EC_POINT_set_to_infinity(curve_.get(), inf), "EC_POINT_set_to_infinity");
  identity_ = wrap(inf);
}

const EC_POINT* EcGroup::point(const GroupElement& x) const {
  const auto* p = std::get_if<GroupElement::EcPoint>(&x.rep_);
  if (p == nullptr || !*p) throw DomainError("element does not belong to " + name());
  return p->get();
}

GroupElement EcGroup::wrap(EC_POINT* owned) const {
  return GroupElement(GroupElement::EcPoint(owned, EC_POINT_free));
}

bool EcGroup::equal(const GroupElement& x, const GroupElement& y) const {
  int r = EC_POINT_cmp(curve_.get(), point(x), point(y), detail::bn_ctx());
  if (r < 0) throw Error("EC_POINT_cmp failed");
  return r == 0;
}

bool EcGroup::is_identity(const GroupElement& x) const {
  return EC_POINT_is_at_infinity(curve_.get(), point(x)) == 1;
}

Bytes EcGroup::encode(const GroupElement& x) const {
  Bytes out(element_len(), 0);
  if (is_identity(x)) return out;
  std::size_t n = EC_POINT_point2oct(curve_.get(), point(x), POINT_CONVERSION_COMPRESSED, out.data(), out.size(),
                                     detail::bn_ctx());
  if (n != out.size()) throw Error("EC_POINT_point2oct produced unexpected length");
  return out;
}

GroupElement EcGroup::decode(ByteView bytes) const {
  if (bytes.size() != element_len()) {
    throw DecodeError(DecodeErrc::kWrongLength, "element needs " + std::to_string(element_len()) + " bytes");
  }
  if (bytes[0] == 0x00) {
    for (auto b : bytes) {
      if (b != 0) throw DecodeError(DecodeErrc::kMalformedElement, "bad identity encoding");
    }
    return identity();
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) {
    throw DecodeError(DecodeErrc::kMalformedElement, "expected compressed point prefix");
  }
  EC_POINT* p = EC_POINT_new(curve_.get());
  if (p == nullptr) throw std::bad_alloc();
  GroupElement out = wrap(p);
  if (EC_POINT_oct2point(curve_.get(), p, bytes.data(), bytes.size(), detail::bn_ctx()) != 1) {
    ERR_clear_error();
    throw DecodeError(DecodeErrc::kOffGroupElement, "x is not the coordinate of a curve point");
  }
  return out;
}

GroupElement EcGroup::do_mul(const Scalar& k, const GroupElement& x) const {
  EC_POINT* r = EC_POINT_new(curve_.get());
  if (r == nullptr) throw std::bad_alloc();
  GroupElement out = wrap(r);
  check(EC_POINT_mul(curve_.get(), r, nullptr, point(x), k.bn(), detail::bn_ctx()), "EC_POINT_mul");
  return out;
}

GroupElement EcGroup::do_mul_base(const Scalar& k) const {
  EC_POINT* r = EC_POINT_new(curve_.get());
  if (r == nullptr) throw std::bad_alloc();
  GroupElement out = wrap(r);
  check(EC_POINT_mul(curve_.get(), r, k.bn(), nullptr, nullptr, detail::bn_ctx()), "EC_POINT_mul");
  return out;
}

GroupElement EcGroup::do_add(const GroupElement& x, const GroupElement& y) const {
  EC_POINT* r = EC_POINT_new(curve_.get());
  if (r == nullptr) throw std::bad_alloc();
  GroupElement out = wrap(r);
  check(EC_POINT_add(curve_.get(), r, point(x), point(y), detail::bn_ctx()), "EC_POINT_add");
  return out;
}

GroupElement EcGroup::do_neg(const GroupElement& x) const {
  EC_POINT* r = EC_POINT_dup(point(x), curve_.get());
  if (r == nullptr) throw std::bad_alloc();
  GroupElement out = wrap(r);
  check(EC_POINT_invert(curve_.get(), r, detail::bn_ctx()), "EC_POINT_invert");
  return out;
}

// ---------------------------------------------------------------- registry

std::shared_ptr<const Group> make_group(std::string_view name) {
  static std::mutex mu;
  static std::unordered_map<std::string, std::shared_ptr<const Group>> cache;
  std::lock_guard lock(mu);
  std::string key(name);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::shared_ptr<const Group> g;
  if (name == "P-256") {
    g = std::make_shared<EcGroup>(NID_X9_62_prime256v1, key);
  } else if (name == "secp256k1") {
    g = std::make_shared<EcGroup>(NID_secp256k1, key);
  } else if (name.starts_with("toy-")) {
    auto digits = name.substr(4);
    std::uint64_t q = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty()) {
      throw DecodeError(DecodeErrc::kUnknownGroup, key);
    }
    try {
      g = std::make_shared<ToyGroup>(q);
    } catch (const DomainError& e) {
      throw DecodeError(DecodeErrc::kUnknownGroup, e.what());
    }
  } else {
    throw DecodeError(DecodeErrc::kUnknownGroup, key);
  }
  cache.emplace(key, g);
  return g;
}

}  // namespace hsc
