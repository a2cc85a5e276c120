#include "hsc/hashing.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

#include "hsc/errors.hpp"

namespace hsc {

namespace {

constexpr std::size_t kMaxScalarLen = 66;

const EVP_MD* xof_md(const std::string& algorithm) {
  static const EVP_MD* shake256 = EVP_MD_fetch(nullptr, "SHAKE256", nullptr);
  static const EVP_MD* shake128 = EVP_MD_fetch(nullptr, "SHAKE128", nullptr);
  if (algorithm == "SHAKE256") return shake256;
  if (algorithm == "SHAKE128") return shake128;
  return nullptr;
}

EVP_MD_CTX* thread_md_ctx() {
  struct Holder {
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    ~Holder() { EVP_MD_CTX_free(ctx); }
  };
  thread_local Holder holder;
  if (holder.ctx == nullptr) throw std::bad_alloc();
  return holder.ctx;
}

void squeeze(const EVP_MD* md, ByteView input, std::span<std::uint8_t> out) {
  EVP_MD_CTX* ctx = thread_md_ctx();
  if (EVP_DigestInit_ex2(ctx, md, nullptr) != 1 || EVP_DigestUpdate(ctx, input.data(), input.size()) != 1 ||
      EVP_DigestFinalXOF(ctx, out.data(), out.size()) != 1) {
    throw Error("XOF evaluation failed");
  }
}

void append_prefixed(Bytes& out, ByteView data) {
  append_u32(out, static_cast<std::uint32_t>(data.size()));
  append(out, data);
}

}  // namespace

Bytes xof(const std::string& algorithm, ByteView input, std::size_t out_len) {
  const EVP_MD* md = xof_md(algorithm);
  if (md == nullptr) throw DomainError("unsupported XOF " + algorithm);
  Bytes out(out_len);
  if (out_len > 0) squeeze(md, input, out);
  return out;
}

Scalar hash_to_scalar(const std::string& algorithm, const ScalarField& field, ByteView input) {
  const EVP_MD* md = xof_md(algorithm);
  if (md == nullptr) throw DomainError("unsupported XOF " + algorithm);
  std::array<std::uint8_t, 2 * kMaxScalarLen> buf{};
  const std::size_t wide_len = 2 * field.byte_len();
  if (wide_len > buf.size()) throw DomainError("scalar field too large for hash_to_scalar");
  std::span<std::uint8_t> wide(buf.data(), wide_len);

  squeeze(md, input, wide);
  Scalar s = field.reduce(wide);
  if (!s.is_zero()) return s;

  Bytes attempt(input.begin(), input.end());
  attempt.push_back(0);
  for (int counter = 1; counter < 256; ++counter) {
    attempt.back() = static_cast<std::uint8_t>(counter);
    squeeze(md, attempt, wide);
    s = field.reduce(wide);
    if (!s.is_zero()) return s;
  }
  throw Error("hash-to-scalar produced zero 256 times");
}

void HashConfig::validate() const {
  if (xof_md(algorithm) == nullptr) throw DomainError("unsupported hash algorithm " + algorithm);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].empty()) throw DomainError("empty domain tag");
    for (std::size_t j = i + 1; j < tags.size(); ++j) {
      if (tags[i] == tags[j]) throw DomainError("domain tags must be pairwise distinct");
    }
  }
}

// ---------------------------------------------------------------- HashOracles

Scalar HashOracles::h1(ByteView id, const GroupElement& t) const {
  OpTally::hash_call();
  return do_h1(id, t);
}

Scalar HashOracles::h2(ByteView m, const GroupElement& r1) const {
  if (m.size() > max_message_len_) {
    throw DomainError("message of " + std::to_string(m.size()) + " bytes exceeds n/8 = " +
                      std::to_string(max_message_len_));
  }
  OpTally::hash_call();
  return do_h2(m, r1);
}

Bytes HashOracles::h3(const GroupElement& r2, std::size_t out_len) const {
  if (out_len > max_message_len_) {
    throw DomainError("mask of " + std::to_string(out_len) + " bytes exceeds n/8 = " +
                      std::to_string(max_message_len_));
  }
  OpTally::hash_call();
  return do_h3(r2, out_len);
}

// ---------------------------------------------------------------- XofOracles

XofOracles::XofOracles(std::shared_ptr<const Group> group, HashConfig config, std::size_t max_message_len)
    : HashOracles(std::move(group), max_message_len), config_(std::move(config)) {
  config_.validate();
}

Bytes XofOracles::h1_input(ByteView id, const GroupElement& t) const {
  Bytes in = config_.tags[0];
  append_prefixed(in, id);
  append(in, group().encode(t));
  return in;
}

Bytes XofOracles::h2_input(ByteView m, const GroupElement& r1) const {
  Bytes in = config_.tags[1];
  append_prefixed(in, m);
  append(in, group().encode(r1));
  return in;
}

Bytes XofOracles::h3_input(const GroupElement& r2) const {
  Bytes in = config_.tags[2];
  append(in, group().encode(r2));
  return in;
}

Scalar XofOracles::do_h1(ByteView id, const GroupElement& t) const { return hash_to_scalar(config_.algorithm, group().scalars(), h1_input(id, t)); }

Scalar XofOracles::do_h2(ByteView m, const GroupElement& r1) const { return hash_to_scalar(config_.algorithm, group().scalars(), h2_input(m, r1)); }

Bytes XofOracles::do_h3(const GroupElement& r2, std::size_t out_len) const {
  return xof(config_.algorithm, h3_input(r2), out_len);
}

// ---------------------------------------------------------------- ScriptedOracle

Bytes ScriptedOracle::key(ByteView data, const GroupElement& x) const {
  Bytes k;
  append_prefixed(k, data);
  append(k, group().encode(x));
  return k;
}

void ScriptedOracle::script_h1(ByteView id, const GroupElement& t, const Scalar& out) {
  h1_map_.insert_or_assign(key(id, t), out);
}

void ScriptedOracle::script_h2(ByteView m, const GroupElement& r1, const Scalar& out) {
  h2_map_.insert_or_assign(key(m, r1), out);
}

void ScriptedOracle::script_h3(const GroupElement& r2, Bytes mask) {
  h3_map_.insert_or_assign(group().encode(r2), std::move(mask));
}

Scalar ScriptedOracle::do_h1(ByteView id, const GroupElement& t) const {
  auto it = h1_map_.find(key(id, t));
  if (it == h1_map_.end()) throw std::logic_error("unscripted H1 query");
  return it->second;
}

Scalar ScriptedOracle::do_h2(ByteView m, const GroupElement& r1) const {
  auto it = h2_map_.find(key(m, r1));
  if (it == h2_map_.end()) throw std::logic_error("unscripted H2 query");
  return it->second;
}

Bytes ScriptedOracle::do_h3(const GroupElement& r2, std::size_t out_len) const {
  auto it = h3_map_.find(group().encode(r2));
  if (it == h3_map_.end()) throw std::logic_error("unscripted H3 query");
  if (it->second.size() < out_len) throw std::logic_error("scripted H3 mask too short");
  return Bytes(it->second.begin(), it->second.begin() + static_cast<std::ptrdiff_t>(out_len));
}

}  // namespace hsc
