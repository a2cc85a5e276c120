#include "hsc/codec.hpp"

#include <array>

#include "hsc/errors.hpp"

namespace hsc {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'H', 'S', 'C', '1'};

Scalar read_scalar(ByteReader& r, const Group& g) { return g.scalars().decode(r.take(g.scalar_len())); }

Scalar read_nonzero_scalar(ByteReader& r, const Group& g) {
  Scalar s = read_scalar(r, g);
  if (s.is_zero()) throw DecodeError(DecodeErrc::kZeroScalar, "key scalar must be nonzero");
  return s;
}

GroupElement read_element(ByteReader& r, const Group& g) { return g.decode(r.take(g.element_len())); }

void write_id(Bytes& out, ByteView id) {
  if (id.size() > 0xffff) throw DomainError("identity longer than 65535 bytes");
  append_u16(out, static_cast<std::uint16_t>(id.size()));
  append(out, id);
}

Bytes read_id(ByteReader& r) {
  auto len = r.u16();
  auto id = r.take(len);
  return Bytes(id.begin(), id.end());
}

void write_short_string(Bytes& out, ByteView s) {
  if (s.size() > 0xff) throw DomainError("header string longer than 255 bytes");
  append_u8(out, static_cast<std::uint8_t>(s.size()));
  append(out, s);
}

Bytes read_short_string(ByteReader& r) {
  auto len = r.u8();
  auto s = r.take(len);
  return Bytes(s.begin(), s.end());
}

Bytes header(FileKind kind, const std::string& group_name) {
  Bytes out(kMagic.begin(), kMagic.end());
  append_u8(out, kFormatVersion);
  append_u8(out, static_cast<std::uint8_t>(kind));
  write_short_string(out, to_bytes(group_name));
  return out;
}

/// Consumes the header; returns the group name.
std::string read_header(ByteReader& r, FileKind expected) {
  auto magic = r.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError(DecodeErrc::kBadMagic, "not an HSC1 file");
  if (r.u8() != kFormatVersion) throw DecodeError(DecodeErrc::kBadVersion, "unsupported format version");
  auto kind = r.u8();
  if (kind != static_cast<std::uint8_t>(expected)) {
    throw DecodeError(DecodeErrc::kWrongKind, std::string("expected ") + to_string(expected) + " file");
  }
  return to_string(read_short_string(r));
}

void read_header_for(ByteReader& r, FileKind expected, const SystemParams& params) {
  auto name = read_header(r, expected);
  if (name != params.g().name()) {
    throw DecodeError(DecodeErrc::kGroupMismatch, "file is for group " + name + ", params use " + params.g().name());
  }
}

}  // namespace

const char* to_string(FileKind kind) {
  switch (kind) {
    case FileKind::kParams: return "params";
    case FileKind::kMasterKey: return "master-key";
    case FileKind::kPkiPrivate: return "pki-private";
    case FileKind::kClcPrivate: return "clc-private";
    case FileKind::kPkiPublic: return "pki-public";
    case FileKind::kClcPublic: return "clc-public";
    case FileKind::kClcPartial: return "clc-partial";
  }
  return "unknown";
}

// ------------------------------------------------------------ ciphertexts

std::size_t ciphertext_size(const Group& group, std::size_t message_len) {
  return 1 + group.scalar_len() + group.element_len() + message_len;
}

Bytes encode_ciphertext(const Group& group, const Ciphertext& sigma) {
  Bytes out;
  out.reserve(ciphertext_size(group, sigma.c.size()));
  append_u8(out, static_cast<std::uint8_t>(sigma.direction));
  append(out, group.scalars().encode(sigma.u));
  append(out, group.encode(sigma.v));
  append(out, sigma.c);
  return out;
}

Ciphertext decode_ciphertext(ByteView wire, const Group& group) {
  if (wire.size() < ciphertext_size(group, 1)) {
    throw DecodeError(DecodeErrc::kTruncated, "ciphertext shorter than " + std::to_string(ciphertext_size(group, 1)) +
                                                  " bytes");
  }
  ByteReader r(wire);
  Ciphertext sigma;
  auto dir = r.u8();
  if (dir != static_cast<std::uint8_t>(Direction::kPchs) && dir != static_cast<std::uint8_t>(Direction::kCphs)) {
    throw DecodeError(DecodeErrc::kBadDirection, "unknown direction tag");
  }
  sigma.direction = static_cast<Direction>(dir);
  sigma.u = read_scalar(r, group);
  sigma.v = read_element(r, group);
  auto c = r.rest();
  sigma.c.assign(c.begin(), c.end());
  return sigma;
}

// ------------------------------------------------------------ files

FileKind peek_kind(ByteView file) {
  ByteReader r(file);
  auto magic = r.take(kMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) throw DecodeError(DecodeErrc::kBadMagic, "not an HSC1 file");
  if (r.u8() != kFormatVersion) throw DecodeError(DecodeErrc::kBadVersion, "unsupported format version");
  auto kind = r.u8();
  if (kind < 0x01 || kind > 0x07) throw DecodeError(DecodeErrc::kWrongKind, "unknown file kind");
  return static_cast<FileKind>(kind);
}

Bytes encode_params(const SystemParams& params) {
  const auto& g = params.g();
  Bytes out = header(FileKind::kParams, g.name());
  append(out, g.encode(params.generator));
  append(out, g.encode(params.master_public));
  append_u32(out, params.n_bits);
  append_u32(out, params.l_bits);
  write_short_string(out, to_bytes(params.hash.algorithm));
  for (const auto& tag : params.hash.tags) write_short_string(out, tag);
  return out;
}

SystemParams decode_params(ByteView file) {
  ByteReader r(file);
  auto group = make_group(read_header(r, FileKind::kParams));
  auto generator = read_element(r, *group);
  if (!group->equal(generator, group->generator())) {
    throw DecodeError(DecodeErrc::kParamsMismatch, "P is not the standard generator of " + group->name());
  }
  auto master_public = read_element(r, *group);
  if (group->is_identity(master_public)) throw DecodeError(DecodeErrc::kParamsMismatch, "Ppub is the identity");
  auto n_bits = r.u32();
  auto l_bits = r.u32();
  HashConfig hash;
  hash.algorithm = to_string(read_short_string(r));
  for (auto& tag : hash.tags) tag = read_short_string(r);
  r.expect_done();
  try {
    return SystemParams::assemble(std::move(group), master_public, n_bits, l_bits, std::move(hash));
  } catch (const DomainError& e) {
    throw DecodeError(DecodeErrc::kUnsupportedHash, e.what());
  }
}

Bytes encode_master_key(const SystemParams& params, const MasterKey& master) {
  Bytes out = header(FileKind::kMasterKey, params.g().name());
  append(out, params.zq().encode(master.s));
  return out;
}

MasterKey decode_master_key(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kMasterKey, params);
  MasterKey master{read_nonzero_scalar(r, params.g())};
  r.expect_done();
  if (!params.g().equal(params.g().mul_base(master.s), params.master_public)) {
    throw DecodeError(DecodeErrc::kParamsMismatch, "master key does not match Ppub");
  }
  return master;
}

Bytes encode_pki_keypair(const SystemParams& params, const PkiKeyPair& key) {
  Bytes out = header(FileKind::kPkiPrivate, params.g().name());
  append(out, params.zq().encode(key.private_key));
  append(out, params.g().encode(key.public_key));
  return out;
}

PkiKeyPair decode_pki_keypair(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kPkiPrivate, params);
  PkiKeyPair key;
  key.private_key = read_nonzero_scalar(r, params.g());
  key.public_key = read_element(r, params.g());
  r.expect_done();
  if (!pki_keypair_consistent(params, key)) throw DecodeError(DecodeErrc::kInconsistentKey, "x_p PK_p != P");
  return key;
}

Bytes encode_clc_keypair(const SystemParams& params, const ClcKeyPair& key) {
  Bytes out = header(FileKind::kClcPrivate, params.g().name());
  write_id(out, key.id);
  append(out, params.zq().encode(key.secret_value));
  append(out, params.zq().encode(key.partial));
  append(out, params.g().encode(key.commitment));
  append(out, params.g().encode(key.public_value));
  return out;
}

ClcKeyPair decode_clc_keypair(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kClcPrivate, params);
  ClcKeyPair key;
  key.id = read_id(r);
  key.secret_value = read_nonzero_scalar(r, params.g());
  key.partial = read_scalar(r, params.g());
  key.commitment = read_element(r, params.g());
  key.public_value = read_element(r, params.g());
  r.expect_done();
  if (!clc_keypair_consistent(params, key)) {
    throw DecodeError(DecodeErrc::kInconsistentKey, "CLC key material fails its validity equations");
  }
  return key;
}

Bytes encode_clc_partial(const SystemParams& params, const ClcPartialKey& partial) {
  Bytes out = header(FileKind::kClcPartial, params.g().name());
  write_id(out, partial.id);
  append(out, params.zq().encode(partial.partial));
  append(out, params.g().encode(partial.commitment));
  return out;
}

ClcPartialKey decode_clc_partial(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kClcPartial, params);
  ClcPartialKey partial;
  partial.id = read_id(r);
  partial.partial = read_scalar(r, params.g());
  partial.commitment = read_element(r, params.g());
  r.expect_done();
  return partial;
}

Bytes encode_pki_public_payload(const Group& group, const PkiPublicKey& key) { return group.encode(key.key); }

PkiPublicKey decode_pki_public_payload(ByteView payload, const Group& group) {
  ByteReader r(payload);
  PkiPublicKey key{read_element(r, group)};
  r.expect_done();
  return key;
}

Bytes encode_clc_public_payload(const Group& group, const ClcPublicKey& key) {
  Bytes out;
  write_id(out, key.id);
  append(out, group.encode(key.commitment));
  append(out, group.encode(key.public_value));
  return out;
}

ClcPublicKey decode_clc_public_payload(ByteView payload, const Group& group) {
  ByteReader r(payload);
  ClcPublicKey key;
  key.id = read_id(r);
  key.commitment = read_element(r, group);
  key.public_value = read_element(r, group);
  r.expect_done();
  return key;
}

Bytes encode_pki_public(const SystemParams& params, const PkiPublicKey& key) {
  Bytes out = header(FileKind::kPkiPublic, params.g().name());
  append(out, encode_pki_public_payload(params.g(), key));
  return out;
}

PkiPublicKey decode_pki_public(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kPkiPublic, params);
  return decode_pki_public_payload(r.rest(), params.g());
}

Bytes encode_clc_public(const SystemParams& params, const ClcPublicKey& key) {
  Bytes out = header(FileKind::kClcPublic, params.g().name());
  append(out, encode_clc_public_payload(params.g(), key));
  return out;
}

ClcPublicKey decode_clc_public(ByteView file, const SystemParams& params) {
  ByteReader r(file);
  read_header_for(r, FileKind::kClcPublic, params);
  return decode_clc_public_payload(r.rest(), params.g());
}

// ------------------------------------------------------------ frames

bool is_known_frame_type(std::uint8_t tag) { return tag >= 0x02 && tag <= 0x05; }

Bytes encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxFramePayload) {
    throw ProtocolError("frame payload of " + std::to_string(frame.payload.size()) + " bytes exceeds cap");
  }
  Bytes out;
  out.reserve(kFrameHeaderLen + frame.payload.size());
  append_u8(out, static_cast<std::uint8_t>(frame.type));
  append_u32(out, static_cast<std::uint32_t>(frame.payload.size()));
  append(out, frame.payload);
  return out;
}

void write_frame(ByteStream& sink, const Frame& frame) { sink.write_all(encode_frame(frame)); }

Frame read_frame(ByteStream& source) {
  std::array<std::uint8_t, kFrameHeaderLen> head{};
  std::size_t got = source.read_full(head);
  if (got == 0) throw EndOfStream("stream closed");
  if (got < head.size()) throw EndOfStream("stream ended inside a frame header");

  if (!is_known_frame_type(head[0])) throw ProtocolError("unknown frame type " + std::to_string(head[0]));
  std::uint32_t len = (std::uint32_t{head[1]} << 24) | (std::uint32_t{head[2]} << 16) |
                      (std::uint32_t{head[3]} << 8) | std::uint32_t{head[4]};
  if (len > kMaxFramePayload) throw ProtocolError("frame length " + std::to_string(len) + " exceeds cap");

  Frame frame;
  frame.type = static_cast<FrameType>(head[0]);
  frame.payload.resize(len);
  if (source.read_full(frame.payload) < len) throw EndOfStream("stream ended inside a frame payload");
  return frame;
}

}  // namespace hsc
