#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

#include "hsc/codec.hpp"
#include "hsc/errors.hpp"
#include "support.hpp"

using namespace hsc;

namespace {

DecodeErrc decode_errc(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DecodeError& e) {
    return e.code();
  }
  FAIL("expected DecodeError");
  return DecodeErrc::kWrongLength;
}

// Runs fn and accepts success or a DecodeError; anything else fails.
template <typename Fn>
void decodes_or_rejects(Fn&& fn) {
  try {
    fn();
  } catch (const DecodeError&) {
  }
}

}  // namespace

TEST_CASE("ciphertext layout and sizes", "[codec]") {
  test::ToyWorld w;
  auto rng = test::nonce(7);
  auto sigma = pchs_signcrypt(w.params, w.pki, w.bound, w.message, rng);
  Bytes wire = encode_ciphertext(*w.group, sigma);
  CHECK(wire == Bytes{0x01, 10, 7, 0x0C});
  CHECK(ciphertext_size(*w.group, 1) == 4);

  auto back = decode_ciphertext(wire, *w.group);
  CHECK(back.direction == Direction::kPchs);
  CHECK(back.c == sigma.c);
  CHECK(back.u == sigma.u);
  CHECK(w.group->equal(back.v, sigma.v));

  auto g = make_group("P-256");
  CHECK(ciphertext_size(*g, 100) == 166);
  CHECK(ciphertext_size(*g, 1) == 67);
}

TEST_CASE("ciphertext decoder error classes", "[codec][negative]") {
  auto g = make_group("P-256");
  SeededRandom rng(2);
  test::World w("P-256", rng);
  Bytes wire = encode_ciphertext(*g, cphs_signcrypt(w.params, w.clc, w.pki.public_part(), Bytes{1, 2, 3}, rng));
  REQUIRE(wire.size() == 69);
  REQUIRE(wire[0] == 0x02);

  CHECK(decode_errc([&] { decode_ciphertext(Bytes(wire.begin(), wire.begin() + 66), *g); }) == DecodeErrc::kTruncated);
  CHECK(decode_errc([&] { decode_ciphertext(Bytes{}, *g); }) == DecodeErrc::kTruncated);

  Bytes bad = wire;
  bad[0] = 0x03;
  CHECK(decode_errc([&] { decode_ciphertext(bad, *g); }) == DecodeErrc::kBadDirection);
  bad = wire;
  std::fill(bad.begin() + 1, bad.begin() + 33, 0xff);
  CHECK(decode_errc([&] { decode_ciphertext(bad, *g); }) == DecodeErrc::kNonCanonicalScalar);
  bad = wire;
  bad[33] = 0x07;
  CHECK(decode_errc([&] { decode_ciphertext(bad, *g); }) == DecodeErrc::kMalformedElement);
  bad = wire;
  bad[33] = 0x02;
  std::fill(bad.begin() + 34, bad.begin() + 66, 0);
  bad[65] = 1;
  CHECK(decode_errc([&] { decode_ciphertext(bad, *g); }) == DecodeErrc::kOffGroupElement);
}

TEST_CASE("ciphertext decoder survives random and mutated input", "[codec][fuzz]") {
  auto g = make_group("P-256");
  SeededRandom rng(31);
  test::World w("P-256", rng);
  Bytes valid = encode_ciphertext(*g, pchs_signcrypt(w.params, w.pki, w.bound, to_bytes("fuzz"), rng));
  for (int i = 0; i < 2000; ++i) {
    Bytes input = test::random_bytes(rng, test::random_below(rng, 120));
    if (i % 2 == 0 && !input.empty()) input[0] = static_cast<std::uint8_t>(1 + i % 4);
    decodes_or_rejects([&] { (void)decode_ciphertext(input, *g); });

    Bytes mutated = valid;
    for (int k = 0; k < 3; ++k) mutated[test::random_below(rng, mutated.size())] = static_cast<std::uint8_t>(i + k);
    mutated.resize(test::random_below(rng, mutated.size() + 4));
    decodes_or_rejects([&] {
      auto sigma = decode_ciphertext(mutated, *g);
      REQUIRE(encode_ciphertext(*g, sigma) == mutated);  // decoding is canonical
    });
  }
}

TEST_CASE("key files round trip", "[codec][keys]") {
  SeededRandom rng(41);
  for (const char* name : {"P-256", "secp256k1", "toy-101"}) {
    auto base = setup(make_group(name), 8 * 64, 128, rng);
    const auto& params = base.params;
    auto pki = pki_keygen(params, rng);
    auto partial = clc_extract_partial(params, base.master, to_bytes("frank"), rng);
    auto clc = clc_finalize(params, partial, rng);

    Bytes pfile = encode_params(params);
    CHECK(peek_kind(pfile) == FileKind::kParams);
    auto params2 = decode_params(pfile);
    CHECK(params2.g().name() == name);
    CHECK(params2.n_bits == params.n_bits);
    CHECK(params2.l_bits == params.l_bits);
    CHECK(params2.hash == params.hash);
    CHECK(params2.g().equal(params2.master_public, params.master_public));
    CHECK(encode_params(params2) == pfile);

    CHECK(decode_master_key(encode_master_key(params, base.master), params2).s == base.master.s);
    CHECK(decode_pki_keypair(encode_pki_keypair(params, pki), params2).private_key == pki.private_key);
    auto clc2 = decode_clc_keypair(encode_clc_keypair(params, clc), params2);
    CHECK(clc2.id == clc.id);
    CHECK(clc2.secret_value == clc.secret_value);
    CHECK(clc2.partial == clc.partial);
    auto partial2 = decode_clc_partial(encode_clc_partial(params, partial), params2);
    CHECK(partial2.partial == partial.partial);
    CHECK(params2.g().equal(decode_pki_public(encode_pki_public(params, pki.public_part()), params2).key, pki.public_key));
    auto pub = decode_clc_public(encode_clc_public(params, clc.public_part()), params2);
    CHECK(pub.id == clc.id);
    CHECK(params2.g().equal(pub.public_value, clc.public_value));

    auto pki_payload = encode_pki_public_payload(params.g(), pki.public_part());
    CHECK(pki_payload.size() == params.g().element_len());
    CHECK(params.g().equal(decode_pki_public_payload(pki_payload, params.g()).key, pki.public_key));
    auto payload = encode_clc_public_payload(params.g(), clc.public_part());
    CHECK(decode_clc_public_payload(payload, params.g()).id == clc.id);
  }
}

TEST_CASE("key file decoders reject mismatches", "[codec][keys][negative]") {
  SeededRandom rng(43);
  test::World w("P-256", rng);
  auto other = setup(w.params.group, w.params.n_bits, w.params.l_bits, rng);
  auto k1 = setup(make_group("secp256k1"), 1024, 128, rng);

  Bytes pki_file = encode_pki_keypair(w.params, w.pki);
  CHECK(decode_errc([&] { decode_clc_keypair(pki_file, w.params); }) == DecodeErrc::kWrongKind);
  CHECK(decode_errc([&] { decode_pki_keypair(pki_file, k1.params); }) == DecodeErrc::kGroupMismatch);
  CHECK(decode_errc([&] { decode_master_key(encode_master_key(w.params, w.master), other.params); }) ==
        DecodeErrc::kParamsMismatch);

  Bytes bad = pki_file;
  bad[0] = 'X';
  CHECK(decode_errc([&] { peek_kind(bad); }) == DecodeErrc::kBadMagic);
  bad = pki_file;
  bad[4] = 0x02;
  CHECK(decode_errc([&] { decode_pki_keypair(bad, w.params); }) == DecodeErrc::kBadVersion);
  bad = pki_file;
  bad.push_back(0);
  CHECK(decode_errc([&] { decode_pki_keypair(bad, w.params); }) == DecodeErrc::kTrailingBytes);
  bad = pki_file;
  bad.pop_back();
  CHECK(decode_errc([&] { decode_pki_keypair(bad, w.params); }) == DecodeErrc::kTruncated);

  // A private key paired with someone else's public key.
  auto stranger = pki_keygen(w.params, rng);
  PkiKeyPair mixed{w.pki.private_key, stranger.public_key};
  CHECK(decode_errc([&] { decode_pki_keypair(encode_pki_keypair(w.params, mixed), w.params); }) ==
        DecodeErrc::kInconsistentKey);
  ClcKeyPair mixed_clc = w.clc;
  mixed_clc.partial = w.params.zq().add(w.clc.partial, w.params.zq().from_u64(1));
  CHECK(decode_errc([&] { decode_clc_keypair(encode_clc_keypair(w.params, mixed_clc), w.params); }) ==
        DecodeErrc::kInconsistentKey);
  PkiKeyPair zero{w.params.zq().zero(), w.pki.public_key};
  CHECK(decode_errc([&] { decode_pki_keypair(encode_pki_keypair(w.params, zero), w.params); }) ==
        DecodeErrc::kZeroScalar);

  Bytes params_file = encode_params(w.params);
  Bytes name_bad = params_file;
  name_bad[8] = 'Q';  // "P-256" -> "Q-256"
  CHECK(decode_errc([&] { decode_params(name_bad); }) == DecodeErrc::kUnknownGroup);

  SystemParams custom = w.params;
  custom.hash.algorithm = "BLAKE3";
  CHECK(decode_errc([&] { decode_params(encode_params(custom)); }) == DecodeErrc::kUnsupportedHash);
  for (int i = 0; i < 500; ++i) {
    Bytes mutated = params_file;
    mutated[test::random_below(rng, mutated.size())] ^= static_cast<std::uint8_t>(1 + test::random_below(rng, 255));
    decodes_or_rejects([&] { (void)decode_params(mutated); });
    Bytes clc_file = encode_clc_keypair(w.params, w.clc);
    clc_file[test::random_below(rng, clc_file.size())] ^= 0x10;
    decodes_or_rejects([&] { (void)decode_clc_keypair(clc_file, w.params); });
  }
}

TEST_CASE("public exports hold no private material", "[codec][keys]") {
  SeededRandom rng(47);
  test::World w("P-256", rng);
  auto contains = [](const Bytes& hay, const Bytes& needle) {
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
  };
  Bytes pki_pub = encode_pki_public(w.params, w.pki.public_part());
  Bytes clc_pub = encode_clc_public(w.params, w.clc.public_part());
  for (const Bytes& file : {pki_pub, clc_pub, encode_params(w.params)}) {
    CHECK_FALSE(contains(file, w.params.zq().encode(w.master.s)));
    CHECK_FALSE(contains(file, w.params.zq().encode(w.pki.private_key)));
    CHECK_FALSE(contains(file, w.params.zq().encode(w.clc.secret_value)));
    CHECK_FALSE(contains(file, w.params.zq().encode(w.clc.partial)));
  }
}

TEST_CASE("frames", "[codec][frames]") {
  SECTION("empty, maximal and back-to-back payloads") {
    Frame empty{FrameType::kStatus, {}};
    Frame big{FrameType::kCiphertext, Bytes(kMaxFramePayload, 0xab)};
    Frame small{FrameType::kPkiPublicKey, Bytes{1, 2, 3}};
    Bytes wire = encode_frame(empty);
    CHECK(wire == Bytes{0x05, 0, 0, 0, 0});
    append(wire, encode_frame(big));
    append(wire, encode_frame(small));
    MemoryStream s(wire);
    CHECK(read_frame(s) == empty);
    CHECK(read_frame(s) == big);
    CHECK(read_frame(s) == small);
    CHECK(s.unread() == 0);
    CHECK_THROWS_AS(read_frame(s), EndOfStream);
  }
  SECTION("oversize payload") {
    Frame too_big{FrameType::kCiphertext, Bytes(kMaxFramePayload + 1, 0)};
    CHECK_THROWS_AS(encode_frame(too_big), ProtocolError);
    Bytes header{0x04, 0x00, 0x10, 0x00, 0x01};  // 2^20 + 1
    MemoryStream s(header);
    CHECK_THROWS_AS(read_frame(s), ProtocolError);
  }
  SECTION("unknown tags and truncation") {
    for (int tag = 0; tag < 256; ++tag) {
      bool known = tag >= 0x02 && tag <= 0x05;
      REQUIRE(is_known_frame_type(static_cast<std::uint8_t>(tag)) == known);
      if (!known) {
        MemoryStream s(Bytes{static_cast<std::uint8_t>(tag), 0, 0, 0, 0});
        REQUIRE_THROWS_AS(read_frame(s), ProtocolError);
      }
    }
    MemoryStream header_cut(Bytes{0x05, 0, 0});
    CHECK_THROWS_AS(read_frame(header_cut), EndOfStream);
    MemoryStream payload_cut(Bytes{0x05, 0, 0, 0, 4, 'a', 'b'});
    CHECK_THROWS_AS(read_frame(payload_cut), EndOfStream);
  }
  SECTION("write_frame matches encode_frame") {
    MemoryStream s;
    Frame f{FrameType::kClcPublicKey, to_bytes("payload")};
    write_frame(s, f);
    CHECK(s.output() == encode_frame(f));
    CHECK(s.output()[4] == 7);
  }
}
