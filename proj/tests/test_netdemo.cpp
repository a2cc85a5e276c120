#include <catch_amalgamated.hpp>

#include <future>
#include <sstream>
#include <thread>

#include "hsc/errors.hpp"
#include "hsc/netdemo.hpp"
#include "support.hpp"

using namespace hsc;

namespace {

struct Pair {
  SessionReport server;
  SessionReport client;
};

Pair run_pair(const SystemParams& params, const DemoKey& server_key, const DemoKey& client_key, ByteView m,
              const ClientOptions& options = {}) {
  auto [a, b] = socket_pair();
  a.set_read_timeout(std::chrono::milliseconds(5000));
  b.set_read_timeout(std::chrono::milliseconds(5000));
  auto server = std::async(std::launch::async, [&, s = std::move(a)]() mutable {
    auto report = serve_session(params, server_key, s);
    s.shutdown_write();
    return report;
  });
  SeededRandom rng(99);
  auto client = client_session(params, client_key, b, m, rng, options);
  b.shutdown_write();
  return {server.get(), client};
}

std::vector<FrameType> expected_flow(FrameType client_key, FrameType server_key) {
  return {client_key, server_key, FrameType::kCiphertext, FrameType::kStatus, FrameType::kStatus};
}

}  // namespace

TEST_CASE("PKI client to CLC server completes the five-frame exchange", "[netdemo]") {
  SeededRandom rng(1);
  test::World w("P-256", rng);
  Bytes m = to_bytes("meter reading 42");
  auto r = run_pair(w.params, w.clc, w.pki, m);
  REQUIRE(r.server.ok());
  REQUIRE(r.client.ok());
  CHECK(r.server.message == std::optional<Bytes>(m));
  CHECK(r.server.final_state == SessionState::kDone);
  CHECK(r.client.transcript.types() == expected_flow(FrameType::kPkiPublicKey, FrameType::kClcPublicKey));
  CHECK(r.server.transcript.types() == r.client.transcript.types());

  const auto& ce = r.client.transcript.entries;
  CHECK(ce[0].sent);
  CHECK_FALSE(ce[1].sent);
  CHECK(ce[3].frame.payload == to_bytes("Verification Success!"));
  CHECK(ce[4].frame.payload == to_bytes("The client has received the result."));
  CHECK(ce[2].frame.payload.size() == ciphertext_size(w.params.g(), m.size()));
  for (std::size_t i = 0; i < ce.size(); ++i) {
    CHECK(r.server.transcript.entries[i].frame == ce[i].frame);
    CHECK(r.server.transcript.entries[i].sent != ce[i].sent);
  }
}

TEST_CASE("mirrored exchange: CLC client to PKI server", "[netdemo]") {
  SeededRandom rng(2);
  test::World w("P-256", rng);
  Bytes m = to_bytes("mirrored");
  auto r = run_pair(w.params, w.pki, w.clc, m);
  REQUIRE(r.server.ok());
  REQUIRE(r.client.ok());
  CHECK(r.server.message == std::optional<Bytes>(m));
  CHECK(r.client.transcript.types() == expected_flow(FrameType::kClcPublicKey, FrameType::kPkiPublicKey));
  CHECK(r.client.transcript.entries[2].frame.payload[0] == 0x02);  // CPHS direction tag
}

TEST_CASE("tampered ciphertext is answered with the failure status", "[netdemo][negative]") {
  SeededRandom rng(3);
  test::World w("P-256", rng);
  ClientOptions flip_c;
  flip_c.tamper_ciphertext = [](Bytes& wire) { wire.back() ^= 0x01; };
  auto r = run_pair(w.params, w.clc, w.pki, to_bytes("tamper"), flip_c);
  CHECK(r.server.status == SessionStatus::kVerificationFailed);
  CHECK(r.client.status == SessionStatus::kPeerRejected);
  CHECK(r.client.transcript.entries.back().frame.payload == to_bytes("Verification Failed!"));
  CHECK_FALSE(r.server.message.has_value());

  ClientOptions garble_v;
  garble_v.tamper_ciphertext = [](Bytes& wire) { wire[33] = 0x09; };
  r = run_pair(w.params, w.pki, w.clc, to_bytes("tamper"), garble_v);
  CHECK(r.server.status == SessionStatus::kMalformedCiphertext);
  CHECK(r.client.status == SessionStatus::kPeerRejected);
}

TEST_CASE("server rejects out-of-order frames before any group work", "[netdemo][negative]") {
  SeededRandom rng(4);
  test::World w("P-256", rng);
  Bytes script = encode_frame({FrameType::kCiphertext, Bytes(70, 1)});
  MemoryStream s(script);
  CountingScope scope;
  auto report = serve_session(w.params, w.clc, s);
  CHECK(report.status == SessionStatus::kProtocolViolation);
  CHECK(report.final_state == SessionState::kAborted);
  CHECK(scope.counts().scalar_mults == 0);
  CHECK(s.output().empty());

  // A PKI server expects a CLC key, not another PKI key.
  MemoryStream wrong_key(encode_frame({FrameType::kPkiPublicKey, encode_pki_public_payload(w.params.g(), w.pki.public_part())}));
  CHECK(serve_session(w.params, w.pki, wrong_key).status == SessionStatus::kProtocolViolation);
}

TEST_CASE("server rejects malformed frames and keys", "[netdemo][negative]") {
  SeededRandom rng(5);
  test::World w("P-256", rng);

  MemoryStream unknown(Bytes{0x09, 0, 0, 0, 0});
  CHECK(serve_session(w.params, w.clc, unknown).status == SessionStatus::kMalformedFrame);

  MemoryStream oversize(Bytes{0x02, 0x00, 0x10, 0x00, 0x01});
  CHECK(serve_session(w.params, w.clc, oversize).status == SessionStatus::kMalformedFrame);

  Bytes off_curve(33, 0);
  off_curve[0] = 0x02;
  off_curve[32] = 0x01;
  MemoryStream bad_key(encode_frame({FrameType::kPkiPublicKey, off_curve}));
  CountingScope scope;
  auto report = serve_session(w.params, w.clc, bad_key);
  CHECK(report.status == SessionStatus::kMalformedKey);
  CHECK(scope.counts().scalar_mults == 0);

  MemoryStream closed;
  CHECK(serve_session(w.params, w.clc, closed).status == SessionStatus::kConnectionLost);

  // Honest first frames, then the client hangs up before the ciphertext.
  Bytes partial = encode_frame({FrameType::kPkiPublicKey, encode_pki_public_payload(w.params.g(), w.pki.public_part())});
  MemoryStream hangup(partial);
  auto cut = serve_session(w.params, w.clc, hangup);
  CHECK(cut.status == SessionStatus::kConnectionLost);
  CHECK(cut.transcript.entries.size() == 2);
}

TEST_CASE("client rejects an unexpected status text", "[netdemo][negative]") {
  SeededRandom rng(6);
  test::World w("P-256", rng);
  Bytes script = encode_frame({FrameType::kClcPublicKey, encode_clc_public_payload(w.params.g(), w.clc.public_part())});
  append(script, encode_frame({FrameType::kStatus, to_bytes("Verification Success")}));
  MemoryStream s(script);
  auto report = client_session(w.params, w.pki, s, to_bytes("x"), rng);
  CHECK(report.status == SessionStatus::kProtocolViolation);
  CHECK(report.final_state == SessionState::kAborted);
}

TEST_CASE("TCP server and client on an ephemeral port", "[netdemo][tcp]") {
  SeededRandom rng(7);
  test::World w("P-256", rng);
  TcpListener listener("127.0.0.1", 0);
  REQUIRE(listener.port() != 0);
  std::ostringstream log;
  auto server = std::async(std::launch::async, [&] {
    return run_server(w.params, w.clc, listener, {1, std::chrono::milliseconds(5000), &log});
  });
  auto client = run_client(w.params, w.pki, "127.0.0.1", listener.port(), to_bytes("over tcp"), rng);
  auto reports = server.get();
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].ok());
  CHECK(client.ok());
  CHECK(log.str().find("status=completed") != std::string::npos);
  CHECK(client.transcript.to_log().find("0 sent 0x02 ") == 0);
}
