#include <catch_amalgamated.hpp>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hsc/codec.hpp"
#include "support.hpp"

using namespace hsc;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

class Workspace {
 public:
  Workspace() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("hsc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result run(std::vector<std::string> args) const {
    std::vector<const char*> argv{"hsc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  Bytes read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

  void write(const std::string& name, ByteView data) const {
    std::ofstream out(path(name), std::ios::binary);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  }

  // setup, pki-keygen, clc-extract, clc-finalize, export-pub
  void provision(const std::string& group = "P-256") const {
    REQUIRE(run({"setup", "--group", group, "--nbits", "1024", "--out", path("params"), "--key", path("master")}).code == 0);
    REQUIRE(run({"pki-keygen", "--params", path("params"), "--out", path("pki")}).code == 0);
    REQUIRE(run({"clc-extract", "--params", path("params"), "--key", path("master"), "--id", "bob", "--out",
                 path("partial")}).code == 0);
    REQUIRE(run({"clc-finalize", "--params", path("params"), "--in", path("partial"), "--out", path("clc")}).code == 0);
    REQUIRE(run({"export-pub", "--params", path("params"), "--key", path("pki"), "--out", path("pki.pub")}).code == 0);
    REQUIRE(run({"export-pub", "--params", path("params"), "--key", path("clc"), "--out", path("clc.pub")}).code == 0);
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("CLI end to end in both directions", "[cli]") {
  Workspace ws;
  ws.provision();
  Bytes m = to_bytes("plaintext \x01\x02 with binary");
  ws.write("m", m);

  auto s = ws.run({"signcrypt", "--mode", "pchs", "--params", ws.path("params"), "--key", ws.path("pki"), "--peer",
                   ws.path("clc.pub"), "--in", ws.path("m"), "--out", ws.path("ct")});
  REQUIRE(s.code == 0);
  CHECK(ws.read("ct").size() == 1 + 32 + 33 + m.size());
  auto u = ws.run({"unsigncrypt", "--mode", "pchs", "--params", ws.path("params"), "--key", ws.path("clc"), "--peer",
                   ws.path("pki.pub"), "--in", ws.path("ct"), "--out", ws.path("m.out")});
  REQUIRE(u.code == 0);
  CHECK(ws.read("m.out") == m);

  s = ws.run({"signcrypt", "--mode", "cphs", "--params", ws.path("params"), "--key", ws.path("clc"), "--peer",
              ws.path("pki.pub"), "--message", "reverse", "--out", ws.path("ct2")});
  REQUIRE(s.code == 0);
  u = ws.run({"unsigncrypt", "--mode", "cphs", "--params", ws.path("params"), "--key", ws.path("pki"), "--peer",
              ws.path("clc.pub"), "--in", ws.path("ct2")});
  REQUIRE(u.code == 0);
  CHECK(u.out == "reverse");
}

TEST_CASE("CLI exit codes for reject, decode and usage errors", "[cli][negative]") {
  Workspace ws;
  ws.provision();
  REQUIRE(ws.run({"signcrypt", "--mode", "pchs", "--params", ws.path("params"), "--key", ws.path("pki"), "--peer",
                  ws.path("clc.pub"), "--message", "hello", "--out", ws.path("ct")}).code == 0);
  Bytes ct = ws.read("ct");
  auto unsign = [&](const std::string& file) {
    return ws.run({"unsigncrypt", "--mode", "pchs", "--params", ws.path("params"), "--key", ws.path("clc"), "--peer",
                   ws.path("pki.pub"), "--in", ws.path(file)});
  };

  Bytes tampered = ct;
  tampered.back() ^= 0x40;
  ws.write("tampered", tampered);
  auto r = unsign("tampered");
  CHECK(r.code == 3);
  CHECK(r.out == "REJECT\n");
  CHECK(r.err.rfind("error=crypto ", 0) == 0);

  ws.write("short", Bytes(ct.begin(), ct.begin() + 40));
  r = unsign("short");
  CHECK(r.code == 4);
  CHECK(r.err.rfind("error=decode code=truncated ", 0) == 0);

  r = unsign("missing");
  CHECK(r.code == 4);
  CHECK(r.err.rfind("error=io ", 0) == 0);

  CHECK(ws.run({"unsigncrypt", "--mode", "xyz", "--params", ws.path("params"), "--key", ws.path("clc"), "--peer",
                ws.path("pki.pub"), "--in", ws.path("ct")}).code == 2);
  CHECK(ws.run({"signcrypt", "--params", ws.path("params")}).code == 2);
  CHECK(ws.run({"frobnicate"}).code == 2);
  CHECK(ws.run({}).code == 2);
  r = ws.run({"pki-keygen", "--out", ws.path("x")});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error=usage ", 0) == 0);

  // Wrong key role for the mode is a decode error, not a crash.
  r = ws.run({"unsigncrypt", "--mode", "cphs", "--params", ws.path("params"), "--key", ws.path("clc"), "--peer",
              ws.path("pki.pub"), "--in", ws.path("ct")});
  CHECK(r.code == 4);
  CHECK(r.err.find("code=wrong_kind") != std::string::npos);
}

TEST_CASE("CLI never overwrites key files without --force", "[cli]") {
  Workspace ws;
  ws.provision();
  Bytes before = ws.read("pki");
  auto r = ws.run({"pki-keygen", "--params", ws.path("params"), "--out", ws.path("pki")});
  CHECK(r.code == 4);
  CHECK(ws.read("pki") == before);
  Bytes params_before = ws.read("params");
  CHECK(ws.run({"setup", "--out", ws.path("params"), "--key", ws.path("master2")}).code == 4);
  CHECK(ws.read("params") == params_before);

  r = ws.run({"pki-keygen", "--params", ws.path("params"), "--out", ws.path("pki"), "--force"});
  CHECK(r.code == 0);
  CHECK(ws.read("pki") != before);
}

TEST_CASE("CLI read-only commands are idempotent", "[cli]") {
  Workspace ws;
  ws.provision();
  CHECK(ws.run({"export-pub", "--params", ws.path("params"), "--key", ws.path("clc"), "--out", ws.path("again"),
                "--force"}).code == 0);
  CHECK(ws.read("again") == ws.read("clc.pub"));
  Bytes params = ws.read("params");
  Bytes pki = ws.read("pki");
  CHECK(ws.run({"export-pub", "--params", ws.path("params"), "--key", ws.path("pki"), "--out", ws.path("again"),
                "--force"}).code == 0);
  CHECK(ws.read("params") == params);
  CHECK(ws.read("pki") == pki);
  CHECK(ws.read("again") == ws.read("pki.pub"));
}

TEST_CASE("CLI public exports carry no secret bytes", "[cli]") {
  Workspace ws;
  ws.provision();
  auto params = decode_params(ws.read("params"));
  auto master = decode_master_key(ws.read("master"), params);
  auto pki = decode_pki_keypair(ws.read("pki"), params);
  auto clc = decode_clc_keypair(ws.read("clc"), params);
  auto contains = [](const Bytes& hay, const Bytes& needle) {
    return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
  };
  for (const char* file : {"params", "pki.pub", "clc.pub"}) {
    Bytes data = ws.read(file);
    CHECK_FALSE(contains(data, params.zq().encode(master.s)));
    CHECK_FALSE(contains(data, params.zq().encode(pki.private_key)));
    CHECK_FALSE(contains(data, params.zq().encode(clc.secret_value)));
    CHECK_FALSE(contains(data, params.zq().encode(clc.partial)));
  }
  CHECK(peek_kind(ws.read("partial")) == FileKind::kClcPartial);
}

TEST_CASE("CLI rejects a forged partial key at finalize", "[cli][negative]") {
  Workspace ws;
  ws.provision();
  Bytes partial = ws.read("partial");
  partial[partial.size() - 34] ^= 0x01;  // last byte of d
  ws.write("forged", partial);
  auto r = ws.run({"clc-finalize", "--params", ws.path("params"), "--in", ws.path("forged"), "--out", ws.path("clc2")});
  CHECK(r.code == 3);
  CHECK_FALSE(fs::exists(ws.path("clc2")));
}

TEST_CASE("CLI bench writes stable CSV rows", "[cli][bench]") {
  Workspace ws;
  auto r = ws.run({"bench", "--group", "toy-101", "--iters", "20", "--algo-iters", "2", "--out", ws.path("rows.csv")});
  REQUIRE(r.code == 0);
  std::string csv = to_string(ws.read("rows.csv"));
  CHECK(csv.rfind("kind,name,group,iterations,mean_us,median_us,scalar_mults,group_adds,hash_calls\n", 0) == 0);
  CHECK(csv.find("ops,pchs_unsigncrypt,toy-101,,,,4,2,2\n") != std::string::npos);
  CHECK(r.out.find("scalar_mult") != std::string::npos);
}
