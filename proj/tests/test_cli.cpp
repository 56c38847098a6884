#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ea/cli.hpp"
#include "ea/io.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = ea::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ea-cli-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name, const std::string& content) const {
    auto p = (path / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string name(const std::string& n) const { return (path / n).string(); }
};

}  // namespace

TEST_CASE("validate exit codes") {
  TempDir tmp;
  auto good = tmp.file("good.ea", ea::serialize_ea(testutil::chain(2)));
  CHECK(cli({"validate", good}).code == 0);

  auto bad = tmp.file("bad.ea",
                      "ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 1 .\n2 . .\n");
  auto r = cli({"validate", bad});
  CHECK(r.code == 1);
  CHECK(!r.err.empty());

  auto garbled = tmp.file("garbled.ea", "ea what\n");
  CHECK(cli({"validate", garbled}).code == 2);

  CHECK(cli({"validate", good, "--frobnicate"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("gen output feeds validate") {
  TempDir tmp;
  auto r = cli({"gen", "chain", "3"});
  CHECK(r.code == 0);
  auto path = tmp.file("gen.ea", r.out);
  CHECK(cli({"validate", path}).code == 0);
  CHECK(cli({"gen", "spiral", "3"}).code == 2);
}

TEST_CASE("props reports the diamond flags") {
  TempDir tmp;
  auto path = tmp.file("diamond.ea", ea::serialize_ea(testutil::diamond()));
  auto r = cli({"props", path, "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"homogeneous\": true") != std::string::npos);
  CHECK(r.out.find("\"rdp\": false") != std::string::npos);
  CHECK(r.out.find("\"trt\": true") != std::string::npos);

  auto again = cli({"props", path, "--json"});
  CHECK(again.out == r.out);  // byte-identical reports
}

TEST_CASE("element listings use labels") {
  TempDir tmp;
  auto path = tmp.file("c3.ea", ea::serialize_ea(testutil::chain(3)));
  CHECK(cli({"sharp", path}).out == "0 1\n");
  CHECK(cli({"meager", path}).out == "0 a 2a\n");
  CHECK(cli({"center", path}).out == "0 1\n");

  auto dia = tmp.file("diamond.ea", ea::serialize_ea(testutil::diamond()));
  CHECK(cli({"blocks", dia}).out == "{0, a, 1}\n{0, b, 1}\n");
}

TEST_CASE("triple then reconstruct then iso round-trips") {
  TempDir tmp;
  for (auto steps : {2, 3}) {
    auto src = tmp.file("src.ea", ea::serialize_ea(testutil::chain(steps)));
    auto tri = tmp.name("out.triple");
    auto back = tmp.name("back.ea");
    CHECK(cli({"triple", src, "--out", tri}).code == 0);
    CHECK(cli({"reconstruct", tri, "--out", back}).code == 0);
    CHECK(cli({"iso", src, back}).code == 0);
  }
}

TEST_CASE("reconstruct refuses broken triple files") {
  TempDir tmp;
  // h(0) must be exactly {0}
  auto bad = tmp.file("bad.triple",
                      "triple\nsharp 2\nzero 0\nunit 1\ntable\n0 1\n1 .\n"
                      "meager 2\nzero 0\ntable\n0 1\n1 .\nh\n0: 0 1\n1: 0 1\n");
  auto r = cli({"reconstruct", bad});
  CHECK(r.code == 1);
  CHECK(!r.err.empty());

  auto garbled = tmp.file("garbled.triple", "triple\nsharp x\n");
  CHECK(cli({"reconstruct", garbled}).code == 2);
}

TEST_CASE("verify certifies the three-step chain") {
  TempDir tmp;
  auto path = tmp.file("c3.ea", ea::serialize_ea(testutil::chain(3)));
  auto r = cli({"verify", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("2a -> (0,2a)") != std::string::npos);
  CHECK(r.out.find("independent isomorphism search: found") != std::string::npos);
}

TEST_CASE("iso prints the bijection or a refusal") {
  TempDir tmp;
  auto a = tmp.file("a.ea", ea::serialize_ea(testutil::chain(3)));
  auto b = tmp.file("b.ea", ea::serialize_ea(testutil::boolean(2)));
  auto r = cli({"iso", a, b});
  CHECK(r.code == 1);
  CHECK(r.out == "NOT ISOMORPHIC\n");

  auto c = tmp.file("c.ea", ea::serialize_ea(testutil::mo(1)));
  auto ok = cli({"iso", b, c});
  CHECK(ok.code == 0);
  CHECK(ok.out.find(" -> ") != std::string::npos);
}

TEST_CASE("enum writes one file per class plus an index") {
  TempDir tmp;
  auto dir = tmp.name("classes");
  auto r = cli({"enum", "--max-size", "4", "--out", dir});
  CHECK(r.code == 0);
  CHECK(fs::exists(fs::path(dir) / "2-0.ea"));
  CHECK(fs::exists(fs::path(dir) / "4-2.ea"));
  std::ifstream index(fs::path(dir) / "index.txt");
  std::stringstream buf;
  buf << index.rdbuf();
  CHECK(buf.str() == "2 1\n3 1\n4 3\n");
}
