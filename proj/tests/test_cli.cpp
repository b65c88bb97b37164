#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hyx/cli.hpp"
#include "hyx/net.hpp"
#include "support/fixtures.hpp"

using namespace hyx;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result hyx_run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// A temp dir holding a SHA-1 store and the example documents as files.
struct Workspace {
  testing::TempDir dir;
  std::string store = (dir / "store").string();

  Result run(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), {"--store", store});
    return hyx_run(std::move(args), input);
  }

  std::string add_text(const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    auto r = run({"--algo", "sha1", "add", (dir / name).string()});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.back() == '\n');
    return r.out.substr(0, r.out.size() - 1);
  }

  // The example edit list with bare hashes, segment locator char=11,16.
  fs::path example_edit_list() {
    auto d1 = add_text("d1", "My name is Alice");
    auto d3 = add_text("d3", "Hello, !");
    auto c2 = add_text("c2", "char=7");
    auto c1 = add_text("c1", "char=11,16");
    auto bare = [](const std::string& id) { return id.substr(5); };
    auto path = dir / "e1.edl";
    write_file(path, " take      " + bare(d3) + "\n insert at " + bare(c2) +
                         "\n from      " + bare(d1) + "\n segment   " +
                         bare(c1) + "\n");
    return path;
  }
};

}  // namespace

TEST_CASE("add prints the id") {
  Workspace ws;
  CHECK(ws.add_text("d1", "My name is Alice") ==
        "sha1:fcb59267e2e6641140578235c8cb6d38eaf6abc1");
  auto r = ws.run({"add", "-"}, "My name is Alice");
  CHECK(r.out == "sha1:fcb59267e2e6641140578235c8cb6d38eaf6abc1\n");
  CHECK(r.err.empty());
}

TEST_CASE("assemble the example") {
  Workspace ws;
  auto e1 = ws.example_edit_list();
  auto r = ws.run({"assemble", e1.string()});
  CHECK(r.code == 0);
  CHECK(r.out == "Hello, Alice!");

  SUBCASE("--out writes a file instead") {
    auto out = ws.dir / "d4";
    auto w = ws.run({"assemble", e1.string(), "--out", out.string()});
    CHECK(w.code == 0);
    CHECK(w.out.empty());
    CHECK(read_file(out) == "Hello, Alice!");
  }
  SUBCASE("--put matches assemble | add -") {
    auto put = ws.run({"assemble", "--put", e1.string()});
    auto piped = ws.run({"add", "-"}, r.out);
    CHECK(put.code == 0);
    CHECK(put.out == piped.out);
    CHECK(put.out == "sha1:a3f7c68001a12f116429bebf935fccfa099d9090\n");
  }
  SUBCASE("a stored edit list is addressed by id") {
    auto id = ws.run({"add", e1.string()}).out;
    id.pop_back();
    CHECK(ws.run({"assemble", id}).out == "Hello, Alice!");
  }
}

TEST_CASE("links") {
  Workspace ws;
  auto e1 = ws.example_edit_list();
  auto r = ws.run({"links", e1.string()});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "versioning char=7 sha1:b5a83a5c3f71a52bccd3a1a5bde266da2e30ac04\n"
        "transclusion char=11,16 sha1:fcb59267e2e6641140578235c8cb6d38eaf6abc1\n");
  auto put = ws.run({"links", "--put", e1.string()});
  CHECK(put.out ==
        "versioning char=7 sha1:b5a83a5c3f71a52bccd3a1a5bde266da2e30ac04"
        " -> sha1:a3f7c68001a12f116429bebf935fccfa099d9090\n"
        "transclusion char=11,16 sha1:fcb59267e2e6641140578235c8cb6d38eaf6abc1"
        " -> sha1:a3f7c68001a12f116429bebf935fccfa099d9090\n");
  CHECK(ws.run({"cat", "sha1:a3f7c68001a12f116429bebf935fccfa099d9090"}).out ==
        "Hello, Alice!");
}

TEST_CASE("verify") {
  Workspace ws;
  auto e1 = ws.example_edit_list();
  auto ok = ws.run({"verify", e1.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.ends_with("ok: 4 checks passed\n"));

  fs::remove_all(ws.dir / "store" / "objects" / "sha1" / "fc" /
                 "b59267e2e6641140578235c8cb6d38eaf6abc1");
  auto bad = ws.run({"verify", e1.string()});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("unresolved op1 from sha1:fcb59267e2e6641140578235c8cb6d38eaf6abc1") !=
        std::string::npos);
  CHECK(ws.run({"assemble", e1.string()}).code == 1);
}

TEST_CASE("cat and id") {
  Workspace ws;
  std::string binary("a\0b\r\n\xff\0", 7);
  auto id = ws.run({"add", "-"}, binary).out;

  auto missing = ws.run({"cat", "sha1:0000000000000000000000000000000000000000"});
  CHECK(missing.code == 1);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("not found") != std::string::npos);

  id.pop_back();
  auto back = ws.run({"cat", id});
  CHECK(back.code == 0);
  CHECK(back.out == binary);

  auto only_id = ws.run({"id", "-"}, "not stored");
  CHECK(only_id.code == 0);
  only_id.out.pop_back();
  CHECK(ws.run({"cat", only_id.out}).code == 1);
  CHECK(ws.run({"add", "-"}, "not stored").out == only_id.out + "\n");

  CHECK(hyx_run({"--algo", "sha1", "id", "-"}, "").out ==
        "sha1:da39a3ee5e6b4b0d3255bfef95601890afd80709\n");
  CHECK(ws.run({"cat", "sha1:zz"}).code == 1);
}

TEST_CASE("select") {
  Workspace ws;
  auto id = ws.add_text("d1", "My name is Alice");
  CHECK(ws.run({"select", id, "char=11,16"}).out == "Alice");
  CHECK(ws.run({"select", id, "char=0,2"}).out == "My");
  auto point = ws.run({"select", id, "char=7"});
  CHECK(point.code == 1);
  CHECK(point.out.empty());
  CHECK(ws.run({"select", id, "char=0,99"}).code == 1);
  CHECK(ws.run({"select", id, "bogus"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  Workspace ws;
  CHECK(hyx_run({}).code == 2);
  CHECK(hyx_run({"frobnicate"}).code == 2);
  CHECK(ws.run({"add"}).code == 2);
  CHECK(ws.run({"select", "only-one"}).code == 2);
  CHECK(ws.run({"--algo", "md5", "id", "-"}).code == 2);
  auto help = hyx_run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("assemble") != std::string::npos);
}

TEST_CASE("HYX_STORE and missing stores") {
  testing::TempDir dir;
  ::setenv("HYX_STORE", (dir / "env-store").c_str(), 1);
  auto r = hyx_run({"add", "-"}, "x");
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "env-store" / "config"));
  CHECK(read_file(dir / "env-store" / "config").starts_with("algorithm=sha256\n"));
  ::unsetenv("HYX_STORE");

  auto none = hyx_run({"--store", (dir / "nothing").string(), "cat",
                       "sha1:0000000000000000000000000000000000000000"});
  CHECK(none.code == 1);
  CHECK(none.err.find("no store") != std::string::npos);
}

TEST_CASE("fetch from a peer") {
  Workspace origin;
  auto id = origin.add_text("d1", "My name is Alice");
  auto store = Store::open(origin.store);
  Server server(store);
  server.start("127.0.0.1:0");

  Workspace local;
  auto r = local.run({"fetch", server.base_url(), id});
  CHECK(r.code == 0);
  CHECK(r.out == id + "\n");
  CHECK(local.run({"cat", id}).out == "My name is Alice");

  auto missing = local.run({"fetch", server.base_url(),
                            "sha1:0000000000000000000000000000000000000000"});
  CHECK(missing.code == 1);
}

TEST_CASE("the installed binary composes in a shell pipeline") {
  Workspace ws;
  auto e1 = ws.example_edit_list();
  auto sh = [&](const std::string& cmd) {
    std::string full = "export HYX_STORE='" + ws.store + "'; " + cmd;
    std::string out;
    FILE* p = ::popen(full.c_str(), "r");
    REQUIRE(p);
    char buf[256];
    while (auto n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    CHECK(::pclose(p) == 0);
    return out;
  };
  std::string hyx = HYX_BINARY;
  auto piped = sh(hyx + " assemble '" + e1.string() + "' | " + hyx + " add -");
  auto put = sh(hyx + " assemble --put '" + e1.string() + "'");
  CHECK(piped == put);
  CHECK(put == "sha1:a3f7c68001a12f116429bebf935fccfa099d9090\n");
  CHECK(sh(hyx + " cat " + put.substr(0, put.size() - 1)) == "Hello, Alice!");
}
