#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "polynorm/serialization.hpp"

#ifndef POLYNORM_CLI_PATH
#define POLYNORM_CLI_PATH "polynorm"
#endif

namespace {

std::string cli_path() {
  const char* env = std::getenv("POLYNORM_CLI");
  return env ? env : POLYNORM_CLI_PATH;
}

struct TempDir {
  std::string path;
  TempDir() {
    char templ[] = "/tmp/polynorm-cli-XXXXXX";
    path = mkdtemp(templ);
  }
  ~TempDir() { std::system(("rm -rf " + path).c_str()); }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

// Runs the CLI with stdout/stderr captured into files; returns the exit code.
int run(const TempDir& dir, const std::string& args) {
  std::string cmd = cli_path() + " " + args + " >" + dir.file("stdout.txt") + " 2>" +
                    dir.file("stderr.txt");
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string captured(const TempDir& dir, const char* which) {
  return polynorm::read_text_file(dir.file(which));
}

}  // namespace

TEST_CASE("build/eval round trip on the l1 closed form") {
  TempDir dir;
  REQUIRE(run(dir, "build --body l1 --d 3 --n 1 --out " + dir.file("a.json")) == 0);
  polynorm::write_text_file(dir.file("pts.csv"), "x1,x2,x3\n1,-2,3\n1,0,0\n");
  REQUIRE(run(dir, "eval --in " + dir.file("a.json") + " --points " + dir.file("pts.csv") +
                       " --out " + dir.file("eval.csv")) == 0);
  std::string csv = polynorm::read_text_file(dir.file("eval.csv"));
  CHECK(csv.rfind("p,r,lower,upper\n", 0) == 0);
  CHECK(csv.find("\n14,0,3.7416573867739413,6.4807406984078595") != std::string::npos);

  // eval twice: identical bytes
  REQUIRE(run(dir, "eval --in " + dir.file("a.json") + " --points " + dir.file("pts.csv") +
                       " --out " + dir.file("eval2.csv")) == 0);
  CHECK(polynorm::read_text_file(dir.file("eval2.csv")) == csv);
}

TEST_CASE("expand emits grlex-ordered coefficients") {
  TempDir dir;
  REQUIRE(run(dir, "build --body l1 --d 2 --n 1 --out " + dir.file("a.json")) == 0);
  REQUIRE(run(dir, "expand --in " + dir.file("a.json") + " --out " + dir.file("e.csv")) == 0);
  CHECK(polynorm::read_text_file(dir.file("e.csv")) ==
        "multi_index,coefficient\n2 0,1\n1 1,0\n0 2,1\n");
}

TEST_CASE("verify writes reports and succeeds on a healthy artifact") {
  TempDir dir;
  REQUIRE(run(dir, "build --body linf --d 2 --n 3 --out " + dir.file("a.json")) == 0);
  int code = run(dir, "verify --in " + dir.file("a.json") +
                          " --m 800 --seed 4 --report-json " + dir.file("r.json") +
                          " --report-csv " + dir.file("r.csv"));
  CHECK(code == 0);
  std::string out = captured(dir, "stdout.txt");
  CHECK(out.find("0 lower / 0 upper violations") != std::string::npos);
  CHECK(polynorm::read_text_file(dir.file("r.json")).find("\"max_ratio\"") !=
        std::string::npos);
  CHECK(polynorm::read_text_file(dir.file("r.csv")).rfind("check,", 0) == 0);
}

TEST_CASE("verify exits 2 on a tampered artifact") {
  TempDir dir;
  // interval body: core is exactly 0.5625, so a textual tamper is reliable
  polynorm::write_text_file(dir.file("body.json"),
                            "{\"d\":1,\"kind\":\"nonsymmetric-polytope\","
                            "\"label\":\"interval\",\"generators\":[[-1.0],[0.5]]}");
  REQUIRE(run(dir, "build --body file --body-file " + dir.file("body.json") + " --n 1 --out " +
                       dir.file("a.json")) == 0);
  std::string text = polynorm::read_text_file(dir.file("a.json"));
  auto pos = text.find("0.5625");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "2.2500");  // still positive definite, no longer correct
  polynorm::write_text_file(dir.file("bad.json"), text);
  CHECK(run(dir, "verify --in " + dir.file("bad.json") + " --m 400 --seed 1") == 2);
}

TEST_CASE("exit codes distinguish failure families") {
  TempDir dir;
  CHECK(run(dir, "build --body l1 --d 3 --n 2 --out " + dir.file("x.json")) == 1);
  CHECK(captured(dir, "stderr.txt").find("n must be odd") != std::string::npos);

  CHECK(run(dir, "build --body l1 --d 10 --n 7 --out " + dir.file("x.json")) == 4);
  CHECK(captured(dir, "stderr.txt").find("cap") != std::string::npos);

  CHECK(run(dir, "eval --in " + dir.file("absent.json") + " --points " + dir.file("p.csv")) ==
        1);

  REQUIRE(run(dir, "build --body l1 --d 2 --n 1 --out " + dir.file("a.json")) == 0);
  polynorm::write_text_file(dir.file("bad.csv"), "1,x\n");
  CHECK(run(dir, "eval --in " + dir.file("a.json") + " --points " + dir.file("bad.csv")) == 1);
  CHECK(captured(dir, "stderr.txt").find("line 1") != std::string::npos);

  CHECK(run(dir, "") == 1);           // missing subcommand
  CHECK(run(dir, "--help") == 0);
  CHECK(run(dir, "frobnicate") == 1);
}

TEST_CASE("build validates lp and file bodies") {
  TempDir dir;
  CHECK(run(dir, "build --body lp --d 3 --p 1.0 --m 32 --n 1 --out " + dir.file("x.json")) ==
        1);
  CHECK(run(dir, "build --body file --n 1 --out " + dir.file("x.json")) == 1);
  CHECK(run(dir, "build --body nosuch --d 2 --n 1 --out " + dir.file("x.json")) == 1);
  polynorm::write_text_file(dir.file("body.json"),
                            "{\"d\":2,\"kind\":\"symmetric-polytope\",\"label\":\"sq\","
                            "\"generators\":[[1.0,0.0],[0.0,1.0]]}");
  CHECK(run(dir, "build --body file --body-file " + dir.file("body.json") + " --d 3 --n 1 " +
                     "--out " + dir.file("x.json")) == 1);  // --d contradicts the file
  CHECK(run(dir, "build --body file --body-file " + dir.file("body.json") + " --n 1 --out " +
                     dir.file("ok.json")) == 0);
}

TEST_CASE("bench and constants run cleanly") {
  TempDir dir;
  REQUIRE(run(dir, "build --body l1 --d 3 --n 1 --out " + dir.file("a.json")) == 0);
  CHECK(run(dir, "bench --in " + dir.file("a.json") + " --m 500 --seed 2 --out " +
                     dir.file("b.csv")) == 0);
  std::string bench = polynorm::read_text_file(dir.file("b.csv"));
  CHECK(bench.rfind("d,n,N,dim_D,samples,mean_ns_eval_p,mean_ns_exact_norm\n", 0) == 0);
  CHECK(run(dir, "constants --n 3 --d 100") == 0);
  CHECK(captured(dir, "stdout.txt").find("binom") != std::string::npos);
}
