#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "polynorm/approximant.hpp"
#include "polynorm/body.hpp"
#include "polynorm/errors.hpp"
#include "polynorm/serialization.hpp"
#include "polynorm/verify.hpp"

using namespace polynorm;

namespace {

struct TempDir {
  std::string path;
  TempDir() {
    char templ[] = "/tmp/polynorm-test-XXXXXX";
    path = mkdtemp(templ);
  }
  ~TempDir() { std::system(("rm -rf " + path).c_str()); }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-0.0) == "-0");
  for (double v : {1.0 / 3, 0.1, 1e-300, 9.99e300, -123.456}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("points CSV: header detection, width checks, line numbers") {
  TempDir dir;

  write_text_file(dir.file("with_header.csv"), "x1,x2\n1,2\n-3.5,4e2\n\n5,6\n");
  auto pts = parse_points_csv(dir.file("with_header.csv"));
  REQUIRE(pts.size() == 3);
  CHECK(pts[0](0) == 1.0);
  CHECK(pts[1](1) == 400.0);
  CHECK(pts[2](0) == 5.0);

  write_text_file(dir.file("no_header.csv"), "1,2\n3,4\n");
  CHECK(parse_points_csv(dir.file("no_header.csv")).size() == 2);

  write_text_file(dir.file("mixed.csv"), "1,x\n");
  CHECK_THROWS_WITH_AS((void)parse_points_csv(dir.file("mixed.csv")),
                       doctest::Contains("line 1"), ValidationError);

  write_text_file(dir.file("ragged.csv"), "1,2\n3,4,5\n");
  CHECK_THROWS_WITH_AS((void)parse_points_csv(dir.file("ragged.csv")),
                       doctest::Contains("line 2"), ValidationError);

  write_text_file(dir.file("bom_crlf.csv"), "\xEF\xBB\xBFx\r\n7\r\n");
  auto bom = parse_points_csv(dir.file("bom_crlf.csv"));
  REQUIRE(bom.size() == 1);
  CHECK(bom[0](0) == 7.0);

  CHECK_THROWS_AS((void)parse_points_csv(dir.file("absent.csv")), IoError);
}

TEST_CASE("body JSON round-trip preserves the fingerprint") {
  TempDir dir;
  Eigen::MatrixXd gens(2, 1);
  gens << -1.0, 0.5;
  BodySpec body = from_polar_vertices(gens, false, "interval");
  NormApproximant appr = build_approximant(body, 1);
  save_approximant(appr, dir.file("a.json"));
  NormApproximant loaded = load_approximant(dir.file("a.json"));
  CHECK(body_fingerprint(loaded.body()) == body_fingerprint(body));
  CHECK(loaded.body().label() == "interval");
  CHECK(loaded.body().kind() == BodyKind::NonsymmetricPolytope);
}

TEST_CASE("approximant JSON round-trip is bit-exact and restores sampling info") {
  TempDir dir;
  BodySpec body = make_lp_sampled(3, 3.0, 24, 42);
  NormApproximant appr = build_approximant(body, 3);
  std::string text = approximant_to_json(appr);
  NormApproximant loaded = approximant_from_json(text);

  CHECK(loaded.carrier() == appr.carrier());
  CHECK(loaded.core() == appr.core());
  CHECK(loaded.w() == appr.w());
  CHECK(loaded.build_eps() == appr.build_eps());
  REQUIRE(loaded.body().sampling().has_value());
  CHECK(loaded.body().sampling()->seed == 42);
  CHECK(loaded.body().sampling()->p == 3.0);

  // serialize-load-serialize is a fixed point
  CHECK(approximant_to_json(loaded) == text);
}

TEST_CASE("malformed artifacts are rejected with useful errors") {
  NormApproximant appr = build_approximant(make_l1(2), 1);
  std::string text = approximant_to_json(appr);

  CHECK_THROWS_AS((void)approximant_from_json("{ not json"), IoError);
  CHECK_THROWS_AS((void)approximant_from_json("{}"), IoError);

  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find("\"format_version\": 1"),
                        std::string("\"format_version\": 1").size(),
                        "\"format_version\": 2");
  CHECK_THROWS_AS((void)approximant_from_json(wrong_version), IoError);

  std::string wrong_order = text;
  wrong_order.replace(wrong_order.find("\"grlex\""), 7, "\"lex\"");
  CHECK_THROWS_AS((void)approximant_from_json(wrong_order), ValidationError);
}

TEST_CASE("reports serialize deterministically in both formats") {
  BodySpec body = make_l1(3);
  NormApproximant appr = build_approximant(body, 1);
  VerificationReport sandwich = check_sandwich(appr, body, 400, 8);
  HomogeneityResult homogeneity = check_homogeneity(appr, 50, 8);
  InvarianceResult inv_signed = check_invariance(appr, InvarianceGroup::SignedPermutations, 50, 8);
  InvarianceResult inv_perm = check_invariance(appr, InvarianceGroup::Permutations, 50, 8);

  std::string json = report_to_json(sandwich, homogeneity, inv_signed, inv_perm, appr);
  std::string json2 = report_to_json(sandwich, homogeneity, inv_signed, inv_perm, appr);
  CHECK(json == json2);
  CHECK(json.find("\"violations_lower\": 0") != std::string::npos);
  CHECK(json.find("\"histogram\"") != std::string::npos);
  CHECK(json.find("timestamp") == std::string::npos);

  std::string csv = report_to_csv(sandwich, homogeneity, inv_signed, inv_perm, appr);
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 5);  // header + sandwich + homogeneity + two invariance rows
  CHECK(csv.rfind("check,", 0) == 0);
}
