#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "polynorm/approximant.hpp"
#include "polynorm/body.hpp"
#include "polynorm/errors.hpp"
#include "polynorm/serialization.hpp"
#include "polynorm/verify.hpp"

namespace {

using namespace polynorm;

struct BuildConfig {
  std::string body = "l1";
  std::string body_file;
  int d = 0;
  double p = 4.0;
  int m = 256;
  std::uint64_t seed = 0;
  int n = 1;
  double eps = 1e-7;
  std::size_t cap = 3000;
  std::string out = "approximant.json";
};

struct EvalConfig {
  std::string in;
  std::string points;
  std::string out;
};

struct VerifyConfig {
  std::string in;
  std::size_t m = 10000;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string report_json;
  std::string report_csv;
};

struct ExpandConfig {
  std::string in;
  std::string out;
  std::size_t cap = 3000;
};

struct BenchConfig {
  std::string in;
  std::size_t m = 100000;
  std::uint64_t seed = 0;
  std::string out;
};

struct ConstantsConfig {
  int n = 1;
  int d = 1;
};

BodySpec make_body(const BuildConfig& cfg) {
  if (cfg.body == "l1") {
    if (cfg.d < 1) throw ValidationError("--d is required for builtin bodies");
    return make_l1(cfg.d);
  }
  if (cfg.body == "linf") {
    if (cfg.d < 1) throw ValidationError("--d is required for builtin bodies");
    return make_linf(cfg.d);
  }
  if (cfg.body == "lp") {
    if (cfg.d < 1) throw ValidationError("--d is required for builtin bodies");
    return make_lp_sampled(cfg.d, cfg.p, cfg.m, cfg.seed);
  }
  if (cfg.body == "file") {
    if (cfg.body_file.empty()) throw ValidationError("--body-file is required with --body file");
    BodySpec body = load_body(cfg.body_file);
    if (cfg.d > 0 && cfg.d != body.d()) {
      throw ValidationError("--d disagrees with the body file");
    }
    return body;
  }
  throw ValidationError("unknown body '" + cfg.body + "' (expected l1, linf, lp, or file)");
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
  } else {
    write_text_file(path, content);
  }
}

int run_build(const BuildConfig& cfg) {
  BodySpec body = make_body(cfg);
  NormApproximant appr = build_approximant(body, cfg.n, cfg.eps, cfg.cap);
  save_approximant(appr, cfg.out);
  std::printf("wrote %s: %s, n=%d, N=%zu, dim_D=%d\n", cfg.out.c_str(),
              body.label().c_str(), appr.n(), appr.sym_size(), appr.dim_D());
  return 0;
}

int run_eval(const EvalConfig& cfg) {
  NormApproximant appr = load_approximant(cfg.in);
  std::vector<Eigen::VectorXd> points = parse_points_csv(cfg.points);
  std::string out = "p,r,lower,upper\n";
  for (const Eigen::VectorXd& x : points) {
    if (x.size() != appr.d()) {
      throw ValidationError("points have " + std::to_string(x.size()) +
                            " columns, approximant expects " + std::to_string(appr.d()));
    }
    Evaluation ev = evaluate(appr, x);
    out += format_double(ev.p) + "," + format_double(ev.r) + "," + format_double(ev.lower) +
           "," + format_double(ev.upper) + "\n";
  }
  emit(cfg.out, out);
  return 0;
}

int run_verify(const VerifyConfig& cfg) {
  NormApproximant appr = load_approximant(cfg.in);
  VerificationReport sandwich =
      check_sandwich(appr, appr.body(), cfg.m, cfg.seed, cfg.threads);
  HomogeneityResult homogeneity = check_homogeneity(appr, cfg.m / 10 + 1, cfg.seed);
  InvarianceResult inv_signed =
      check_invariance(appr, InvarianceGroup::SignedPermutations, cfg.m / 10 + 1, cfg.seed);
  InvarianceResult inv_perm =
      check_invariance(appr, InvarianceGroup::Permutations, cfg.m / 10 + 1, cfg.seed);

  if (!cfg.report_json.empty()) {
    write_text_file(cfg.report_json,
                    report_to_json(sandwich, homogeneity, inv_signed, inv_perm, appr));
  }
  if (!cfg.report_csv.empty()) {
    write_text_file(cfg.report_csv,
                    report_to_csv(sandwich, homogeneity, inv_signed, inv_perm, appr));
  }

  const bool sandwich_ok = sandwich.violations_lower == 0 && sandwich.violations_upper == 0;
  std::printf("sandwich: %zu samples, %zu lower / %zu upper violations, max_ratio %s "
              "(effective bound %s)\n",
              sandwich.samples, sandwich.violations_lower, sandwich.violations_upper,
              format_double(sandwich.max_ratio).c_str(),
              format_double(sandwich.constant_effective).c_str());
  std::printf("homogeneity: %s (worst rel err %s)\n", homogeneity.pass ? "pass" : "fail",
              format_double(homogeneity.worst_rel_err).c_str());
  auto status_text = [](InvarianceStatus s) {
    return s == InvarianceStatus::Pass ? "pass"
           : s == InvarianceStatus::Fail ? "fail"
                                         : "not-applicable";
  };
  std::printf("invariance (signed permutations): %s\n", status_text(inv_signed.status));
  std::printf("invariance (permutations): %s\n", status_text(inv_perm.status));

  const bool ok = sandwich_ok && homogeneity.pass &&
                  inv_signed.status != InvarianceStatus::Fail &&
                  inv_perm.status != InvarianceStatus::Fail;
  return ok ? 0 : 2;
}

int run_expand(const ExpandConfig& cfg) {
  NormApproximant appr = load_approximant(cfg.in);
  auto expansion = expand_monomials(appr, cfg.cap);
  std::string out = "multi_index,coefficient\n";
  for (const auto& [index, coefficient] : expansion) {
    std::string key;
    for (int k = 0; k < index.dimension(); ++k) {
      if (k) key += ' ';
      key += std::to_string(index[k]);
    }
    out += key + "," + format_double(coefficient) + "\n";
  }
  emit(cfg.out, out);
  return 0;
}

int run_bench(const BenchConfig& cfg) {
  NormApproximant appr = load_approximant(cfg.in);
  TimingStats stats = bench_eval(appr, appr.body(), cfg.m, cfg.seed);
  std::string out = "d,n,N,dim_D,samples,mean_ns_eval_p,mean_ns_exact_norm\n";
  out += std::to_string(appr.d()) + "," + std::to_string(appr.n()) + "," +
         std::to_string(appr.sym_size()) + "," + std::to_string(appr.dim_D()) + "," +
         std::to_string(stats.samples) + "," + format_double(stats.mean_ns_eval_p) + "," +
         format_double(stats.mean_ns_exact_norm) + "\n";
  emit(cfg.out, out);
  return 0;
}

int run_constants(const ConstantsConfig& cfg) {
  AsymptoticConstants values = constant_asymptotics(cfg.n, cfg.d);
  std::printf("upper/lower gap constant N^(1/2n), N = binom(n+d-1, n): %s\n",
              format_double(values.theorem_constant).c_str());
  std::printf("constant / sqrt(d): %s\n",
              format_double(values.theorem_constant / std::sqrt(cfg.d)).c_str());
  std::printf("(n!)^(-1/2n) reference (d -> inf limit of constant/sqrt(d)): %s\n",
              format_double(values.stirling_reference).c_str());
  std::printf("closed-form limit for n = gamma*d at gamma = n/d: %s\n",
              format_double(values.gamma_limit).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-2n sum-of-squares approximations of polytope norms"};
  app.require_subcommand(1);

  BuildConfig build_cfg;
  CLI::App* build = app.add_subcommand("build", "build an approximant and write it as JSON");
  build->add_option("--body", build_cfg.body, "body kind: l1, linf, lp, or file");
  build->add_option("--d", build_cfg.d, "ambient dimension (builtin bodies)");
  build->add_option("--p", build_cfg.p, "norm exponent for --body lp");
  build->add_option("--m", build_cfg.m, "dual-sphere sample count for --body lp");
  build->add_option("--seed", build_cfg.seed, "sampling seed for --body lp");
  build->add_option("--body-file", build_cfg.body_file, "body JSON path for --body file");
  build->add_option("--n", build_cfg.n, "polynomial half-degree (odd)")->required();
  build->add_option("--eps", build_cfg.eps, "ellipsoid tolerance");
  build->add_option("--cap", build_cfg.cap, "cap on sym_dim(d, n); 0 disables");
  build->add_option("--out", build_cfg.out, "output path");

  EvalConfig eval_cfg;
  CLI::App* eval = app.add_subcommand("eval", "evaluate p, r and both bounds on points");
  eval->add_option("--in", eval_cfg.in, "approximant JSON path")->required();
  eval->add_option("--points", eval_cfg.points, "points CSV path")->required();
  eval->add_option("--out", eval_cfg.out, "output CSV path (stdout when omitted)");

  VerifyConfig verify_cfg;
  CLI::App* verify = app.add_subcommand("verify", "run the empirical checks");
  verify->add_option("--in", verify_cfg.in, "approximant JSON path")->required();
  verify->add_option("--m", verify_cfg.m, "sample count");
  verify->add_option("--seed", verify_cfg.seed, "sampling seed");
  verify->add_option("--threads", verify_cfg.threads, "worker threads (content-identical)");
  verify->add_option("--report-json", verify_cfg.report_json, "report JSON path");
  verify->add_option("--report-csv", verify_cfg.report_csv, "report CSV path");

  ExpandConfig expand_cfg;
  CLI::App* expand = app.add_subcommand("expand", "write the monomial coefficients of p");
  expand->add_option("--in", expand_cfg.in, "approximant JSON path")->required();
  expand->add_option("--out", expand_cfg.out, "output CSV path (stdout when omitted)");
  expand->add_option("--cap", expand_cfg.cap, "cap on sym_dim(d, 2n); 0 disables");

  BenchConfig bench_cfg;
  CLI::App* bench = app.add_subcommand("bench", "time eval_p against the exact oracle");
  bench->add_option("--in", bench_cfg.in, "approximant JSON path")->required();
  bench->add_option("--m", bench_cfg.m, "evaluation count");
  bench->add_option("--seed", bench_cfg.seed, "sampling seed");
  bench->add_option("--out", bench_cfg.out, "output CSV path (stdout when omitted)");

  ConstantsConfig constants_cfg;
  CLI::App* constants =
      app.add_subcommand("constants", "print the gap constant and its asymptotics");
  constants->add_option("--n", constants_cfg.n, "polynomial half-degree")->required();
  constants->add_option("--d", constants_cfg.d, "ambient dimension")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (build->parsed()) return run_build(build_cfg);
    if (eval->parsed()) return run_eval(eval_cfg);
    if (verify->parsed()) return run_verify(verify_cfg);
    if (expand->parsed()) return run_expand(expand_cfg);
    if (bench->parsed()) return run_bench(bench_cfg);
    if (constants->parsed()) return run_constants(constants_cfg);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
