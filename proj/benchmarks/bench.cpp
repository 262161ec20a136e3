#include <benchmark/benchmark.h>

#include "polynorm/approximant.hpp"
#include "polynorm/body.hpp"
#include "polynorm/ellipsoid.hpp"
#include "polynorm/rng.hpp"
#include "polynorm/sym_vector.hpp"

using namespace polynorm;

namespace {

Eigen::MatrixXd random_points(int m, int d, std::uint64_t seed) {
  RandomStream rs(seed, 0);
  Eigen::MatrixXd pts(m, d);
  for (int i = 0; i < m; ++i) pts.row(i) = rs.normal_vector(d).transpose();
  return pts;
}

void BM_veronese(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  SymBasis basis(d, n);
  RandomStream rs(1, 0);
  Eigen::VectorXd x = rs.normal_vector(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(basis.lift_coords(x));
  }
  state.SetLabel("N=" + std::to_string(basis.size()));
}
BENCHMARK(BM_veronese)->Args({3, 3})->Args({5, 3})->Args({8, 3})->Args({5, 5});

void BM_eval_p(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  NormApproximant appr = build_approximant(make_l1(d), n);
  RandomStream rs(2, 0);
  Eigen::VectorXd x = rs.normal_vector(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_p(appr, x));
  }
}
BENCHMARK(BM_eval_p)->Args({3, 1})->Args({3, 3})->Args({5, 3})->Args({6, 5});

void BM_exact_norm(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  BodySpec body = make_l1(d);
  RandomStream rs(3, 0);
  Eigen::VectorXd x = rs.normal_vector(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_norm(body, x));
  }
  state.SetLabel(std::to_string(body.generators().rows()) + " generators");
}
BENCHMARK(BM_exact_norm)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_mvee_symmetric(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  int d = static_cast<int>(state.range(1));
  Eigen::MatrixXd pts = random_points(m, d, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mvee_symmetric(pts));
  }
}
BENCHMARK(BM_mvee_symmetric)->Args({50, 5})->Args({200, 10})->Args({1000, 20});

void BM_build(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  int n = static_cast<int>(state.range(1));
  BodySpec body = make_l1(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_approximant(body, n));
  }
}
BENCHMARK(BM_build)->Args({3, 3})->Args({4, 3})->Args({5, 3})->Args({4, 5});

}  // namespace

BENCHMARK_MAIN();
