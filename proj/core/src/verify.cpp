#include "polynorm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "polynorm/errors.hpp"
#include "polynorm/rng.hpp"

namespace polynorm {

namespace {

constexpr double kSandwichTol = 1e-7;

// Structured sample points where polytope-norm ratio extremes live: axes,
// generators (and their negatives), pairwise midpoints.
std::vector<Eigen::VectorXd> structured_points(const BodySpec& spec, std::size_t budget) {
  const int d = spec.d();
  const Eigen::MatrixXd& gens = spec.generators();
  std::vector<Eigen::VectorXd> pts;
  for (int k = 0; k < d && pts.size() + 2 <= budget; ++k) {
    pts.push_back(Eigen::VectorXd::Unit(d, k));
    pts.push_back(-Eigen::VectorXd::Unit(d, k));
  }
  for (Eigen::Index i = 0; i < gens.rows() && pts.size() + 2 <= budget; ++i) {
    pts.push_back(gens.row(i).transpose());
    pts.push_back(-gens.row(i).transpose());
  }
  std::size_t pairs = 0;
  for (Eigen::Index i = 0; i < gens.rows() && pairs < 256 && pts.size() < budget; ++i) {
    for (Eigen::Index j = i + 1; j < gens.rows() && pairs < 256 && pts.size() < budget; ++j) {
      Eigen::VectorXd mid = (gens.row(i) + gens.row(j)).transpose() / 2.0;
      if (mid.norm() > 1e-12) {
        pts.push_back(mid);
        ++pairs;
      }
    }
  }
  return pts;
}

struct SamplePlan {
  std::vector<Eigen::VectorXd> structured;
  std::size_t structured_count = 0;
  std::size_t perturbed_count = 0;
  int d = 0;
};

Eigen::VectorXd sample_point(const SamplePlan& plan, std::uint64_t seed, std::size_t index) {
  RandomStream rs(seed, index);
  Eigen::VectorXd x;
  if (index < plan.structured_count) {
    x = plan.structured[index];
  } else if (index < plan.structured_count + plan.perturbed_count) {
    const Eigen::VectorXd& base = plan.structured[index - plan.structured_count];
    x = base + 1e-3 * base.norm() * rs.normal_vector(plan.d);
  } else {
    x = rs.normal_vector(plan.d);
  }
  if (x.norm() == 0.0) x = Eigen::VectorXd::Unit(plan.d, 0);
  return x;
}

struct PartialStats {
  std::size_t violations_lower = 0;
  std::size_t violations_upper = 0;
  double max_ratio = 0.0;
  double min_upper_ratio = std::numeric_limits<double>::infinity();
  std::array<std::uint64_t, 20> bins{};
};

void accumulate_sample(const NormApproximant& appr, const BodySpec& spec,
                       const Eigen::VectorXd& x, const RatioHistogram& hist_frame,
                       PartialStats& stats) {
  const double exact = exact_norm(spec, x);
  const Evaluation ev = evaluate(appr, x);
  if (ev.lower > exact * (1.0 + kSandwichTol)) ++stats.violations_lower;
  if (exact > ev.upper * (1.0 + kSandwichTol)) ++stats.violations_upper;

  double ratio = 0.0;
  const double n = appr.n();
  if (appr.body().symmetric()) {
    if (ev.lower > 0.0) ratio = exact / ev.lower;
  } else {
    const double q = std::sqrt(ev.p);
    if (q > 0.0) {
      const double rho = (std::pow(exact, n) - ev.r) / q;
      if (rho > 0.0) ratio = std::pow(rho, 1.0 / (2.0 * n));
    }
  }
  stats.max_ratio = std::max(stats.max_ratio, ratio);
  if (exact > 0.0 && ev.upper > 0.0) {
    stats.min_upper_ratio = std::min(stats.min_upper_ratio, ev.upper / exact);
  }
  const double width = std::max(hist_frame.hi - hist_frame.lo, 1e-300);
  const double t = (ratio - hist_frame.lo) / width * static_cast<double>(hist_frame.bins.size());
  const auto bin = static_cast<std::size_t>(
      std::clamp(t, 0.0, static_cast<double>(hist_frame.bins.size() - 1)));
  ++stats.bins[bin];
}

}  // namespace

VerificationReport check_sandwich(const NormApproximant& appr, const BodySpec& spec,
                                  std::size_t m, std::uint64_t seed, int threads) {
  if (appr.d() != spec.d() ||
      body_fingerprint(appr.body()) != body_fingerprint(spec)) {
    throw ValidationError("approximant was not built from this body");
  }
  if (threads < 1) throw ValidationError("thread count must be positive");

  SamplePlan plan;
  plan.d = spec.d();
  plan.structured = structured_points(spec, m / 2);
  plan.structured_count = plan.structured.size();
  plan.perturbed_count = std::min(plan.structured_count, (m - plan.structured_count) / 2);

  VerificationReport report;
  report.samples = m;
  report.seed = seed;
  report.constant_effective = appr.ratio_bound();
  report.constant_theorem = appr.theorem_ratio_bound();
  report.histogram.lo = 1.0;
  report.histogram.hi = report.constant_effective * (1.0 + kSandwichTol);

  const std::size_t worker_count =
      std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(m, 1));
  std::vector<PartialStats> partials(worker_count);
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < m; ++i) {
      accumulate_sample(appr, spec, sample_point(plan, seed, i), report.histogram, partials[0]);
    }
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t t = 0; t < worker_count; ++t) {
      pool.emplace_back([&, t]() {
        try {
          const std::size_t begin = m * t / worker_count;
          const std::size_t end = m * (t + 1) / worker_count;
          for (std::size_t i = begin; i < end; ++i) {
            accumulate_sample(appr, spec, sample_point(plan, seed, i), report.histogram,
                              partials[t]);
          }
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
  }

  double min_upper = std::numeric_limits<double>::infinity();
  for (const PartialStats& part : partials) {
    report.violations_lower += part.violations_lower;
    report.violations_upper += part.violations_upper;
    report.max_ratio = std::max(report.max_ratio, part.max_ratio);
    min_upper = std::min(min_upper, part.min_upper_ratio);
    for (std::size_t b = 0; b < part.bins.size(); ++b) report.histogram.bins[b] += part.bins[b];
  }
  report.min_upper_ratio = (m == 0 || !std::isfinite(min_upper)) ? 0.0 : min_upper;
  return report;
}

HomogeneityResult check_homogeneity(const NormApproximant& appr, std::size_t m,
                                    std::uint64_t seed) {
  HomogeneityResult result;
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream rs(seed, i);
    Eigen::VectorXd x = rs.normal_vector(appr.d());
    double t = rs.log_uniform(1e-3, 1e3);
    if (i % 2 == 1) t = -t;
    const double base = eval_p(appr, x);
    const double scaled = eval_p(appr, (t * x).eval());
    const double expected = std::pow(std::abs(t), 2.0 * appr.n()) * base;
    const double err =
        std::abs(scaled - expected) / std::max({std::abs(expected), std::abs(scaled), 1e-300});
    result.worst_rel_err = std::max(result.worst_rel_err, err);
  }
  result.pass = result.worst_rel_err <= 1e-9;
  return result;
}

namespace {

// Does the transform map the generator set (up to antipodes when symmetric)
// onto itself?
bool stabilizes_generators(const BodySpec& spec,
                           const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map) {
  const Eigen::MatrixXd& gens = spec.generators();
  const double tol = 1e-12 * (1.0 + gens.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < gens.rows(); ++i) {
    Eigen::VectorXd image = map(gens.row(i).transpose());
    bool found = false;
    for (Eigen::Index j = 0; j < gens.rows() && !found; ++j) {
      const Eigen::VectorXd cand = gens.row(j).transpose();
      if ((image - cand).cwiseAbs().maxCoeff() <= tol) found = true;
      if (spec.symmetric() && (image + cand).cwiseAbs().maxCoeff() <= tol) found = true;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

InvarianceResult check_invariance(const NormApproximant& appr, InvarianceGroup group,
                                  std::size_t m, std::uint64_t seed) {
  const int d = appr.d();
  using Transform = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
  std::vector<Transform> transforms;
  for (int k = 0; k + 1 < d; ++k) {
    transforms.push_back([k](const Eigen::VectorXd& v) {
      Eigen::VectorXd out = v;
      std::swap(out[k], out[k + 1]);
      return out;
    });
  }
  if (group == InvarianceGroup::SignedPermutations) {
    transforms.push_back([](const Eigen::VectorXd& v) {
      Eigen::VectorXd out = v;
      out[0] = -out[0];
      return out;
    });
  }

  InvarianceResult result;
  for (const Transform& map : transforms) {
    if (!stabilizes_generators(appr.body(), map)) {
      result.status = InvarianceStatus::NotApplicable;
      return result;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream rs(seed, i);
    Eigen::VectorXd x = rs.normal_vector(d);
    const double base = eval_p(appr, x);
    for (const Transform& map : transforms) {
      const double moved = eval_p(appr, map(x));
      worst = std::max(worst, std::abs(moved - base) / std::max(base, 1e-300));
    }
  }
  result.worst_rel_err = worst;
  result.status = worst <= 1e-9 ? InvarianceStatus::Pass : InvarianceStatus::Fail;
  return result;
}

TimingStats bench_eval(const NormApproximant& appr, const BodySpec& spec, std::size_t m,
                       std::uint64_t seed) {
  TimingStats stats;
  if (m == 0) return stats;
  stats.samples = m;

  std::vector<Eigen::VectorXd> points;
  points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    RandomStream rs(seed, i);
    points.push_back(rs.normal_vector(appr.d()));
  }

  using Clock = std::chrono::steady_clock;
  volatile double sink = 0.0;
  auto t0 = Clock::now();
  for (const Eigen::VectorXd& x : points) sink = sink + eval_p(appr, x);
  auto t1 = Clock::now();
  for (const Eigen::VectorXd& x : points) sink = sink + exact_norm(spec, x);
  auto t2 = Clock::now();
  (void)sink;

  const double scale = 1.0 / static_cast<double>(m);
  stats.mean_ns_eval_p =
      std::chrono::duration<double, std::nano>(t1 - t0).count() * scale;
  stats.mean_ns_exact_norm =
      std::chrono::duration<double, std::nano>(t2 - t1).count() * scale;
  return stats;
}

AsymptoticConstants constant_asymptotics(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("n and d must be positive");
  const double nn = n;
  const double dd = d;
  AsymptoticConstants out;
  const double log_binom = std::lgamma(nn + dd) - std::lgamma(nn + 1.0) - std::lgamma(dd);
  out.theorem_constant = std::exp(log_binom / (2.0 * nn));
  out.stirling_reference = std::exp(-std::lgamma(nn + 1.0) / (2.0 * nn));
  const double gamma = nn / dd;
  out.gamma_limit =
      std::exp(0.5 * std::log((gamma + 1.0) / gamma) + std::log(gamma + 1.0) / (2.0 * gamma));
  return out;
}

}  // namespace polynorm
