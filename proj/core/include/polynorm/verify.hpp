#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "polynorm/approximant.hpp"
#include "polynorm/body.hpp"

namespace polynorm {

struct TimingStats {
  std::size_t samples = 0;
  double mean_ns_eval_p = 0.0;
  double mean_ns_exact_norm = 0.0;
};

struct RatioHistogram {
  double lo = 1.0;
  double hi = 1.0;
  std::array<std::uint64_t, 20> bins{};
};

/// Outcome of an empirical sandwich check. max_ratio measures how much of
/// the certified gap is actually used: for symmetric bodies it is the worst
/// exact/lower quotient, for nonsymmetric ones the worst
/// ((exact^n - r(x)) / sqrt(p))^{1/2n}; in both normalizations a correct
/// approximant keeps it within dim_D^{1/2n}. Timing stays zero here (reports
/// must be byte-reproducible); bench_eval fills it separately.
struct VerificationReport {
  std::size_t samples = 0;
  std::size_t violations_lower = 0;
  std::size_t violations_upper = 0;
  double max_ratio = 0.0;
  double min_upper_ratio = 0.0;  // tightest upper/exact quotient observed
  double constant_effective = 0.0;
  double constant_theorem = 0.0;
  RatioHistogram histogram;
  TimingStats timing;
  std::uint64_t seed = 0;
};

/// Sample m points from a deterministic mixture of coordinate axes, the
/// body's generator directions, pairwise generator midpoints, perturbed
/// copies of those, and isotropic Gaussians; count sandwich violations at
/// relative tolerance 1e-7. Each sample's randomness derives from
/// (seed, sample index), so the report is identical for any thread count.
/// Throws ValidationError when appr was not built from spec.
VerificationReport check_sandwich(const NormApproximant& appr, const BodySpec& spec,
                                  std::size_t m, std::uint64_t seed, int threads = 1);

struct HomogeneityResult {
  bool pass = false;
  double worst_rel_err = 0.0;
};

/// eval_p(t*x) must equal t^{2n} * eval_p(x); checks m random (x, t) pairs
/// with |t| log-uniform in [1e-3, 1e3] and alternating sign.
HomogeneityResult check_homogeneity(const NormApproximant& appr, std::size_t m,
                                    std::uint64_t seed);

enum class InvarianceGroup { SignedPermutations, Permutations };
enum class InvarianceStatus { Pass, Fail, NotApplicable };

struct InvarianceResult {
  InvarianceStatus status = InvarianceStatus::NotApplicable;
  double worst_rel_err = 0.0;
};

/// If the generator set is invariant under the group (adjacent
/// transpositions, plus one sign flip for SignedPermutations), eval_p must
/// be too; bodies without the symmetry report NotApplicable.
InvarianceResult check_invariance(const NormApproximant& appr, InvarianceGroup group,
                                  std::size_t m, std::uint64_t seed);

/// Mean wall-clock cost of eval_p and exact_norm over m random points.
/// m = 0 yields an empty block.
TimingStats bench_eval(const NormApproximant& appr, const BodySpec& spec, std::size_t m,
                       std::uint64_t seed);

struct AsymptoticConstants {
  double theorem_constant = 0.0;    // binom(n+d-1, n)^{1/2n}
  double stirling_reference = 0.0;  // (n!)^{-1/2n}, the d->inf limit of constant/sqrt(d)
  double gamma_limit = 0.0;         // closed-form limit for n = gamma*d, gamma = n/d
};

/// Reference values for how the sandwich constant scales; computed through
/// lgamma so large (n, d) do not overflow.
AsymptoticConstants constant_asymptotics(int n, int d);

}  // namespace polynorm
