#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

namespace polynorm {

enum class BodyKind { SymmetricPolytope, NonsymmetricPolytope, SampledSmooth };

std::string to_string(BodyKind kind);
BodyKind body_kind_from_string(const std::string& name);

// Provenance of a sampled generator set (present only for SampledSmooth).
struct SamplingInfo {
  std::string source;  // identifier of the source norm family, e.g. "lp"
  double p = 0.0;      // exponent of the source norm
  int count = 0;       // requested sample count
  std::uint64_t seed = 0;
};

// A norm (or Minkowski functional) presented by generator points of the dual
// unit ball: ||x|| = max over generators f of f.x (|f.x| when symmetric,
// antipodal generators being implied). Validation guarantees the functional
// is finite and positive away from the origin: full-rank generators for the
// symmetric kinds, origin strictly inside the generator hull otherwise.
class BodySpec {
 public:
  BodySpec(int d, BodyKind kind, Eigen::MatrixXd generators, std::string label,
           std::optional<SamplingInfo> sampling = std::nullopt);

  int d() const { return d_; }
  BodyKind kind() const { return kind_; }
  bool symmetric() const { return kind_ != BodyKind::NonsymmetricPolytope; }
  // One generator per row, m x d.
  const Eigen::MatrixXd& generators() const { return generators_; }
  const std::string& label() const { return label_; }
  const std::optional<SamplingInfo>& sampling() const { return sampling_; }

 private:
  int d_;
  BodyKind kind_;
  Eigen::MatrixXd generators_;
  std::string label_;
  std::optional<SamplingInfo> sampling_;
};

// l1 norm: dual ball is the cube, one generator per sign pattern up to
// antipodes (2^{d-1} rows). Throws DimensionError past the generator cap.
BodySpec make_l1(int d, std::uint64_t generator_cap = std::uint64_t{1} << 20);

// linf norm: dual ball is the cross-polytope, generators e_1..e_d.
BodySpec make_linf(int d);

// lp norm (p > 1) presented by m deterministic samples of the dual sphere
// |f|_q = 1, q = p/(p-1). Axis vectors are always included, the rest are
// stratified Gaussian directions; the result is the sampled-polytope norm,
// a lower bound of the true lp norm.
BodySpec make_lp_sampled(int d, double p, int m, std::uint64_t seed);

// Wrap an explicit generator matrix (one point per row), running the full
// validation for the requested kind.
BodySpec from_polar_vertices(const Eigen::MatrixXd& points, bool symmetric,
                             std::string label = "custom");

// Exact value of the presented norm / Minkowski functional at x.
double exact_norm(const BodySpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x);

// Stable fingerprint of (d, kind, generators) used to pair an approximant
// with the body it was built from.
std::uint64_t body_fingerprint(const BodySpec& spec);

}  // namespace polynorm
