#include "polynorm/body.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <cstdio>
#include <utility>

#include "polynorm/errors.hpp"
#include "polynorm/rng.hpp"

namespace polynorm {

namespace {

int numeric_rank(const Eigen::MatrixXd& m, double rel_threshold = 1e-10) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_threshold * s[0]) ++rank;
  }
  return rank;
}

// Certifies that the origin is a strictly positive convex combination of the
// generator rows: solve [G^T; 1^T] lambda = (0,...,0,1) for lambda >= floor.
// The minimum-norm solution settles the common case at once (any body built
// around its own centroid certifies with uniform weights); otherwise project
// alternately onto the affine set and the box until the residual passes.
bool origin_strictly_interior(const Eigen::MatrixXd& generators) {
  const Eigen::Index m = generators.rows();
  const Eigen::Index d = generators.cols();
  if (m < d + 1) return false;

  Eigen::VectorXd mean = generators.colwise().mean();
  if (numeric_rank(generators.rowwise() - mean.transpose()) < d) return false;

  Eigen::MatrixXd a(d + 1, m);
  a.topRows(d) = generators.transpose();
  a.row(d).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b[d] = 1.0;

  const double scale = 1.0 + generators.rowwise().norm().maxCoeff();
  const double residual_tol = 1e-9 * scale;
  const double floor = 1e-6 / static_cast<double>(m);

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  Eigen::VectorXd lambda = cod.solve(b);
  if ((a * lambda - b).norm() > residual_tol) return false;  // not even affinely reachable
  if (lambda.minCoeff() >= floor) return true;

  for (int iter = 0; iter < 20000; ++iter) {
    lambda = lambda.cwiseMax(floor);
    Eigen::VectorXd residual = a * lambda - b;
    if (residual.norm() <= residual_tol) return true;
    lambda -= cod.solve(residual);
  }
  return false;
}

// Unit directions for the polar samples: a seeded candidate pool thinned by
// greedy farthest-point selection under the antipodal metric, which gets the
// covering radius much closer to a lattice than i.i.d. draws manage.  The
// coordinate axes are seeded as already-chosen so they are never duplicated.
Eigen::MatrixXd spread_directions(int d, int count, std::uint64_t seed) {
  Eigen::MatrixXd chosen(count, d);
  const int pool = std::max(8 * count, 64);
  Eigen::MatrixXd cand(pool, d);
  for (int i = 0; i < pool; ++i) {
    RandomStream rs(seed, static_cast<std::uint64_t>(i));
    cand.row(i) = rs.normal_vector(d).normalized().transpose();
  }
  auto antipodal = [](const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
    return std::min((a - b).norm(), (a + b).norm());
  };
  Eigen::VectorXd min_dist(pool);
  for (int i = 0; i < pool; ++i) {
    double dist = 2.0;
    for (int j = 0; j < d; ++j) {
      double axis_gap = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(cand(i, j))));
      dist = std::min(dist, axis_gap);
    }
    min_dist[i] = dist;
  }
  for (int r = 0; r < count; ++r) {
    int best = 0;
    min_dist.maxCoeff(&best);
    chosen.row(r) = cand.row(best);
    for (int i = 0; i < pool; ++i) {
      min_dist[i] = std::min(min_dist[i], antipodal(cand.row(i), cand.row(best)));
    }
    min_dist[best] = -1.0;
  }
  return chosen;
}

// Point of the dual-ball boundary (q-sphere) whose supporting direction is u:
// g_i proportional to sign(u_i)|u_i|^{p-1}.  With this choice max_j <g_j, x>
// recovers the lp norm exactly whenever x is parallel to a kept direction,
// so the sampling error is purely a covering-radius effect.
Eigen::VectorXd dual_touch_point(const Eigen::VectorXd& u, double p, double q) {
  Eigen::VectorXd g(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    g[k] = (u[k] < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(u[k]), p - 1.0);
  }
  g /= g.cwiseAbs().maxCoeff();  // rescale before the q-power to dodge underflow
  double norm_q = std::pow(g.cwiseAbs().array().pow(q).sum(), 1.0 / q);
  return g / norm_q;
}

}  // namespace

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::SymmetricPolytope: return "symmetric-polytope";
    case BodyKind::NonsymmetricPolytope: return "nonsymmetric-polytope";
    case BodyKind::SampledSmooth: return "sampled-smooth";
  }
  throw ValidationError("unknown body kind");
}

BodyKind body_kind_from_string(const std::string& name) {
  if (name == "symmetric-polytope") return BodyKind::SymmetricPolytope;
  if (name == "nonsymmetric-polytope") return BodyKind::NonsymmetricPolytope;
  if (name == "sampled-smooth") return BodyKind::SampledSmooth;
  throw ValidationError("unknown body kind: " + name);
}

BodySpec::BodySpec(int d, BodyKind kind, Eigen::MatrixXd generators, std::string label,
                   std::optional<SamplingInfo> sampling)
    : d_(d),
      kind_(kind),
      generators_(std::move(generators)),
      label_(std::move(label)),
      sampling_(std::move(sampling)) {
  if (d_ < 1) throw ValidationError("body dimension must be positive");
  if (generators_.rows() == 0) throw ValidationError("generator list is empty");
  if (generators_.cols() != d_) throw ValidationError("generator width does not match dimension");
  if (!generators_.allFinite()) throw ValidationError("generators contain non-finite entries");
  for (Eigen::Index i = 0; i < generators_.rows(); ++i) {
    if (generators_.row(i).norm() == 0.0) {
      throw ValidationError("zero vector among generators");
    }
  }
  if (symmetric()) {
    if (numeric_rank(generators_) < d_) {
      throw ValidationError("generators do not span the space");
    }
  } else {
    if (!origin_strictly_interior(generators_)) {
      throw ValidationError("origin is not interior to the generator hull");
    }
  }
}

BodySpec make_l1(int d, std::uint64_t generator_cap) {
  if (d < 1) throw ValidationError("body dimension must be positive");
  if (d > 63 || (std::uint64_t{1} << (d - 1)) > generator_cap) {
    throw DimensionError("l1 generator count 2^(d-1) exceeds the cap");
  }
  const Eigen::Index m = Eigen::Index{1} << (d - 1);
  Eigen::MatrixXd gens(m, d);
  for (Eigen::Index i = 0; i < m; ++i) {
    gens(i, 0) = 1.0;
    for (int j = 1; j < d; ++j) {
      gens(i, j) = ((i >> (j - 1)) & 1) ? -1.0 : 1.0;
    }
  }
  char label[32];
  std::snprintf(label, sizeof(label), "l1(d=%d)", d);
  return BodySpec(d, BodyKind::SymmetricPolytope, std::move(gens), label);
}

BodySpec make_linf(int d) {
  if (d < 1) throw ValidationError("body dimension must be positive");
  char label[32];
  std::snprintf(label, sizeof(label), "linf(d=%d)", d);
  return BodySpec(d, BodyKind::SymmetricPolytope, Eigen::MatrixXd::Identity(d, d), label);
}

BodySpec make_lp_sampled(int d, double p, int m, std::uint64_t seed) {
  if (d < 1) throw ValidationError("body dimension must be positive");
  if (!(p > 1.0)) throw ValidationError("lp sampling requires p > 1");
  if (m < d) throw ValidationError("lp sampling requires at least d generators");
  const double q = p / (p - 1.0);
  Eigen::MatrixXd gens(m, d);
  gens.topRows(d) = Eigen::MatrixXd::Identity(d, d);
  if (m > d) {
    Eigen::MatrixXd directions = spread_directions(d, m - d, seed);
    for (int i = d; i < m; ++i) {
      gens.row(i) = dual_touch_point(directions.row(i - d).transpose(), p, q).transpose();
    }
  }
  char label[64];
  std::snprintf(label, sizeof(label), "lp(d=%d,p=%g,m=%d)", d, p, m);
  SamplingInfo info;
  info.source = "lp";
  info.p = p;
  info.count = m;
  info.seed = seed;
  return BodySpec(d, BodyKind::SampledSmooth, std::move(gens), label, info);
}

BodySpec from_polar_vertices(const Eigen::MatrixXd& points, bool symmetric, std::string label) {
  if (points.rows() == 0) throw ValidationError("generator list is empty");
  return BodySpec(static_cast<int>(points.cols()),
                  symmetric ? BodyKind::SymmetricPolytope : BodyKind::NonsymmetricPolytope,
                  points, std::move(label));
}

double exact_norm(const BodySpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != spec.d()) throw ValidationError("point dimension does not match body");
  Eigen::VectorXd products = spec.generators() * x;
  return spec.symmetric() ? products.cwiseAbs().maxCoeff() : products.maxCoeff();
}

std::uint64_t body_fingerprint(const BodySpec& spec) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](const void* data, std::size_t size) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const int d = spec.d();
  const int kind = static_cast<int>(spec.kind());
  mix(&d, sizeof(d));
  mix(&kind, sizeof(kind));
  for (Eigen::Index i = 0; i < spec.generators().rows(); ++i) {
    for (Eigen::Index j = 0; j < spec.generators().cols(); ++j) {
      double v = spec.generators()(i, j);
      mix(&v, sizeof(v));
    }
  }
  return h;
}

}  // namespace polynorm
