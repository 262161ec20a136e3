#include "polynorm/ellipsoid.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "polynorm/errors.hpp"

namespace polynorm {

namespace {

struct Carrier {
  Eigen::MatrixXd basis;   // N x r, orthonormal columns, deterministic signs
  Eigen::MatrixXd coords;  // m x r projections of the (centered) points
};

// Carrier subspace of a point cloud: eigenvectors of the second-moment matrix
// whose eigenvalues exceed 1e-10 of the largest, ordered by decreasing
// eigenvalue with the dominant entry of each direction made positive.
Carrier detect_carrier(const Eigen::MatrixXd& points) {
  const Eigen::Index n_amb = points.cols();
  Eigen::MatrixXd moment =
      points.transpose() * points / static_cast<double>(points.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moment);
  if (es.info() != Eigen::Success) {
    throw SolverError("eigendecomposition of the moment matrix failed", 0.0);
  }
  const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
  const double lam_max = lam[n_amb - 1];
  int rank = 0;
  if (lam_max > 0.0) {
    for (Eigen::Index i = 0; i < n_amb; ++i) {
      if (lam[i] > 1e-10 * lam_max) ++rank;
    }
  }
  Carrier carrier;
  carrier.basis.resize(n_amb, rank);
  for (int k = 0; k < rank; ++k) {
    Eigen::VectorXd col = es.eigenvectors().col(n_amb - 1 - k);
    Eigen::Index peak;
    col.cwiseAbs().maxCoeff(&peak);
    if (col[peak] < 0.0) col = -col;
    carrier.basis.col(k) = col;
  }
  carrier.coords = points * carrier.basis;
  return carrier;
}

// Coordinate ascent for the D-optimal design problem
//   max log det sum_i w_i z_i z_i'  over the probability simplex,
// whose optimum gives the minimum-volume origin-centered ellipsoid of
// {+/- z_i}. Frank-Wolfe steps toward the most violating point are combined
// with away steps that drain weight from over-served support points, which
// is what makes tolerances like 1e-7 reachable in practice. Leverages g_i
// are maintained by rank-one updates and periodically recomputed exactly.
Eigen::VectorXd design_ascent(const Eigen::MatrixXd& z, double eps, std::size_t max_iter) {
  const Eigen::Index m = z.rows();
  const Eigen::Index r = z.cols();
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));

  if (r == 1) {  // all mass on the farthest point
    Eigen::Index best;
    z.col(0).cwiseAbs().maxCoeff(&best);
    w.setZero();
    w[best] = 1.0;
    return w;
  }

  const double dim = static_cast<double>(r);
  const double sweep_tol = eps / 10.0;
  const std::size_t sweep_len = static_cast<std::size_t>(std::max<Eigen::Index>(m, 16));

  Eigen::MatrixXd shape_moment(r, r);
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd g(m);
  double logdet = 0.0;
  bool g_exact = false;

  auto refresh = [&]() {
    w /= w.sum();
    shape_moment.noalias() = z.transpose() * w.asDiagonal() * z;
    llt.compute(shape_moment);
    if (llt.info() != Eigen::Success) {
      throw SolverError("moment matrix lost positive definiteness", 0.0);
    }
    Eigen::MatrixXd half = llt.matrixL().solve(z.transpose());
    g = half.colwise().squaredNorm().transpose();
    logdet = 0.0;
    for (Eigen::Index i = 0; i < r; ++i) logdet += std::log(llt.matrixLLT()(i, i));
    logdet *= 2.0;
    g_exact = true;
  };
  refresh();

  double last_sweep_delta = 0.0;
  double logdet_sweep_start = logdet;
  std::size_t steps_in_sweep = 0;
  double kappa = g.maxCoeff();

  for (std::size_t it = 0; it < max_iter; ++it) {
    Eigen::Index j_plus;
    kappa = g.maxCoeff(&j_plus);

    if (kappa <= dim * (1.0 + eps) && last_sweep_delta <= sweep_tol) {
      if (g_exact) return w;
      refresh();
      kappa = g.maxCoeff(&j_plus);
      if (kappa <= dim * (1.0 + eps)) return w;
    }

    Eigen::Index j_minus = -1;
    double kappa_minus = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (w[i] > 0.0 && g[i] < kappa_minus) {
        kappa_minus = g[i];
        j_minus = i;
      }
    }

    bool away = j_minus >= 0 && (dim - kappa_minus) > (kappa - dim) && w[j_minus] < 1.0 - 1e-15;
    Eigen::Index j;
    double beta;
    bool drops = false;
    if (away) {
      j = j_minus;
      const double beta_floor = -w[j] / (1.0 - w[j]);
      if (g[j] > 1.0) {
        beta = std::max((g[j] - dim) / (dim * (g[j] - 1.0)), beta_floor);
      } else {
        beta = beta_floor;
      }
      drops = beta <= beta_floor;
    } else {
      j = j_plus;
      beta = (kappa - dim) / (dim * (kappa - 1.0));
    }

    if (std::abs(beta) <= 1e-18) {
      if (!g_exact) refresh();
      if (g.maxCoeff() <= dim * (1.0 + eps)) return w;
      throw SolverError("ellipsoid weight ascent stalled",
                        std::max(0.0, g.maxCoeff() / dim - 1.0));
    }

    // Rank-one update of the leverages through the old inverse.
    Eigen::VectorXd dir = llt.solve(z.row(j).transpose());
    Eigen::VectorXd cross = z * dir;
    const double gj = g[j];
    const double denom = 1.0 - beta + beta * gj;
    g = (g.array() - beta * cross.array().square() / denom) / (1.0 - beta);
    g_exact = false;

    w *= (1.0 - beta);
    w[j] += beta;
    if (drops || w[j] < 0.0) w[j] = 0.0;
    shape_moment *= (1.0 - beta);
    shape_moment.noalias() += beta * (z.row(j).transpose() * z.row(j));
    logdet += (dim - 1.0) * std::log1p(-beta) + std::log1p(beta * (gj - 1.0));
    llt.compute(shape_moment);
    if (llt.info() != Eigen::Success) refresh();

    if (++steps_in_sweep >= sweep_len) {
      last_sweep_delta =
          std::abs(logdet - logdet_sweep_start) / std::max(1.0, std::abs(logdet));
      logdet_sweep_start = logdet;
      steps_in_sweep = 0;
    }
    if ((it + 1) % 512 == 0) refresh();
  }
  throw SolverError("enclosing-ellipsoid ascent did not converge within the iteration cap",
                    std::max(0.0, kappa / dim - 1.0));
}

void validate_mvee_inputs(const Eigen::MatrixXd& points, double eps) {
  if (points.rows() == 0) throw ValidationError("empty point set");
  if (!points.allFinite()) throw ValidationError("points contain non-finite entries");
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0, 1)");
}

}  // namespace

double Ellipsoid::support(const Eigen::Ref<const Eigen::VectorXd>& y) const {
  if (y.size() != dim_ambient) throw ValidationError("direction dimension mismatch");
  double value = center.dot(y);
  if (rank() > 0) {
    Eigen::VectorXd yb = basis.transpose() * y;
    value += std::sqrt(std::max(0.0, yb.dot(shape * yb)));
  }
  return value;
}

double Ellipsoid::membership(const Eigen::Ref<const Eigen::VectorXd>& point) const {
  if (point.size() != dim_ambient) throw ValidationError("point dimension mismatch");
  if (rank() == 0) return 0.0;
  Eigen::VectorXd u = basis.transpose() * (point - center);
  Eigen::LLT<Eigen::MatrixXd> llt(shape);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("ellipsoid shape matrix is not positive definite");
  }
  return u.dot(llt.solve(u));
}

Ellipsoid mvee_symmetric(const Eigen::MatrixXd& points, double eps, std::size_t max_iter) {
  validate_mvee_inputs(points, eps);
  const Eigen::Index n_amb = points.cols();
  Carrier carrier = detect_carrier(points);
  Ellipsoid result;
  result.dim_ambient = static_cast<int>(n_amb);
  result.center = Eigen::VectorXd::Zero(n_amb);
  result.basis = carrier.basis;
  const Eigen::Index r = carrier.basis.cols();
  if (r == 0) {
    result.shape.resize(0, 0);
    return result;
  }

  Eigen::VectorXd w = design_ascent(carrier.coords, eps, max_iter);
  Eigen::MatrixXd moment =
      carrier.coords.transpose() * w.asDiagonal() * carrier.coords;
  moment = ((moment + moment.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(moment);
  if (llt.info() != Eigen::Success) {
    throw SolverError("final moment matrix is not positive definite", 0.0);
  }
  Eigen::MatrixXd half = llt.matrixL().solve(carrier.coords.transpose());
  const double kappa = half.colwise().squaredNorm().maxCoeff();
  result.shape = kappa * moment;
  return result;
}

Ellipsoid mvee_general(const Eigen::MatrixXd& points, double eps, std::size_t max_iter) {
  validate_mvee_inputs(points, eps);
  const Eigen::Index n_amb = points.cols();
  const Eigen::Index m = points.rows();
  Eigen::RowVectorXd mean = points.colwise().mean();
  Eigen::MatrixXd centered = points.rowwise() - mean;
  Carrier carrier = detect_carrier(centered);
  const Eigen::Index r = carrier.basis.cols();

  Ellipsoid result;
  result.dim_ambient = static_cast<int>(n_amb);
  result.basis = carrier.basis;
  if (r == 0) {  // a single (possibly repeated) point
    result.center = mean.transpose();
    result.shape.resize(0, 0);
    return result;
  }

  // Lift with a constant coordinate so the free center becomes part of the
  // centered design problem; tighten the tolerance so the optimality gap of
  // the lifted problem stays within eps of the membership form itself.
  Eigen::MatrixXd lifted(m, r + 1);
  lifted.leftCols(r) = carrier.coords;
  lifted.col(r).setOnes();
  const double eps_eff = eps * static_cast<double>(r) / static_cast<double>(r + 1);
  Eigen::VectorXd w = design_ascent(lifted, eps_eff, max_iter);

  Eigen::VectorXd center_local = carrier.coords.transpose() * w;
  Eigen::MatrixXd spread = carrier.coords.rowwise() - center_local.transpose();
  Eigen::MatrixXd scatter = spread.transpose() * w.asDiagonal() * spread;
  scatter = ((scatter + scatter.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(scatter);
  if (llt.info() != Eigen::Success) {
    throw SolverError("final scatter matrix is not positive definite", 0.0);
  }
  Eigen::MatrixXd half = llt.matrixL().solve(spread.transpose());
  const double kappa = half.colwise().squaredNorm().maxCoeff();
  result.shape = kappa * scatter;
  result.center = mean.transpose() + carrier.basis * center_local;
  return result;
}

Ellipsoid inscribed_from_enclosing(const Ellipsoid& enclosing, bool symmetric) {
  const int r = enclosing.rank();
  if (r == 0) throw ValidationError("cannot inscribe into a rank-0 ellipsoid");
  Ellipsoid inner;
  inner.dim_ambient = enclosing.dim_ambient;
  inner.center = Eigen::VectorXd::Zero(enclosing.dim_ambient);
  inner.basis = enclosing.basis;
  const double factor = symmetric ? static_cast<double>(r)
                                  : static_cast<double>(r) * static_cast<double>(r);
  inner.shape = enclosing.shape / factor;
  return inner;
}

}  // namespace polynorm
