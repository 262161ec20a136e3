#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace polynorm {

/// A possibly degenerate ellipsoid { center + basis * u : u' * shape^{-1} * u <= 1 }
/// living in an r-dimensional carrier subspace of N-dimensional space.
/// basis is N x r with orthonormal columns; shape is r x r symmetric
/// positive-definite. Support function:
///   h(y) = center . y + sqrt((basis' y)' * shape * (basis' y)),
/// the identity every consumer relies on.
struct Ellipsoid {
  int dim_ambient = 0;
  Eigen::VectorXd center;
  Eigen::MatrixXd basis;
  Eigen::MatrixXd shape;

  int rank() const { return static_cast<int>(basis.cols()); }

  double support(const Eigen::Ref<const Eigen::VectorXd>& y) const;

  /// Quadratic-form value of (point - center) projected onto the carrier;
  /// <= 1 means the point lies inside (ignoring off-carrier deviation).
  double membership(const Eigen::Ref<const Eigen::VectorXd>& point) const;
};

/// Minimum-volume ellipsoid centered at the origin enclosing {+/- p : p in points}
/// (one point per row). The carrier subspace of the point set is detected
/// first (relative eigenvalue threshold 1e-10 on the second-moment matrix) and
/// the optimization runs in carrier coordinates, so rank-deficient inputs are
/// handled exactly. Every input point has membership <= 1; the volume is
/// minimal within a factor (1+eps)^rank.
/// Throws SolverError when the weight ascent exceeds max_iter updates.
Ellipsoid mvee_symmetric(const Eigen::MatrixXd& points, double eps = 1e-7,
                         std::size_t max_iter = 1000000);

/// Free-center variant: minimum-volume ellipsoid enclosing the points, center
/// chosen by the optimization (always a convex combination of the points).
/// Implemented as the centered problem on points lifted by a constant
/// coordinate.
Ellipsoid mvee_general(const Eigen::MatrixXd& points, double eps = 1e-7,
                       std::size_t max_iter = 1000000);

/// John-type shrink of an enclosing ellipsoid to an inscribed one:
/// symmetric: shape/rank about the origin, so E <= conv(+/-points) <= sqrt(rank) E;
/// general: recentered at the origin and shrunk to shape/rank^2, so
/// E <= conv(points) - center <= rank * E.
/// Throws ValidationError for rank-0 input.
Ellipsoid inscribed_from_enclosing(const Ellipsoid& enclosing, bool symmetric);

}  // namespace polynorm
