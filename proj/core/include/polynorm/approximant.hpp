#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include "polynorm/body.hpp"
#include "polynorm/sym_vector.hpp"

namespace polynorm {

struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct Evaluation {
  double p = 0.0;      // value of the degree-2n polynomial
  double r = 0.0;      // value of the center functional at lift(x)
  double lower = 0.0;  // certified lower bound on the norm at x
  double upper = 0.0;  // certified upper bound on the norm at x
};

/// The built artifact: a degree-2n sum-of-squares polynomial
///   p(x) = lift(x)' A lift(x),   A = carrier * core * carrier',
/// plus a center functional w (zero for symmetric bodies) such that the
/// presented norm is sandwiched:
///   symmetric:   p(x)^{1/2n} <= ||x|| <= dim_D^{1/2n} p(x)^{1/2n}
///   general:     (r(x)+sqrt(p))^{1/n} <= ||x|| <= (r(x)+dim_D sqrt(p))^{1/n}
/// with r(x) = w . lift(x). The carrier matrix is N x dim_D with orthonormal
/// columns and core is dim_D x dim_D positive definite, so A is positive
/// semidefinite of rank dim_D by construction. The constructor re-validates
/// every invariant, which makes it the single entry point for both freshly
/// built and deserialized artifacts.
class NormApproximant {
 public:
  NormApproximant(BodySpec body, int n, Eigen::MatrixXd carrier, Eigen::MatrixXd core,
                  Eigen::VectorXd w, double build_eps);

  int d() const { return body_.d(); }
  int n() const { return n_; }
  const BodySpec& body() const { return body_; }
  const SymBasis& basis() const { return basis_; }
  std::size_t sym_size() const { return basis_.size(); }  // N
  int dim_D() const { return static_cast<int>(core_.rows()); }
  double build_eps() const { return build_eps_; }

  const Eigen::MatrixXd& carrier() const { return carrier_; }
  const Eigen::MatrixXd& core() const { return core_; }
  const Eigen::VectorXd& w() const { return w_; }

  /// Dense N x N Gram matrix A (assembled on demand).
  Eigen::MatrixXd gram() const { return carrier_ * core_ * carrier_.transpose(); }

  /// Bound on the ratio (observed norm) / (lower bound): dim_D^{1/2n}.
  double ratio_bound() const;
  /// The same bound with dim_D replaced by N = binom(n+d-1, n).
  double theorem_ratio_bound() const;
  /// Constants as serialized: the {1/2n}-power form for symmetric bodies,
  /// the linear factor (dim_D resp. N) for nonsymmetric ones.
  double constant_effective() const;
  double constant_theorem() const;

  friend double eval_p(const NormApproximant&, const Eigen::Ref<const Eigen::VectorXd>&);
  friend double eval_r(const NormApproximant&, const Eigen::Ref<const Eigen::VectorXd>&);
  friend Evaluation evaluate(const NormApproximant&, const Eigen::Ref<const Eigen::VectorXd>&);
  friend Eigen::MatrixXd sos_factor(const NormApproximant&);

 private:
  BodySpec body_;
  int n_;
  Eigen::MatrixXd carrier_;
  Eigen::MatrixXd core_;
  Eigen::VectorXd w_;
  double build_eps_;
  SymBasis basis_;
  Eigen::MatrixXd sos_rows_;  // dim_D x N; p(x) = |sos_rows * lift(x)|^2
};

/// Run the full pipeline: lift the generators, enclose them in a
/// minimum-volume ellipsoid (origin-centered for symmetric bodies, free
/// center otherwise), shrink it to an inscribed one, and read off the
/// quadratic form. n must be odd; sym_dim(d, n) must not exceed dim_cap
/// (pass 0 to disable the cap).
NormApproximant build_approximant(const BodySpec& spec, int n, double eps = 1e-7,
                                  std::size_t dim_cap = 3000);

/// p(x) = lift(x)' A lift(x); nonnegative by construction.
double eval_p(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x);

/// r(x) = w . lift(x); identically zero for symmetric bodies.
double eval_r(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x);

/// p, r and both norm bounds from a single lift of x.
Evaluation evaluate(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x);

NormBounds norm_bounds(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Coefficients of p as a polynomial in x: one entry per degree-2n
/// multi-index (graded-lexicographic order, zeros included).
std::vector<std::pair<MultiIndex, double>> expand_monomials(const NormApproximant& appr,
                                                            std::size_t dim_cap = 3000);

/// Rows L_k (in symmetric coordinates) with A = sum_k L_k' L_k, so
/// p(x) = sum_k (L_k . lift(x))^2; dim_D rows.
Eigen::MatrixXd sos_factor(const NormApproximant& appr);

}  // namespace polynorm
