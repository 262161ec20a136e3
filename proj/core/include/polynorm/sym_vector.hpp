#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "polynorm/multi_index.hpp"

namespace polynorm {

/// A vector in the binom(n+d-1, n)-dimensional space of symmetric
/// coordinates of degree n in d variables, ordered graded-lexicographically.
struct SymVector {
  int d = 0;
  int n = 0;
  Eigen::VectorXd coords;

  std::size_t size() const { return static_cast<std::size_t>(coords.size()); }
};

/// Precomputed tables for the weighted Veronese embedding of fixed (d, n):
/// coordinate alpha of lift(x) is sqrt(multinomial(n; alpha)) * x^alpha.
/// With these weights the plain dot product of two lifted vectors equals
/// the n-th power of the ambient dot product, which is the contract every
/// consumer relies on.
class SymBasis {
 public:
  SymBasis(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }
  std::size_t size() const { return indices_.size(); }

  const std::vector<MultiIndex>& indices() const { return indices_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  Eigen::VectorXd lift_coords(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  SymVector lift(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  int d_;
  int n_;
  std::vector<MultiIndex> indices_;
  Eigen::VectorXd weights_;
};

/// Weighted Veronese embedding x -> x^(tensor n) in symmetric coordinates.
SymVector veronese(const Eigen::Ref<const Eigen::VectorXd>& x, int n);

/// Euclidean inner product of symmetric coordinates; equals
/// (f . x)^n when both arguments are Veronese lifts.
double pairing(const SymVector& u, const SymVector& v);

}  // namespace polynorm
