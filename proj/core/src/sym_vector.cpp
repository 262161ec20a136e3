#include "polynorm/sym_vector.hpp"

#include <cmath>

#include "polynorm/errors.hpp"

namespace polynorm {

SymBasis::SymBasis(int d, int n) : d_(d), n_(n), indices_(multi_indices(d, n)) {
  weights_.resize(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    weights_[static_cast<Eigen::Index>(i)] =
        std::sqrt(static_cast<double>(multinomial(indices_[i])));
  }
}

Eigen::VectorXd SymBasis::lift_coords(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != d_) {
    throw ValidationError("veronese: point dimension does not match basis");
  }
  Eigen::VectorXd coords(static_cast<Eigen::Index>(indices_.size()));
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const MultiIndex& alpha = indices_[i];
    double monomial = 1.0;
    for (int j = 0; j < d_; ++j) {
      for (int k = 0; k < alpha[j]; ++k) monomial *= x[j];
    }
    coords[static_cast<Eigen::Index>(i)] = weights_[static_cast<Eigen::Index>(i)] * monomial;
  }
  return coords;
}

SymVector SymBasis::lift(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  return SymVector{d_, n_, lift_coords(x)};
}

SymVector veronese(const Eigen::Ref<const Eigen::VectorXd>& x, int n) {
  SymBasis basis(static_cast<int>(x.size()), n);
  return basis.lift(x);
}

double pairing(const SymVector& u, const SymVector& v) {
  if (u.d != v.d || u.n != v.n || u.coords.size() != v.coords.size()) {
    throw ValidationError("pairing: operands have mismatched (d, n)");
  }
  return u.coords.dot(v.coords);
}

}  // namespace polynorm
