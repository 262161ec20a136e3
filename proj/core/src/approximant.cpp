#include "polynorm/approximant.hpp"

#include <cmath>
#include <string>

#include "polynorm/ellipsoid.hpp"
#include "polynorm/errors.hpp"

namespace polynorm {

NormApproximant::NormApproximant(BodySpec body, int n, Eigen::MatrixXd carrier,
                                 Eigen::MatrixXd core, Eigen::VectorXd w, double build_eps)
    : body_(std::move(body)),
      n_(n),
      carrier_(std::move(carrier)),
      core_(std::move(core)),
      w_(std::move(w)),
      build_eps_(build_eps),
      basis_(body_.d(), n) {
  if (n_ < 1 || n_ % 2 == 0) throw ValidationError("n must be odd");
  if (!(build_eps_ > 0.0 && build_eps_ < 1.0)) throw ValidationError("eps must lie in (0, 1)");
  const Eigen::Index n_sym = static_cast<Eigen::Index>(basis_.size());
  if (carrier_.rows() != n_sym) {
    throw ValidationError("carrier basis height does not match sym_dim(d, n)");
  }
  const Eigen::Index r = carrier_.cols();
  if (r < 1) throw ValidationError("carrier rank must be positive");
  if (core_.rows() != r || core_.cols() != r) {
    throw ValidationError("core must be square of size carrier rank");
  }
  if (w_.size() != n_sym) throw ValidationError("w length does not match sym_dim(d, n)");
  if (!carrier_.allFinite() || !core_.allFinite() || !w_.allFinite()) {
    throw ValidationError("approximant data contains non-finite entries");
  }

  Eigen::MatrixXd gramian = carrier_.transpose() * carrier_;
  if ((gramian - Eigen::MatrixXd::Identity(r, r)).cwiseAbs().maxCoeff() > 1e-10) {
    throw ValidationError("carrier basis columns are not orthonormal");
  }
  const double core_scale = core_.cwiseAbs().maxCoeff();
  if ((core_ - core_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * core_scale) {
    throw ValidationError("core matrix is not symmetric");
  }
  core_ = ((core_ + core_.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(core_);
  if (llt.info() != Eigen::Success) {
    throw ValidationError("core matrix is not positive definite");
  }
  if (body_.symmetric() && w_.cwiseAbs().maxCoeff() != 0.0) {
    throw ValidationError("center functional must vanish for symmetric bodies");
  }

  sos_rows_ = Eigen::MatrixXd(llt.matrixL().transpose()) * carrier_.transpose();
}

double NormApproximant::ratio_bound() const {
  return std::pow(static_cast<double>(dim_D()), 1.0 / (2.0 * n_));
}

double NormApproximant::theorem_ratio_bound() const {
  return std::pow(static_cast<double>(sym_size()), 1.0 / (2.0 * n_));
}

double NormApproximant::constant_effective() const {
  return body_.symmetric() ? ratio_bound() : static_cast<double>(dim_D());
}

double NormApproximant::constant_theorem() const {
  return body_.symmetric() ? theorem_ratio_bound() : static_cast<double>(sym_size());
}

NormApproximant build_approximant(const BodySpec& spec, int n, double eps,
                                  std::size_t dim_cap) {
  if (n < 1 || n % 2 == 0) throw ValidationError("n must be odd");
  const std::size_t n_sym = sym_dim(spec.d(), n);
  if (dim_cap != 0 && n_sym > dim_cap) {
    throw DimensionError("sym_dim(d, n) = " + std::to_string(n_sym) +
                         " exceeds the dimension cap " + std::to_string(dim_cap));
  }

  SymBasis basis(spec.d(), n);
  const Eigen::Index m = spec.generators().rows();
  Eigen::MatrixXd lifted(m, static_cast<Eigen::Index>(n_sym));
  for (Eigen::Index i = 0; i < m; ++i) {
    lifted.row(i) = basis.lift_coords(spec.generators().row(i).transpose()).transpose();
  }

  if (spec.symmetric()) {
    Ellipsoid enclosing = mvee_symmetric(lifted, eps);
    Ellipsoid inner = inscribed_from_enclosing(enclosing, true);
    return NormApproximant(spec, n, inner.basis, inner.shape,
                           Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_sym)), eps);
  }
  Ellipsoid enclosing = mvee_general(lifted, eps);
  Ellipsoid inner = inscribed_from_enclosing(enclosing, false);
  return NormApproximant(spec, n, inner.basis, inner.shape, enclosing.center, eps);
}

double eval_p(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return (appr.sos_rows_ * appr.basis_.lift_coords(x)).squaredNorm();
}

double eval_r(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return appr.w_.dot(appr.basis_.lift_coords(x));
}

Evaluation evaluate(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Eigen::VectorXd sigma = appr.basis_.lift_coords(x);
  Evaluation out;
  out.p = (appr.sos_rows_ * sigma).squaredNorm();
  out.r = appr.w_.dot(sigma);
  const double q = std::sqrt(out.p);
  const double n = appr.n();
  if (appr.body().symmetric()) {
    out.lower = std::pow(out.p, 1.0 / (2.0 * n));
    out.upper = appr.ratio_bound() * out.lower;
  } else {
    const double lo = out.r + q;
    const double hi = out.r + static_cast<double>(appr.dim_D()) * q;
    out.lower = lo > 0.0 ? std::pow(lo, 1.0 / n) : 0.0;
    out.upper = hi > 0.0 ? std::pow(hi, 1.0 / n) : 0.0;
  }
  return out;
}

NormBounds norm_bounds(const NormApproximant& appr, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Evaluation ev = evaluate(appr, x);
  return NormBounds{ev.lower, ev.upper};
}

std::vector<std::pair<MultiIndex, double>> expand_monomials(const NormApproximant& appr,
                                                            std::size_t dim_cap) {
  const int d = appr.d();
  const int n = appr.n();
  const std::size_t n_sym2 = sym_dim(d, 2 * n);
  if (dim_cap != 0 && n_sym2 > dim_cap) {
    throw DimensionError("sym_dim(d, 2n) = " + std::to_string(n_sym2) +
                         " exceeds the dimension cap " + std::to_string(dim_cap));
  }

  std::vector<MultiIndex> table = multi_indices(d, 2 * n);
  std::vector<double> coef(table.size(), 0.0);
  Eigen::MatrixXd a = appr.gram();
  const std::vector<MultiIndex>& alphas = appr.basis().indices();
  const Eigen::VectorXd& weights = appr.basis().weights();

  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = i; j < alphas.size(); ++j) {
      std::vector<int> sum(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) sum[static_cast<std::size_t>(k)] = alphas[i][k] + alphas[j][k];
      const std::size_t rank = grlex_rank(MultiIndex(std::move(sum)));
      const double scale = (i == j) ? 1.0 : 2.0;
      coef[rank] += scale * weights[static_cast<Eigen::Index>(i)] *
                    weights[static_cast<Eigen::Index>(j)] *
                    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }

  std::vector<std::pair<MultiIndex, double>> out;
  out.reserve(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    out.emplace_back(table[k], coef[k]);
  }
  return out;
}

Eigen::MatrixXd sos_factor(const NormApproximant& appr) { return appr.sos_rows_; }

}  // namespace polynorm
