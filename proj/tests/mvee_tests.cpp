#include <cmath>

#include "doctest.h"
#include "polynorm/ellipsoid.hpp"
#include "polynorm/errors.hpp"
#include "polynorm/rng.hpp"

using namespace polynorm;

namespace {

Eigen::MatrixXd random_points(int m, int d, std::uint64_t seed) {
  RandomStream rs(seed, 0);
  Eigen::MatrixXd pts(m, d);
  for (int i = 0; i < m; ++i) pts.row(i) = rs.normal_vector(d).transpose();
  return pts;
}

Eigen::MatrixXd gram_of(const Ellipsoid& e) {
  return e.basis * e.shape * e.basis.transpose();
}

}  // namespace

TEST_CASE("rotated square: enclosing ellipsoid is the circumscribed disc") {
  Eigen::MatrixXd pts(2, 2);
  pts << 1, 1, 1, -1;
  Ellipsoid e = mvee_symmetric(pts);
  CHECK(e.rank() == 2);
  CHECK(e.center.cwiseAbs().maxCoeff() == 0.0);
  CHECK((gram_of(e) - 2.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(e.membership(Eigen::Vector2d(1, 1)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.support(Eigen::Vector2d(1, 0)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("collinear points collapse to a rank-one carrier") {
  Eigen::MatrixXd pts(2, 2);
  pts << 2, 0, -2, 0;
  Ellipsoid e = mvee_symmetric(pts);
  CHECK(e.rank() == 1);
  CHECK(e.basis.col(0)(0) == doctest::Approx(1.0).epsilon(1e-12));  // sign-canonical
  CHECK(e.shape(0, 0) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(e.membership(Eigen::Vector2d(2, 0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("axis-aligned box: enclosing ellipsoid matches the closed form") {
  // MVEE of the four vertices (+/-a, +/-b) is x^2/(2a^2) + y^2/(2b^2) = 1.
  Eigen::MatrixXd pts(4, 2);
  pts << 1.5, 0.5, 1.5, -0.5, -1.5, 0.5, -1.5, -0.5;
  Ellipsoid e = mvee_symmetric(pts);
  Eigen::Matrix2d want;
  want << 4.5, 0, 0, 0.5;
  CHECK((gram_of(e) - want).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("equilateral triangle: free-center ellipsoid is the circumcircle") {
  Eigen::MatrixXd pts(3, 2);
  for (int k = 0; k < 3; ++k) {
    double t = 2.0 * M_PI * k / 3.0;
    pts(k, 0) = std::cos(t);
    pts(k, 1) = std::sin(t);
  }
  Ellipsoid e = mvee_general(pts);
  CHECK(e.rank() == 2);
  CHECK(e.center.cwiseAbs().maxCoeff() < 1e-9);
  CHECK((gram_of(e) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("right triangle: free-center ellipsoid is the Steiner circumellipse") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 1;
  Ellipsoid e = mvee_general(pts);
  CHECK(e.center(0) == doctest::Approx(1.0 / 3).epsilon(1e-7));
  CHECK(e.center(1) == doctest::Approx(1.0 / 3).epsilon(1e-7));
  Eigen::Matrix2d want;
  want << 4.0 / 9, -2.0 / 9, -2.0 / 9, 4.0 / 9;
  CHECK((gram_of(e) - want).cwiseAbs().maxCoeff() < 1e-6);
  for (int k = 0; k < 3; ++k) {
    CHECK(e.membership(pts.row(k).transpose()) <= 1.0 + 1e-9);
  }
}

TEST_CASE("one-dimensional interval: center and radius are exact") {
  Eigen::MatrixXd pts(2, 1);
  pts << -1.0, 0.5;
  Ellipsoid e = mvee_general(pts);
  CHECK(e.center(0) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(e.shape(0, 0) == doctest::Approx(0.5625).epsilon(1e-12));
}

TEST_CASE("single repeated point has rank zero and exact center") {
  Eigen::MatrixXd pts(3, 2);
  pts << 2, -1, 2, -1, 2, -1;
  Ellipsoid e = mvee_general(pts);
  CHECK(e.rank() == 0);
  CHECK(e.center(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.center(1) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)inscribed_from_enclosing(e, false), ValidationError);
}

TEST_CASE("membership certificate holds on random point sets") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    Eigen::MatrixXd pts = random_points(30, 5, seed);
    Ellipsoid e = mvee_symmetric(pts);
    double worst = 0.0;
    for (int i = 0; i < pts.rows(); ++i) {
      worst = std::max(worst, e.membership(pts.row(i).transpose()));
    }
    CHECK(worst <= 1.0 + 1e-9);   // max membership is normalized to exactly 1
    CHECK(worst >= 1.0 - 1e-9);   // and attained by some support point
  }
}

TEST_CASE("support sandwich against the point set, symmetric case") {
  Eigen::MatrixXd pts = random_points(40, 4, 9);
  Ellipsoid enclosing = mvee_symmetric(pts);
  Ellipsoid inner = inscribed_from_enclosing(enclosing, true);
  double root_rank = std::sqrt(static_cast<double>(enclosing.rank()));
  RandomStream rs(10, 0);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd y = rs.normal_vector(4);
    double h_points = (pts * y).cwiseAbs().maxCoeff();
    double h_inner = inner.support(y);
    CHECK(h_inner <= h_points * (1.0 + 1e-7));
    CHECK(h_points <= root_rank * h_inner * (1.0 + 1e-9));
  }
}

TEST_CASE("support sandwich against the hull, free-center case") {
  Eigen::MatrixXd pts = random_points(12, 3, 17);
  Ellipsoid enclosing = mvee_general(pts);
  Ellipsoid inner = inscribed_from_enclosing(enclosing, false);
  double rank = enclosing.rank();
  RandomStream rs(18, 0);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd y = rs.normal_vector(3);
    // translated hull support: max over vertices of <v - c, y>
    double h_hull = ((pts.rowwise() - enclosing.center.transpose()) * y).maxCoeff();
    double h_inner = inner.support(y);
    CHECK(h_inner <= h_hull * (1.0 + 1e-7) + 1e-12);
    CHECK(h_hull <= rank * h_inner * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("identical calls produce bitwise-identical ellipsoids") {
  Eigen::MatrixXd pts = random_points(25, 6, 77);
  Ellipsoid a = mvee_symmetric(pts);
  Ellipsoid b = mvee_symmetric(pts);
  CHECK(a.shape == b.shape);
  CHECK(a.basis == b.basis);
  Ellipsoid c = mvee_general(pts);
  Ellipsoid d2 = mvee_general(pts);
  CHECK(c.shape == d2.shape);
  CHECK(c.center == d2.center);
}

TEST_CASE("affine equivariance of the free-center ellipsoid") {
  const double eps = 1e-6;
  Eigen::MatrixXd pts = random_points(14, 3, 23);
  Eigen::Matrix3d a;
  a << 2, 0.3, -0.1, 0, 1.5, 0.4, 0.2, -0.6, 0.9;
  Eigen::Vector3d b(0.7, -2.0, 0.3);
  Ellipsoid plain = mvee_general(pts, eps);
  Ellipsoid mapped = mvee_general((pts * a.transpose()).rowwise() + b.transpose(), eps);

  Eigen::Vector3d want_center = a * plain.center + b;
  Eigen::Matrix3d want_gram = a * gram_of(plain) * a.transpose();
  RandomStream rs(5, 0);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd y = rs.normal_vector(3);
    double got = mapped.support(y);
    double want = want_center.dot(y) + std::sqrt(y.dot(want_gram * y));
    CHECK(std::abs(got - want) <= 10 * eps * std::abs(want));
  }
}

TEST_CASE("iteration cap raises a solver error") {
  Eigen::MatrixXd pts = random_points(40, 5, 33);
  CHECK_THROWS_AS((void)mvee_symmetric(pts, 1e-12, 3), SolverError);
}

TEST_CASE("input validation") {
  Eigen::MatrixXd empty(0, 3);
  CHECK_THROWS_AS((void)mvee_symmetric(empty), ValidationError);
  Eigen::MatrixXd bad(1, 2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)mvee_symmetric(bad), ValidationError);
  Eigen::MatrixXd ok(1, 2);
  ok << 1.0, 2.0;
  CHECK_THROWS_AS((void)mvee_symmetric(ok, 0.0), ValidationError);
  CHECK_THROWS_AS((void)mvee_symmetric(ok, 1.5), ValidationError);
}
