#pragma once

#include <Eigen/Dense>
#include <string>

#include "polynorm/body.hpp"
#include "polynorm/rng.hpp"

namespace polynorm::testing {

// Scaled axes plus a few Gaussian rows; full rank by construction, one
// representative per +/- pair.
inline BodySpec random_symmetric_polytope(int d, int pairs, std::uint64_t seed) {
  RandomStream rs(seed, 0);
  Eigen::MatrixXd gens(pairs, d);
  for (int i = 0; i < d; ++i) {
    gens.row(i).setZero();
    gens(i, i) = 0.5 + rs.uniform();
  }
  for (int i = d; i < pairs; ++i) {
    gens.row(i) = rs.normal_vector(d).transpose();
  }
  return from_polar_vertices(gens, true, "random-symmetric(seed=" + std::to_string(seed) + ")");
}

// Gaussian vertices recentred on their centroid, so the origin is a uniform
// convex combination of the generators and the interior check certifies it.
inline BodySpec random_nonsymmetric_body(int d, int count, std::uint64_t seed) {
  RandomStream rs(seed, 0);
  Eigen::MatrixXd gens(count, d);
  for (int i = 0; i < count; ++i) {
    gens.row(i) = rs.normal_vector(d).transpose();
  }
  gens.rowwise() -= gens.colwise().mean();
  return from_polar_vertices(gens, false,
                             "random-nonsymmetric(seed=" + std::to_string(seed) + ")");
}

}  // namespace polynorm::testing
