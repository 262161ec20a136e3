#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace polynorm {

/// Exponent tuple of a monomial in d variables with fixed total degree.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  int dimension() const { return static_cast<int>(exponents_.size()); }
  int degree() const;
  int operator[](int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }

  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<int> exponents_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& mi);

/// Number of monomials of total degree n in d variables, binom(n+d-1, n).
/// Exact integer arithmetic; throws DimensionError instead of wrapping.
std::size_t sym_dim(int d, int n);

/// All exponent tuples of total degree n in d variables, in graded
/// lexicographic order (degree fixed at n, tuples lexicographically
/// descending).  Length equals sym_dim(d, n).
std::vector<MultiIndex> multi_indices(int d, int n);

/// Position of `mi` in the multi_indices(d, degree) ordering.
std::size_t grlex_rank(const MultiIndex& mi);

/// Exact multinomial coefficient n! / prod(alpha_i!); requires
/// sum(alpha) == n.  Throws DimensionError on 64-bit overflow.
std::uint64_t multinomial(const MultiIndex& alpha);

}  // namespace polynorm
