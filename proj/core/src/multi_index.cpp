#include "polynorm/multi_index.hpp"

#include <limits>
#include <numeric>
#include <ostream>

#include "polynorm/errors.hpp"

namespace polynorm {

namespace {

// binom(a, b) in exact 64-bit arithmetic; throws instead of wrapping.
std::uint64_t checked_binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= b; ++i) {
    acc *= static_cast<unsigned __int128>(a - b + i);
    acc /= static_cast<unsigned __int128>(i);  // exact: prefix binomial
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw DimensionError("binomial coefficient overflows 64-bit integer");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

// Compositions of `total` into `parts` nonnegative integers.
std::uint64_t compositions(int parts, int total) {
  return checked_binomial(total + parts - 1, parts - 1);
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw ValidationError("multi-index exponents must be nonnegative");
  }
}

int MultiIndex::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& mi) {
  os << '(';
  for (int i = 0; i < mi.dimension(); ++i) {
    if (i) os << ',';
    os << mi[i];
  }
  return os << ')';
}

std::size_t sym_dim(int d, int n) {
  if (d < 1 || n < 0) throw ValidationError("sym_dim requires d >= 1 and n >= 0");
  std::uint64_t value = compositions(d, n);
  if (value > std::numeric_limits<std::size_t>::max()) {
    throw DimensionError("symmetric dimension overflows size_t");
  }
  return static_cast<std::size_t>(value);
}

std::vector<MultiIndex> multi_indices(int d, int n) {
  std::size_t count = sym_dim(d, n);
  std::vector<MultiIndex> out;
  out.reserve(count);

  std::vector<int> alpha(static_cast<std::size_t>(d), 0);
  alpha[0] = n;
  out.emplace_back(alpha);
  // Lexicographically descending successor: move one unit from the
  // rightmost positive entry left of the tail, dumping the tail after it.
  while (alpha[static_cast<std::size_t>(d) - 1] != n) {
    int i = d - 2;
    while (alpha[static_cast<std::size_t>(i)] == 0) --i;
    int tail = alpha[static_cast<std::size_t>(d) - 1];
    alpha[static_cast<std::size_t>(i)] -= 1;
    alpha[static_cast<std::size_t>(i) + 1] = tail + 1;
    for (int j = i + 2; j < d; ++j) alpha[static_cast<std::size_t>(j)] = 0;
    out.emplace_back(alpha);
  }
  if (out.size() != count) {
    throw Error("multi-index enumeration produced wrong count");
  }
  return out;
}

std::size_t grlex_rank(const MultiIndex& mi) {
  int d = mi.dimension();
  int rem = mi.degree();
  std::uint64_t rank = 0;
  for (int pos = 0; pos < d - 1; ++pos) {
    // tuples with a larger entry at `pos` precede this one
    for (int b = rem; b > mi[pos]; --b) {
      rank += compositions(d - pos - 1, rem - b);
    }
    rem -= mi[pos];
  }
  return static_cast<std::size_t>(rank);
}

std::uint64_t multinomial(const MultiIndex& alpha) {
  // n! / prod(a_i!) = prod_k binom(s_k, a_k) with s_k the partial sums.
  unsigned __int128 acc = 1;
  int partial = 0;
  for (int i = 0; i < alpha.dimension(); ++i) {
    partial += alpha[i];
    acc *= static_cast<unsigned __int128>(checked_binomial(partial, alpha[i]));
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw DimensionError("multinomial coefficient overflows 64-bit integer");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace polynorm
