#ifndef EFBOUND_TESTS_SUPPORT_HPP
#define EFBOUND_TESTS_SUPPORT_HPP

// Hand-rolled generators and brute-force oracles shared by the unit tests.

#include <algorithm>
#include <bit>
#include <random>
#include <utility>
#include <vector>

#include "efbound/matrix.hpp"
#include "efbound/rational.hpp"

namespace testsupport {

using efbound::Rational;
using efbound::RationalMatrix;
using efbound::RationalVector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  // Uniform-ish rational in [lo, hi] with denominator at most max_den.
  Rational rational(long lo, long hi, long max_den = 4) {
    const long den = integer(1, max_den);
    Rational r(integer(lo * den, hi * den), den);
    r.canonicalize();
    return r;
  }

  RationalMatrix matrix(std::size_t m, std::size_t n, long lo, long hi, long max_den = 1) {
    RationalMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rational(lo, hi, max_den);
    return a;
  }

  // Nonnegative with some zeros.
  RationalMatrix sparse_nonneg(std::size_t m, std::size_t n, double density, long hi) {
    RationalMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (coin(density)) a(i, j) = integer(1, hi);
    return a;
  }

  // Product of random m x r and r x n nonnegative integer matrices.
  RationalMatrix low_rank(std::size_t m, std::size_t n, std::size_t r, long hi) {
    return sparse_nonneg(m, r, 0.6, hi) * sparse_nonneg(r, n, 0.6, hi);
  }

  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng_);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Rank by textbook Gaussian elimination over Q (division-based, no Bareiss).
inline std::size_t oracle_rank(RationalMatrix a) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t piv = rank;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(rank, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == rank || a(i, col) == 0) continue;
      Rational f = a(i, col) / a(rank, col);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Minimum rectangle cover of the support by iterative deepening: the first
// uncovered cell must lie in some maximal all-nonzero rectangle. Rows and
// columns are limited to 16 each.
inline std::size_t oracle_rect_cover(const RationalMatrix& s) {
  const std::size_t m = s.rows(), n = s.cols();
  std::vector<unsigned> row_support(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s(i, j) != 0) row_support[i] |= 1U << j;
  // Maximal rectangles: close every column set under "rows containing it".
  std::vector<std::pair<unsigned, unsigned>> maximal;
  for (unsigned cols = 1; cols < (1U << n); ++cols) {
    unsigned rows = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((row_support[i] & cols) == cols) rows |= 1U << i;
    if (rows == 0) continue;
    unsigned closed = (1U << n) - 1;
    for (std::size_t i = 0; i < m; ++i)
      if ((rows >> i) & 1U) closed &= row_support[i];
    if (closed == cols) maximal.push_back({rows, cols});
  }
  std::vector<unsigned> uncovered = row_support;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    std::size_t i = 0;
    while (i < m && uncovered[i] == 0) ++i;
    if (i == m) return true;
    if (depth == 0) return false;
    const unsigned j = static_cast<unsigned>(std::countr_zero(uncovered[i]));
    for (auto [rows, cols] : maximal) {
      if (!((rows >> i) & 1U) || !((cols >> j) & 1U)) continue;
      std::vector<unsigned> saved = uncovered;
      for (std::size_t r = 0; r < m; ++r)
        if ((rows >> r) & 1U) uncovered[r] &= ~cols;
      if (self(self, depth - 1)) return true;
      uncovered = std::move(saved);
    }
    return false;
  };
  for (std::size_t k = 0;; ++k) {
    uncovered = row_support;
    if (search(search, k)) return k;
  }
}

}  // namespace testsupport

#endif  // EFBOUND_TESTS_SUPPORT_HPP
