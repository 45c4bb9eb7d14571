#ifndef EFBOUND_MATRIX_HPP
#define EFBOUND_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "efbound/rational.hpp"

namespace efbound {

// Dense row-major matrix of exact rationals. Zero-row and zero-column shapes
// are valid (an EF with no auxiliary variables has an m x 0 F block).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  // Convenience for fixtures: every row must have the same length.
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows,
                                  std::size_t cols_if_empty = 0);
  static RationalMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows);
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix column(std::span<const Rational> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const Rational> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<Rational> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  RationalVector col(std::size_t j) const;

  const std::vector<Rational>& entries() const { return entries_; }

  RationalMatrix transpose() const;
  RationalMatrix scaled(const Rational& factor) const;
  // Horizontal / vertical concatenation; shapes must agree on the shared side.
  RationalMatrix hconcat(const RationalMatrix& right) const;
  RationalMatrix vconcat(const RationalMatrix& below) const;
  RationalMatrix select_rows(std::span<const std::size_t> which) const;
  RationalMatrix select_cols(std::span<const std::size_t> which) const;

  bool is_nonnegative() const;
  bool is_zero() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);

RationalVector mat_vec(const RationalMatrix& a, std::span<const Rational> x);
RationalVector vec_mat(std::span<const Rational> y, const RationalMatrix& a);

// Rank over Q by Bareiss fraction-free elimination on the row-scaled integer
// matrix.
std::size_t mat_rank(const RationalMatrix& m);

}  // namespace efbound

#endif  // EFBOUND_MATRIX_HPP
