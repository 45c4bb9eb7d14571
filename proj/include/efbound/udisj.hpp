#ifndef EFBOUND_UDISJ_HPP
#define EFBOUND_UDISJ_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efbound/matrix.hpp"

namespace efbound {

// Subsets of [n] are bitmasks with element 1 in the least significant bit.
using Subset = std::uint32_t;

// n = 4l - 1 for the corruption-lemma operations.
class UdisjParams {
 public:
  explicit UdisjParams(int n);
  int n() const { return n_; }
  int ell() const { return ell_; }
  int part_size() const { return 2 * ell_ - 1; }

 private:
  int n_;
  int ell_;
};

enum class PairClass { A, B };

struct PairLists {
  std::vector<std::pair<Subset, Subset>> A;  // |a|=|b|=l, a and b disjoint
  std::vector<std::pair<Subset, Subset>> B;  // |a|=|b|=l, |a & b| = 1
};

// T1, T2 of size 2l-1 and the singleton i; the three partition [n].
struct PartitionT {
  Subset t1 = 0;
  Subset t2 = 0;
  int i = 0;  // 0-based element index

  bool valid_for(const UdisjParams& params) const;
};

// A nonnegative rational function on 2^[n], stored densely by bitmask.
struct SubsetFunction {
  int n = 0;
  RationalVector values;

  const Rational& operator()(Subset s) const { return values[s]; }

  static SubsetFunction constant(int n, const Rational& value);
  static SubsetFunction indicator_of(int n, Subset target);
  static SubsetFunction containing(int n, int element);  // 1-based element
  static SubsetFunction avoiding(int n, int element);    // 1-based element
};

struct RowColStats {
  Rational row0, row1, col0, col1;
};

struct ClassExpectations {
  Rational given_A;
  Rational given_B;
};

struct ClassProbabilities {
  Rational A;
  Rational B;
  bool supported_on_union = false;    // no mass outside A u B
  bool uniform_within_classes = false;
};

struct ShiftSpec {
  int n = 0;
  Rational rho{1};
  // Value for pairs with |a & b| >= 2; unset selects (1 - |a & b|)^2 + rho - 1.
  std::optional<Rational> constant_fill;
};

struct CorruptionParams {
  double epsilon = 0.5;
  double C = 0.0;  // coefficient of the log2(l) term
};

struct IdentityReport {
  ClassExpectations direct;      // averages over A and over B
  Rational row0_col0;            // E_T[Row0 Col0]
  Rational row1_col1;            // E_T[Row1 Col1]
  bool marginal_identity = false;  // E[Row0 | T2] = E[Row1 | T2] for every T2
  bool half_sum_identity = false;  // (Row0 + Row1)/2 = E[f(a) | T] for every T

  bool holds() const {
    return direct.given_A == row0_col0 && direct.given_B == row1_col1 && marginal_identity &&
           half_sum_identity;
  }
};

struct Rectangle {
  std::uint64_t rows = 0;  // bitmask over the l-subset list
  std::uint64_t cols = 0;
};

struct RectangleScore {
  Rectangle rect;
  Rational p_given_A;
  Rational p_given_B;
  Rational corruption;  // (1 - eps) P(R|A) - P(R|B)
};

enum class ScanMode { exhaustive, sample };

struct ScanConfig {
  ScanMode mode = ScanMode::exhaustive;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t max_exhaustive_subsets = 10;  // l-subset count limit for exhaustive
  bool keep_rows = false;                   // retain every scored rectangle
  bool parallel = true;
};

struct ScanReport {
  RectangleScore best;
  // exhaustive only: max P(R|A) over rectangles with P(R|B) = 0
  std::optional<Rational> max_clean_A;
  std::optional<Rectangle> max_clean_rect;
  std::vector<Subset> ell_subsets;  // row/column labels, index order
  std::vector<RectangleScore> rows; // when keep_rows
  std::size_t scanned = 0;
};

inline constexpr int kDefaultShiftLimit = 11;

RationalMatrix build_shift(const ShiftSpec& spec, int limit = kDefaultShiftLimit);

PairLists enum_classes(const UdisjParams& params);

// Enumerates every (T, a, b) of the T-based construction of mu.
ClassProbabilities mu_class_probabilities(const UdisjParams& params);

ClassExpectations cond_expect(const SubsetFunction& f, const SubsetFunction& g,
                              const UdisjParams& params);

RowColStats row_col_stats(const SubsetFunction& f, const SubsetFunction& g,
                          const PartitionT& t, const UdisjParams& params);

// Every ordered partition (T1, T2, {i}).
std::vector<PartitionT> all_partitions(const UdisjParams& params);

IdentityReport razborov_identities(const SubsetFunction& f, const SubsetFunction& g,
                                   const UdisjParams& params, bool parallel = true);

double binary_entropy(double x);
// (1 - H(x)) - (1 - 2x)^2 / (2 ln 2); x in (0, 1).
double entropy_gap(double x);

// 2^(-eps^2 l / (16 ln 2) + C log2 l)
double corruption_rhs(const CorruptionParams& p, double ell);

// (1/rho - eps) 2^(eps^2 l / (16 ln 2) - C log2 l), clamped below at 1, with
// l = floor((n+1)/4). Without eps, uses eps = 1/(2 rho).
double shift_rank_lb(int n, const Rational& rho, std::optional<double> epsilon, double C);

ScanReport rectangle_corruption_scan(const UdisjParams& params, const Rational& epsilon,
                                     const ScanConfig& config = {});

// Score of one rectangle given as row/col masks over the l-subset list.
RectangleScore score_rectangle(const UdisjParams& params, const std::vector<Subset>& ell_subsets,
                               const Rectangle& rect, const Rational& epsilon);

std::vector<Subset> subsets_of_size(int n, int k, Subset within);
int popcount(Subset s);

}  // namespace efbound

#endif  // EFBOUND_UDISJ_HPP
