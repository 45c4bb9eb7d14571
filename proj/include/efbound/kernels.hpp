#ifndef EFBOUND_KERNELS_HPP
#define EFBOUND_KERNELS_HPP

// Data-parallel inner loops. Each kernel has a plain serial version, kept as
// the reference the OpenMP version is tested against, and an OpenMP version
// used by the library. Both return identical results (ties are broken by
// smallest index, sums are exact).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "efbound/matrix.hpp"
#include "efbound/udisj.hpp"

namespace efbound::kernels {

struct PairCheck {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::optional<std::pair<Subset, Subset>> first_failure;  // smallest (a, b)
};

// <T_a, U^b> = (1 - a.b)^2 over all a, b in {0,1}^n, by explicit Frobenius
// products of the (n+1)x(n+1) factor matrices.
PairCheck psd_identity_serial(int n);
PairCheck psd_identity_omp(int n);

struct CorMax {
  Rational value;
  Subset argmax = 0;  // smallest maximizing b
};

// max over b in {0,1}^n of <w, b b^T>.
CorMax max_over_cor_serial(const RationalMatrix& w);
CorMax max_over_cor_omp(const RationalMatrix& w);

// Row0/Row1/Col0/Col1 for every partition in `parts`.
std::vector<RowColStats> partition_stats_serial(const SubsetFunction& f, const SubsetFunction& g,
                                                const UdisjParams& params,
                                                const std::vector<PartitionT>& parts);
std::vector<RowColStats> partition_stats_omp(const SubsetFunction& f, const SubsetFunction& g,
                                             const UdisjParams& params,
                                             const std::vector<PartitionT>& parts);

// Incidence of the classes A and B on the l-subset grid: bit ib of a_adj[ia]
// is set iff (subset ia, subset ib) is in A (resp. B).
struct ClassGrid {
  std::vector<std::uint64_t> a_adj;
  std::vector<std::uint64_t> b_adj;
  std::uint64_t size_A = 0;
  std::uint64_t size_B = 0;
};

ClassGrid class_grid(const UdisjParams& params, const std::vector<Subset>& ell_subsets);

struct RectCounts {
  std::uint64_t in_A = 0;
  std::uint64_t in_B = 0;
};

RectCounts count_rectangle(const ClassGrid& grid, const Rectangle& rect);

struct ScanBest {
  std::size_t best = 0;                   // index into the rectangle list
  std::optional<std::size_t> clean_best;  // best P(R|A) among P(R|B) = 0
  std::vector<RectCounts> counts;         // per rectangle
};

// Scores `rects` (corruption = (1-eps) P(R|A) - P(R|B)).
ScanBest scan_rectangles_serial(const ClassGrid& grid, const std::vector<Rectangle>& rects,
                                const Rational& epsilon);
ScanBest scan_rectangles_omp(const ClassGrid& grid, const std::vector<Rectangle>& rects,
                             const Rational& epsilon);

}  // namespace efbound::kernels

#endif  // EFBOUND_KERNELS_HPP
