#include "efbound/udisj.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "efbound/budget.hpp"
#include "efbound/error.hpp"
#include "efbound/kernels.hpp"

namespace efbound {

int popcount(Subset s) { return std::popcount(s); }

std::vector<Subset> subsets_of_size(int n, int k, Subset within) {
  std::vector<Subset> out;
  const Subset limit = Subset{1} << n;
  for (Subset s = 0; s < limit; ++s)
    if ((s & ~within) == 0 && popcount(s) == k) out.push_back(s);
  return out;
}

UdisjParams::UdisjParams(int n) : n_(n), ell_(0) {
  if (n < 3 || n % 4 != 3) throw InputError("udisj: n must satisfy n = 3 (mod 4)");
  if (n > 27) throw BudgetError("udisj: n too large for subset enumeration");
  ell_ = (n + 1) / 4;
}

bool PartitionT::valid_for(const UdisjParams& params) const {
  const Subset full = (Subset{1} << params.n()) - 1;
  if (i < 0 || i >= params.n()) return false;
  const Subset single = Subset{1} << i;
  if ((t1 & t2) != 0 || (t1 & single) != 0 || (t2 & single) != 0) return false;
  if ((t1 | t2 | single) != full) return false;
  return popcount(t1) == params.part_size() && popcount(t2) == params.part_size();
}

SubsetFunction SubsetFunction::constant(int n, const Rational& value) {
  return {n, RationalVector(std::size_t{1} << n, value)};
}

SubsetFunction SubsetFunction::indicator_of(int n, Subset target) {
  SubsetFunction f = constant(n, Rational(0));
  f.values[target] = 1;
  return f;
}

SubsetFunction SubsetFunction::containing(int n, int element) {
  SubsetFunction f = constant(n, Rational(0));
  const Subset bit = Subset{1} << (element - 1);
  for (Subset s = 0; s < f.values.size(); ++s)
    if (s & bit) f.values[s] = 1;
  return f;
}

SubsetFunction SubsetFunction::avoiding(int n, int element) {
  SubsetFunction f = constant(n, Rational(0));
  const Subset bit = Subset{1} << (element - 1);
  for (Subset s = 0; s < f.values.size(); ++s)
    if (!(s & bit)) f.values[s] = 1;
  return f;
}

// ---------------------------------------------------------------------------

RationalMatrix build_shift(const ShiftSpec& spec, int limit) {
  if (spec.n < 0) throw InputError("build_shift: n must be nonnegative");
  if (spec.n > limit) throw BudgetError("build_shift: n exceeds the enumeration limit");
  if (spec.rho < 1) throw InputError("build_shift: rho must be >= 1");
  const std::size_t size = std::size_t{1} << spec.n;
  RationalMatrix m(size, size);
  const Rational shift = spec.rho - 1;
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      const int meet = popcount(static_cast<Subset>(a & b));
      if (meet == 0)
        m(a, b) = spec.rho;
      else if (meet == 1)
        m(a, b) = shift;
      else if (spec.constant_fill)
        m(a, b) = *spec.constant_fill;
      else
        m(a, b) = Rational((1 - meet) * (1 - meet)) + shift;
    }
  }
  return m;
}

PairLists enum_classes(const UdisjParams& params) {
  const Subset full = (Subset{1} << params.n()) - 1;
  auto subsets = subsets_of_size(params.n(), params.ell(), full);
  PairLists out;
  for (Subset a : subsets) {
    for (Subset b : subsets) {
      const int meet = popcount(a & b);
      if (meet == 0)
        out.A.emplace_back(a, b);
      else if (meet == 1)
        out.B.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<PartitionT> all_partitions(const UdisjParams& params) {
  const int n = params.n();
  const Subset full = (Subset{1} << n) - 1;
  std::vector<PartitionT> out;
  for (int i = 0; i < n; ++i) {
    const Subset rest = full & ~(Subset{1} << i);
    for (Subset t1 : subsets_of_size(n, params.part_size(), rest))
      out.push_back({t1, rest & ~t1, i});
  }
  return out;
}

ClassProbabilities mu_class_probabilities(const UdisjParams& params) {
  // Every (T, a, b) triple carries the same weight, so probabilities are
  // ratios of triple counts.
  std::map<std::pair<Subset, Subset>, std::uint64_t> hits;
  std::uint64_t total = 0;
  for (const auto& t : all_partitions(params)) {
    const Subset single = Subset{1} << t.i;
    auto as = subsets_of_size(params.n(), params.ell(), t.t1 | single);
    auto bs = subsets_of_size(params.n(), params.ell(), t.t2 | single);
    for (Subset a : as)
      for (Subset b : bs) {
        ++hits[{a, b}];
        ++total;
      }
    budget::check("mu_class_probabilities");
  }

  ClassProbabilities out;
  std::uint64_t in_A = 0, in_B = 0;
  std::optional<std::uint64_t> weight_A, weight_B;
  out.supported_on_union = true;
  out.uniform_within_classes = true;
  for (const auto& [pair, count] : hits) {
    const int meet = popcount(pair.first & pair.second);
    const bool sized =
        popcount(pair.first) == params.ell() && popcount(pair.second) == params.ell();
    if (!sized || meet > 1) {
      out.supported_on_union = false;
      continue;
    }
    auto& weight = meet == 0 ? weight_A : weight_B;
    if (!weight) weight = count;
    if (*weight != count) out.uniform_within_classes = false;
    (meet == 0 ? in_A : in_B) += count;
  }
  // Every pair of each class must actually be reached.
  PairLists lists = enum_classes(params);
  std::size_t reached_A = 0, reached_B = 0;
  for (const auto& [pair, count] : hits) {
    const int meet = popcount(pair.first & pair.second);
    if (meet == 0) ++reached_A;
    if (meet == 1) ++reached_B;
  }
  if (reached_A != lists.A.size() || reached_B != lists.B.size())
    out.uniform_within_classes = false;

  out.A = Rational(Integer(static_cast<unsigned long>(in_A)), Integer(static_cast<unsigned long>(total)));
  out.B = Rational(Integer(static_cast<unsigned long>(in_B)), Integer(static_cast<unsigned long>(total)));
  out.A.canonicalize();
  out.B.canonicalize();
  return out;
}

namespace {

void require_nonnegative(const SubsetFunction& f, const UdisjParams& params, const char* name) {
  if (f.n != params.n() || f.values.size() != (std::size_t{1} << params.n()))
    throw InputError(std::string("udisj: function ") + name + " has the wrong ground set");
  for (const auto& v : f.values)
    if (sgn(v) < 0) throw InputError(std::string("udisj: function ") + name + " is negative");
}

Rational average_product(const std::vector<std::pair<Subset, Subset>>& pairs,
                         const SubsetFunction& f, const SubsetFunction& g) {
  Rational sum = 0;
  for (const auto& [a, b] : pairs) sum += f(a) * g(b);
  return sum / static_cast<long>(pairs.size());
}

}  // namespace

ClassExpectations cond_expect(const SubsetFunction& f, const SubsetFunction& g,
                              const UdisjParams& params) {
  require_nonnegative(f, params, "f");
  require_nonnegative(g, params, "g");
  PairLists lists = enum_classes(params);
  return {average_product(lists.A, f, g), average_product(lists.B, f, g)};
}

RowColStats row_col_stats(const SubsetFunction& f, const SubsetFunction& g, const PartitionT& t,
                          const UdisjParams& params) {
  if (!t.valid_for(params)) throw InputError("row_col_stats: T is not a valid partition");
  require_nonnegative(f, params, "f");
  require_nonnegative(g, params, "g");
  return kernels::partition_stats_serial(f, g, params, {t}).front();
}

IdentityReport razborov_identities(const SubsetFunction& f, const SubsetFunction& g,
                                   const UdisjParams& params, bool parallel) {
  require_nonnegative(f, params, "f");
  require_nonnegative(g, params, "g");
  IdentityReport report;
  report.direct = cond_expect(f, g, params);

  const auto parts = all_partitions(params);
  const auto stats = parallel ? kernels::partition_stats_omp(f, g, params, parts)
                              : kernels::partition_stats_serial(f, g, params, parts);
  budget::check("razborov_identities");

  Rational sum00 = 0, sum11 = 0;
  std::map<Subset, std::pair<Rational, Rational>> by_t2;  // (sum Row0, sum Row1)
  report.half_sum_identity = true;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& s = stats[k];
    const auto& t = parts[k];
    sum00 += s.row0 * s.col0;
    sum11 += s.row1 * s.col1;
    auto& acc = by_t2[t.t2];
    acc.first += s.row0;
    acc.second += s.row1;

    // E[f(a) | T] straight from the uniform l-subsets of T1 + i.
    const Subset single = Subset{1} << t.i;
    auto as = subsets_of_size(params.n(), params.ell(), t.t1 | single);
    auto bs = subsets_of_size(params.n(), params.ell(), t.t2 | single);
    Rational ef = 0, eg = 0;
    for (Subset a : as) ef += f(a);
    for (Subset b : bs) eg += g(b);
    ef /= static_cast<long>(as.size());
    eg /= static_cast<long>(bs.size());
    if ((s.row0 + s.row1) / 2 != ef || (s.col0 + s.col1) / 2 != eg)
      report.half_sum_identity = false;
  }
  const long count = static_cast<long>(parts.size());
  report.row0_col0 = sum00 / count;
  report.row1_col1 = sum11 / count;
  report.marginal_identity = true;
  for (const auto& [t2, sums] : by_t2)
    if (sums.first != sums.second) report.marginal_identity = false;
  return report;
}

// ---------------------------------------------------------------------------

double binary_entropy(double x) {
  if (!(x > 0.0 && x < 1.0)) throw InputError("binary_entropy: x must lie in (0, 1)");
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double entropy_gap(double x) {
  if (!(x > 0.0 && x < 1.0)) throw InputError("entropy_gap: x must lie in (0, 1)");
  const double d = 1.0 - 2.0 * x;
  return (1.0 - binary_entropy(x)) - d * d / (2.0 * std::numbers::ln2);
}

double corruption_rhs(const CorruptionParams& p, double ell) {
  if (ell < 1) throw InputError("corruption_rhs: l must be >= 1");
  const double eps = p.epsilon;
  return std::exp2(-eps * eps * ell / (16.0 * std::numbers::ln2) + p.C * std::log2(ell));
}

double shift_rank_lb(int n, const Rational& rho, std::optional<double> epsilon, double C) {
  if (n < 3) throw InputError("shift_rank_lb: n must be >= 3");
  if (rho < 1) throw InputError("shift_rank_lb: rho must be >= 1");
  if (C < 0) throw InputError("shift_rank_lb: C must be >= 0");
  const double r = rho.get_d();
  const double eps = epsilon.value_or(1.0 / (2.0 * r));
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("shift_rank_lb: epsilon must lie in (0, 1)");
  if (eps >= 1.0 / r) throw InputError("shift_rank_lb: epsilon >= 1/rho makes the bound vacuous");
  // Largest n' <= n with n' = 3 (mod 4) carries a rho-extension as a submatrix.
  const double ell = static_cast<double>((n + 1) / 4);
  const double value =
      (1.0 / r - eps) * std::exp2(eps * eps * ell / (16.0 * std::numbers::ln2) - C * std::log2(ell));
  return std::max(1.0, value);
}

// ---------------------------------------------------------------------------

RectangleScore score_rectangle(const UdisjParams& params, const std::vector<Subset>& ell_subsets,
                               const Rectangle& rect, const Rational& epsilon) {
  auto grid = kernels::class_grid(params, ell_subsets);
  auto counts = kernels::count_rectangle(grid, rect);
  RectangleScore s;
  s.rect = rect;
  s.p_given_A = Rational(Integer(static_cast<unsigned long>(counts.in_A)),
                         Integer(static_cast<unsigned long>(grid.size_A)));
  s.p_given_B = Rational(Integer(static_cast<unsigned long>(counts.in_B)),
                         Integer(static_cast<unsigned long>(grid.size_B)));
  s.p_given_A.canonicalize();
  s.p_given_B.canonicalize();
  s.corruption = (1 - epsilon) * s.p_given_A - s.p_given_B;
  return s;
}

ScanReport rectangle_corruption_scan(const UdisjParams& params, const Rational& epsilon,
                                     const ScanConfig& config) {
  if (!(epsilon > 0 && epsilon < 1)) throw InputError("corruption scan: epsilon must lie in (0, 1)");
  const Subset full = (Subset{1} << params.n()) - 1;
  ScanReport report;
  report.ell_subsets = subsets_of_size(params.n(), params.ell(), full);
  const std::size_t k = report.ell_subsets.size();
  if (k > 32) throw BudgetError("corruption scan: too many l-subsets for rectangle masks");

  std::vector<Rectangle> rects;
  if (config.mode == ScanMode::exhaustive) {
    if (k > config.max_exhaustive_subsets)
      throw BudgetError("corruption scan: exhaustive mode exceeds the rectangle budget");
    const std::uint64_t side = std::uint64_t{1} << k;
    rects.reserve(side * side);
    for (std::uint64_t r = 0; r < side; ++r)
      for (std::uint64_t c = 0; c < side; ++c) rects.push_back({r, c});
  } else {
    std::mt19937_64 rng(config.seed);
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    rects.reserve(config.samples);
    for (std::size_t s = 0; s < config.samples; ++s) {
      std::uint64_t r = rng() & mask;
      std::uint64_t c = rng() & mask;
      rects.push_back({r, c});
    }
  }

  const auto grid = kernels::class_grid(params, report.ell_subsets);
  const auto scan = config.parallel ? kernels::scan_rectangles_omp(grid, rects, epsilon)
                                    : kernels::scan_rectangles_serial(grid, rects, epsilon);
  budget::check("rectangle_corruption_scan");

  auto score = [&](std::size_t idx) {
    RectangleScore s;
    s.rect = rects[idx];
    s.p_given_A = Rational(Integer(static_cast<unsigned long>(scan.counts[idx].in_A)),
                           Integer(static_cast<unsigned long>(grid.size_A)));
    s.p_given_B = Rational(Integer(static_cast<unsigned long>(scan.counts[idx].in_B)),
                           Integer(static_cast<unsigned long>(grid.size_B)));
    s.p_given_A.canonicalize();
    s.p_given_B.canonicalize();
    s.corruption = (1 - epsilon) * s.p_given_A - s.p_given_B;
    return s;
  };
  report.scanned = rects.size();
  report.best = score(scan.best);
  if (config.mode == ScanMode::exhaustive && scan.clean_best) {
    RectangleScore clean = score(*scan.clean_best);
    report.max_clean_A = clean.p_given_A;
    report.max_clean_rect = clean.rect;
  }
  if (config.keep_rows) {
    report.rows.reserve(rects.size());
    for (std::size_t i = 0; i < rects.size(); ++i) report.rows.push_back(score(i));
  }
  return report;
}

}  // namespace efbound
