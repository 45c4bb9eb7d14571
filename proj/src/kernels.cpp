#include "efbound/kernels.hpp"

#include <bit>

#include "efbound/encodings.hpp"
#include "efbound/parallel.hpp"

namespace efbound::kernels {
namespace {

Rational hard_value(Subset a, Subset b) {
  const int meet = std::popcount(a & b);
  return Rational((1 - meet) * (1 - meet));
}

Rational cor_value(const RationalMatrix& w, Subset b) {
  Rational v = 0;
  for (Subset i_bits = b; i_bits != 0; i_bits &= i_bits - 1) {
    const int i = std::countr_zero(i_bits);
    for (Subset j_bits = b; j_bits != 0; j_bits &= j_bits - 1) {
      const int j = std::countr_zero(j_bits);
      v += w(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return v;
}

RowColStats stats_for(const SubsetFunction& f, const SubsetFunction& g, const UdisjParams& params,
                      const PartitionT& t) {
  const Subset single = Subset{1} << t.i;
  RowColStats s;
  long r0 = 0, r1 = 0, c0 = 0, c1 = 0;
  // l-subsets of [n] \ T2 = T1 + i, split by whether they contain i.
  for (Subset a : subsets_of_size(params.n(), params.ell(), t.t1 | single)) {
    if (a & single) {
      s.row1 += f(a);
      ++r1;
    } else {
      s.row0 += f(a);
      ++r0;
    }
  }
  for (Subset b : subsets_of_size(params.n(), params.ell(), t.t2 | single)) {
    if (b & single) {
      s.col1 += g(b);
      ++c1;
    } else {
      s.col0 += g(b);
      ++c0;
    }
  }
  s.row0 /= r0;
  s.row1 /= r1;
  s.col0 /= c0;
  s.col1 /= c1;
  return s;
}

Rational corruption_of(const RectCounts& c, const ClassGrid& grid, const Rational& epsilon) {
  Rational pa(Integer(static_cast<unsigned long>(c.in_A)),
              Integer(static_cast<unsigned long>(grid.size_A)));
  Rational pb(Integer(static_cast<unsigned long>(c.in_B)),
              Integer(static_cast<unsigned long>(grid.size_B)));
  pa.canonicalize();
  pb.canonicalize();
  return (1 - epsilon) * pa - pb;
}

// Running best with smallest-index tie breaking, mergeable across threads.
struct ScanAccumulator {
  std::optional<std::size_t> best;
  Rational best_value;
  std::optional<std::size_t> clean;

  void offer(std::size_t idx, const Rational& value) {
    if (!best || value > best_value || (value == best_value && idx < *best)) {
      best = idx;
      best_value = value;
    }
  }
  void offer_clean(std::size_t idx, const std::vector<RectCounts>& counts) {
    if (counts[idx].in_B != 0) return;
    if (!clean || counts[idx].in_A > counts[*clean].in_A ||
        (counts[idx].in_A == counts[*clean].in_A && idx < *clean))
      clean = idx;
  }
  void merge(const ScanAccumulator& other, const std::vector<RectCounts>& counts) {
    if (other.best) offer(*other.best, other.best_value);
    if (other.clean) offer_clean(*other.clean, counts);
  }
};

}  // namespace

PairCheck psd_identity_serial(int n) {
  const Subset size = Subset{1} << n;
  std::vector<RationalMatrix> ts, us;
  for (Subset a = 0; a < size; ++a) ts.push_back(psd_T(a, n));
  for (Subset b = 0; b < size; ++b) us.push_back(psd_U(b, n));
  PairCheck out;
  for (Subset a = 0; a < size; ++a) {
    for (Subset b = 0; b < size; ++b) {
      ++out.checked;
      if (frobenius(ts[a], us[b]) != hard_value(a, b)) {
        if (!out.first_failure) out.first_failure = {a, b};
        ++out.failures;
      }
    }
  }
  return out;
}

PairCheck psd_identity_omp(int n) {
  const Subset size = Subset{1} << n;
  std::vector<RationalMatrix> ts(size), us(size);
  const long long count = size;
#pragma omp parallel for schedule(static) num_threads(thread_limit())
  for (long long k = 0; k < count; ++k) {
    ts[static_cast<std::size_t>(k)] = psd_T(static_cast<Subset>(k), n);
    us[static_cast<std::size_t>(k)] = psd_U(static_cast<Subset>(k), n);
  }

  std::vector<std::uint64_t> failures(size, 0);
  std::vector<std::optional<Subset>> first_b(size);
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_limit())
  for (long long k = 0; k < count; ++k) {
    const auto a = static_cast<Subset>(k);
    for (Subset b = 0; b < size; ++b) {
      if (frobenius(ts[a], us[b]) != hard_value(a, b)) {
        if (!first_b[a]) first_b[a] = b;
        ++failures[a];
      }
    }
  }
  PairCheck out;
  out.checked = static_cast<std::uint64_t>(size) * size;
  for (Subset a = 0; a < size; ++a) {
    out.failures += failures[a];
    if (!out.first_failure && first_b[a]) out.first_failure = {a, *first_b[a]};
  }
  return out;
}

CorMax max_over_cor_serial(const RationalMatrix& w) {
  const int n = static_cast<int>(w.rows());
  CorMax out;
  out.value = 0;  // b = 0
  out.argmax = 0;
  for (Subset b = 1; b < (Subset{1} << n); ++b) {
    Rational v = cor_value(w, b);
    if (v > out.value) {
      out.value = v;
      out.argmax = b;
    }
  }
  return out;
}

CorMax max_over_cor_omp(const RationalMatrix& w) {
  const int n = static_cast<int>(w.rows());
  const long long count = static_cast<long long>(Subset{1} << n);
  CorMax out;
  out.value = 0;
  out.argmax = 0;
#pragma omp parallel num_threads(thread_limit())
  {
    CorMax local;
    local.value = 0;
    local.argmax = 0;
#pragma omp for schedule(static) nowait
    for (long long k = 1; k < count; ++k) {
      const auto b = static_cast<Subset>(k);
      Rational v = cor_value(w, b);
      if (v > local.value || (v == local.value && b < local.argmax && local.argmax != 0)) {
        local.value = v;
        local.argmax = b;
      }
    }
#pragma omp critical(efbound_cor_max)
    {
      if (local.value > out.value ||
          (local.value == out.value && local.argmax < out.argmax))
        out = local;
    }
  }
  // b = 0 attains 0; any other maximizer of value 0 has a larger index.
  if (out.value == 0) out.argmax = 0;
  return out;
}

std::vector<RowColStats> partition_stats_serial(const SubsetFunction& f, const SubsetFunction& g,
                                                const UdisjParams& params,
                                                const std::vector<PartitionT>& parts) {
  std::vector<RowColStats> out;
  out.reserve(parts.size());
  for (const auto& t : parts) out.push_back(stats_for(f, g, params, t));
  return out;
}

std::vector<RowColStats> partition_stats_omp(const SubsetFunction& f, const SubsetFunction& g,
                                             const UdisjParams& params,
                                             const std::vector<PartitionT>& parts) {
  std::vector<RowColStats> out(parts.size());
  const long long count = static_cast<long long>(parts.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_limit())
  for (long long k = 0; k < count; ++k)
    out[static_cast<std::size_t>(k)] = stats_for(f, g, params, parts[static_cast<std::size_t>(k)]);
  return out;
}

ClassGrid class_grid(const UdisjParams& params, const std::vector<Subset>& ell_subsets) {
  (void)params;
  ClassGrid grid;
  const std::size_t k = ell_subsets.size();
  grid.a_adj.assign(k, 0);
  grid.b_adj.assign(k, 0);
  for (std::size_t ia = 0; ia < k; ++ia) {
    for (std::size_t ib = 0; ib < k; ++ib) {
      const int meet = std::popcount(ell_subsets[ia] & ell_subsets[ib]);
      if (meet == 0) {
        grid.a_adj[ia] |= std::uint64_t{1} << ib;
        ++grid.size_A;
      } else if (meet == 1) {
        grid.b_adj[ia] |= std::uint64_t{1} << ib;
        ++grid.size_B;
      }
    }
  }
  return grid;
}

RectCounts count_rectangle(const ClassGrid& grid, const Rectangle& rect) {
  RectCounts c;
  for (std::uint64_t rows = rect.rows; rows != 0; rows &= rows - 1) {
    const auto ia = static_cast<std::size_t>(std::countr_zero(rows));
    c.in_A += static_cast<std::uint64_t>(std::popcount(grid.a_adj[ia] & rect.cols));
    c.in_B += static_cast<std::uint64_t>(std::popcount(grid.b_adj[ia] & rect.cols));
  }
  return c;
}

ScanBest scan_rectangles_serial(const ClassGrid& grid, const std::vector<Rectangle>& rects,
                                const Rational& epsilon) {
  ScanBest out;
  out.counts.resize(rects.size());
  ScanAccumulator acc;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    out.counts[i] = count_rectangle(grid, rects[i]);
    acc.offer(i, corruption_of(out.counts[i], grid, epsilon));
    acc.offer_clean(i, out.counts);
  }
  out.best = acc.best.value_or(0);
  out.clean_best = acc.clean;
  return out;
}

ScanBest scan_rectangles_omp(const ClassGrid& grid, const std::vector<Rectangle>& rects,
                             const Rational& epsilon) {
  ScanBest out;
  out.counts.resize(rects.size());
  ScanAccumulator total;
  const long long count = static_cast<long long>(rects.size());
#pragma omp parallel num_threads(thread_limit())
  {
    ScanAccumulator local;
#pragma omp for schedule(static)
    for (long long k = 0; k < count; ++k) {
      const auto i = static_cast<std::size_t>(k);
      out.counts[i] = count_rectangle(grid, rects[i]);
      local.offer(i, corruption_of(out.counts[i], grid, epsilon));
      local.offer_clean(i, out.counts);
    }
    // The implicit barrier above makes every count visible before merging.
#pragma omp critical(efbound_scan_merge)
    total.merge(local, out.counts);
  }
  out.best = total.best.value_or(0);
  out.clean_best = total.clean;
  return out;
}

}  // namespace efbound::kernels
