#include "efbound/nnfact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <random>
#include <set>

#include "efbound/budget.hpp"
#include "efbound/error.hpp"
#include "efbound/lp.hpp"
#include "efbound/parallel.hpp"

namespace efbound {

FactorizationCheck verify_factorization(const RationalMatrix& s, const NonnegFactorization& fac) {
  if (fac.T.rows() != s.rows() || fac.U.cols() != s.cols() || fac.T.cols() != fac.U.rows())
    throw InputError("verify_factorization: shapes of S, T, U do not agree");
  FactorizationCheck out;
  auto first_negative = [&](const RationalMatrix& m, char name) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (sgn(m(i, j)) < 0) {
          out.matrix = name;
          out.row = i;
          out.col = j;
          out.reason = std::string("negative entry in ") + name;
          return true;
        }
    return false;
  };
  if (first_negative(fac.T, 'T') || first_negative(fac.U, 'U')) return out;
  RationalMatrix prod = fac.T * fac.U;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (prod(i, j) != s(i, j)) {
        out.matrix = 'S';
        out.row = i;
        out.col = j;
        out.reason = "T*U differs from S";
        return out;
      }
  out.ok = true;
  return out;
}

ExtendedFormulation factorization_to_ef(const HRep& q, const NonnegFactorization& fac) {
  if (fac.T.rows() != q.num_rows())
    throw InputError("factorization_to_ef: T must have one row per inequality of Q");
  return ExtendedFormulation(q.A, fac.T, q.b);
}

EfToFactorizationResult ef_to_factorization(const ExtendedFormulation& k, const VRep& p,
                                            const HRep& q) {
  SandwichReport report = verify_sandwich(p, q, Rational(1), k);
  if (!report.ok()) throw SandwichFailure("ef_to_factorization: P subset K subset Q fails", report);

  const std::size_t m = q.num_rows();
  const std::size_t n = p.num_points();
  const std::size_t kr = p.num_rays();
  const RationalMatrix slack = build_slack(p, q).full();

  EfToFactorizationResult out;
  if (report.outer.k_empty) {
    // Only possible with no generators; the slack matrix has no columns.
    out.factorization = {RationalMatrix(m, 0), RationalMatrix(0, n + kr)};
    out.zero_offset = true;
  } else {
    DerivationOptions strict;
    strict.require_zero_offset = true;
    DerivationResult zero = ef_inside_hrep(k, q, strict);
    const DerivationResult& deriv = zero.contained ? zero : report.outer;
    out.zero_offset = zero.contained;

    RationalMatrix tf = deriv.multipliers * k.F;
    RationalMatrix wz = report.inner.point_witnesses.hconcat(report.inner.ray_witnesses);
    if (out.zero_offset) {
      out.factorization = {std::move(tf), std::move(wz)};
    } else {
      RationalMatrix ones(1, n + kr);
      for (std::size_t j = 0; j < n; ++j) ones(0, j) = 1;
      out.factorization = {tf.hconcat(RationalMatrix::column(deriv.offsets)), wz.vconcat(ones)};
    }
  }
  if (!verify_factorization(slack, out.factorization))
    throw InternalError("ef_to_factorization: product does not reproduce the slack matrix");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Bits = boost::dynamic_bitset<>;

struct CoverProblem {
  std::size_t cells = 0;
  std::vector<Bits> rect_cells;  // per rectangle: covered cells
  std::vector<Bits> cell_rects;  // per cell: rectangles covering it
};

// Cells that pairwise share no rectangle each need their own rectangle.
std::size_t independent_cells(const CoverProblem& cp, const Bits& uncovered) {
  Bits blocked(cp.rect_cells.size());
  std::size_t count = 0;
  for (auto c = uncovered.find_first(); c != Bits::npos; c = uncovered.find_next(c)) {
    if (!cp.cell_rects[c].intersects(blocked)) {
      ++count;
      blocked |= cp.cell_rects[c];
    }
  }
  return count;
}

class CoverSearch {
 public:
  CoverSearch(const CoverProblem& cp, std::uint64_t max_nodes) : cp_(cp), max_nodes_(max_nodes) {}

  std::size_t solve(std::size_t root_lb) {
    root_lb_ = root_lb;
    best_ = greedy();
    Bits uncovered(cp_.cells);
    uncovered.set();
    if (best_ > root_lb_) dfs(uncovered, 0);
    return best_;
  }

 private:
  std::size_t greedy() const {
    Bits uncovered(cp_.cells);
    uncovered.set();
    std::size_t used = 0;
    while (uncovered.any()) {
      std::size_t pick = 0, gain = 0;
      for (std::size_t r = 0; r < cp_.rect_cells.size(); ++r) {
        std::size_t g = (cp_.rect_cells[r] & uncovered).count();
        if (g > gain) {
          gain = g;
          pick = r;
        }
      }
      uncovered -= cp_.rect_cells[pick];
      ++used;
    }
    return used;
  }

  void dfs(const Bits& uncovered, std::size_t depth) {
    if (best_ == root_lb_) return;
    if (++nodes_ > max_nodes_)
      throw BudgetError("rect_cover_lb: branch-and-bound node budget exhausted",
                        static_cast<long long>(root_lb_));
    if ((nodes_ & 1023U) == 0) budget::check("rect_cover_lb");
    if (uncovered.none()) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + independent_cells(cp_, uncovered) >= best_) return;

    // Branch on the uncovered cell with the fewest covering rectangles.
    std::size_t cell = Bits::npos, fewest = 0;
    for (auto c = uncovered.find_first(); c != Bits::npos; c = uncovered.find_next(c)) {
      std::size_t cnt = cp_.cell_rects[c].count();
      if (cell == Bits::npos || cnt < fewest) {
        cell = c;
        fewest = cnt;
      }
    }
    const Bits& options = cp_.cell_rects[cell];
    for (auto r = options.find_first(); r != Bits::npos; r = options.find_next(r)) {
      dfs(uncovered - cp_.rect_cells[r], depth + 1);
      if (best_ == root_lb_) return;
    }
  }

  const CoverProblem& cp_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::size_t best_ = 0;
  std::size_t root_lb_ = 0;
};

}  // namespace

std::size_t rect_cover_lb(const RationalMatrix& s, const RectCoverConfig& config) {
  const std::size_t m = s.rows();
  const std::size_t n = s.cols();
  std::vector<Bits> row_support(m, Bits(n));
  std::vector<std::vector<std::size_t>> cell_index(m, std::vector<std::size_t>(n, Bits::npos));
  std::size_t cells = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(s(i, j)) != 0) {
        row_support[i].set(j);
        cell_index[i][j] = cells++;
      }
  if (cells == 0) return 0;

  // Maximal rectangles <-> nonempty intersections of row supports.
  std::set<Bits> closed;
  for (std::size_t i = 0; i < m; ++i) {
    if (row_support[i].none()) continue;
    std::vector<Bits> fresh{row_support[i]};
    for (const auto& c : closed) {
      Bits meet = c & row_support[i];
      if (meet.any()) fresh.push_back(std::move(meet));
    }
    for (auto& f : fresh) closed.insert(std::move(f));
    if (closed.size() > config.max_rectangles)
      throw BudgetError("rect_cover_lb: too many maximal rectangles");
    budget::check("rect_cover_lb");
  }

  CoverProblem cp;
  cp.cells = cells;
  for (const auto& cols : closed) {
    Bits covered(cells);
    for (std::size_t i = 0; i < m; ++i) {
      if (!cols.is_subset_of(row_support[i])) continue;
      for (auto j = cols.find_first(); j != Bits::npos; j = cols.find_next(j))
        covered.set(cell_index[i][j]);
    }
    cp.rect_cells.push_back(std::move(covered));
  }
  cp.cell_rects.assign(cells, Bits(cp.rect_cells.size()));
  for (std::size_t r = 0; r < cp.rect_cells.size(); ++r)
    for (auto c = cp.rect_cells[r].find_first(); c != Bits::npos; c = cp.rect_cells[r].find_next(c))
      cp.cell_rects[c].set(r);

  Bits all(cells);
  all.set();
  std::size_t root_lb = std::max<std::size_t>(1, independent_cells(cp, all));
  CoverSearch search(cp, config.max_nodes);
  return search.solve(root_lb);
}

// ---------------------------------------------------------------------------

std::string to_string(LowerWitness w) {
  return w == LowerWitness::rank ? "rank" : "rectangle-cover";
}

std::string to_string(UpperWitness w) {
  return w == UpperWitness::trivial ? "trivial" : "factorization";
}

NonnegFactorization trivial_factorization(const RationalMatrix& s) {
  if (s.rows() <= s.cols()) return {RationalMatrix::identity(s.rows()), s};
  return {s, RationalMatrix::identity(s.cols())};
}

namespace {

Eigen::MatrixXd to_double(const RationalMatrix& s) {
  Eigen::MatrixXd out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) out(i, j) = s(i, j).get_d();
  return out;
}

// Lee-Seung multiplicative updates for || V - W H ||_F.
void multiplicative_updates(const Eigen::MatrixXd& v, Eigen::MatrixXd& w, Eigen::MatrixXd& h,
                            int iterations) {
  constexpr double eps = 1e-12;
  for (int it = 0; it < iterations; ++it) {
    Eigen::MatrixXd num_h = w.transpose() * v;
    Eigen::MatrixXd den_h = w.transpose() * w * h;
    h = h.cwiseProduct(num_h.cwiseQuotient(den_h.array().max(eps).matrix()));
    Eigen::MatrixXd num_w = v * h.transpose();
    Eigen::MatrixXd den_w = w * h * h.transpose();
    w = w.cwiseProduct(num_w.cwiseQuotient(den_w.array().max(eps).matrix()));
  }
}

// Columns scaled to max 1, entries snapped to small-denominator rationals.
RationalMatrix round_columns(const Eigen::MatrixXd& w, long long max_den) {
  RationalMatrix out(static_cast<std::size_t>(w.rows()), static_cast<std::size_t>(w.cols()));
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    double top = w.col(j).maxCoeff();
    if (top <= 0) continue;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      double v = w(i, j) / top;
      if (v < 1e-6) continue;
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = approximate(v, max_den);
    }
  }
  return out;
}

// Solves T U = S, U >= 0 exactly column by column.
std::optional<RationalMatrix> solve_right_factor(const RationalMatrix& t, const RationalMatrix& s) {
  const std::size_t r = t.cols();
  RationalMatrix u(r, s.cols());
  for (std::size_t j = 0; j < s.cols(); ++j) {
    LpProblem lp;
    lp.A = RationalMatrix(0, r);
    lp.Aeq = t;
    lp.beq = s.col(j);
    lp.c.assign(r, Rational(0));
    lp.nonneg.assign(r, true);
    LpResult res = lp_solve(lp);
    if (res.status != LpStatus::optimal) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) u(i, j) = res.point[i];
  }
  return u;
}

std::optional<NonnegFactorization> try_rank(const RationalMatrix& s, const Eigen::MatrixXd& v,
                                            std::size_t r, std::uint64_t seed,
                                            const HeuristicConfig& cfg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Eigen::MatrixXd w(v.rows(), static_cast<Eigen::Index>(r));
  Eigen::MatrixXd h(static_cast<Eigen::Index>(r), v.cols());
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = unif(rng);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = unif(rng);
  multiplicative_updates(v, w, h, cfg.iterations);

  RationalMatrix t = round_columns(w, cfg.max_denominator);
  if (auto u = solve_right_factor(t, s)) {
    NonnegFactorization fac{t, *u};
    if (verify_factorization(s, fac)) return fac;
  }
  // Same from the other side: round H, solve for T on the transpose.
  RationalMatrix ht = round_columns(h.transpose(), cfg.max_denominator);
  if (auto tt = solve_right_factor(ht, s.transpose())) {
    NonnegFactorization fac{tt->transpose(), ht.transpose()};
    if (verify_factorization(s, fac)) return fac;
  }
  return std::nullopt;
}

}  // namespace

NnegrkBounds nnegrk_bounds(const RationalMatrix& s, const HeuristicConfig& heuristic,
                           const RectCoverConfig& cover) {
  if (!s.is_nonnegative()) throw InputError("nnegrk_bounds: matrix has a negative entry");
  NnegrkBounds out;
  out.rank = mat_rank(s);
  try {
    out.rectangle_cover = rect_cover_lb(s, cover);
  } catch (const BudgetError& e) {
    out.rectangle_cover = static_cast<std::size_t>(e.best_bound().value_or(0));
    out.rectangle_cover_exact = false;
  }
  out.lower = std::max(out.rank, out.rectangle_cover);
  out.lower_witness = out.rectangle_cover > out.rank ? LowerWitness::rectangle_cover
                                                     : LowerWitness::rank;
  out.upper = std::min(s.rows(), s.cols());
  out.upper_witness = UpperWitness::trivial;
  if (s.is_zero()) {
    out.upper = 0;
    return out;
  }
  if (!heuristic.enabled || out.lower >= out.upper) return out;

  const Eigen::MatrixXd v = to_double(s);
  for (std::size_t r = std::max<std::size_t>(out.lower, 1); r < out.upper; ++r) {
    const auto restarts = static_cast<std::size_t>(std::max(heuristic.restarts, 1));
    std::vector<std::optional<NonnegFactorization>> found(restarts);
    for_each_index(restarts, true, [&](std::size_t k) {
      found[k] = try_rank(s, v, r, heuristic.seed + 7919ULL * k + 104729ULL * r, heuristic);
    });
    for (auto& f : found) {
      if (f) {
        out.upper = r;
        out.upper_witness = UpperWitness::factorization;
        out.factorization = std::move(f);
        return out;
      }
    }
    budget::check("nnegrk_bounds");
  }
  return out;
}

}  // namespace efbound
