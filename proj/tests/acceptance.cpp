// Acceptance suite: one PASS/FAIL line per criterion, with the measured time
// against its time limit. Exit status is the number of failed criteria.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>

#include "efbound/encodings.hpp"
#include "efbound/nnfact.hpp"
#include "efbound/polyhedra.hpp"
#include "efbound/udisj.hpp"
#include "fixtures.hpp"
#include "support.hpp"

using namespace efbound;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// ---- 1 ---------------------------------------------------------------------

Outcome psd_identity() {
  Outcome o;
  std::uint64_t pairs = 0;
  for (int n = 1; n <= 8; ++n) {
    const auto r = psd_identity_check(n);
    o.require(r.holds && r.pairs_checked == (std::uint64_t{1} << (2 * n)), "library check fails at n=" + std::to_string(n));
    pairs += r.pairs_checked;
  }
  // Independent pass at n = 8: build both factors per pair and compare with
  // (1 - |a & b|)^2 from a popcount.
  const int n = 8;
  std::vector<RationalMatrix> ts, us;
  for (Subset a = 0; a < (Subset{1} << n); ++a) {
    ts.push_back(psd_T(a, n));
    us.push_back(psd_U(a, n));
  }
  for (Subset a = 0; a < (Subset{1} << n); ++a)
    for (Subset b = 0; b < (Subset{1} << n); ++b) {
      Rational sum = 0;
      const auto& t = ts[a];
      const auto& u = us[b];
      for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) sum += t(i, j) * u(i, j);
      const long k = 1 - std::popcount(a & b);
      if (sum != k * k) o.require(false, "pair mismatch at n=8");
    }
  o.detail = o.ok ? std::to_string(pairs) + " pairs over n=1..8, exact" : o.detail;
  return o;
}

// ---- 2 ---------------------------------------------------------------------

Outcome slack_consistency() {
  Outcome o;
  const Rational rhos[] = {Rational(1), Rational(3, 2), Rational(2)};
  int cases = 0;
  for (int n = 1; n <= 3; ++n) {
    const HardPair hp = build_hard_pair(n);
    const SlackMatrix base = build_slack(hp.P, hp.Q);
    for (const auto& rho : rhos) {
      const SlackMatrix direct = hardpair_slack(n, rho);
      const SlackMatrix shifted = shift_slack(base, rho);
      o.require(direct.vertex_block == shifted.vertex_block, "blocks differ at n=" + std::to_string(n));
      o.require(direct.source_b == shifted.source_b, "source_b differs");
      // Entry formula from the subset pair.
      for (Subset a = 0; a < (Subset{1} << n); ++a)
        for (Subset b = 0; b < (Subset{1} << n); ++b) {
          const long k = 1 - std::popcount(a & b);
          o.require(direct.vertex_block(a, b) == Rational(k * k) + rho - 1, "entry formula mismatch");
        }
      ++cases;
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " (n, rho) cases equal entrywise";
  return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome factorization_roundtrip() {
  Outcome o;
  struct Instance {
    std::string name;
    VRep p;
    HRep q;
  };
  std::vector<Instance> fleet{{"segment", fixtures::segment_v(), fixtures::segment_h()},
                              {"square", fixtures::box_v(2), fixtures::box_h(2)},
                              {"cube", fixtures::box_v(3), fixtures::box_h(3)},
                              {"square+redundant", fixtures::box_v(2), fixtures::square_with_redundant_rows()}};
  for (int n = 1; n <= 3; ++n) {
    HardPair hp = build_hard_pair(n);
    fleet.push_back({"hardpair" + std::to_string(n), hp.P, hp.Q});
  }
  int runs = 0;
  for (const auto& inst : fleet) {
    const RationalMatrix s = build_slack(inst.p, inst.q).full();
    std::vector<NonnegFactorization> facs{trivial_factorization(s)};
    HeuristicConfig h;
    h.seed = 11;
    const NnegrkBounds b = nnegrk_bounds(s, h);
    if (b.factorization) facs.push_back(*b.factorization);
    for (const auto& fac : facs) {
      o.require(static_cast<bool>(verify_factorization(s, fac)), inst.name + ": factorization does not verify");
      const ExtendedFormulation k = factorization_to_ef(inst.q, fac);
      const SandwichReport rep = verify_sandwich(inst.p, inst.q, Rational(1), k);
      o.require(rep.ok(), inst.name + ": sandwich fails at rho=1");
      if (!rep.ok()) continue;
      const auto back = ef_to_factorization(k, inst.p, inst.q);
      o.require(back.factorization.T * back.factorization.U == s, inst.name + ": slack not reconstructed");
      o.require(back.factorization.rank() <= k.size() + 1, inst.name + ": rank exceeds size + 1");
      ++runs;
    }
  }
  if (o.ok) o.detail = std::to_string(runs) + " factorizations round-tripped";
  return o;
}

// ---- 4 ---------------------------------------------------------------------

SubsetFunction random_nonneg(testsupport::Gen& gen, int n) {
  SubsetFunction f{n, RationalVector(std::size_t{1} << n)};
  for (auto& v : f.values)
    if (gen.coin(0.8)) v = gen.rational(0, 5, 7);
  return f;
}

// E[f(a) g(b)] over each class straight from the definition of the classes.
std::pair<Rational, Rational> class_means(const SubsetFunction& f, const SubsetFunction& g, int n, int ell) {
  Rational sa = 0, sb = 0;
  long na = 0, nb = 0;
  for (Subset a = 0; a < (Subset{1} << n); ++a) {
    if (std::popcount(a) != ell) continue;
    for (Subset b = 0; b < (Subset{1} << n); ++b) {
      if (std::popcount(b) != ell) continue;
      const int meet = std::popcount(a & b);
      if (meet == 0) {
        sa += f(a) * g(b);
        ++na;
      } else if (meet == 1) {
        sb += f(a) * g(b);
        ++nb;
      }
    }
  }
  return {sa / na, sb / nb};
}

Outcome corruption_identities() {
  Outcome o;
  testsupport::Gen gen(20240607);
  int trials = 0;
  for (int n : {3, 7}) {
    const UdisjParams params(n);
    const ClassProbabilities pr = mu_class_probabilities(params);
    o.require(pr.A == Rational(3, 4) && pr.B == Rational(1, 4), "class probabilities differ from (3/4, 1/4)");
    for (int t = 0; t < 20; ++t) {
      const SubsetFunction f = random_nonneg(gen, n);
      const SubsetFunction g = random_nonneg(gen, n);
      const auto r = razborov_identities(f, g, params);
      const auto [ea, eb] = class_means(f, g, n, params.ell());
      o.require(r.direct.given_A == ea && r.direct.given_B == eb, "class expectations differ from the oracle");
      o.require(ea == r.row0_col0, "E[X|A] != E[Row0 Col0]");
      o.require(eb == r.row1_col1, "E[X|B] != E[Row1 Col1]");
      ++trials;
    }
  }
  if (o.ok) o.detail = std::to_string(trials) + " random (f, g), probabilities (3/4, 1/4)";
  return o;
}

// ---- 5 ---------------------------------------------------------------------

Outcome entropy_bound() {
  Outcome o;
  const int points = 10000;
  double worst = 1.0;
  for (int k = 0; k < points; ++k) {
    const double x = (k + 0.5) / points;
    const double v = entropy_gap(x);
    // Closed form computed here with natural logs.
    const double h = -(x * std::log(x) + (1 - x) * std::log(1 - x)) / std::numbers::ln2;
    const double d = 1 - 2 * x;
    const double oracle = 1 - h - d * d / (2 * std::numbers::ln2);
    o.require(std::fabs(v - oracle) <= 1e-12, "entropy_gap differs from the closed form");
    worst = std::min(worst, v);
  }
  o.require(worst >= -1e-12, "gap below -1e-12");
  char buf[96];
  std::snprintf(buf, sizeof buf, "min gap %.3g on %d points", worst, points);
  if (o.ok) o.detail = buf;
  return o;
}

// ---- 6 ---------------------------------------------------------------------

Outcome corruption_scan() {
  Outcome o;
  const UdisjParams params(3);
  const Rational eps(1, 2);
  const ScanReport r = rectangle_corruption_scan(params, eps);
  o.require(r.scanned == 64, "expected 64 rectangles");
  o.require(r.max_clean_A && *r.max_clean_A == Rational(1, 3), "max clean P(R|A) != 1/3");
  const std::uint64_t all = (std::uint64_t{1} << r.ell_subsets.size()) - 1;
  const RectangleScore full = score_rectangle(params, r.ell_subsets, {all, all}, eps);
  o.require(full.corruption == -eps, "full rectangle corruption != -eps");
  for (const Rational e : {Rational(1, 10), Rational(3, 4)}) {
    const RectangleScore f = score_rectangle(params, r.ell_subsets, {all, all}, e);
    o.require(f.corruption == -e, "full rectangle corruption != -eps");
  }
  if (o.ok) o.detail = "max clean 1/3, full rectangle -eps";
  return o;
}

// ---- 7 ---------------------------------------------------------------------

int oracle_omega(const Graph& g) {
  int best = 0;
  for (Subset s = 0; s < (Subset{1} << g.n()); ++s) {
    if ((s & ~g.vertices()) != 0) continue;
    bool clique = true;
    for (int u = 0; u < g.n() && clique; ++u)
      for (int v = u + 1; v < g.n(); ++v)
        if (((s >> u) & 1U) && ((s >> v) & 1U) && !g.adjacent(u, v)) clique = false;
    if (clique) best = std::max(best, std::popcount(s));
  }
  return best;
}

Outcome clique_encoding() {
  Outcome o;
  long graphs = 0;
  for (int n = 1; n <= 4; ++n) {
    for (Subset verts = 0; verts < (Subset{1} << n); ++verts) {
      std::vector<std::pair<int, int>> pairs;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (((verts >> u) & 1U) && ((verts >> v) & 1U)) pairs.emplace_back(u, v);
      for (std::uint64_t e = 0; e < (std::uint64_t{1} << pairs.size()); ++e) {
        std::set<std::pair<int, int>> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
          if ((e >> k) & 1U) edges.insert(pairs[k]);
        const Graph g(n, verts, edges);
        const RationalMatrix w = clique_weight(g);
        const int omega = oracle_omega(g);
        o.require(clique_number(g) == omega, "clique_number differs from the oracle");
        o.require(max_over_cor(w).value == omega, "COR maximum differs from omega");
        const BoxReport box = box_report(w);
        o.require(box.within_factor_n, "box ratio exceeds n");
        ++graphs;
      }
    }
    const BoxReport tight = box_report(clique_weight(Graph::edgeless(n, (Subset{1} << n) - 1)));
    o.require(tight.box_max == Rational(n) * tight.cor_max && tight.cor_max == 1,
              "edgeless graph on [n] does not attain ratio n");
    o.require(box_ef(n).size() == static_cast<std::size_t>(2 * n * n), "box EF size != 2 n^2");
  }
  if (o.ok) o.detail = std::to_string(graphs) + " labeled graphs, ratio n attained by edgeless graphs";
  return o;
}

// ---- 8 ---------------------------------------------------------------------

Outcome covariance_bijection() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    std::set<std::vector<Rational>> images;
    const int m = n - 1;
    for (Subset x = 0; x < (Subset{1} << m); ++x) {
      const RationalMatrix y = covariance_map(cut_vector(x, n), n);
      RationalMatrix expect(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) expect(i, j) = ((x >> i) & (x >> j) & 1U) ? 1 : 0;
      o.require(y == expect, "image is not b b^T for b the indicator of X");
      images.insert(vec(y));
    }
    o.require(images.size() == (std::size_t{1} << m), "images are not distinct");
  }
  if (o.ok) o.detail = "n=2..5 onto all b b^T";
  return o;
}

// ---- 9 ---------------------------------------------------------------------

Outcome homogenization() {
  Outcome o;
  const int n = 3;
  const ExtendedFormulation k = homogenize(trivial_ef(metric_polytope(n)));
  for (const CutFamily fam : {CutFamily::cut_polytope, CutFamily::cut_cone}) {
    const ContainmentResult c = ef_contains_points(build_cut_family(fam, n), k);
    o.require(c.contained, "a cut vector is outside the homogenized EF");
  }
  // Scaled cut vectors stay inside: the projection is a cone.
  VRep scaled = build_cut_family(CutFamily::cut_polytope, n);
  scaled.points = scaled.points.scaled(Rational(7, 2));
  o.require(ef_contains_points(scaled, k).contained, "scaled cut vector is outside");

  const HRep cone = metric_cone(n);
  o.require(cone.num_rows() == 3, "expected three triangle inequalities");
  const DerivationResult d = ef_inside_hrep(k, cone);
  o.require(d.contained && !d.k_empty, "homogenized EF is not inside CUTCONE(3)");
  if (d.contained) {
    o.require(verify_derivation(k, cone, d.multipliers, d.offsets), "derivation rows do not re-verify");
    // Independent check of each row: t E = A_i, t F >= 0, t g <= 0.
    const RationalMatrix te = d.multipliers * k.E;
    const RationalMatrix tf = d.multipliers * k.F;
    o.require(te == cone.A, "t E != A");
    o.require(tf.is_nonnegative(), "t F has a negative entry");
    const RationalVector tg = mat_vec(d.multipliers, k.g);
    for (const auto& v : tg) o.require(sgn(v) <= 0, "t g > 0");
  }
  if (o.ok) o.detail = "cut vectors inside, 3 triangle rows derived";
  return o;
}

// ---- 10 --------------------------------------------------------------------

Outcome bound_formulas() {
  Outcome o;
  const double v = corruption_rhs({1.0, 0.0}, 16.0);
  o.require(std::fabs(v - std::exp(-1.0)) <= 1e-12, "corruption_rhs(1, 16, 0) != 1/e");
  const double eps = 0.05;
  for (const double C : {0.0, 1.0}) {
    double prev = 0;
    for (int k = 0; k < 20; ++k) {  // rho grid, nonincreasing
      const Rational rho = Rational(1) + Rational(k, 4);
      const double lb = shift_rank_lb(63, rho, eps, C);
      if (k > 0) o.require(lb <= prev, "shift_rank_lb increases in rho");
      prev = lb;
    }
    for (int k = 0; k < 20; ++k) {  // n grid, nondecreasing
      const int n = 3 + 40 * k;
      const double lb = shift_rank_lb(n, Rational(3, 2), eps, C);
      if (k > 0) o.require(lb >= prev, "shift_rank_lb decreases in n");
      prev = lb;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "|rhs - 1/e| = %.2g, monotone on grids", std::fabs(v - std::exp(-1.0)));
  if (o.ok) o.detail = buf;
  return o;
}

// ---- 11 --------------------------------------------------------------------

Outcome bound_soundness() {
  Outcome o;
  std::vector<std::pair<RationalMatrix, NonnegFactorization>> fleet;
  auto add = [&](const RationalMatrix& s, NonnegFactorization fac) { fleet.emplace_back(s, std::move(fac)); };
  const std::vector<std::pair<VRep, HRep>> pairs{{fixtures::segment_v(), fixtures::segment_h()},
                                                 {fixtures::box_v(2), fixtures::box_h(2)},
                                                 {fixtures::box_v(3), fixtures::box_h(3)},
                                                 {fixtures::box_v(2), fixtures::square_with_redundant_rows()}};
  for (const auto& [p, q] : pairs) {
    const RationalMatrix s = build_slack(p, q).full();
    add(s, trivial_factorization(s));
  }
  for (int n = 1; n <= 3; ++n) {
    const RationalMatrix s = hardpair_slack(n, Rational(1)).full();
    add(s, trivial_factorization(s));
  }
  testsupport::Gen gen(99);
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(2, 8));
    const std::size_t n = static_cast<std::size_t>(gen.integer(2, 8));
    const std::size_t r = static_cast<std::size_t>(gen.integer(1, 4));
    NonnegFactorization fac{gen.sparse_nonneg(m, r, 0.6, 3), gen.sparse_nonneg(r, n, 0.6, 3)};
    const RationalMatrix s = fac.T * fac.U;
    add(s, std::move(fac));
  }
  for (const auto& [s, fac] : fleet) {
    o.require(static_cast<bool>(verify_factorization(s, fac)), "fixture factorization does not verify");
    const std::size_t lower = std::max(mat_rank(s), rect_cover_lb(s));
    o.require(lower <= fac.rank(), "lower bound exceeds a verified rank");
    o.require(mat_rank(s) == testsupport::oracle_rank(s), "rank differs from the oracle");
  }
  int positive = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t m = static_cast<std::size_t>(gen.integer(1, 12));
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 12));
    RationalMatrix s(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = gen.rational(1, 9, 5);
    o.require(rect_cover_lb(s) == 1, "positive matrix with cover != 1");
    ++positive;
  }
  if (o.ok)
    o.detail = std::to_string(fleet.size()) + " factored matrices, " + std::to_string(positive) + " positive matrices";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "psd-identity", 10, psd_identity},
      {2, "slack-consistency", 10, slack_consistency},
      {3, "factorization-roundtrip", 60, factorization_roundtrip},
      {4, "corruption-identities", 60, corruption_identities},
      {5, "entropy-taylor-bound", 1, entropy_bound},
      {6, "corruption-scan-n3", 30, corruption_scan},
      {7, "clique-encoding", 120, clique_encoding},
      {8, "covariance-bijection", 10, covariance_bijection},
      {9, "homogenization", 10, homogenization},
      {10, "bound-formulas", 1, bound_formulas},
      {11, "bound-soundness", 30, bound_soundness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_s) {
      o.ok = false;
      o.detail = "over time limit";
    }
    if (!o.ok) ++failed;
    std::printf("%s %2d %-24s %7.3fs / %gs  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed;
}
