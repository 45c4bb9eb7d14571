#include "efbound/encodings.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "efbound/error.hpp"
#include "efbound/kernels.hpp"
#include "efbound/parallel.hpp"

namespace efbound {
namespace {

constexpr int kMaxGround = 31;

void check_limit(int n, int limit, const char* what) {
  if (n < 0) throw InputError(std::string(what) + ": n must be nonnegative");
  if (n > limit)
    throw BudgetError(std::string(what) + ": n = " + std::to_string(n) +
                      " exceeds the enumeration limit " + std::to_string(limit));
}

Subset full_mask(int n) { return n == 0 ? 0 : (Subset{1} << n) - 1; }

std::size_t edge_index(int i, int j, int n) {
  // position of (i, j), i < j, 0-based, in edge_order(n)
  return static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1));
}

}  // namespace

// ---- Graph ----------------------------------------------------------------

Graph::Graph(int n, Subset vertices, std::set<std::pair<int, int>> edges)
    : n_(n), vertices_(vertices), adjacency_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 0 || n > kMaxGround) throw InputError("graph: n out of range");
  if ((vertices & ~full_mask(n)) != 0) throw InputError("graph: vertex outside [n]");
  for (auto [u, v] : edges) {
    if (u == v) throw InputError("graph: loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || !has_vertex(u) || !has_vertex(v))
      throw InputError("graph: edge {" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                       "} leaves the vertex set");
    edges_.insert({u, v});
    adjacency_[static_cast<std::size_t>(u)] |= Subset{1} << v;
    adjacency_[static_cast<std::size_t>(v)] |= Subset{1} << u;
  }
}

Graph Graph::complete(int n) {
  std::set<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.insert({i, j});
  return Graph(n, full_mask(n), std::move(e));
}

Graph Graph::edgeless(int n, Subset vertices) { return Graph(n, vertices, {}); }

Graph Graph::cycle(int n) {
  if (n < 3) throw InputError("cycle needs at least 3 vertices");
  std::set<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.insert({i, i + 1});
  e.insert({0, n - 1});
  return Graph(n, full_mask(n), std::move(e));
}

Graph Graph::path(int n) {
  std::set<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.insert({i, i + 1});
  return Graph(n, full_mask(n), std::move(e));
}

bool Graph::adjacent(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  return (adjacency_[static_cast<std::size_t>(u)] >> v) & 1U;
}

// ---- matrix helpers -------------------------------------------------------

RationalVector vec(const RationalMatrix& m) { return m.entries(); }

RationalMatrix unvec(std::span<const Rational> v, std::size_t n) {
  if (v.size() != n * n) throw InputError("unvec: length is not n^2");
  return RationalMatrix(n, n, RationalVector(v.begin(), v.end()));
}

Rational frobenius(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("frobenius: shape mismatch");
  return dot(a.entries(), b.entries());
}

RationalVector bits(Subset s, int n) {
  RationalVector out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = (s >> i) & 1U;
  return out;
}

RationalMatrix outer(std::span<const Rational> u, std::span<const Rational> v) {
  RationalMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
  return m;
}

RationalMatrix hard_objective(Subset a, int n) {
  const auto sz = static_cast<std::size_t>(n);
  RationalMatrix m(sz, sz);
  for (int i = 0; i < n; ++i) {
    if (!((a >> i) & 1U)) continue;
    for (int j = 0; j < n; ++j)
      if ((a >> j) & 1U) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = -1;
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;  // 2 a_i - a_i^2
  }
  return m;
}

// ---- hard pair ------------------------------------------------------------

HardPair build_hard_pair(int n, int limit) {
  check_limit(n, std::min(limit, kMaxGround), "hard pair");
  const Subset count = Subset{1} << n;
  const std::size_t d = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  RationalMatrix points(count, d), rows(count, d);
  for (Subset s = 0; s < count; ++s) {
    const auto b = bits(s, n);
    const auto p = vec(outer(b, b));
    const auto q = vec(hard_objective(s, n));
    std::copy(p.begin(), p.end(), points.row(s).begin());
    std::copy(q.begin(), q.end(), rows.row(s).begin());
  }
  HardPair hp;
  hp.n = n;
  hp.P = VRep(d, std::move(points), RationalMatrix(0, d));
  hp.Q = HRep(d, std::move(rows), RationalVector(count, Rational(1)));
  return hp;
}

SlackMatrix hardpair_slack(int n, const Rational& rho, int limit) {
  check_limit(n, std::min(limit, kMaxGround), "hard pair");
  if (rho < 1) throw InputError("rho must be at least 1");
  const Subset count = Subset{1} << n;
  SlackMatrix s;
  s.vertex_block = RationalMatrix(count, count);
  s.ray_block = RationalMatrix(count, 0);
  s.source_b.assign(count, rho);
  for (Subset a = 0; a < count; ++a)
    for (Subset b = 0; b < count; ++b) {
      const int k = 1 - std::popcount(a & b);
      s.vertex_block(a, b) = Rational(k * k) + rho - 1;
    }
  return s;
}

// ---- CLIQUE ---------------------------------------------------------------

RationalMatrix clique_weight(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  RationalMatrix w(n, n);
  for (int i = 0; i < g.n(); ++i) {
    if (!g.has_vertex(i)) continue;
    w(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    for (int j = 0; j < g.n(); ++j)
      if (j != i && g.has_vertex(j) && !g.adjacent(i, j))
        w(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = -1;
  }
  return w;
}

namespace {

void grow_clique(const Graph& g, Subset candidates, int size, int& best) {
  if (candidates == 0) {
    best = std::max(best, size);
    return;
  }
  while (candidates != 0) {
    if (size + std::popcount(candidates) <= best) return;
    const int v = std::countr_zero(candidates);
    candidates &= candidates - 1;
    grow_clique(g, candidates & g.neighbourhood(v), size + 1, best);
  }
}

}  // namespace

int clique_number(const Graph& g, int limit) {
  check_limit(std::popcount(g.vertices()), limit, "clique number");
  int best = 0;
  grow_clique(g, g.vertices(), 0, best);
  return best;
}

CorMaximum max_over_cor(const RationalMatrix& w, int limit) {
  if (w.rows() != w.cols()) throw InputError("max over COR: matrix must be square");
  check_limit(static_cast<int>(w.rows()), std::min(limit, kMaxGround), "max over COR");
  const auto r = kernels::max_over_cor_omp(w);
  return {r.value, r.argmax};
}

std::optional<QallViolation> qall_separate(const RationalMatrix& x, const QallConfig& config) {
  if (x.rows() != x.cols()) throw InputError("Q^all separation: matrix must be square");
  const int n = static_cast<int>(x.rows());
  if (n > kMaxGround) throw BudgetError("Q^all separation: n too large");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& v = x(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (i != j && v < 0) {
        QallViolation out;
        out.kind = QallViolation::Kind::nonnegativity;
        out.i = i;
        out.j = j;
        out.lhs = v;
        out.rhs = 0;
        return out;
      }
    }

  auto test = [&](const Graph& g) -> std::optional<QallViolation> {
    const Rational lhs = frobenius(clique_weight(g), x);
    const Rational rhs = clique_number(g);
    if (lhs <= rhs) return std::nullopt;
    QallViolation out;
    out.kind = QallViolation::Kind::graph;
    out.graph = g;
    out.lhs = lhs;
    out.rhs = rhs;
    return out;
  };

  if (!config.sampled) {
    if (n > 4)
      throw BudgetError("Q^all separation: exhaustive graph enumeration is limited to n <= 4");
    for (Subset vs = 1; vs <= full_mask(n); ++vs) {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (((vs >> i) & 1U) && ((vs >> j) & 1U)) pairs.push_back({i, j});
      for (Subset es = 0; es < (Subset{1} << pairs.size()); ++es) {
        std::set<std::pair<int, int>> edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
          if ((es >> k) & 1U) edges.insert(pairs[k]);
        if (auto v = test(Graph(n, vs, std::move(edges)))) return v;
      }
    }
    return std::nullopt;
  }

  std::mt19937_64 rng(config.seed);
  for (std::size_t s = 0; s < config.samples && n > 0; ++s) {
    Subset vs = 0;
    while (vs == 0) vs = static_cast<Subset>(rng()) & full_mask(n);
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((vs >> i) & 1U) && ((vs >> j) & 1U) && (rng() & 1U)) edges.insert({i, j});
    if (auto v = test(Graph(n, vs, std::move(edges)))) return v;
  }
  return std::nullopt;
}

ExtendedFormulation box_ef(int n) {
  if (n < 0) throw InputError("box EF: n must be nonnegative");
  const std::size_t d = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const auto id = RationalMatrix::identity(d);
  const auto zero = RationalMatrix(d, d);
  RationalMatrix e = id.vconcat(id);
  RationalMatrix f = id.scaled(-1).hconcat(zero).vconcat(zero.hconcat(id));
  RationalVector g(2 * d, Rational(0));
  std::fill(g.begin() + static_cast<std::ptrdiff_t>(d), g.end(), Rational(1));
  return ExtendedFormulation(std::move(e), std::move(f), std::move(g));
}

BoxReport box_report(const RationalMatrix& w) {
  if (w.rows() != w.cols()) throw InputError("box report: matrix must be square");
  BoxReport r;
  r.box_max = 0;
  for (const auto& v : w.entries())
    if (v > 0) r.box_max += v;
  r.cor_max = max_over_cor(w).value;
  for (std::size_t i = 0; i < w.rows(); ++i)
    if (w(i, i) != 0) r.nonzero_diagonal = true;
  const Rational n(static_cast<long>(w.rows()));
  r.within_factor_n = r.nonzero_diagonal ? r.box_max <= n * r.cor_max
                                         : (r.box_max == 0 && r.cor_max == 0);
  return r;
}

// ---- cuts -----------------------------------------------------------------

std::optional<CutFamily> parse_cut_family(const std::string& name) {
  if (name == "cut_polytope" || name == "cut-polytope") return CutFamily::cut_polytope;
  if (name == "cut_cone" || name == "cut-cone") return CutFamily::cut_cone;
  if (name == "correlation_cone" || name == "correlation-cone") return CutFamily::correlation_cone;
  return std::nullopt;
}

std::string to_string(CutFamily kind) {
  switch (kind) {
    case CutFamily::cut_polytope: return "cut_polytope";
    case CutFamily::cut_cone: return "cut_cone";
    case CutFamily::correlation_cone: return "correlation_cone";
  }
  return "?";
}

std::vector<std::pair<int, int>> edge_order(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({i, j});
  return out;
}

RationalVector cut_vector(Subset x, int n) {
  RationalVector out;
  for (auto [i, j] : edge_order(n)) out.push_back(((x >> i) & 1U) != ((x >> j) & 1U) ? 1 : 0);
  return out;
}

VRep build_cut_family(CutFamily kind, int n, int limit) {
  check_limit(n, std::min(limit, kMaxGround), "cut family");
  if (n < 2) throw InputError("cut family: n must be at least 2");
  const Subset count = Subset{1} << (n - 1);  // X ranges over subsets of [n-1]
  if (kind == CutFamily::correlation_cone) {
    const auto k = static_cast<std::size_t>(n - 1);
    RationalMatrix rays(count - 1, k * k);
    for (Subset s = 1; s < count; ++s) {
      const auto v = bits(s, n - 1);
      const auto z = vec(outer(v, v));
      std::copy(z.begin(), z.end(), rays.row(s - 1).begin());
    }
    return VRep(k * k, RationalMatrix(1, k * k), std::move(rays));
  }
  const std::size_t d = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (kind == CutFamily::cut_polytope) {
    RationalMatrix pts(count, d);
    for (Subset s = 0; s < count; ++s) {
      const auto v = cut_vector(s, n);
      std::copy(v.begin(), v.end(), pts.row(s).begin());
    }
    return VRep(d, std::move(pts), RationalMatrix(0, d));
  }
  RationalMatrix rays(count - 1, d);
  for (Subset s = 1; s < count; ++s) {
    const auto v = cut_vector(s, n);
    std::copy(v.begin(), v.end(), rays.row(s - 1).begin());
  }
  return VRep(d, RationalMatrix(1, d), std::move(rays));
}

namespace {

HRep metric_rows(int n, bool perimeter) {
  if (n < 2) throw InputError("metric polytope: n must be at least 2");
  const std::size_t d = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const std::size_t e[3] = {edge_index(i, j, n), edge_index(i, k, n), edge_index(j, k, n)};
        for (int lead = 0; lead < 3; ++lead) {
          RationalVector r(d, Rational(0));
          for (int t = 0; t < 3; ++t) r[e[t]] = t == lead ? 1 : -1;
          rows.push_back(std::move(r));
          rhs.push_back(0);
        }
        if (perimeter) {
          RationalVector r(d, Rational(0));
          for (auto idx : e) r[idx] = 1;
          rows.push_back(std::move(r));
          rhs.push_back(2);
        }
      }
  return HRep(d, RationalMatrix::from_rows(rows, d), std::move(rhs));
}

}  // namespace

HRep metric_polytope(int n) { return metric_rows(n, true); }
HRep metric_cone(int n) { return metric_rows(n, false); }

RationalMatrix covariance_map(std::span<const Rational> x, int n) {
  if (n < 2) throw InputError("covariance map: n must be at least 2");
  const std::size_t d = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (x.size() != d)
    throw InputError("covariance map: expected a vector of length " + std::to_string(d));
  const int last = n - 1;
  const auto k = static_cast<std::size_t>(n - 1);
  RationalMatrix y(k, k);
  bool binary = true;
  for (const auto& v : x)
    if (v != 0 && v != 1) binary = false;
  for (int i = 0; i < last; ++i) {
    const Rational& xin = x[edge_index(i, last, n)];
    y(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = xin;
    for (int j = i + 1; j < last; ++j) {
      Rational v = (xin + x[edge_index(j, last, n)] - x[edge_index(i, j, n)]) / 2;
      if (binary && v.get_den() != 1)
        throw InputError("covariance map: 0/1 vector with odd triangle parity is not a cut vector");
      y(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
      y(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
    }
  }
  return y;
}

// ---- PSD factorization ------------------------------------------------------

namespace {

RationalMatrix lifted_outer(Subset s, int n, int lead) {
  RationalVector v(static_cast<std::size_t>(n) + 1);
  v[0] = lead;
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) + 1] = (s >> i) & 1U;
  return outer(v, v);
}

}  // namespace

RationalMatrix psd_T(Subset a, int n) { return lifted_outer(a, n, -1); }
RationalMatrix psd_U(Subset b, int n) { return lifted_outer(b, n, 1); }

PsdFactorPair psd_factors(int n, int limit) {
  check_limit(n, std::min(limit, kMaxGround), "PSD factors");
  PsdFactorPair out;
  out.n = n;
  for (Subset s = 0; s < (Subset{1} << n); ++s) {
    out.T.push_back(psd_T(s, n));
    out.U.push_back(psd_U(s, n));
  }
  return out;
}

PsdIdentityReport psd_identity_check(int n, int limit, bool parallel) {
  check_limit(n, std::min(limit, kMaxGround), "PSD identity");
  const auto r = parallel ? kernels::psd_identity_omp(n) : kernels::psd_identity_serial(n);
  return {r.checked, r.failures, r.failures == 0};
}

bool spectra_vertex_witness(Subset b, int n, const std::optional<RationalMatrix>& y, int limit) {
  check_limit(n, std::min(limit, kMaxGround), "spectrahedron witness");
  if ((b & ~full_mask(n)) != 0) throw InputError("spectrahedron witness: b outside [n]");
  const RationalMatrix yy = y ? *y : psd_U(b, n);
  const auto sz = static_cast<std::size_t>(n) + 1;
  if (yy.rows() != sz || yy.cols() != sz)
    throw InputError("spectrahedron witness: Y must be (n+1) x (n+1)");
  const auto bv = bits(b, n);
  const RationalMatrix x = outer(bv, bv);
  for (Subset a = 0; a < (Subset{1} << n); ++a)
    if (frobenius(hard_objective(a, n), x) + frobenius(psd_T(a, n), yy) != 1) return false;
  return true;
}

Rational objmat_infnorm_check(Subset a, int n) {
  Rational best = 0;
  const RationalMatrix m = hard_objective(a, n);
  for (const auto& v : m.entries())
    if (abs(v) > best) best = abs(v);
  return best;
}

}  // namespace efbound
