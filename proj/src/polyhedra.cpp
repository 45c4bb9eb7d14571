#include "efbound/polyhedra.hpp"

#include <utility>

#include "efbound/error.hpp"
#include "efbound/parallel.hpp"

namespace efbound {

VRep::VRep(std::size_t d, RationalMatrix pts, RationalMatrix rs)
    : dim(d), points(std::move(pts)), rays(std::move(rs)) {
  if (points.rows() > 0 && points.cols() != dim) throw InputError("VRep: point length != dim");
  if (rays.rows() > 0 && rays.cols() != dim) throw InputError("VRep: ray length != dim");
  if (points.rows() == 0) points = RationalMatrix(0, dim);
  if (rays.rows() == 0) rays = RationalMatrix(0, dim);
}

HRep::HRep(std::size_t d, RationalMatrix a, RationalVector rhs)
    : dim(d), A(std::move(a)), b(std::move(rhs)) {
  if (A.rows() != b.size()) throw InputError("HRep: rows of A != length of b");
  if (A.rows() > 0 && A.cols() != dim) throw InputError("HRep: columns of A != dim");
  if (A.rows() == 0) A = RationalMatrix(0, dim);
}

ExtendedFormulation::ExtendedFormulation(RationalMatrix e, RationalMatrix f, RationalVector rhs)
    : E(std::move(e)), F(std::move(f)), g(std::move(rhs)) {
  if (E.rows() != g.size() || F.rows() != g.size())
    throw InputError("EF: E, F and g must have the same number of rows");
}

RationalMatrix SlackMatrix::full() const { return vertex_block.hconcat(ray_block); }

bool SlackMatrix::nonnegative() const {
  return vertex_block.is_nonnegative() && ray_block.is_nonnegative();
}

SlackMatrix build_slack(const VRep& p, const HRep& q) {
  if (p.dim != q.dim) throw InputError("build_slack: P and Q live in different dimensions");
  const std::size_t m = q.num_rows();
  SlackMatrix s;
  s.vertex_block = RationalMatrix(m, p.num_points());
  s.ray_block = RationalMatrix(m, p.num_rays());
  s.source_b = q.b;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < p.num_points(); ++j)
      s.vertex_block(i, j) = q.b[i] - dot(q.A.row(i), p.points.row(j));
    for (std::size_t j = 0; j < p.num_rays(); ++j)
      s.ray_block(i, j) = -dot(q.A.row(i), p.rays.row(j));
  }
  return s;
}

HRep dilate(const HRep& q, const Rational& rho) {
  if (rho < 1) throw InputError("dilate: rho must be >= 1 (dilate by 1/rho for minimization)");
  HRep out = q;
  for (auto& v : out.b) v *= rho;
  return out;
}

SlackMatrix shift_slack(const SlackMatrix& s, const Rational& rho) {
  if (s.source_b.size() != s.vertex_block.rows())
    throw InputError("shift_slack: slack matrix carries no matching source_b");
  SlackMatrix out = s;
  const Rational extra = rho - 1;
  for (std::size_t i = 0; i < out.vertex_block.rows(); ++i) {
    const Rational shift = extra * s.source_b[i];
    for (std::size_t j = 0; j < out.vertex_block.cols(); ++j) out.vertex_block(i, j) += shift;
    out.source_b[i] *= rho;
  }
  return out;
}

ExtendedFormulation trivial_ef(const HRep& q) {
  return ExtendedFormulation(q.A, RationalMatrix::identity(q.num_rows()), q.b);
}

ExtendedFormulation homogenize(const ExtendedFormulation& k) {
  RationalVector neg_g = k.g;
  for (auto& v : neg_g) v = -v;
  RationalMatrix f = k.F.hconcat(RationalMatrix::column(neg_g));
  return ExtendedFormulation(k.E, std::move(f), RationalVector(k.g.size(), Rational(0)));
}

// ---------------------------------------------------------------------------

namespace {

LpProblem witness_problem(const ExtendedFormulation& k, const RationalVector& rhs) {
  LpProblem lp;
  lp.A = RationalMatrix(0, k.size());
  lp.Aeq = k.F;
  lp.beq = rhs;
  lp.c.assign(k.size(), Rational(0));
  lp.nonneg.assign(k.size(), true);
  return lp;
}

}  // namespace

ContainmentResult ef_contains_points(const VRep& p, const ExtendedFormulation& k) {
  if (p.dim != k.dim()) throw InputError("ef_contains_points: dimension mismatch");
  const std::size_t r = k.size();
  const std::size_t n = p.num_points();
  const std::size_t total = n + p.num_rays();

  std::vector<LpProblem> problems(total);
  std::vector<LpResult> results(total);
  for (std::size_t j = 0; j < total; ++j) {
    RationalVector rhs;
    if (j < n) {
      rhs = mat_vec(k.E, p.points.row(j));
      for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = k.g[i] - rhs[i];
    } else {
      rhs = mat_vec(k.E, p.rays.row(j - n));
      for (auto& v : rhs) v = -v;
    }
    problems[j] = witness_problem(k, rhs);
  }
  for_each_index(total, true, [&](std::size_t j) { results[j] = lp_solve(problems[j]); });

  ContainmentResult out;
  out.point_witnesses = RationalMatrix(r, n);
  out.ray_witnesses = RationalMatrix(r, p.num_rays());
  for (std::size_t j = 0; j < total; ++j) {
    if (results[j].status != LpStatus::optimal) {
      GeneratorFailure f;
      f.kind = j < n ? GeneratorKind::point : GeneratorKind::ray;
      f.index = j < n ? j : j - n;
      f.witness_lp = std::move(problems[j]);
      f.certificate = std::move(results[j].farkas);
      out.failure = std::move(f);
      out.contained = false;
      return out;
    }
    RationalMatrix& target = j < n ? out.point_witnesses : out.ray_witnesses;
    const std::size_t col = j < n ? j : j - n;
    for (std::size_t i = 0; i < r; ++i) target(i, col) = results[j].point[i];
  }
  out.contained = true;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RowOutcome {
  enum class Kind { derived, violated, empty, needs_offset } kind = Kind::derived;
  RationalVector t;
  Rational c;
  RowFailure failure;
  FarkasCertificate emptiness;
};

RowOutcome derive_row(const ExtendedFormulation& k, const HRep& q, std::size_t i,
                      bool zero_offset) {
  const std::size_t d = k.dim();
  const std::size_t r = k.size();
  const std::size_t p = k.num_equations();
  RowOutcome out;

  // max A_i x  over  E x + F y = g, y >= 0.  Its dual is
  // min t g  over  t E = A_i, t F >= 0.
  LpProblem lp;
  lp.A = RationalMatrix(0, d + r);
  lp.Aeq = k.E.hconcat(k.F);
  lp.beq = k.g;
  lp.c.assign(d + r, Rational(0));
  for (std::size_t j = 0; j < d; ++j) lp.c[j] = q.A(i, j);
  lp.nonneg.assign(d + r, false);
  for (std::size_t j = d; j < d + r; ++j) lp.nonneg[j] = true;
  lp.sense = Sense::maximize;

  LpResult res = lp_solve(lp);
  if (res.status == LpStatus::infeasible) {
    out.kind = RowOutcome::Kind::empty;
    out.emptiness = std::move(res.farkas);
    return out;
  }
  RationalVector z;
  if (res.status == LpStatus::unbounded) {
    // Walk along the ray far enough to cross the hyperplane.
    Rational gain = dot(lp.c, res.ray);
    Rational gap = q.b[i] - dot(lp.c, res.point);
    Rational step = (sgn(gap) > 0 ? gap / gain : Rational(0)) + 1;
    z = res.point;
    for (std::size_t j = 0; j < z.size(); ++j) z[j] += step * res.ray[j];
  } else if (res.value > q.b[i]) {
    z = res.point;
  }
  if (!z.empty()) {
    out.kind = RowOutcome::Kind::violated;
    out.failure.row = i;
    out.failure.x.assign(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(d));
    out.failure.y.assign(z.begin() + static_cast<std::ptrdiff_t>(d), z.end());
    return out;
  }

  out.t = res.dual.eq;
  out.c = q.b[i] - res.value;
  if (!zero_offset || sgn(out.c) == 0) return out;

  // Look for another derivation with t g = b_i exactly.
  LpProblem exact;
  exact.A = k.F.transpose().scaled(Rational(-1));
  exact.b.assign(r, Rational(0));
  RationalMatrix g_row = RationalMatrix(1, p, k.g);
  exact.Aeq = k.E.transpose().vconcat(g_row);
  exact.beq.assign(q.A.row(i).begin(), q.A.row(i).end());
  exact.beq.push_back(q.b[i]);
  exact.c.assign(p, Rational(0));
  if (exact.A.rows() == 0) exact.A = RationalMatrix(0, p);
  LpResult alt = lp_solve(exact);
  if (alt.status != LpStatus::optimal) {
    out.kind = RowOutcome::Kind::needs_offset;
    return out;
  }
  out.t = alt.point;
  out.c = 0;
  return out;
}

}  // namespace

DerivationResult ef_inside_hrep(const ExtendedFormulation& k, const HRep& q,
                                const DerivationOptions& options) {
  if (k.dim() != q.dim) throw InputError("ef_inside_hrep: dimension mismatch");
  const std::size_t m = q.num_rows();
  std::vector<RowOutcome> rows(m);
  for_each_index(m, options.parallel, [&](std::size_t i) {
    rows[i] = derive_row(k, q, i, options.require_zero_offset);
  });

  DerivationResult out;
  for (std::size_t i = 0; i < m; ++i) {
    switch (rows[i].kind) {
      case RowOutcome::Kind::violated:
        out.failure = std::move(rows[i].failure);
        return out;
      case RowOutcome::Kind::empty:
        out.contained = true;
        out.k_empty = true;
        out.emptiness = std::move(rows[i].emptiness);
        return out;
      case RowOutcome::Kind::needs_offset:
        return out;
      case RowOutcome::Kind::derived:
        break;
    }
  }
  out.multipliers = RationalMatrix(m, k.num_equations());
  out.offsets.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k.num_equations(); ++j) out.multipliers(i, j) = rows[i].t[j];
    out.offsets[i] = rows[i].c;
  }
  if (!verify_derivation(k, q, out.multipliers, out.offsets))
    throw InternalError("ef_inside_hrep: derivation failed re-check");
  out.contained = true;
  return out;
}

bool verify_derivation(const ExtendedFormulation& k, const HRep& q, const RationalMatrix& t,
                       const RationalVector& c) {
  const std::size_t m = q.num_rows();
  if (t.rows() != m || t.cols() != k.num_equations() || c.size() != m) return false;
  if (m == 0) return true;
  if (t * k.E != q.A) return false;
  if (!(t * k.F).is_nonnegative()) return false;
  RationalVector tg = mat_vec(t, k.g);
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(c[i]) < 0) return false;
    if (tg[i] + c[i] != q.b[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::string to_string(SandwichStatus status) {
  switch (status) {
    case SandwichStatus::pass: return "pass";
    case SandwichStatus::affine: return "affine";
    case SandwichStatus::fail: return "fail";
  }
  return "unknown";
}

bool affine_hull_inside(const SlackMatrix& s) {
  for (std::size_t i = 0; i < s.vertex_block.rows(); ++i) {
    for (std::size_t j = 0; j < s.ray_block.cols(); ++j)
      if (sgn(s.ray_block(i, j)) != 0) return false;
    if (s.vertex_block.cols() == 0) continue;
    const Rational& first = s.vertex_block(i, 0);
    if (sgn(first) < 0) return false;
    for (std::size_t j = 1; j < s.vertex_block.cols(); ++j)
      if (s.vertex_block(i, j) != first) return false;
  }
  return true;
}

bool recession_cone_full_dimensional(const HRep& q) {
  const std::size_t m = q.num_rows();
  if (m == 0) return true;
  const std::size_t d = q.dim;
  // max s  s.t.  A x + s 1 <= 0,  s <= 1
  LpProblem lp;
  lp.A = RationalMatrix(m + 1, d + 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) lp.A(i, j) = q.A(i, j);
    lp.A(i, d) = 1;
  }
  lp.A(m, d) = 1;
  lp.b.assign(m + 1, Rational(0));
  lp.b[m] = 1;
  lp.c.assign(d + 1, Rational(0));
  lp.c[d] = 1;
  LpResult res = lp_solve(lp);
  return res.status == LpStatus::optimal && sgn(res.value) > 0;
}

SandwichReport verify_sandwich(const VRep& p, const HRep& q, const Rational& rho,
                               const ExtendedFormulation& k) {
  if (p.dim != q.dim || p.dim != k.dim())
    throw InputError("verify_sandwich: P, Q and K must share a dimension");
  HRep scaled = dilate(q, rho);
  SandwichReport report;
  report.affine_hull_inside = affine_hull_inside(build_slack(p, scaled));
  report.recession_full_dimensional = recession_cone_full_dimensional(q);
  report.inner = ef_contains_points(p, k);
  report.outer = ef_inside_hrep(k, scaled);
  if (!report.inner.contained || !report.outer.contained)
    report.status = SandwichStatus::fail;
  else
    report.status = report.affine_hull_inside ? SandwichStatus::affine : SandwichStatus::pass;
  return report;
}

}  // namespace efbound
