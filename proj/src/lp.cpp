#include "efbound/lp.hpp"

#include <limits>

#include "efbound/budget.hpp"
#include "efbound/error.hpp"

namespace efbound {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void validate(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (p.A.rows() != p.b.size()) throw InputError("lp: A rows != length of b");
  if (p.Aeq.rows() != p.beq.size()) throw InputError("lp: Aeq rows != length of beq");
  if (p.A.rows() > 0 && p.A.cols() != n) throw InputError("lp: A cols != number of variables");
  if (p.Aeq.rows() > 0 && p.Aeq.cols() != n)
    throw InputError("lp: Aeq cols != number of variables");
  if (!p.nonneg.empty() && p.nonneg.size() != n)
    throw InputError("lp: nonneg flags length != number of variables");
}

RationalVector objective_max_form(const LpProblem& p) {
  RationalVector c = p.c;
  if (p.sense == Sense::minimize)
    for (auto& v : c) v = -v;
  return c;
}

// Row combination ineq.A + eq.Aeq over the variable columns.
RationalVector combine(const LpProblem& p, const RationalVector& ineq, const RationalVector& eq) {
  RationalVector out(p.num_vars());
  if (p.A.rows() > 0) {
    auto part = vec_mat(ineq, p.A);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += part[j];
  }
  if (p.Aeq.rows() > 0) {
    auto part = vec_mat(eq, p.Aeq);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += part[j];
  }
  return out;
}

// Dense tableau over the standard form  M z = h, z >= 0, with one artificial
// column per row. The artificial block always holds B^{-1}, so row duals can
// be read off the reduced-cost row.
class Tableau {
 public:
  explicit Tableau(const LpProblem& p) : problem_(p) {
    const std::size_t nv = p.num_vars();
    m_ineq_ = p.A.rows();
    m_ = m_ineq_ + p.Aeq.rows();

    plus_.resize(nv);
    minus_.assign(nv, kNone);
    std::size_t col = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      plus_[v] = col++;
      if (!p.is_nonneg(v)) minus_[v] = col++;
    }
    slack_begin_ = col;
    n_struct_ = col + m_ineq_;
    width_ = n_struct_ + m_ + 1;

    data_.assign(m_ * width_, Rational(0));
    flipped_.assign(m_, false);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const bool is_ineq = i < m_ineq_;
      const RationalMatrix& src = is_ineq ? p.A : p.Aeq;
      const std::size_t r = is_ineq ? i : i - m_ineq_;
      const Rational& rhs = is_ineq ? p.b[r] : p.beq[r];
      flipped_[i] = sgn(rhs) < 0;
      const int s = flipped_[i] ? -1 : 1;
      for (std::size_t v = 0; v < nv; ++v) {
        const Rational& a = src(r, v);
        if (sgn(a) == 0) continue;
        at(i, plus_[v]) = s * a;
        if (minus_[v] != kNone) at(i, minus_[v]) = -s * a;
      }
      if (is_ineq) at(i, slack_begin_ + i) = s;
      at(i, n_struct_ + i) = 1;
      at(i, width_ - 1) = s * rhs;
      basis_[i] = n_struct_ + i;
    }
    obj_.assign(width_, Rational(0));
  }

  std::size_t rows() const { return m_; }
  std::size_t num_struct() const { return n_struct_; }

  void set_costs(const RationalVector& cost) {
    // cost covers structural + artificial columns.
    for (std::size_t j = 0; j + 1 < width_; ++j) obj_[j] = cost[j];
    obj_[width_ - 1] = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(at(i, j)) != 0) obj_[j] -= cb * at(i, j);
      }
    }
  }

  // Runs Bland-rule primal simplex over structural columns. Returns kNone at
  // optimality, otherwise the entering column of an unbounded direction.
  std::size_t run() {
    std::size_t iter = 0;
    while (true) {
      if ((++iter & 63U) == 0) budget::check("lp_solve");
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (sgn(obj_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == kNone) return kNone;

      std::size_t leave = kNone;
      Rational best_ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& a = at(i, enter);
        if (sgn(a) <= 0) continue;
        Rational ratio = rhs(i) / a;
        if (leave == kNone || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == kNone) return enter;
      pivot(leave, enter);
    }
  }

  // After phase one: replace zero-level artificials by structural columns
  // where the row allows it. Rows left with an artificial are redundant.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) continue;
      for (std::size_t j = 0; j < n_struct_; ++j) {
        if (sgn(at(i, j)) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Rational objective() const { return -obj_[width_ - 1]; }

  // Row duals u (min-form, in the possibly sign-flipped rows), un-flipped to
  // the caller's rows. `artificial_cost` is the phase cost of artificials.
  RationalVector row_duals(const Rational& artificial_cost) const {
    RationalVector u(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      u[k] = artificial_cost - obj_[n_struct_ + k];
      if (flipped_[k]) u[k] = -u[k];
    }
    return u;
  }

  RationalVector standard_solution() const {
    RationalVector z(n_struct_ + m_);
    for (std::size_t i = 0; i < m_; ++i) z[basis_[i]] = rhs(i);
    return z;
  }

  RationalVector standard_direction(std::size_t enter) const {
    RationalVector dz(n_struct_ + m_);
    dz[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i) dz[basis_[i]] = -at(i, enter);
    return dz;
  }

  RationalVector to_variables(const RationalVector& z) const {
    const std::size_t nv = problem_.num_vars();
    RationalVector x(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      x[v] = z[plus_[v]];
      if (minus_[v] != kNone) x[v] -= z[minus_[v]];
    }
    return x;
  }

  RationalVector phase_two_costs(const RationalVector& c_max) const {
    RationalVector cost(n_struct_ + m_);
    for (std::size_t v = 0; v < c_max.size(); ++v) {
      cost[plus_[v]] = -c_max[v];
      if (minus_[v] != kNone) cost[minus_[v]] = c_max[v];
    }
    return cost;
  }

  RationalVector phase_one_costs() const {
    RationalVector cost(n_struct_ + m_);
    for (std::size_t k = 0; k < m_; ++k) cost[n_struct_ + k] = 1;
    return cost;
  }

 private:
  Rational& at(std::size_t i, std::size_t j) { return data_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * width_ + j]; }
  const Rational& rhs(std::size_t i) const { return at(i, width_ - 1); }

  void pivot(std::size_t r, std::size_t c) {
    const Rational piv = at(r, c);
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(at(r, j)) != 0) at(r, j) /= piv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(at(r, j)) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Rational f = at(i, c);
      if (sgn(f) == 0) continue;
      for (std::size_t j : nz) at(i, j) -= f * at(r, j);
    }
    const Rational f = obj_[c];
    if (sgn(f) != 0)
      for (std::size_t j : nz) obj_[j] -= f * at(r, j);
    basis_[r] = c;
  }

  const LpProblem& problem_;
  std::size_t m_ = 0, m_ineq_ = 0;
  std::size_t slack_begin_ = 0, n_struct_ = 0, width_ = 0;
  std::vector<std::size_t> plus_, minus_;
  std::vector<bool> flipped_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> data_;
  std::vector<Rational> obj_;
};

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

LpResult lp_solve(const LpProblem& p) {
  validate(p);
  const std::size_t nv = p.num_vars();
  const RationalVector c_max = objective_max_form(p);
  Tableau tab(p);
  LpResult result;

  tab.set_costs(tab.phase_one_costs());
  tab.run();  // phase one is bounded below by zero
  if (sgn(tab.objective()) > 0) {
    RationalVector u = tab.row_duals(Rational(1));
    FarkasCertificate cert;
    cert.ineq.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p.A.rows()));
    cert.eq.assign(u.begin() + static_cast<std::ptrdiff_t>(p.A.rows()), u.end());
    for (auto& v : cert.ineq) v = -v;
    for (auto& v : cert.eq) v = -v;
    cert.bound = combine(p, cert.ineq, cert.eq);
    for (std::size_t j = 0; j < nv; ++j)
      if (!p.is_nonneg(j)) cert.bound[j] = 0;
    if (!verify_farkas(p, cert)) throw InternalError("lp: Farkas certificate failed re-check");
    result.status = LpStatus::infeasible;
    result.farkas = std::move(cert);
    return result;
  }

  tab.drive_out_artificials();
  tab.set_costs(tab.phase_two_costs(c_max));
  std::size_t unbounded_col = tab.run();
  result.point = tab.to_variables(tab.standard_solution());

  if (unbounded_col != kNone) {
    result.status = LpStatus::unbounded;
    result.ray = tab.to_variables(tab.standard_direction(unbounded_col));
    if (!verify_ray(p, result.point, result.ray))
      throw InternalError("lp: unbounded ray failed re-check");
    return result;
  }

  RationalVector u = tab.row_duals(Rational(0));
  DualSolution dual;
  dual.ineq.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(p.A.rows()));
  dual.eq.assign(u.begin() + static_cast<std::ptrdiff_t>(p.A.rows()), u.end());
  for (auto& v : dual.ineq) v = -v;
  for (auto& v : dual.eq) v = -v;
  dual.bound = combine(p, dual.ineq, dual.eq);
  for (std::size_t j = 0; j < nv; ++j) {
    if (p.is_nonneg(j))
      dual.bound[j] -= c_max[j];
    else
      dual.bound[j] = 0;
  }
  result.status = LpStatus::optimal;
  result.dual = std::move(dual);
  result.value = dot(p.c, result.point);
  if (!verify_optimal(p, result)) throw InternalError("lp: optimality certificate failed re-check");
  return result;
}

LpResult lp_solve(const RationalMatrix& A, const RationalVector& b, const RationalMatrix& Aeq,
                  const RationalVector& beq, const RationalVector& c, Sense sense) {
  LpProblem p;
  p.A = A;
  p.b = b;
  p.Aeq = Aeq;
  p.beq = beq;
  p.c = c;
  p.sense = sense;
  return lp_solve(p);
}

bool is_feasible_point(const LpProblem& p, const RationalVector& x) {
  if (x.size() != p.num_vars()) return false;
  for (std::size_t i = 0; i < p.A.rows(); ++i)
    if (dot(p.A.row(i), x) > p.b[i]) return false;
  for (std::size_t i = 0; i < p.Aeq.rows(); ++i)
    if (dot(p.Aeq.row(i), x) != p.beq[i]) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (p.is_nonneg(j) && sgn(x[j]) < 0) return false;
  return true;
}

bool verify_farkas(const LpProblem& p, const FarkasCertificate& cert) {
  const std::size_t nv = p.num_vars();
  if (cert.ineq.size() != p.A.rows() || cert.eq.size() != p.Aeq.rows() ||
      cert.bound.size() != nv)
    return false;
  for (const auto& y : cert.ineq)
    if (sgn(y) < 0) return false;
  for (std::size_t j = 0; j < nv; ++j) {
    if (sgn(cert.bound[j]) < 0) return false;
    if (!p.is_nonneg(j) && sgn(cert.bound[j]) != 0) return false;
  }
  RationalVector lhs = combine(p, cert.ineq, cert.eq);
  for (std::size_t j = 0; j < nv; ++j)
    if (lhs[j] != cert.bound[j]) return false;
  Rational rhs = dot(cert.ineq, p.b) + dot(cert.eq, p.beq);
  return sgn(rhs) < 0;
}

bool verify_optimal(const LpProblem& p, const LpResult& r) {
  if (r.status != LpStatus::optimal) return false;
  if (!is_feasible_point(p, r.point)) return false;
  const std::size_t nv = p.num_vars();
  const auto& d = r.dual;
  if (d.ineq.size() != p.A.rows() || d.eq.size() != p.Aeq.rows() || d.bound.size() != nv)
    return false;
  for (const auto& y : d.ineq)
    if (sgn(y) < 0) return false;
  const RationalVector c_max = objective_max_form(p);
  RationalVector lhs = combine(p, d.ineq, d.eq);
  for (std::size_t j = 0; j < nv; ++j) {
    if (sgn(d.bound[j]) < 0) return false;
    if (!p.is_nonneg(j) && sgn(d.bound[j]) != 0) return false;
    if (lhs[j] - d.bound[j] != c_max[j]) return false;
  }
  // Complementary slackness, row by row and bound by bound.
  for (std::size_t i = 0; i < p.A.rows(); ++i)
    if (sgn(d.ineq[i]) != 0 && dot(p.A.row(i), r.point) != p.b[i]) return false;
  for (std::size_t j = 0; j < nv; ++j)
    if (sgn(d.bound[j]) != 0 && sgn(r.point[j]) != 0) return false;
  Rational primal = dot(c_max, r.point);
  Rational dual_value = dot(d.ineq, p.b) + dot(d.eq, p.beq);
  if (primal != dual_value) return false;
  return r.value == dot(p.c, r.point);
}

bool verify_ray(const LpProblem& p, const RationalVector& point, const RationalVector& ray) {
  if (!is_feasible_point(p, point)) return false;
  if (ray.size() != p.num_vars()) return false;
  for (std::size_t i = 0; i < p.A.rows(); ++i)
    if (sgn(dot(p.A.row(i), ray)) > 0) return false;
  for (std::size_t i = 0; i < p.Aeq.rows(); ++i)
    if (sgn(dot(p.Aeq.row(i), ray)) != 0) return false;
  for (std::size_t j = 0; j < ray.size(); ++j)
    if (p.is_nonneg(j) && sgn(ray[j]) < 0) return false;
  return sgn(dot(objective_max_form(p), ray)) > 0;
}

}  // namespace efbound
