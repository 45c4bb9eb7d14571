#ifndef EFBOUND_LP_HPP
#define EFBOUND_LP_HPP

#include <optional>
#include <string>
#include <vector>

#include "efbound/matrix.hpp"

namespace efbound {

enum class Sense { maximize, minimize };
enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus status);

// optimize c.x  s.t.  A x <= b,  Aeq x = beq,  x_j >= 0 for j with nonneg[j].
// Variables are free unless flagged; an empty `nonneg` means all free. A
// constraint block with zero rows may have any column count.
struct LpProblem {
  RationalMatrix A;
  RationalVector b;
  RationalMatrix Aeq;
  RationalVector beq;
  RationalVector c;
  Sense sense = Sense::maximize;
  std::vector<bool> nonneg;

  std::size_t num_vars() const { return c.size(); }
  bool is_nonneg(std::size_t j) const { return !nonneg.empty() && nonneg[j]; }
};

// Infeasibility proof for an LpProblem:
//   ineq >= 0, bound >= 0 (zero on free variables),
//   ineq.A + eq.Aeq - bound = 0,  ineq.b + eq.beq < 0.
// `bound` are the multipliers of the implicit rows -x_j <= 0.
struct FarkasCertificate {
  RationalVector ineq;
  RationalVector eq;
  RationalVector bound;
};

// Optimality proof. With c' = c (maximize) or -c (minimize):
//   ineq >= 0, bound >= 0, ineq.A + eq.Aeq - bound = c',
//   ineq.b + eq.beq = c'.x, complementary slackness with `point`.
struct DualSolution {
  RationalVector ineq;
  RationalVector eq;
  RationalVector bound;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;          // optimal
  RationalVector point;    // optimal; feasible start of `ray` when unbounded
  DualSolution dual;       // optimal
  FarkasCertificate farkas;  // infeasible
  RationalVector ray;      // unbounded: A r <= 0, Aeq r = 0, r_j >= 0 on nonneg, c'.r > 0
};

// Two-phase dense tableau simplex with Bland's rule, exact throughout. Every
// returned certificate is re-verified before return; a failed re-check raises
// InternalError. Dimension mismatch raises InputError.
LpResult lp_solve(const LpProblem& problem);

LpResult lp_solve(const RationalMatrix& A, const RationalVector& b,
                  const RationalMatrix& Aeq, const RationalVector& beq,
                  const RationalVector& c, Sense sense);

// Independent exact checks of the three certificate kinds.
bool verify_farkas(const LpProblem& problem, const FarkasCertificate& cert);
bool verify_optimal(const LpProblem& problem, const LpResult& result);
bool verify_ray(const LpProblem& problem, const RationalVector& point,
                const RationalVector& ray);
bool is_feasible_point(const LpProblem& problem, const RationalVector& x);

}  // namespace efbound

#endif  // EFBOUND_LP_HPP
