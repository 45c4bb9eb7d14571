#ifndef EFBOUND_POLYHEDRA_HPP
#define EFBOUND_POLYHEDRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "efbound/lp.hpp"
#include "efbound/matrix.hpp"

namespace efbound {

// conv(points) + cone(rays). Points and rays are stored as rows.
struct VRep {
  std::size_t dim = 0;
  RationalMatrix points;  // n x dim
  RationalMatrix rays;    // k x dim

  VRep() = default;
  VRep(std::size_t d, RationalMatrix pts, RationalMatrix rs);
  std::size_t num_points() const { return points.rows(); }
  std::size_t num_rays() const { return rays.rows(); }
};

// { x : A x <= b }
struct HRep {
  std::size_t dim = 0;
  RationalMatrix A;  // m x dim
  RationalVector b;

  HRep() = default;
  HRep(std::size_t d, RationalMatrix a, RationalVector rhs);
  std::size_t num_rows() const { return A.rows(); }
};

struct SlackMatrix {
  RationalMatrix vertex_block;  // m x n
  RationalMatrix ray_block;     // m x k
  RationalVector source_b;

  // [vertex_block | ray_block]
  RationalMatrix full() const;
  // All entries >= 0, i.e. P is contained in Q.
  bool nonnegative() const;
};

// K = { x : E x + F y = g, y >= 0 }. Size is the number of auxiliary
// nonnegative variables (columns of F); equality rows are counted separately.
struct ExtendedFormulation {
  RationalMatrix E;  // p x d
  RationalMatrix F;  // p x r
  RationalVector g;

  ExtendedFormulation() = default;
  ExtendedFormulation(RationalMatrix e, RationalMatrix f, RationalVector rhs);
  std::size_t dim() const { return E.cols(); }
  std::size_t size() const { return F.cols(); }
  std::size_t num_equations() const { return g.size(); }
};

SlackMatrix build_slack(const VRep& p, const HRep& q);
HRep dilate(const HRep& q, const Rational& rho);
SlackMatrix shift_slack(const SlackMatrix& s, const Rational& rho);

// A x + I y = b, y >= 0.
ExtendedFormulation trivial_ef(const HRep& q);

// E x + F y - lambda g = 0, y >= 0, lambda >= 0: the conic hull of K
// (plus its recession cone); size grows by one.
ExtendedFormulation homogenize(const ExtendedFormulation& k);

// ---- P subset K ---------------------------------------------------------

enum class GeneratorKind { point, ray };

struct GeneratorFailure {
  GeneratorKind kind = GeneratorKind::point;
  std::size_t index = 0;
  LpProblem witness_lp;        // F w = rhs, w >= 0
  FarkasCertificate certificate;
};

struct ContainmentResult {
  bool contained = false;
  RationalMatrix point_witnesses;  // r x n, column j = w_j
  RationalMatrix ray_witnesses;    // r x k, column j = z_j
  std::optional<GeneratorFailure> failure;
};

ContainmentResult ef_contains_points(const VRep& p, const ExtendedFormulation& k);

// ---- K subset Q ---------------------------------------------------------

struct RowFailure {
  std::size_t row = 0;
  RationalVector x;  // with y: E x + F y = g, y >= 0, A_row x > b_row
  RationalVector y;
};

struct DerivationResult {
  bool contained = false;
  bool k_empty = false;        // K is empty; `emptiness` proves it
  RationalMatrix multipliers;  // m x p, row i = t_i
  RationalVector offsets;      // c_i >= 0 with t_i g + c_i = b_i
  std::optional<RowFailure> failure;
  std::optional<FarkasCertificate> emptiness;
};

struct DerivationOptions {
  // Demand c_i = 0 for every row; rows that need a positive offset are
  // reported as failures with contained = false and no RowFailure.
  bool require_zero_offset = false;
  // Per-row LPs run under OpenMP when true; the serial path is the reference.
  bool parallel = true;
};

DerivationResult ef_inside_hrep(const ExtendedFormulation& k, const HRep& q,
                                const DerivationOptions& options = {});

// Exact re-check of a claimed derivation table (T, c).
bool verify_derivation(const ExtendedFormulation& k, const HRep& q, const RationalMatrix& t,
                       const RationalVector& c);

// ---- sandwich -----------------------------------------------------------

enum class SandwichStatus { pass, affine, fail };
std::string to_string(SandwichStatus status);

struct SandwichReport {
  SandwichStatus status = SandwichStatus::fail;
  ContainmentResult inner;     // P subset K
  DerivationResult outer;      // K subset rho Q
  bool affine_hull_inside = false;        // aff(P) subset rho Q  (xc = 0 case)
  bool recession_full_dimensional = false;  // rec(Q) has interior: +-1 ambiguity

  bool ok() const { return status != SandwichStatus::fail; }
};

SandwichReport verify_sandwich(const VRep& p, const HRep& q, const Rational& rho,
                               const ExtendedFormulation& k);

// aff(P) subset Q, read off the slack matrix: every row has a zero ray part
// and a constant nonnegative vertex part.
bool affine_hull_inside(const SlackMatrix& s);

// { x : A x <= 0 } has nonempty interior.
bool recession_cone_full_dimensional(const HRep& q);

}  // namespace efbound

#endif  // EFBOUND_POLYHEDRA_HPP
