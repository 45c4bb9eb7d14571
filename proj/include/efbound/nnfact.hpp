#ifndef EFBOUND_NNFACT_HPP
#define EFBOUND_NNFACT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "efbound/matrix.hpp"
#include "efbound/polyhedra.hpp"

namespace efbound {

struct NonnegFactorization {
  RationalMatrix T;  // m x r
  RationalMatrix U;  // r x n
  std::size_t rank() const { return T.cols(); }
};

struct FactorizationCheck {
  bool ok = false;
  std::string reason;  // empty when ok
  // Offending entry: which ('T', 'U' or 'S' for a product mismatch) and where.
  char matrix = '\0';
  std::size_t row = 0;
  std::size_t col = 0;

  explicit operator bool() const { return ok; }
};

// Dimension mismatch throws InputError; a sign or product failure is
// reported with its first location in row-major order.
FactorizationCheck verify_factorization(const RationalMatrix& s, const NonnegFactorization& fac);

// A x + T y = b, y >= 0.
ExtendedFormulation factorization_to_ef(const HRep& q, const NonnegFactorization& fac);

// Thrown when ef_to_factorization's precondition P subset K subset Q fails.
class SandwichFailure : public std::runtime_error {
 public:
  SandwichFailure(const std::string& what, SandwichReport report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const SandwichReport& report() const { return report_; }

 private:
  SandwichReport report_;
};

struct EfToFactorizationResult {
  NonnegFactorization factorization;
  bool zero_offset = false;  // c = 0 was achievable; rank <= size(K)
};

// Builds [TF | c] * [[W, Z], [1^T, 0^T]] from the witnesses of P subset K and
// the Farkas derivation of K subset Q. A zero offset column is dropped, so
// the rank is size(K) when c = 0 and size(K) + 1 otherwise.
EfToFactorizationResult ef_to_factorization(const ExtendedFormulation& k, const VRep& p,
                                            const HRep& q);

struct RectCoverConfig {
  std::size_t max_rectangles = 200000;  // maximal rectangles enumerated
  std::uint64_t max_nodes = 5000000;    // branch-and-bound nodes
};

// Minimum number of all-nonzero combinatorial rectangles covering the
// support of S. Throws BudgetError (carrying the best lower bound proven so
// far) when a limit is hit.
std::size_t rect_cover_lb(const RationalMatrix& s, const RectCoverConfig& config = {});

enum class LowerWitness { rank, rectangle_cover };
enum class UpperWitness { trivial, factorization };

struct HeuristicConfig {
  bool enabled = true;
  int iterations = 2000;
  int restarts = 4;
  std::uint64_t seed = 1;
  long max_denominator = 64;
};

struct NnegrkBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t rank = 0;
  std::size_t rectangle_cover = 0;
  bool rectangle_cover_exact = true;  // false: search budget hit, value is its proven bound
  LowerWitness lower_witness = LowerWitness::rank;
  UpperWitness upper_witness = UpperWitness::trivial;
  std::optional<NonnegFactorization> factorization;  // when upper_witness = factorization
};

std::string to_string(LowerWitness w);
std::string to_string(UpperWitness w);

// Sound bracket on nnegrk(S): lower from exact rank and rectangle cover,
// upper either min(rows, cols) or an exactly verified factorization found by
// multiplicative updates + rational rounding + an exact LP solve for the
// second factor. Requires S >= 0.
NnegrkBounds nnegrk_bounds(const RationalMatrix& s, const HeuristicConfig& heuristic = {},
                           const RectCoverConfig& cover = {});

// Trivial rank-min(m, n) factorization (I * S or S * I).
NonnegFactorization trivial_factorization(const RationalMatrix& s);

}  // namespace efbound

#endif  // EFBOUND_NNFACT_HPP
