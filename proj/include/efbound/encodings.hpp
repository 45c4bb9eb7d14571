#ifndef EFBOUND_ENCODINGS_HPP
#define EFBOUND_ENCODINGS_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "efbound/matrix.hpp"
#include "efbound/polyhedra.hpp"
#include "efbound/udisj.hpp"

namespace efbound {

// Graph on a subset of the fixed ground set [n]. Vertices are 0-based here;
// the JSON form uses 1-based labels.
class Graph {
 public:
  Graph(int n, Subset vertices, std::set<std::pair<int, int>> edges);
  static Graph complete(int n);
  static Graph edgeless(int n, Subset vertices);
  static Graph cycle(int n);
  static Graph path(int n);

  int n() const { return n_; }
  Subset vertices() const { return vertices_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool has_vertex(int v) const { return (vertices_ >> v) & 1U; }
  bool adjacent(int u, int v) const;
  // Neighbours of v as a bitmask.
  Subset neighbourhood(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

 private:
  int n_;
  Subset vertices_;
  std::set<std::pair<int, int>> edges_;  // u < v
  std::vector<Subset> adjacency_;
};

struct HardPair {
  int n = 0;
  VRep P;  // vec(b b^T), b in {0,1}^n by bitmask order
  HRep Q;  // <2 diag(a) - a a^T, x> <= 1, a by bitmask order
};

inline constexpr int kHardPairLimit = 10;
inline constexpr int kCliqueLimit = 20;
inline constexpr int kCorLimit = 20;
inline constexpr int kPsdLimit = 10;

// Row-major flattening of an n x n matrix variable.
RationalVector vec(const RationalMatrix& m);
RationalMatrix unvec(std::span<const Rational> v, std::size_t n);
Rational frobenius(const RationalMatrix& a, const RationalMatrix& b);

RationalVector bits(Subset s, int n);
RationalMatrix outer(std::span<const Rational> u, std::span<const Rational> v);
// 2 diag(a) - a a^T
RationalMatrix hard_objective(Subset a, int n);

HardPair build_hard_pair(int n, int limit = kHardPairLimit);
SlackMatrix hardpair_slack(int n, const Rational& rho, int limit = kHardPairLimit);

RationalMatrix clique_weight(const Graph& g);
int clique_number(const Graph& g, int limit = kCliqueLimit);

struct CorMaximum {
  Rational value;
  Subset argmax = 0;
};
CorMaximum max_over_cor(const RationalMatrix& w, int limit = kCorLimit);

struct QallViolation {
  enum class Kind { nonnegativity, graph } kind = Kind::graph;
  std::optional<Graph> graph;
  int i = 0, j = 0;  // nonnegativity row x_ij >= 0 (0-based)
  Rational lhs;      // <w^G, x>  or  x_ij
  Rational rhs;      // omega(G) or 0
};

struct QallConfig {
  bool sampled = false;   // heuristic mode, required for n > 4
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
};

// nullopt means x is in Q^all (exhaustive) or no violation was sampled.
std::optional<QallViolation> qall_separate(const RationalMatrix& x, const QallConfig& config = {});

struct BoxReport {
  Rational box_max;
  Rational cor_max;
  bool nonzero_diagonal = false;
  bool within_factor_n = false;  // box_max <= n cor_max, or both are 0
};

// Slack form of [0,1]^{n x n}: x - y = 0, x + z = 1; size 2 n^2.
ExtendedFormulation box_ef(int n);
BoxReport box_report(const RationalMatrix& w);

enum class CutFamily { cut_polytope, cut_cone, correlation_cone };
std::optional<CutFamily> parse_cut_family(const std::string& name);
std::string to_string(CutFamily kind);

inline constexpr int kCutLimit = 8;

// Edge order (1,2), (1,3), ..., (1,n), (2,3), ...
std::vector<std::pair<int, int>> edge_order(int n);
// Cut vector of delta(X) for X a bitmask over [n].
RationalVector cut_vector(Subset x, int n);

VRep build_cut_family(CutFamily kind, int n, int limit = kCutLimit);

// Triangle and perimeter inequalities; equal to CUT(n) for n <= 4.
HRep metric_polytope(int n);
// Triangle inequalities x_ij - x_ik - x_jk <= 0; equal to CUTCONE(n) for n <= 4.
HRep metric_cone(int n);

// y_ii = x_in, y_ij = (x_in + x_jn - x_ij) / 2 with distinguished node n.
RationalMatrix covariance_map(std::span<const Rational> x, int n);

struct PsdFactorPair {
  int n = 0;
  std::vector<RationalMatrix> T;  // T_a = (-1; a)(-1; a)^T
  std::vector<RationalMatrix> U;  // U^b = (1; b)(1; b)^T
};

RationalMatrix psd_T(Subset a, int n);
RationalMatrix psd_U(Subset b, int n);
PsdFactorPair psd_factors(int n, int limit = kPsdLimit);

struct PsdIdentityReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t failures = 0;
  bool holds = false;
};
PsdIdentityReport psd_identity_check(int n, int limit = kPsdLimit, bool parallel = true);

// (x, Y) = (b b^T, Y) satisfies <2 diag(a) - a a^T, x> + <T_a, Y> = 1 for all a.
// Y defaults to U^b.
bool spectra_vertex_witness(Subset b, int n, const std::optional<RationalMatrix>& y = std::nullopt,
                            int limit = kPsdLimit);

// max |entry| of 2 diag(a) - a a^T.
Rational objmat_infnorm_check(Subset a, int n);

}  // namespace efbound

#endif  // EFBOUND_ENCODINGS_HPP
