#ifndef EFBOUND_CERT_HPP
#define EFBOUND_CERT_HPP

// Self-contained failure certificates. Each carries every input the claim
// depends on, so check() can re-verify it exactly without other files.
//
// kinds:
//   lp-infeasible            LP data + Farkas multipliers
//   ef-point-violates        EF, a point (x, y) of it, and a row a.x <= rhs it violates
//   factorization-mismatch   S, T, U and the first failing entry
//   qall-violation           x and either a graph G with <w^G, x> > omega(G) or x_ij < 0
//   psd-identity-failure     n and a pair (a, b) with <T_a, U^b> != (1 - a.b)^2
//   spectra-witness-failure  n, b, Y and an a where the equation fails
//   identity-failure         f, g tables for which an identity fails

#include <string>

#include "efbound/io.hpp"

namespace efbound::cert {

using io::json;

json lp_infeasible(const LpProblem& problem, const FarkasCertificate& farkas,
                   const std::string& context);
json ef_point_violates(const ExtendedFormulation& k, const RationalVector& x,
                       const RationalVector& y, std::span<const Rational> row, const Rational& rhs,
                       const std::string& context);
json factorization_mismatch(const RationalMatrix& s, const NonnegFactorization& fac,
                            const FactorizationCheck& check);
json qall_violation(const RationalMatrix& x, const QallViolation& v);
json psd_identity_failure(int n, Subset a, Subset b);
json spectra_witness_failure(int n, Subset b, const RationalMatrix& y, Subset a);
json identity_failure(const SubsetFunction& f, const SubsetFunction& g);

// First failing part of a sandwich report; `scaled` is the dilated Q the
// report was computed against.
json from_sandwich(const SandwichReport& report, const HRep& scaled, const ExtendedFormulation& k);

struct CheckResult {
  bool valid = false;
  std::string kind;
  std::string detail;
};

// Malformed certificates are reported as invalid, never thrown.
CheckResult check(const json& certificate);

}  // namespace efbound::cert

#endif  // EFBOUND_CERT_HPP
