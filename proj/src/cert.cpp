#include "efbound/cert.hpp"

#include <bit>

#include "efbound/error.hpp"

namespace efbound::cert {
namespace {

json header(const std::string& kind, const std::string& context) {
  json j{{"kind", kind}};
  if (!context.empty()) j["context"] = context;
  return j;
}

Subset subset_from(const json& j, int n) {
  const auto v = j.get<std::uint64_t>();
  if (n < 0 || n > 31 || (v >> n) != 0) throw InputError("certificate: subset outside [n]");
  return static_cast<Subset>(v);
}

CheckResult verdict(const std::string& kind, bool ok, const std::string& detail) {
  return {ok, kind, detail};
}

CheckResult check_lp(const json& c) {
  const LpProblem p = io::lp_from(c.at("problem"));
  const FarkasCertificate f = io::farkas_from(c.at("farkas"));
  return verdict("lp-infeasible", verify_farkas(p, f),
                 "Farkas multipliers prove the LP has no feasible point");
}

CheckResult check_point(const json& c) {
  const ExtendedFormulation k = io::ef_from(c.at("ef"));
  const RationalVector x = io::vector_from(c.at("x"));
  const RationalVector y = io::vector_from(c.at("y"));
  const RationalVector a = io::vector_from(c.at("row"));
  const Rational rhs = io::rational_from(c.at("rhs"));
  if (x.size() != k.dim() || y.size() != k.size() || a.size() != k.dim())
    return verdict("ef-point-violates", false, "vector lengths do not match the EF");
  for (const auto& v : y)
    if (v < 0) return verdict("ef-point-violates", false, "y has a negative entry");
  const RationalVector ex = k.E.rows() ? mat_vec(k.E, x) : RationalVector(k.g.size());
  const RationalVector fy = k.F.cols() ? mat_vec(k.F, y) : RationalVector(k.g.size());
  for (std::size_t i = 0; i < k.g.size(); ++i)
    if (ex[i] + fy[i] != k.g[i]) return verdict("ef-point-violates", false, "E x + F y != g");
  const Rational lhs = dot(a, x);
  return verdict("ef-point-violates", lhs > rhs,
                 "point of K with a.x = " + to_string(lhs) + " > " + to_string(rhs));
}

CheckResult check_factorization(const json& c) {
  const RationalMatrix s = io::matrix_from(c.at("S"));
  const NonnegFactorization fac{io::matrix_from(c.at("T")), io::matrix_from(c.at("U"))};
  const auto got = verify_factorization(s, fac);
  if (got.ok) return verdict("factorization-mismatch", false, "the factorization verifies");
  const std::string where = c.at("matrix").get<std::string>();
  const bool same = where.size() == 1 && where[0] == got.matrix &&
                    c.at("row").get<std::size_t>() == got.row &&
                    c.at("col").get<std::size_t>() == got.col;
  return verdict("factorization-mismatch", same,
                 std::string("first failure at ") + got.matrix + "(" + std::to_string(got.row + 1) +
                     "," + std::to_string(got.col + 1) + "): " + got.reason);
}

CheckResult check_qall(const json& c) {
  const RationalMatrix x = io::matrix_from(c.at("x"));
  if (x.rows() != x.cols()) return verdict("qall-violation", false, "x is not square");
  if (c.contains("graph")) {
    const Graph g = io::graph_from(c.at("graph"));
    if (static_cast<std::size_t>(g.n()) != x.rows())
      return verdict("qall-violation", false, "graph ground set does not match x");
    const Rational lhs = frobenius(clique_weight(g), x);
    const int omega = clique_number(g);
    return verdict("qall-violation", lhs > omega,
                   "<w^G, x> = " + to_string(lhs) + " vs omega(G) = " + std::to_string(omega));
  }
  const auto i = c.at("i").get<std::size_t>() - 1, j = c.at("j").get<std::size_t>() - 1;
  if (i == j || i >= x.rows() || j >= x.cols())
    return verdict("qall-violation", false, "entry is not an off-diagonal position");
  return verdict("qall-violation", x(i, j) < 0, "x_ij = " + to_string(x(i, j)));
}

CheckResult check_psd(const json& c) {
  const int n = c.at("n").get<int>();
  if (n < 0 || n > 31) return verdict("psd-identity-failure", false, "n out of range");
  const Subset a = subset_from(c.at("a"), n), b = subset_from(c.at("b"), n);
  const Rational lhs = frobenius(psd_T(a, n), psd_U(b, n));
  const int k = 1 - std::popcount(a & b);
  return verdict("psd-identity-failure", lhs != k * k,
                 "<T_a, U^b> = " + to_string(lhs) + ", (1 - a.b)^2 = " + std::to_string(k * k));
}

CheckResult check_spectra(const json& c) {
  const int n = c.at("n").get<int>();
  if (n < 0 || n > 31) return verdict("spectra-witness-failure", false, "n out of range");
  const Subset a = subset_from(c.at("a"), n), b = subset_from(c.at("b"), n);
  const RationalMatrix y = io::matrix_from(c.at("Y"));
  const auto sz = static_cast<std::size_t>(n) + 1;
  if (y.rows() != sz || y.cols() != sz) return verdict("spectra-witness-failure", false, "Y has the wrong shape");
  const auto bv = bits(b, n);
  const Rational lhs = frobenius(hard_objective(a, n), outer(bv, bv)) + frobenius(psd_T(a, n), y);
  return verdict("spectra-witness-failure", lhs != 1, "equation value " + to_string(lhs) + " != 1");
}

CheckResult check_identity(const json& c) {
  const SubsetFunction f = io::function_from(c.at("f"));
  const SubsetFunction g = io::function_from(c.at("g"));
  if (f.n != g.n) return verdict("identity-failure", false, "f and g differ in n");
  const auto report = razborov_identities(f, g, UdisjParams(f.n), false);
  return verdict("identity-failure", !report.holds(), "identities recomputed by full enumeration");
}

}  // namespace

json lp_infeasible(const LpProblem& problem, const FarkasCertificate& farkas,
                   const std::string& context) {
  json j = header("lp-infeasible", context);
  j["problem"] = io::to_json(problem);
  j["farkas"] = io::to_json(farkas);
  return j;
}

json ef_point_violates(const ExtendedFormulation& k, const RationalVector& x,
                       const RationalVector& y, std::span<const Rational> row, const Rational& rhs,
                       const std::string& context) {
  json j = header("ef-point-violates", context);
  j["ef"] = io::to_json(k);
  j["x"] = io::to_json(x);
  j["y"] = io::to_json(y);
  j["row"] = io::to_json(RationalVector(row.begin(), row.end()));
  j["rhs"] = io::to_json(rhs);
  return j;
}

json factorization_mismatch(const RationalMatrix& s, const NonnegFactorization& fac,
                            const FactorizationCheck& check) {
  json j = header("factorization-mismatch", check.reason);
  j["S"] = io::to_json(s);
  j["T"] = io::to_json(fac.T);
  j["U"] = io::to_json(fac.U);
  j["matrix"] = std::string(1, check.matrix);
  j["row"] = check.row;
  j["col"] = check.col;
  return j;
}

json qall_violation(const RationalMatrix& x, const QallViolation& v) {
  json j = header("qall-violation", "");
  j["x"] = io::to_json(x);
  if (v.kind == QallViolation::Kind::graph) {
    j["graph"] = io::to_json(*v.graph);
  } else {
    j["i"] = v.i + 1;
    j["j"] = v.j + 1;
  }
  j["lhs"] = io::to_json(v.lhs);
  j["rhs"] = io::to_json(v.rhs);
  return j;
}

json psd_identity_failure(int n, Subset a, Subset b) {
  json j = header("psd-identity-failure", "");
  j["n"] = n;
  j["a"] = a;
  j["b"] = b;
  return j;
}

json spectra_witness_failure(int n, Subset b, const RationalMatrix& y, Subset a) {
  json j = header("spectra-witness-failure", "");
  j["n"] = n;
  j["b"] = b;
  j["a"] = a;
  j["Y"] = io::to_json(y);
  return j;
}

json identity_failure(const SubsetFunction& f, const SubsetFunction& g) {
  json j = header("identity-failure", "");
  j["f"] = io::to_json(f);
  j["g"] = io::to_json(g);
  return j;
}

json from_sandwich(const SandwichReport& report, const HRep& scaled, const ExtendedFormulation& k) {
  if (report.inner.failure) {
    const auto& f = *report.inner.failure;
    const std::string what = (f.kind == GeneratorKind::point ? "point " : "ray ") +
                             std::to_string(f.index + 1) + " of P is not in K";
    return lp_infeasible(f.witness_lp, f.certificate, what);
  }
  if (report.outer.failure) {
    const auto& f = *report.outer.failure;
    return ef_point_violates(k, f.x, f.y, scaled.A.row(f.row), scaled.b[f.row],
                             "K violates row " + std::to_string(f.row + 1) + " of rho Q");
  }
  throw InternalError("from_sandwich: report has no failure to certify");
}

CheckResult check(const json& c) {
  std::string kind = "unknown";
  try {
    kind = c.at("kind").get<std::string>();
    if (kind == "lp-infeasible") return check_lp(c);
    if (kind == "ef-point-violates") return check_point(c);
    if (kind == "factorization-mismatch") return check_factorization(c);
    if (kind == "qall-violation") return check_qall(c);
    if (kind == "psd-identity-failure") return check_psd(c);
    if (kind == "spectra-witness-failure") return check_spectra(c);
    if (kind == "identity-failure") return check_identity(c);
    return {false, kind, "unknown certificate kind"};
  } catch (const json::exception& e) {
    return {false, kind, std::string("malformed certificate: ") + e.what()};
  } catch (const InputError& e) {
    return {false, kind, std::string("malformed certificate: ") + e.what()};
  } catch (const BudgetError& e) {
    return {false, kind, std::string("certificate too large to re-check: ") + e.what()};
  }
}

}  // namespace efbound::cert
