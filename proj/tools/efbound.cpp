// efbound: command-line front end. One sub-command per construction; exit
// status 0 = verified, 1 = verification failed (certificate written),
// 2 = bad input, 3 = budget exhausted, 4 = internal error.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "efbound/budget.hpp"
#include "efbound/cert.hpp"
#include "efbound/encodings.hpp"
#include "efbound/error.hpp"
#include "efbound/io.hpp"
#include "efbound/nnfact.hpp"
#include "efbound/parallel.hpp"
#include "efbound/polyhedra.hpp"
#include "efbound/udisj.hpp"

using namespace efbound;
using io::json;

namespace {

constexpr int kVerified = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBudget = 3;
constexpr int kInternal = 4;

struct Globals {
  int threads = 0;
  std::string format = "text";
  std::string out;
  std::string cert = "efbound-cert.json";
};

Globals g;

// ---- small parsers ---------------------------------------------------------

double parse_real(const std::string& text) {
  if (text.find('/') != std::string::npos) return parse_rational(text).get_d();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw InputError("not a number: '" + text + "'");
  return v;
}

RationalVector parse_list(const std::string& text) {
  RationalVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw InputError("empty entry in list '" + text + "'");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

// 0/1 list with element 1 first.
Subset parse_bits(const std::string& text, int n) {
  const RationalVector v = parse_list(text);
  if (static_cast<int>(v.size()) != n) throw InputError("expected " + std::to_string(n) + " bits");
  Subset s = 0;
  for (int i = 0; i < n; ++i) {
    if (v[static_cast<std::size_t>(i)] == 1)
      s |= Subset{1} << i;
    else if (v[static_cast<std::size_t>(i)] != 0)
      throw InputError("bits must be 0 or 1");
  }
  return s;
}

std::string bits_text(Subset s, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += (i ? "," : "") + std::to_string((s >> i) & 1U);
  return out;
}

std::string subset_text(Subset s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; s >> i; ++i)
    if ((s >> i) & 1U) {
      out += (first ? "" : ",") + std::to_string(i + 1);
      first = false;
    }
  return out + "}";
}

// ---- output ----------------------------------------------------------------

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    io::write_text(path, text);
}

// Data-producing commands: the artifact goes to --out, or stdout without it.
int emit_artifact(const json& artifact, const std::string& summary) {
  if (g.out.empty()) {
    std::cout << io::dump(artifact);
  } else {
    io::write_text(g.out, io::dump(artifact));
    std::cout << summary << "\n";
  }
  return kVerified;
}

// Check commands: report on stdout in --format, JSON copy in --out.
void emit_report(const json& report, const std::vector<std::string>& lines) {
  if (g.format == "json")
    std::cout << io::dump(report);
  else
    for (const auto& l : lines) std::cout << l << "\n";
  if (!g.out.empty()) io::write_text(g.out, io::dump(report));
}

int fail_with(const json& certificate, const std::string& message) {
  io::write_text(g.cert, io::dump(certificate));
  std::cerr << "efbound: " << message << "; certificate written to " << g.cert << "\n";
  return kFailed;
}

// ---- sub-commands ----------------------------------------------------------

struct Paths {
  std::string p, q, ef, fac, slack, matrix, graph, x;
};

int cmd_slack(const Paths& a) {
  const SlackMatrix s = build_slack(io::vrep_from(io::read_json(a.p)), io::hrep_from(io::read_json(a.q)));
  std::ostringstream sum;
  sum << "slack " << s.vertex_block.rows() << "x" << s.vertex_block.cols() << " + rays "
      << s.ray_block.cols() << ", nonnegative=" << (s.nonnegative() ? "true" : "false");
  return emit_artifact(io::to_json(s), sum.str());
}

int cmd_dilate(const Paths& a, const std::string& rho) {
  const HRep q = dilate(io::hrep_from(io::read_json(a.q)), parse_rational(rho));
  return emit_artifact(io::to_json(q), "dilated " + std::to_string(q.num_rows()) + " rows by " + rho);
}

int cmd_shift(const Paths& a, const std::string& rho) {
  const SlackMatrix s = shift_slack(io::slack_from(io::read_json(a.slack)), parse_rational(rho));
  return emit_artifact(io::to_json(s), "shifted slack by rho=" + rho);
}

int cmd_fac2ef(const Paths& a) {
  const HRep q = io::hrep_from(io::read_json(a.q));
  const NonnegFactorization fac = io::factorization_from(io::read_json(a.fac));
  if (!a.p.empty()) {
    const RationalMatrix s = build_slack(io::vrep_from(io::read_json(a.p)), q).full();
    const auto check = verify_factorization(s, fac);
    if (!check) return fail_with(cert::factorization_mismatch(s, fac, check), "factorization does not verify: " + check.reason);
  }
  const ExtendedFormulation k = factorization_to_ef(q, fac);
  return emit_artifact(io::to_json(k), "EF of size " + std::to_string(k.size()));
}

int cmd_ef2fac(const Paths& a) {
  const ExtendedFormulation k = io::ef_from(io::read_json(a.ef));
  const VRep p = io::vrep_from(io::read_json(a.p));
  const HRep q = io::hrep_from(io::read_json(a.q));
  try {
    const auto r = ef_to_factorization(k, p, q);
    return emit_artifact(io::to_json(r.factorization),
                         "factorization of rank " + std::to_string(r.factorization.rank()) +
                             (r.zero_offset ? " (zero offset)" : " (with offset column)"));
  } catch (const SandwichFailure& e) {
    return fail_with(cert::from_sandwich(e.report(), q, k), "P subset K subset Q fails");
  }
}

int cmd_sandwich(const Paths& a, const std::string& rho_text) {
  const VRep p = io::vrep_from(io::read_json(a.p));
  const HRep q = io::hrep_from(io::read_json(a.q));
  const ExtendedFormulation k = io::ef_from(io::read_json(a.ef));
  const Rational rho = parse_rational(rho_text);
  const SandwichReport r = verify_sandwich(p, q, rho, k);
  json report{{"status", to_string(r.status)},
              {"rho", io::to_json(rho)},
              {"P_in_K", r.inner.contained},
              {"K_in_rhoQ", r.outer.contained},
              {"affine_hull_inside", r.affine_hull_inside},
              {"recession_full_dimensional", r.recession_full_dimensional}};
  if (r.inner.contained) {
    report["point_witnesses"] = io::to_json(r.inner.point_witnesses);
    report["ray_witnesses"] = io::to_json(r.inner.ray_witnesses);
  }
  if (r.outer.contained && !r.outer.k_empty) {
    report["multipliers"] = io::to_json(r.outer.multipliers);
    report["offsets"] = io::to_json(r.outer.offsets);
  }
  report["K_empty"] = r.outer.k_empty;
  std::vector<std::string> lines{"status=" + to_string(r.status),
                                 std::string("P in K: ") + (r.inner.contained ? "yes" : "no"),
                                 std::string("K in rho Q: ") + (r.outer.contained ? "yes" : "no")};
  if (r.recession_full_dimensional)
    lines.push_back("note: rec(Q) is full-dimensional; the size bound holds up to an additive 0 or 1");
  emit_report(report, lines);
  if (!r.ok()) return fail_with(cert::from_sandwich(r, dilate(q, rho), k), "sandwich verification failed");
  return kVerified;
}

struct NnegOpts {
  int iterations = 2000;
  int restarts = 4;
  std::uint64_t seed = 1;
  long max_den = 64;
  bool no_heuristic = false;
};

int cmd_nnegrk(const Paths& a, const NnegOpts& o) {
  const json in = io::read_json(a.matrix);
  const RationalMatrix s = in.contains("vertex_block") ? io::slack_from(in).full() : io::matrix_from(in);
  HeuristicConfig h;
  h.enabled = !o.no_heuristic;
  h.iterations = o.iterations;
  h.restarts = o.restarts;
  h.seed = o.seed;
  h.max_denominator = o.max_den;
  const NnegrkBounds b = nnegrk_bounds(s, h);
  json report{{"rows", s.rows()},
              {"cols", s.cols()},
              {"rank", b.rank},
              {"rectangle_cover", b.rectangle_cover},
              {"rectangle_cover_exact", b.rectangle_cover_exact},
              {"lower", b.lower},
              {"lower_witness", to_string(b.lower_witness)},
              {"upper", b.upper},
              {"upper_witness", to_string(b.upper_witness)}};
  if (b.factorization) report["factorization"] = io::to_json(*b.factorization);
  std::vector<std::string> lines{
      "rank=" + std::to_string(b.rank),
      "rectangle-cover=" + std::to_string(b.rectangle_cover) + (b.rectangle_cover_exact ? "" : " (budget hit; lower bound only)"),
      "lower=" + std::to_string(b.lower) + " via " + to_string(b.lower_witness),
      "upper=" + std::to_string(b.upper) + " via " + to_string(b.upper_witness)};
  emit_report(report, lines);
  return kVerified;
}

int cmd_udisj_shift(int n, const std::string& rho, const std::string& fill, int limit) {
  ShiftSpec spec{n, parse_rational(rho), std::nullopt};
  if (!fill.empty()) spec.constant_fill = parse_rational(fill);
  const RationalMatrix m = build_shift(spec, limit);
  return emit_artifact(io::to_json(m), "rho-extension " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

SubsetFunction random_function(std::mt19937_64& rng, int n) {
  SubsetFunction f{n, RationalVector(std::size_t{1} << n)};
  std::uniform_int_distribution<long> num(0, 9), den(1, 4), zero(0, 4);
  for (auto& v : f.values) {
    if (zero(rng) == 0) continue;  // leave some zeros
    const long q = den(rng);
    v = Rational(num(rng), q);
    v.canonicalize();
  }
  return f;
}

int cmd_razborov(int n, int trials, std::uint64_t seed, const Paths& a, const std::string& f_path,
                 const std::string& g_path) {
  (void)a;
  const UdisjParams params(n);
  const ClassProbabilities pr = mu_class_probabilities(params);
  json report{{"n", n}, {"ell", params.ell()}, {"P_A", io::to_json(pr.A)}, {"P_B", io::to_json(pr.B)},
              {"uniform_within_classes", pr.uniform_within_classes}, {"trials", json::array()}};
  std::vector<std::string> lines{"n=" + std::to_string(n) + " l=" + std::to_string(params.ell()),
                                 "P(A)=" + to_string(pr.A) + " P(B)=" + to_string(pr.B)};
  bool ok = pr.A == Rational(3, 4) && pr.B == Rational(1, 4) && pr.supported_on_union && pr.uniform_within_classes;

  std::vector<std::pair<SubsetFunction, SubsetFunction>> cases;
  if (!f_path.empty() || !g_path.empty()) {
    if (f_path.empty() || g_path.empty()) throw InputError("--f and --g must be given together");
    cases.push_back({io::function_from(io::read_json(f_path)), io::function_from(io::read_json(g_path))});
  } else {
    if (trials < 1) throw InputError("--trials must be positive");
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      SubsetFunction f = random_function(rng, n);
      SubsetFunction gg = random_function(rng, n);
      cases.push_back({std::move(f), std::move(gg)});
    }
  }
  std::optional<std::size_t> first_bad;
  for (std::size_t t = 0; t < cases.size(); ++t) {
    const auto r = razborov_identities(cases[t].first, cases[t].second, params);
    report["trials"].push_back({{"E_X_given_A", io::to_json(r.direct.given_A)},
                                {"E_Row0_Col0", io::to_json(r.row0_col0)},
                                {"E_X_given_B", io::to_json(r.direct.given_B)},
                                {"E_Row1_Col1", io::to_json(r.row1_col1)},
                                {"marginal_identity", r.marginal_identity},
                                {"half_sum_identity", r.half_sum_identity},
                                {"holds", r.holds()}});
    lines.push_back("trial " + std::to_string(t + 1) + ": E[X|A]=" + to_string(r.direct.given_A) +
                    " E[Row0 Col0]=" + to_string(r.row0_col0) + " E[X|B]=" + to_string(r.direct.given_B) +
                    " E[Row1 Col1]=" + to_string(r.row1_col1) + (r.holds() ? " ok" : " FAIL"));
    if (!r.holds() && !first_bad) first_bad = t;
  }
  report["holds"] = ok && !first_bad;
  lines.push_back(ok && !first_bad ? "all identities hold" : "identity failure");
  emit_report(report, lines);
  if (first_bad)
    return fail_with(cert::identity_failure(cases[*first_bad].first, cases[*first_bad].second), "identity failure");
  if (!ok) throw InternalError("class probabilities differ from (3/4, 1/4)");
  return kVerified;
}

std::string rect_text(const Rectangle& r, const std::vector<Subset>& labels) {
  auto side = [&](std::uint64_t mask) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if ((mask >> i) & 1U) {
        s += (first ? "" : ",") + subset_text(labels[i]);
        first = false;
      }
    return s + "}";
  };
  return side(r.rows) + " x " + side(r.cols);
}

int cmd_scan(int n, const std::string& eps_text, const std::string& mode, std::size_t samples,
             std::uint64_t seed) {
  const UdisjParams params(n);
  const Rational eps = parse_rational(eps_text);
  ScanConfig cfg;
  if (mode == "exhaustive")
    cfg.mode = ScanMode::exhaustive;
  else if (mode == "sample")
    cfg.mode = ScanMode::sample;
  else
    throw InputError("--mode must be exhaustive or sample");
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.keep_rows = g.format == "csv";
  const ScanReport r = rectangle_corruption_scan(params, eps, cfg);
  if (g.format == "csv") {
    std::string csv = "rectangle-id,P(R|A),P(R|B),corruption\n";
    for (const auto& row : r.rows)
      csv += std::to_string(row.rect.rows) + "x" + std::to_string(row.rect.cols) + "," +
             to_string(row.p_given_A) + "," + to_string(row.p_given_B) + "," + to_string(row.corruption) + "\n";
    write_or_print(g.out, csv);
    return kVerified;
  }
  json labels = json::array();
  for (Subset s : r.ell_subsets) labels.push_back(s);
  json report{{"n", n},
              {"epsilon", io::to_json(eps)},
              {"mode", mode},
              {"scanned", r.scanned},
              {"labels", labels},
              {"best", {{"rows", r.best.rect.rows},
                        {"cols", r.best.rect.cols},
                        {"P_R_given_A", io::to_json(r.best.p_given_A)},
                        {"P_R_given_B", io::to_json(r.best.p_given_B)},
                        {"corruption", io::to_json(r.best.corruption)}}}};
  std::vector<std::string> lines{"scanned " + std::to_string(r.scanned) + " rectangles (" + mode + ")",
                                 "max corruption " + to_string(r.best.corruption) + " at " +
                                     rect_text(r.best.rect, r.ell_subsets) + " with P(R|A)=" +
                                     to_string(r.best.p_given_A) + " P(R|B)=" + to_string(r.best.p_given_B)};
  if (r.max_clean_A) {
    report["max_clean_P_R_given_A"] = io::to_json(*r.max_clean_A);
    lines.push_back("max P(R|A) with P(R|B)=0: " + to_string(*r.max_clean_A) + " at " +
                    rect_text(*r.max_clean_rect, r.ell_subsets));
  }
  emit_report(report, lines);
  return kVerified;
}

std::string real_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_corruption_bound(const std::string& eps, double ell, double C) {
  const CorruptionParams p{parse_real(eps), C};
  if (!(p.epsilon > 0 && p.epsilon <= 1)) throw InputError("--eps must lie in (0, 1]");
  if (C < 0) throw InputError("--C must be nonnegative");
  const double v = corruption_rhs(p, ell);
  emit_report({{"epsilon", p.epsilon}, {"ell", ell}, {"C", C}, {"value", v}}, {"corruption bound " + real_text(v)});
  return kVerified;
}

int cmd_shift_lb(int n, const std::string& rho, const std::string& eps, double C) {
  std::optional<double> e;
  if (!eps.empty()) e = parse_real(eps);
  const double v = shift_rank_lb(n, parse_rational(rho), e, C);
  emit_report({{"n", n}, {"rho", rho}, {"epsilon", e ? json(*e) : json("auto")}, {"C", C}, {"value", v}},
              {"rank lower bound " + real_text(v)});
  return kVerified;
}

int cmd_hardpair(int n, const std::string& p_out, const std::string& q_out) {
  const HardPair hp = build_hard_pair(n);
  if (!p_out.empty()) io::write_text(p_out, io::dump(io::to_json(hp.P)));
  if (!q_out.empty()) io::write_text(q_out, io::dump(io::to_json(hp.Q)));
  if (!p_out.empty() && !q_out.empty() && g.out.empty()) {
    std::cout << "hard pair n=" << n << ": " << hp.P.num_points() << " points, " << hp.Q.num_rows() << " rows\n";
    return kVerified;
  }
  return emit_artifact({{"n", n}, {"P", io::to_json(hp.P)}, {"Q", io::to_json(hp.Q)}},
                       "hard pair n=" + std::to_string(n));
}

int cmd_hardpair_slack(int n, const std::string& rho) {
  const SlackMatrix s = hardpair_slack(n, parse_rational(rho));
  return emit_artifact(io::to_json(s), "hard-pair slack " + std::to_string(s.vertex_block.rows()) + "x" +
                                           std::to_string(s.vertex_block.cols()) + " at rho=" + rho);
}

int cmd_clique_weight(const Paths& a) {
  return emit_artifact(io::to_json(clique_weight(io::graph_from(io::read_json(a.graph)))), "clique weight matrix");
}

int cmd_clique_omega(const Paths& a) {
  const Graph gr = io::graph_from(io::read_json(a.graph));
  const int omega = clique_number(gr);
  const CorMaximum m = max_over_cor(clique_weight(gr));
  emit_report({{"omega", omega}, {"max_over_cor", io::to_json(m.value)}, {"argmax", bits_text(m.argmax, gr.n())}},
              {"omega=" + std::to_string(omega), "max over COR of <w^G, x> = " + to_string(m.value) +
                                                      " at b=(" + bits_text(m.argmax, gr.n()) + ")"});
  if (m.value != omega) throw InternalError("clique number and COR maximum disagree");
  return kVerified;
}

int cmd_qall(const Paths& a, bool sampled, std::size_t samples, std::uint64_t seed) {
  const RationalMatrix x = io::matrix_from(io::read_json(a.x));
  QallConfig cfg{sampled, seed, samples};
  const auto v = qall_separate(x, cfg);
  if (!v) {
    emit_report({{"inside", true}, {"mode", sampled ? "sampled" : "exhaustive"}},
                {sampled ? "no violated constraint sampled (heuristic)" : "inside Q^all"});
    return kVerified;
  }
  json report{{"inside", false}, {"lhs", io::to_json(v->lhs)}, {"rhs", io::to_json(v->rhs)}};
  std::string line;
  if (v->kind == QallViolation::Kind::graph) {
    report["graph"] = io::to_json(*v->graph);
    line = "violated: graph " + io::to_json(*v->graph).dump() + " with <w^G,x>=" + to_string(v->lhs) +
           " > omega=" + to_string(v->rhs);
  } else {
    report["entry"] = {v->i + 1, v->j + 1};
    line = "violated: x_" + std::to_string(v->i + 1) + std::to_string(v->j + 1) + "=" + to_string(v->lhs) + " < 0";
  }
  emit_report(report, {line});
  return fail_with(cert::qall_violation(x, *v), "x is outside Q^all");
}

int cmd_box_ef(int n, const Paths& a) {
  const ExtendedFormulation k = box_ef(n);
  if (a.graph.empty()) return emit_artifact(io::to_json(k), "box EF of size " + std::to_string(k.size()));
  const Graph gr = io::graph_from(io::read_json(a.graph));
  if (gr.n() != n) throw InputError("graph n differs from --n");
  const BoxReport r = box_report(clique_weight(gr));
  if (!g.out.empty()) io::write_text(g.out, io::dump(io::to_json(k)));
  json report{{"size", k.size()},
              {"box_max", io::to_json(r.box_max)},
              {"cor_max", io::to_json(r.cor_max)},
              {"nonzero_diagonal", r.nonzero_diagonal},
              {"within_factor_n", r.within_factor_n}};
  if (g.format == "json")
    std::cout << io::dump(report);
  else
    std::cout << "box EF size " << k.size() << "\nbox max " << to_string(r.box_max) << ", COR max "
              << to_string(r.cor_max) << ", within factor n: " << (r.within_factor_n ? "yes" : "no") << "\n";
  if (!r.within_factor_n) throw InternalError("box maximum exceeds n times the COR maximum");
  return kVerified;
}

int cmd_cut_family(const std::string& kind, int n) {
  const auto k = parse_cut_family(kind);
  if (!k) throw InputError("--kind must be cut_polytope, cut_cone or correlation_cone");
  const VRep v = build_cut_family(*k, n);
  return emit_artifact(io::to_json(v), to_string(*k) + "(" + std::to_string(n) + "): " +
                                           std::to_string(v.num_points()) + " points, " +
                                           std::to_string(v.num_rays()) + " rays");
}

int cmd_covmap(int n, const std::string& x_text, const Paths& a) {
  RationalVector x;
  if (!a.x.empty())
    x = io::vector_from(io::read_json(a.x));
  else
    x = parse_list(x_text);
  return emit_artifact(io::to_json(covariance_map(x, n)), "covariance image");
}

int cmd_psd(int n, bool serial) {
  const auto r = psd_identity_check(n, kPsdLimit, !serial);
  emit_report({{"n", n}, {"pairs_checked", r.pairs_checked}, {"failures", r.failures}, {"holds", r.holds}},
              {"checked " + std::to_string(r.pairs_checked) + " pairs, failures " + std::to_string(r.failures)});
  if (!r.holds) {
    for (Subset a = 0; a < (Subset{1} << n); ++a)
      for (Subset b = 0; b < (Subset{1} << n); ++b) {
        const int k = 1 - std::popcount(a & b);
        if (frobenius(psd_T(a, n), psd_U(b, n)) != k * k)
          return fail_with(cert::psd_identity_failure(n, a, b), "PSD identity fails");
      }
  }
  return kVerified;
}

int cmd_spectra(int n, const std::string& b_text, const Paths& a) {
  const Subset b = parse_bits(b_text, n);
  std::optional<RationalMatrix> y;
  if (!a.matrix.empty()) y = io::matrix_from(io::read_json(a.matrix));
  const bool ok = spectra_vertex_witness(b, n, y);
  emit_report({{"n", n}, {"b", bits_text(b, n)}, {"holds", ok}},
              {std::string("witness ") + (ok ? "holds" : "fails") + " for b=(" + bits_text(b, n) + ")"});
  if (ok) return kVerified;
  const RationalMatrix yy = y ? *y : psd_U(b, n);
  const auto bv = bits(b, n);
  for (Subset s = 0; s < (Subset{1} << n); ++s)
    if (frobenius(hard_objective(s, n), outer(bv, bv)) + frobenius(psd_T(s, n), yy) != 1)
      return fail_with(cert::spectra_witness_failure(n, b, yy, s), "spectrahedron witness fails");
  throw InternalError("spectra witness reported failure without a failing row");
}

int cmd_check_cert(const std::string& path) {
  const json c = io::read_json(path);
  const auto r = cert::check(c);
  emit_report({{"kind", r.kind}, {"valid", r.valid}, {"detail", r.detail}},
              {r.kind + ": " + (r.valid ? "valid" : "INVALID") + " (" + r.detail + ")"});
  return r.valid ? kVerified : kFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact tools for extended formulations, slack matrices and their lower bounds"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--threads", g.threads, "Cap on worker threads (0 = runtime default)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", g.out, "Write the artifact or report to this file");
  app.add_option("--cert", g.cert, "Where to write a failure certificate");

  Paths paths;
  std::string rho = "1", eps, fill, kind, x_text, b_text, mode = "exhaustive", cert_path, f_path, g_path, p_out, q_out;
  int n = 0, trials = 20, limit = kDefaultShiftLimit;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  double ell = 1, C = 0;
  bool sampled = false, serial = false;
  NnegOpts nn;
  std::function<int()> action;

  auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&action, fn] { action = fn; });
    return s;
  };

  auto* s = sub("slack", "Slack matrix of a pair (P, Q)", [&] { return cmd_slack(paths); });
  s->add_option("--p", paths.p, "V-description JSON")->required();
  s->add_option("--q", paths.q, "H-description JSON")->required();

  s = sub("dilate", "Dilate Q by rho", [&] { return cmd_dilate(paths, rho); });
  s->add_option("--q", paths.q)->required();
  s->add_option("--rho", rho)->required();

  s = sub("shift-slack", "Slack matrix of (P, rho Q) from that of (P, Q)", [&] { return cmd_shift(paths, rho); });
  s->add_option("--slack", paths.slack)->required();
  s->add_option("--rho", rho)->required();

  s = sub("fac2ef", "EF A x + T y = b from a slack factorization", [&] { return cmd_fac2ef(paths); });
  s->add_option("--q", paths.q)->required();
  s->add_option("--fac", paths.fac)->required();
  s->add_option("--p", paths.p, "Check the factorization against the slack matrix of (P, Q)");

  s = sub("ef2fac", "Slack factorization from an EF sandwiched between P and Q", [&] { return cmd_ef2fac(paths); });
  s->add_option("--ef", paths.ef)->required();
  s->add_option("--p", paths.p)->required();
  s->add_option("--q", paths.q)->required();

  s = sub("verify-sandwich", "Check P in K in rho Q with exact certificates", [&] { return cmd_sandwich(paths, rho); });
  s->add_option("--p", paths.p)->required();
  s->add_option("--q", paths.q)->required();
  s->add_option("--ef", paths.ef)->required();
  s->add_option("--rho", rho);

  s = sub("nnegrk-bounds", "Sound bracket on the nonnegative rank", [&] { return cmd_nnegrk(paths, nn); });
  s->add_option("--matrix", paths.matrix, "Matrix or slack JSON")->required();
  s->add_option("--iterations", nn.iterations);
  s->add_option("--restarts", nn.restarts);
  s->add_option("--seed", nn.seed);
  s->add_option("--max-den", nn.max_den, "Largest denominator tried when rounding");
  s->add_flag("--no-heuristic", nn.no_heuristic);

  s = sub("udisj-shift", "rho-extension of unique disjointness", [&] { return cmd_udisj_shift(n, rho, fill, limit); });
  s->add_option("--n", n)->required();
  s->add_option("--rho", rho);
  s->add_option("--fill", fill, "Constant for pairs meeting in two or more elements");
  s->add_option("--limit", limit, "Largest n allowed");

  s = sub("razborov-check", "Exact check of the corruption-lemma identities",
          [&] { return cmd_razborov(n, trials, seed, paths, f_path, g_path); });
  s->add_option("--n", n)->required();
  s->add_option("--trials", trials);
  s->add_option("--seed", seed);
  s->add_option("--f", f_path, "Function table JSON");
  s->add_option("--g", g_path, "Function table JSON");

  std::string scan_eps = "1/2";
  s = sub("corruption-scan", "Scan rectangles for (1-eps) P(R|A) - P(R|B)",
          [&] { return cmd_scan(n, scan_eps, mode, samples, seed); });
  s->add_option("--n", n)->required();
  s->add_option("--eps", scan_eps);
  s->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sample"}));
  s->add_option("--samples", samples);
  s->add_option("--seed", seed);

  std::string bound_eps = "1/2";
  s = sub("corruption-bound", "Right-hand side of the corruption bound", [&] { return cmd_corruption_bound(bound_eps, ell, C); });
  s->add_option("--eps", bound_eps);
  s->add_option("--ell", ell)->required();
  s->add_option("--C", C);

  s = sub("shift-lb", "Rank lower bound for rho-extensions", [&] { return cmd_shift_lb(n, rho, eps, C); });
  s->add_option("--n", n)->required();
  s->add_option("--rho", rho);
  s->add_option("--eps", eps, "Omit for eps = 1/(2 rho)");
  s->add_option("--C", C);

  s = sub("hardpair", "COR(n) and Q(n)", [&] { return cmd_hardpair(n, p_out, q_out); });
  s->add_option("--n", n)->required();
  s->add_option("--p-out", p_out);
  s->add_option("--q-out", q_out);

  s = sub("hardpair-slack", "Slack matrix of (COR(n), rho Q(n))", [&] { return cmd_hardpair_slack(n, rho); });
  s->add_option("--n", n)->required();
  s->add_option("--rho", rho);

  s = sub("clique-weight", "Objective w^G of a graph", [&] { return cmd_clique_weight(paths); });
  s->add_option("--graph", paths.graph)->required();

  s = sub("clique-omega", "Clique number and the COR maximum of w^G", [&] { return cmd_clique_omega(paths); });
  s->add_option("--graph", paths.graph)->required();

  s = sub("qall-separate", "Find a constraint of Q^all violated by x", [&] { return cmd_qall(paths, sampled, samples, seed); });
  s->add_option("--x", paths.x, "n x n matrix JSON")->required();
  s->add_flag("--sampled", sampled, "Heuristic random graphs (needed for n > 4)");
  s->add_option("--samples", samples);
  s->add_option("--seed", seed);

  s = sub("box-ef", "Slack-form EF of the box [0,1]^(n x n)", [&] { return cmd_box_ef(n, paths); });
  s->add_option("--n", n)->required();
  s->add_option("--graph", paths.graph, "Report the approximation ratio for w^G");

  s = sub("cut-family", "Cut polytope, cut cone or correlation cone generators", [&] { return cmd_cut_family(kind, n); });
  s->add_option("--kind", kind)->required();
  s->add_option("--n", n)->required();

  s = sub("covmap", "Covariance image of a vector indexed by the edges of K_n", [&] { return cmd_covmap(n, x_text, paths); });
  s->add_option("--n", n)->required();
  auto* xo = s->add_option("--x", x_text, "Comma-separated entries");
  auto* xf = s->add_option("--x-file", paths.x, "JSON list of entries");
  xo->excludes(xf);

  s = sub("psd-check", "Check <T_a, U^b> = (1 - a.b)^2 for all a, b", [&] { return cmd_psd(n, serial); });
  s->add_option("--n", n)->required();
  s->add_flag("--serial", serial, "Use the serial reference kernel");

  s = sub("spectra-witness", "Check the spectrahedron witness (b b^T, Y)", [&] { return cmd_spectra(n, b_text, paths); });
  s->add_option("--n", n)->required();
  s->add_option("--b", b_text, "Comma-separated 0/1 entries")->required();
  s->add_option("--y", paths.matrix, "Y as matrix JSON (default U^b)");

  s = sub("check-cert", "Re-verify a certificate file", [&] { return cmd_check_cert(cert_path); });
  s->add_option("file", cert_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  if (g.threads < 0) throw InputError("--threads must be positive");
  if (g.threads > 0) set_thread_limit(g.threads);
  if (!g.out.empty() && g.out == g.cert) throw InputError("--out and --cert must differ");
  budget::init_from_env();
  return action();
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InputError& e) {
    std::cerr << "efbound: input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const json::exception& e) {
    std::cerr << "efbound: input error: " << e.what() << "\n";
    return kBadInput;
  } catch (const BudgetError& e) {
    std::cerr << "efbound: budget exhausted: " << e.what();
    if (e.best_bound()) std::cerr << " (best bound so far " << *e.best_bound() << ")";
    std::cerr << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "efbound: internal error: " << e.what() << "\n";
    return kInternal;
  }
}
