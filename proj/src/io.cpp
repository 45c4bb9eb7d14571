#include "efbound/io.hpp"

#include <fstream>
#include <sstream>

#include "efbound/error.hpp"

namespace efbound::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("json: missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_from(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("json: field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

int int_from(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("json: field '") + key + "' must be an integer");
  return v.get<int>();
}

// Rows given as a list of vectors; `dim` fixes the width when the list is empty.
RationalMatrix rows_from(const json& j, std::size_t dim, const char* what) {
  if (!j.is_array()) throw InputError(std::string("json: '") + what + "' must be a list of vectors");
  RationalMatrix m(j.size(), dim);
  for (std::size_t i = 0; i < j.size(); ++i) {
    RationalVector v = vector_from(j[i]);
    if (v.size() != dim)
      throw InputError(std::string("json: a vector in '") + what + "' has the wrong length");
    std::copy(v.begin(), v.end(), m.row(i).begin());
  }
  return m;
}

json rows_to(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    out.push_back(to_json(RationalVector(m.row(i).begin(), m.row(i).end())));
  return out;
}

}  // namespace

json to_json(const Rational& r) { return to_string(r); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json to_json(const RationalMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", to_json(m.entries())}};
}

json to_json(const VRep& p) {
  return {{"dim", p.dim}, {"points", rows_to(p.points)}, {"rays", rows_to(p.rays)}};
}

json to_json(const HRep& q) { return {{"dim", q.dim}, {"A", to_json(q.A)}, {"b", to_json(q.b)}}; }

json to_json(const ExtendedFormulation& k) {
  return {{"E", to_json(k.E)}, {"F", to_json(k.F)}, {"g", to_json(k.g)}};
}

json to_json(const NonnegFactorization& f) { return {{"T", to_json(f.T)}, {"U", to_json(f.U)}}; }

json to_json(const SlackMatrix& s) {
  return {{"vertex_block", to_json(s.vertex_block)},
          {"ray_block", to_json(s.ray_block)},
          {"source_b", to_json(s.source_b)}};
}

json to_json(const SubsetFunction& f) { return {{"n", f.n}, {"values", to_json(f.values)}}; }

json to_json(const Graph& g) {
  json vs = json::array();
  for (int v = 0; v < g.n(); ++v)
    if (g.has_vertex(v)) vs.push_back(v + 1);
  json es = json::array();
  for (auto [u, v] : g.edges()) es.push_back({u + 1, v + 1});
  return {{"n", g.n()}, {"vertices", vs}, {"edges", es}};
}

json to_json(const LpProblem& p) {
  json nonneg = json::array();
  for (std::size_t j = 0; j < p.num_vars(); ++j) nonneg.push_back(p.is_nonneg(j));
  return {{"A", to_json(p.A)},     {"b", to_json(p.b)},
          {"Aeq", to_json(p.Aeq)}, {"beq", to_json(p.beq)},
          {"c", to_json(p.c)},     {"sense", p.sense == Sense::maximize ? "max" : "min"},
          {"nonneg", nonneg}};
}

json to_json(const FarkasCertificate& c) {
  return {{"ineq", to_json(c.ineq)}, {"eq", to_json(c.eq)}, {"bound", to_json(c.bound)}};
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("json: rationals must be strings \"p/q\" or integers");
}

RationalVector vector_from(const json& j) {
  if (!j.is_array()) throw InputError("json: expected a list of rationals");
  RationalVector out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

RationalMatrix matrix_from(const json& j) {
  const std::size_t rows = count_from(j, "rows");
  const std::size_t cols = count_from(j, "cols");
  RationalVector entries = vector_from(field(j, "entries"));
  if (entries.size() != rows * cols) throw InputError("json: matrix entries != rows * cols");
  return RationalMatrix(rows, cols, std::move(entries));
}

VRep vrep_from(const json& j) {
  const std::size_t dim = count_from(j, "dim");
  RationalMatrix pts = rows_from(field(j, "points"), dim, "points");
  RationalMatrix rays = j.contains("rays") ? rows_from(j.at("rays"), dim, "rays") : RationalMatrix(0, dim);
  return VRep(dim, std::move(pts), std::move(rays));
}

HRep hrep_from(const json& j) {
  const std::size_t dim = count_from(j, "dim");
  RationalMatrix a = matrix_from(field(j, "A"));
  if (a.rows() == 0) a = RationalMatrix(0, dim);
  return HRep(dim, std::move(a), vector_from(field(j, "b")));
}

ExtendedFormulation ef_from(const json& j) {
  return ExtendedFormulation(matrix_from(field(j, "E")), matrix_from(field(j, "F")),
                             vector_from(field(j, "g")));
}

NonnegFactorization factorization_from(const json& j) {
  NonnegFactorization f{matrix_from(field(j, "T")), matrix_from(field(j, "U"))};
  if (f.T.cols() != f.U.rows()) throw InputError("json: factorization inner dimensions differ");
  return f;
}

SlackMatrix slack_from(const json& j) {
  SlackMatrix s;
  s.vertex_block = matrix_from(field(j, "vertex_block"));
  s.ray_block = j.contains("ray_block") ? matrix_from(j.at("ray_block"))
                                        : RationalMatrix(s.vertex_block.rows(), 0);
  if (s.ray_block.rows() != s.vertex_block.rows()) {
    if (s.ray_block.rows() == 0 && s.ray_block.cols() == 0)
      s.ray_block = RationalMatrix(s.vertex_block.rows(), 0);
    else
      throw InputError("json: slack blocks have different row counts");
  }
  if (j.contains("source_b")) s.source_b = vector_from(j.at("source_b"));
  if (s.source_b.size() != s.vertex_block.rows())
    throw InputError("json: slack source_b must have one entry per row");
  return s;
}

SubsetFunction function_from(const json& j) {
  SubsetFunction f;
  f.n = int_from(j, "n");
  if (f.n < 0 || f.n > 27) throw InputError("json: function ground set out of range");
  f.values = vector_from(field(j, "values"));
  if (f.values.size() != (std::size_t{1} << f.n))
    throw InputError("json: function table must have 2^n values");
  return f;
}

Graph graph_from(const json& j) {
  const int n = int_from(j, "n");
  if (n < 0 || n > 31) throw InputError("json: graph n out of range");
  Subset vs = 0;
  for (const auto& v : field(j, "vertices")) {
    if (!v.is_number_integer()) throw InputError("json: graph vertices must be integers");
    const int x = v.get<int>();
    if (x < 1 || x > n) throw InputError("json: graph vertex outside [n]");
    vs |= Subset{1} << (x - 1);
  }
  std::set<std::pair<int, int>> edges;
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError("json: graph edges must be pairs of integers");
    edges.insert({e[0].get<int>() - 1, e[1].get<int>() - 1});
  }
  return Graph(n, vs, std::move(edges));
}

LpProblem lp_from(const json& j) {
  LpProblem p;
  p.A = matrix_from(field(j, "A"));
  p.b = vector_from(field(j, "b"));
  p.Aeq = matrix_from(field(j, "Aeq"));
  p.beq = vector_from(field(j, "beq"));
  p.c = vector_from(field(j, "c"));
  const std::string sense = field(j, "sense").get<std::string>();
  if (sense != "max" && sense != "min") throw InputError("json: sense must be max or min");
  p.sense = sense == "max" ? Sense::maximize : Sense::minimize;
  if (j.contains("nonneg"))
    for (const auto& v : j.at("nonneg")) p.nonneg.push_back(v.get<bool>());
  return p;
}

FarkasCertificate farkas_from(const json& j) {
  return {vector_from(field(j, "ineq")), vector_from(field(j, "eq")), vector_from(field(j, "bound"))};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace efbound::io
