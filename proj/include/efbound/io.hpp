#ifndef EFBOUND_IO_HPP
#define EFBOUND_IO_HPP

// JSON forms of the library types. Rationals are canonical strings ("p/q",
// or "p" when q = 1); integers are accepted on input as well.

#include <string>

#include <json.hpp>

#include "efbound/encodings.hpp"
#include "efbound/lp.hpp"
#include "efbound/nnfact.hpp"
#include "efbound/polyhedra.hpp"
#include "efbound/udisj.hpp"

namespace efbound::io {

using json = nlohmann::json;

json to_json(const Rational& r);
json to_json(const RationalVector& v);
json to_json(const RationalMatrix& m);  // {"rows","cols","entries"}
json to_json(const VRep& p);            // {"dim","points","rays"}
json to_json(const HRep& q);            // {"dim","A","b"}
json to_json(const ExtendedFormulation& k);
json to_json(const NonnegFactorization& f);
json to_json(const SlackMatrix& s);
json to_json(const SubsetFunction& f);  // {"n","values"}
json to_json(const Graph& g);           // 1-based labels
json to_json(const LpProblem& p);
json to_json(const FarkasCertificate& c);

Rational rational_from(const json& j);
RationalVector vector_from(const json& j);
RationalMatrix matrix_from(const json& j);
VRep vrep_from(const json& j);
HRep hrep_from(const json& j);
ExtendedFormulation ef_from(const json& j);
NonnegFactorization factorization_from(const json& j);
SlackMatrix slack_from(const json& j);
SubsetFunction function_from(const json& j);
Graph graph_from(const json& j);
LpProblem lp_from(const json& j);
FarkasCertificate farkas_from(const json& j);

// Throws InputError when the file is missing or is not valid JSON.
json read_json(const std::string& path);
// Two-space indented dump with a trailing newline.
std::string dump(const json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace efbound::io

#endif  // EFBOUND_IO_HPP
