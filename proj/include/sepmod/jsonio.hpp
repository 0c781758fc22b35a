// JSON shapes for every value the CLI reads or writes. Points travel as
// their @{...} literals; formulas as concrete-syntax text; all object keys
// are emitted in sorted order so identical inputs give byte-identical
// output.

#ifndef SEPMOD_JSONIO_HPP
#define SEPMOD_JSONIO_HPP

#include <json.hpp>

#include "sepmod/hypergraph.hpp"
#include "sepmod/modelbuilder.hpp"
#include "sepmod/separability.hpp"

namespace sepmod {

using Json = nlohmann::json;

Json point_to_json(const Point& p);
Point point_from_json(StructureId sid, const Json& j);

Json closure_to_json(const ClosureSet& c);
ClosureSet closure_from_json(StructureId sid, const Json& j);

Json verdict_to_json(const Verdict& v);
Json qo_report_to_json(const QoReport& r);
Json finite_sets_to_json(const FiniteSetsReport& r);

Json definable_to_json(const DefinableSet& d);

Json type_to_json(const TypeDescriptor& t);

Json description_to_json(const SubmodelDescription& d);
SubmodelDescription description_from_json(const Json& j);

Json tv_report_to_json(const TvReport& r);

Hypergraph hypergraph_from_json(const Json& j);

} // namespace sepmod

#endif
