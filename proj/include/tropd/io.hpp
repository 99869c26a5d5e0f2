#pragma once

#include "tropd/analysis.hpp"
#include "tropd/graph.hpp"
#include "tropd/orbit.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace tropd {

using Json = nlohmann::json;

// Rationals travel as "p/q" strings; integers are accepted too. BadRational otherwise.
Rational rational_from_json(const Json& j);
Json rational_json(const Rational& r);
TropCoeff coeff_from_json(const Json& j);  // null = NEG_INF
Json coeff_json(const TropCoeff& c);

// Exact strings plus a float shadow for drawing: {"exact": ["u", "v"], "float": [u, v]}.
Json point_json(const QPoint& p);
Json vec_json(const Vec2& w);
QPoint point_from_json(const Json& j);  // ["u", "v"] or {"exact": [...]}

// {"degreeN": N, "pairs": [{"index", "axis", "delta", "degree": [n, m], "alpha"}]}. Shape problems raise
// BadSchema; make_tds errors pass through.
Tds tds_from_json(const Json& j);
Json tds_to_json(const Tds& tds);

// {"u": [{"a": 1.5, "degree": [n, m]}, ...], "v": [...]}
void classical_from_json(const Json& j, std::vector<ClassicalTerm>& u_terms, std::vector<ClassicalTerm>& v_terms);

// "k=p/q" or "k:p/q" overrides; "-inf" sets NEG_INF.
std::pair<int, TropCoeff> parse_override(const std::string& text);
Tds apply_overrides(const Tds& tds, const std::vector<std::pair<int, TropCoeff>>& overrides);

Json orbit_json(const Orbit& o);
Json graph_json(const CrossingGraph& g, const CycleList* cycles = nullptr);
Json report_json(const StabilityReport& r);
Json analysis_json(const Tds& tds, const PortraitAnalysis& a);

}  // namespace tropd
