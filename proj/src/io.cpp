#include "tropd/io.hpp"

#include <algorithm>

namespace tropd {

namespace {

[[noreturn]] void bad_schema(const std::string& what) { throw Error(Errc::BadSchema, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad_schema(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) bad_schema(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

Json indices_json(const std::vector<int>& v) { return Json(v); }

}  // namespace

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        if (auto r = parse_rational(j.get<std::string>())) return *r;
        throw Error(Errc::BadRational, j.get<std::string>());
    }
    throw Error(Errc::BadRational, j.dump());
}

Json rational_json(const Rational& r) { return to_string(r); }

TropCoeff coeff_from_json(const Json& j) {
    if (j.is_null()) return TropCoeff::neg_inf();
    return rational_from_json(j);
}

Json coeff_json(const TropCoeff& c) { return c.finite() ? Json(to_string(c.value())) : Json(nullptr); }

Json point_json(const QPoint& p) {
    return {{"exact", {to_string(p.u), to_string(p.v)}}, {"float", {to_double(p.u), to_double(p.v)}}};
}

Json vec_json(const Vec2& w) { return {to_string(w.x), to_string(w.y)}; }

QPoint point_from_json(const Json& j) {
    const Json& a = j.is_object() && j.contains("exact") ? j.at("exact") : j;
    if (!a.is_array() || a.size() != 2) throw Error(Errc::BadRational, "a point is a pair [u, v]");
    return {rational_from_json(a[0]), rational_from_json(a[1])};
}

Tds tds_from_json(const Json& j) {
    if (!j.is_object()) bad_schema("top level must be an object");
    const Json& list = field(j, "pairs");
    if (!list.is_array()) bad_schema("'pairs' must be an array");
    std::vector<TropicalPair> pairs;
    for (const Json& e : list) {
        TropicalPair p;
        p.index = int_field(e, "index");
        const Json& axis = field(e, "axis");
        if (axis == "U") p.axis = Axis::U;
        else if (axis == "V") p.axis = Axis::V;
        else bad_schema("axis must be \"U\" or \"V\"");
        int delta = int_field(e, "delta");
        if (delta != 1 && delta != -1) bad_schema("delta must be 1 or -1");
        p.flow = p.axis == Axis::U ? FlowVector{delta, 0} : FlowVector{0, delta};
        const Json& deg = field(e, "degree");
        if (!deg.is_array() || deg.size() != 2 || !deg[0].is_number_integer() || !deg[1].is_number_integer())
            bad_schema("degree must be [n, m]");
        p.degree = {deg[0].get<int>(), deg[1].get<int>()};
        p.alpha = coeff_from_json(field(e, "alpha"));
        pairs.push_back(p);
    }
    std::optional<int> n;
    if (j.contains("degreeN") && !j.at("degreeN").is_null()) n = int_field(j, "degreeN");
    return make_tds(std::move(pairs), n);
}

Json tds_to_json(const Tds& tds) {
    Json pairs = Json::array();
    for (const auto& p : tds.pairs()) {
        int delta = p.axis == Axis::U ? p.flow.x : p.flow.y;
        pairs.push_back({{"index", p.index},
                         {"axis", axis_name(p.axis)},
                         {"delta", delta},
                         {"degree", {p.degree.n, p.degree.m}},
                         {"alpha", coeff_json(p.alpha)}});
    }
    return {{"degreeN", tds.degree_n()}, {"pairs", pairs}};
}

void classical_from_json(const Json& j, std::vector<ClassicalTerm>& u_terms, std::vector<ClassicalTerm>& v_terms) {
    auto read = [](const Json& list, std::vector<ClassicalTerm>& out) {
        if (!list.is_array()) bad_schema("'u' and 'v' must be arrays");
        for (const Json& t : list) {
            ClassicalTerm c;
            const Json& a = field(t, "a");
            if (a.is_number()) c.a = a.get<double>();
            else if (a.is_string()) {
                auto r = parse_rational(a.get<std::string>());
                if (!r) throw Error(Errc::BadRational, a.get<std::string>());
                c.a = to_double(*r);
            } else bad_schema("'a' must be a number");
            const Json& deg = field(t, "degree");
            if (!deg.is_array() || deg.size() != 2) bad_schema("degree must be [n, m]");
            c.n = deg[0].get<int>();
            c.m = deg[1].get<int>();
            out.push_back(c);
        }
    };
    read(field(j, "u"), u_terms);
    read(field(j, "v"), v_terms);
}

std::pair<int, TropCoeff> parse_override(const std::string& text) {
    auto pos = text.find_first_of("=:");
    if (pos == std::string::npos) throw Error(Errc::BadRational, "override must look like k=p/q: " + text);
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(text.substr(0, pos), &used);
        if (used != pos) throw std::invalid_argument("index");
    } catch (const std::exception&) {
        throw Error(Errc::BadRational, "bad pair index in " + text);
    }
    std::string value = text.substr(pos + 1);
    if (value == "-inf") return {k, TropCoeff::neg_inf()};
    auto r = parse_rational(value);
    if (!r) throw Error(Errc::BadRational, value);
    return {k, *r};
}

Tds apply_overrides(const Tds& tds, const std::vector<std::pair<int, TropCoeff>>& overrides) {
    Tds out = tds;
    for (const auto& [k, a] : overrides) {
        if (!out.has(k)) throw Error(Errc::UnknownPair, "no pair " + std::to_string(k));
        out = out.with_alpha(k, a);
    }
    return out;
}

Json orbit_json(const Orbit& o) {
    Json vs = Json::array();
    for (const auto& p : o.vertices) vs.push_back(point_json(p));
    Json ss = Json::array();
    for (const auto& s : o.segments) {
        Json e{{"direction", vec_json(s.direction)}, {"mode", segment_mode_name(s.mode)}};
        if (s.mode == SegmentMode::Region) e["region"] = s.region;
        else e["edge"] = {s.edge[0], s.edge[1]};
        ss.push_back(e);
    }
    Json j{{"orientation", orientation_name(o.orientation)},
           {"vertices", vs},
           {"segments", ss},
           {"termination", termination_name(o.termination)}};
    if (o.termination_id >= 0) j["termination_id"] = o.termination_id;
    if (!o.feature.empty()) j["feature"] = indices_json(o.feature);
    return j;
}

Json graph_json(const CrossingGraph& g, const CycleList* cycles) {
    Json nodes = Json::array();
    for (const auto& n : g.nodes)
        nodes.push_back({{"pair", n.pair},
                         {"degree", {n.degree.n, n.degree.m}},
                         {"flow", {n.flow.x, n.flow.y}},
                         {"label", "(" + std::to_string(n.degree.n) + "," + std::to_string(n.degree.m) + ")"}});
    Json arcs = Json::array();
    for (const auto& [i, j] : g.arcs) arcs.push_back({i, j});
    Json out{{"nodes", nodes}, {"arcs", arcs}};
    if (cycles) {
        Json cs = Json::array();
        for (const auto& c : cycles->cycles) {
            Json degs = Json::array();
            for (int k : c)
                for (const auto& n : g.nodes)
                    if (n.pair == k) degs.push_back({n.degree.n, n.degree.m});
            cs.push_back({{"pairs", c}, {"degrees", degs}});
        }
        out["cycles"] = cs;
        out["cycles_truncated"] = cycles->truncated;
    }
    return out;
}

namespace {

Json general_position_json(const GeneralPositionReport& g) {
    return {{"ok", g.ok()},
            {"triangulations", g.triangulations},
            {"distinct_alphas", g.distinct_alphas},
            {"transversal_curves", g.transversal_curves},
            {"violations", g.violations}};
}

Json optional_rational(const std::optional<Rational>& r) { return r ? rational_json(*r) : Json(nullptr); }

}  // namespace

Json report_json(const StabilityReport& r) {
    Json kinds = Json::array();
    for (const auto& [label, k] : r.singularity_kinds) kinds.push_back({{"label", label}, {"kind", singularity_kind_name(k)}});
    Json cycles = Json::array();
    for (const auto& c : r.crossing_cycles)
        cycles.push_back({{"cycle", c.cycle}, {"c", rational_json(c.c)}, {"b", to_string(c.b)}, {"ok", c.ok}, {"verdict", c.verdict}});
    Json conns = Json::array();
    for (const auto& c : r.separatrix_connections)
        conns.push_back({{"from", c.from}, {"to", c.to}, {"b", to_string(c.b)}, {"ok", c.ok}});
    return {{"overall", overall_name(r.overall)},
            {"general_position", general_position_json(r.general_position)},
            {"singularities", kinds},
            {"crossing_cycles", cycles},
            {"separatrix_connections", conns},
            {"witness", r.witness}};
}

Json analysis_json(const Tds& tds, const PortraitAnalysis& a) {
    Json sing = Json::array();
    for (const auto& s : a.singular) {
        Json e{{"label", s.label()}, {"kind", singularity_kind_name(s.kind)}, {"location", point_json(s.location)}};
        if (!s.note.empty()) e["note"] = s.note;
        sing.push_back(e);
    }
    Json carriers = Json::array();
    for (const auto& c : a.carriers)
        carriers.push_back({{"name", c.name()},
                            {"point", point_json(c.point)},
                            {"symbolic", {to_string(c.symbolic.u), to_string(c.symbolic.v)}}});
    Json cycles = Json::array();
    for (const auto& c : a.crossing_cycles) {
        const ReturnMap& m = c.map;
        cycles.push_back({{"cycle", c.cycle},
                          {"section", {{"fixed", axis_name(m.section.fixed)}, {"level", rational_json(m.section.level)}}},
                          {"region", m.region},
                          {"c", rational_json(m.multiplier_c)},
                          {"offset", to_string(m.offset)},
                          {"offset_value", rational_json(m.offset.eval(tds))},
                          {"fixed_point", optional_rational(m.fixed_point)},
                          {"lo", optional_rational(m.lo)},
                          {"hi", optional_rational(m.hi)},
                          {"verdict", m.verdict()}});
    }
    Json seps = Json::array();
    for (const auto& s : a.separatrices) {
        Json e = orbit_json(s.orbit);
        e["carrier"] = s.carrier.name();
        seps.push_back(e);
    }
    Json conns = Json::array();
    for (const auto& c : a.connections)
        conns.push_back({{"from", c.from.name()}, {"to", c.to.name()}, {"delta", to_string(c.delta)}, {"persistent", c.persistent()}});
    Json periodic = Json::array();
    for (std::size_t k = 0; k < a.periodic_orbits.size(); ++k) {
        Json e = orbit_json(a.periodic_orbits[k]);
        e["limit_cycle"] = static_cast<bool>(a.limit_cycle[k]);
        periodic.push_back(e);
    }
    StabilityReport rep = stability_report(a);
    return {{"tds", tds_to_json(tds)},
            {"general_position", general_position_json(a.general_position)},
            {"singularities", sing},
            {"carriers", carriers},
            {"crossing_cycles", cycles},
            {"separatrices", seps},
            {"connections", conns},
            {"periodic_orbits", periodic},
            {"search_capped", a.search_capped},
            {"report", report_json(rep)},
            {"signature", portrait_signature(tds, a).lines}};
}

}  // namespace tropd
