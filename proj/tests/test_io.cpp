#include <doctest.h>

#include "fixtures.hpp"

#include <functional>
#include "tropd/io.hpp"

using namespace tropd;
using fixtures::r;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::BadSchema;
}

}  // namespace

TEST_CASE("tds json: round trip of every preset") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        Tds t = preset(name);
        Json j = tds_to_json(t);
        CHECK(tds_from_json(j) == t);
        CHECK(tds_from_json(Json::parse(j.dump())) == t);
    }
}

TEST_CASE("tds json: the autocatalator document") {
    Json j = tds_to_json(autocatalator(r(1, 4)));
    CHECK(j["degreeN"] == 3);
    REQUIRE(j["pairs"].size() == 6);
    CHECK(j["pairs"][0]["alpha"] == "-3/4");
    CHECK(j["pairs"][0]["axis"] == "U");
    CHECK(j["pairs"][0]["delta"] == 1);
    CHECK(j["pairs"][0]["degree"] == Json::array({-1, 0}));
    CHECK(j["pairs"][3]["delta"] == -1);
    CHECK(j["pairs"][4]["delta"] == 1);
}

TEST_CASE("tds json: null is NEG_INF and integers are accepted") {
    Json j = Json::parse(R"({"pairs": [
        {"index": 1, "axis": "U", "delta": 1, "degree": [0, 0], "alpha": 0},
        {"index": 2, "axis": "U", "delta": -1, "degree": [1, 0], "alpha": null},
        {"index": 3, "axis": "V", "delta": 1, "degree": [0, 0], "alpha": "-1/2"}]})");
    Tds t = tds_from_json(j);
    CHECK(t.pair(1).alpha == TropCoeff(0));
    CHECK(t.pair(2).alpha.is_neg_inf());
    CHECK(t.pair(3).alpha == TropCoeff(r(-1, 2)));
    CHECK(tds_to_json(t)["pairs"][1]["alpha"].is_null());
}

TEST_CASE("tds json: schema and validation errors") {
    auto parse = [](const char* text) { return [text] { tds_from_json(Json::parse(text)); }; };
    CHECK(code_of(parse(R"([])")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": 3})")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "W", "delta": 1, "degree": [0,0], "alpha": "0"}]})")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "U", "delta": 2, "degree": [0,0], "alpha": "0"}]})")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "U", "delta": 1, "degree": [0], "alpha": "0"}]})")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "U", "delta": 1, "degree": [0,0]}]})")) == Errc::BadSchema);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "U", "delta": 1, "degree": [0,0], "alpha": "x"}]})")) == Errc::BadRational);
    CHECK(code_of(parse(R"({"pairs": [
        {"index": 1, "axis": "U", "delta": 1, "degree": [-1,0], "alpha": "0"},
        {"index": 2, "axis": "U", "delta": -1, "degree": [-1,0], "alpha": "1"},
        {"index": 3, "axis": "V", "delta": 1, "degree": [0,0], "alpha": "0"}]})")) == Errc::DuplicateDegreeInAxis);
    CHECK(code_of(parse(R"({"pairs": [{"index": 1, "axis": "U", "delta": 1, "degree": [0,0], "alpha": "0"}]})")) == Errc::EmptyAxis);
}

TEST_CASE("overrides") {
    auto [k, a] = parse_override("5=-167/9");
    CHECK(k == 5);
    CHECK(a == TropCoeff(r(-167, 9)));
    auto [k2, a2] = parse_override("1:-5/4");
    CHECK(k2 == 1);
    CHECK(a2 == TropCoeff(r(-5, 4)));
    CHECK(parse_override("2=-inf").second.is_neg_inf());
    CHECK(code_of([] { parse_override("5=abc"); }) == Errc::BadRational);
    CHECK(code_of([] { parse_override("x=1"); }) == Errc::BadRational);
    CHECK(code_of([] { parse_override("7"); }) == Errc::BadRational);
    Tds t = apply_overrides(crossing1(r(-25)), {{5, TropCoeff(r(-13))}});
    CHECK(t == crossing1(r(-13)));
    CHECK(code_of([] { apply_overrides(crossing1(r(-25)), {{9, TropCoeff(0)}}); }) == Errc::UnknownPair);
}

TEST_CASE("points carry exact strings and float shadows") {
    Json p = point_json({r(-1, 4), r(9, 2)});
    CHECK(p["exact"] == Json::array({"-1/4", "9/2"}));
    CHECK(p["float"][0].get<double>() == -0.25);
    CHECK(p["float"][1].get<double>() == 4.5);
    CHECK(point_from_json(p) == QPoint{r(-1, 4), r(9, 2)});
    CHECK(point_from_json(Json::array({"2", 0})) == QPoint{r(2), r(0)});
    CHECK(code_of([] { point_from_json(Json::array({"a", "0"})); }) == Errc::BadRational);
    CHECK(code_of([] { point_from_json(Json::array({"1"})); }) == Errc::BadRational);
}

TEST_CASE("orbit json") {
    Orbit o = trace_orbit(crossing1(r(-25)), {r(2), r(0)}, Orientation::Forward);
    Json j = orbit_json(o);
    CHECK(j["termination"] == "Periodic");
    CHECK(j["vertices"].size() == o.vertices.size());
    CHECK(j["vertices"][1]["exact"] == Json::array({"2", "7"}));
    CHECK(j["segments"][0]["mode"] == "Region");
    CHECK(j["segments"][0]["region"] == 4);
    CHECK(j["segments"][0]["direction"] == Json::array({"0", "1"}));
}

TEST_CASE("graph json lists the cycle by degrees") {
    CrossingGraph g = build_graph(crossing1(r(-25)));
    CycleList c = enumerate_cycles(g);
    Json j = graph_json(g, &c);
    REQUIRE(j["cycles"].size() == 1);
    CHECK(j["cycles"][0]["degrees"] == Json::parse("[[1,0],[4,2],[3,3],[0,1]]"));
    CHECK(j["nodes"].size() == 5);
    CHECK_FALSE(graph_json(g).contains("cycles"));
}

TEST_CASE("analysis json") {
    Tds t = crossing1(r(-25));
    Json j = analysis_json(t, analyze(t));
    CHECK(j["report"]["overall"] == "StructurallyStable");
    REQUIRE(j["crossing_cycles"].size() == 1);
    CHECK(j["crossing_cycles"][0]["c"] == "4/9");
    CHECK(j["crossing_cycles"][0]["verdict"] == "stable hyperbolic");
    CHECK(tds_from_json(j["tds"]) == t);
    CHECK_FALSE(j["signature"].empty());
}

TEST_CASE("classical polynomial json") {
    std::vector<ClassicalTerm> u, v;
    classical_from_json(Json::parse(R"({"u": [{"a": 1, "degree": [0, 0]}, {"a": "-1/2", "degree": [1, 0]}],
                                        "v": [{"a": 0, "degree": [0, 1]}]})"),
                        u, v);
    REQUIRE(u.size() == 2);
    CHECK(u[1].a == -0.5);
    CHECK(u[1].n == 1);
    REQUIRE(v.size() == 1);
    CHECK(v[0].m == 1);
    CHECK(code_of([] {
              std::vector<ClassicalTerm> a, b;
              classical_from_json(Json::parse(R"({"u": []})"), a, b);
          }) == Errc::BadSchema);
}
