#include <doctest.h>

#include "fixtures.hpp"
#include "tropd/service.hpp"

#include <httplib.h>

#include <thread>

using namespace tropd;
using fixtures::r;

namespace {

HttpResponse call(ExplorerService& s, const std::string& method, const std::string& path,
                  std::multimap<std::string, std::string> query = {}, const std::string& body = "") {
    return s.handle({method, path, std::move(query), body});
}

std::string create(ExplorerService& s, const Json& body) {
    HttpResponse res = call(s, "POST", "/api/tds", {}, body.dump());
    REQUIRE(res.status == 201);
    return Json::parse(res.body)["id"];
}

Json body_of(const HttpResponse& r) { return Json::parse(r.body); }

}  // namespace

TEST_CASE("service: create sessions") {
    ExplorerService s;
    std::string a = create(s, tds_to_json(autocatalator(r(1, 4))));
    std::string b = create(s, {{"preset", "genauto-5V_c"}});
    CHECK(a != b);
    CHECK(s.sessions().size() == 2);
    CHECK(tds_from_json(body_of(call(s, "GET", "/api/tds/" + b))) == preset("genauto-5V_c"));

    Json dup = Json::parse(R"({"pairs": [
        {"index": 1, "axis": "U", "delta": 1, "degree": [-1,0], "alpha": "0"},
        {"index": 2, "axis": "U", "delta": -1, "degree": [-1,0], "alpha": "1"},
        {"index": 3, "axis": "V", "delta": 1, "degree": [0,0], "alpha": "0"}]})");
    HttpResponse bad = call(s, "POST", "/api/tds", {}, dup.dump());
    CHECK(bad.status == 400);
    CHECK(body_of(bad)["error"] == "DuplicateDegreeInAxis");
    CHECK(body_of(bad).contains("detail"));

    CHECK(call(s, "POST", "/api/tds", {}, "{not json").status == 400);
    HttpResponse unknown = call(s, "POST", "/api/tds", {}, R"({"preset": "nope"})");
    CHECK(unknown.status == 400);
    CHECK(body_of(unknown)["error"] == "UnknownPreset");
}

TEST_CASE("service: presets") {
    ExplorerService s;
    HttpResponse res = call(s, "GET", "/api/presets");
    REQUIRE(res.status == 200);
    Json j = body_of(res);
    CHECK(j["presets"].size() == preset_names().size());
    CHECK(j["presets"][0]["name"] == "autocatalator");
}

TEST_CASE("service: scenes across the autocatalator bifurcation") {
    ExplorerService s;
    std::string id = create(s, {{"preset", "autocatalator"}});
    auto scene = [&](const std::string& a1) {
        HttpResponse res = call(s, "GET", "/api/tds/" + id + "/scene", {{"set", "1:" + a1}});
        REQUIRE(res.status == 200);
        return body_of(res);
    };
    auto cycles = [](const Json& j) {
        int n = 0;
        for (const auto& o : j["orbits"]) n += o["role"] == "limit-cycle";
        return n;
    };
    Json sink = scene("-5/4");
    REQUIRE(sink["singularities"].size() == 1);
    CHECK(sink["singularities"][0]["kind"] == "Sink");
    CHECK(cycles(sink) == 0);
    CHECK(sink["alphas"]["1"] == "-5/4");

    Json source = scene("-3/4");
    REQUIRE(source["singularities"].size() == 1);
    CHECK(source["singularities"][0]["kind"] == "Source");
    CHECK(cycles(source) == 1);
    CHECK(source["report"]["overall"] == "StructurallyStable");
}

TEST_CASE("service: identical scene queries are byte-identical and cached") {
    ExplorerService s;
    std::string id = create(s, {{"preset", "crossing1"}});
    std::multimap<std::string, std::string> q{{"set", "5:-25"}, {"layers", "curves,graph"}};
    HttpResponse a = call(s, "GET", "/api/tds/" + id + "/scene", q);
    std::size_t hits = s.cache().hits();
    HttpResponse b = call(s, "GET", "/api/tds/" + id + "/scene", q);
    REQUIRE(a.status == 200);
    CHECK(a.body == b.body);
    CHECK(s.cache().hits() == hits + 1);

    HttpResponse g = call(s, "GET", "/api/tds/" + id + "/scene", {{"layers", "graph"}});
    Json j = body_of(g);
    CHECK(j["layers"] == Json::array({"graph"}));
    CHECK(j.contains("graph"));
    CHECK_FALSE(j.contains("curves"));
}

TEST_CASE("service: errors") {
    ExplorerService s;
    std::string id = create(s, {{"preset", "crossing1"}});
    HttpResponse missing = call(s, "GET", "/api/tds/zzz/scene");
    CHECK(missing.status == 404);
    CHECK(body_of(missing)["error"] == "UnknownSession");
    HttpResponse bad = call(s, "GET", "/api/tds/" + id + "/scene", {{"set", "5:minus-two"}});
    CHECK(bad.status == 422);
    CHECK(body_of(bad)["error"] == "BadRational");
    CHECK(call(s, "GET", "/api/tds/" + id + "/scene", {{"set", "9:1"}}).status == 422);
    CHECK(call(s, "GET", "/api/tds/" + id + "/scene", {{"layers", "bogus"}}).status == 422);
    CHECK(call(s, "GET", "/api/tds/" + id + "/nothing").status == 404);
    CHECK(call(s, "GET", "/api/elsewhere").status == 404);
    CHECK(call(s, "POST", "/api/tds/" + id + "/scene").status == 405);
    CHECK(call(s, "POST", "/api/tds/" + id + "/orbit", {}, R"({"start": ["x", 0]})").status == 422);
    CHECK(body_of(call(s, "POST", "/api/tds/" + id + "/orbit", {}, R"({"start": ["x", 0]})"))["error"] == "BadPoint");
    CHECK(call(s, "POST", "/api/tds/" + id + "/orbit", {}, R"({"start": [1]})").status == 422);
    CHECK(call(s, "POST", "/api/tds/" + id + "/orbit", {}, R"({"begin": [1, 2]})").status == 422);
}

TEST_CASE("service: orbits") {
    ExplorerService s;
    std::string c1 = create(s, {{"preset", "crossing1"}});
    HttpResponse res = call(s, "POST", "/api/tds/" + c1 + "/orbit", {{"set", "5:-25"}}, R"({"start": ["2", "0"]})");
    REQUIRE(res.status == 200);
    Json o = body_of(res);
    CHECK(o["termination"] == "Periodic");
    CHECK(o["vertices"][1]["exact"] == Json::array({"2", "7"}));
    CHECK(o["vertices"][3]["exact"] == Json::array({"-3", "-3"}));

    std::string c2 = create(s, {{"preset", "crossing2"}});
    for (const char* start : {R"({"start": ["1/2", "0"]})", R"({"start": ["1/10", "0"]})"}) {
        Json p = body_of(call(s, "POST", "/api/tds/" + c2 + "/orbit", {}, start));
        CHECK(p["termination"] == "Periodic");
        CHECK(p["vertices"][p["termination_id"].get<int>()] == p["vertices"].back());
    }

    std::string au = create(s, {{"preset", "autocatalator"}});
    Json z = body_of(call(s, "POST", "/api/tds/" + au + "/orbit", {}, R"({"start": ["-1/4", "1/4"]})"));
    CHECK(z["termination"] == "Singularity");
    CHECK(z["segments"].empty());
    CHECK(z["vertices"].size() == 1);

    Json bb = body_of(call(s, "POST", "/api/tds/" + au + "/orbit", {},
                           R"({"start": ["-1/2", "1/2"], "policy": {"branch_all": true, "max_segments": 200}})"));
    CHECK(bb["orbits"].size() == 2);

    Json back = body_of(call(s, "POST", "/api/tds/" + c1 + "/orbit", {}, R"({"start": [2, 0], "direction": "backward"})"));
    CHECK(back["orientation"] == "Backward");
    CHECK(back["vertices"][1]["exact"] == Json::array({"2", "-3"}));
}

TEST_CASE("service: graph, report and svg") {
    ExplorerService s;
    std::string id = create(s, {{"preset", "crossing2"}});
    Json g = body_of(call(s, "GET", "/api/tds/" + id + "/graph"));
    REQUIRE(g["cycles"].size() == 1);
    CHECK(g["cycles"][0]["degrees"] == Json::parse("[[2,0],[4,1],[2,3],[0,1]]"));
    Json rep = body_of(call(s, "GET", "/api/tds/" + id + "/report"));
    CHECK(rep["overall"] == "StructurallyStable");
    Json c13 = body_of(call(s, "GET", "/api/tds/" + create(s, {{"preset", "crossing1"}}) + "/report", {{"set", "5:-13"}}));
    CHECK(c13["overall"] == "ViolationFound");
    HttpResponse svg = call(s, "GET", "/api/tds/" + id + "/portrait.svg", {{"size", "300"}});
    CHECK(svg.status == 200);
    CHECK(svg.content_type == "image/svg+xml");
    CHECK(svg.body.find("width=\"300\"") != std::string::npos);
    CHECK(call(s, "GET", "/api/tds/" + id + "/portrait.svg", {{"size", "big"}}).status == 422);
}

TEST_CASE("service: slow computations answer 202 and are polled") {
    ServiceOptions o;
    o.budget = std::chrono::milliseconds(0);
    ExplorerService s(o);
    std::string id = create(s, {{"preset", "crossing1"}});
    HttpResponse first = call(s, "GET", "/api/tds/" + id + "/report");
    REQUIRE(first.status == 202);
    std::string poll = body_of(first)["poll"];
    HttpResponse res;
    for (int k = 0; k < 600; ++k) {
        res = call(s, "GET", poll);
        if (res.status != 202) break;
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    REQUIRE(res.status == 200);
    CHECK(body_of(res)["overall"] == "StructurallyStable");
    CHECK(call(s, "GET", poll).status == 404);
    // The finished result is cached, so the same query is now immediate.
    CHECK(call(s, "GET", "/api/tds/" + id + "/report").status == 200);
}

TEST_CASE("lru cache") {
    LruCache c(2);
    c.put("a", {200, "x", "1"});
    c.put("b", {200, "x", "2"});
    CHECK(c.get("a"));
    c.put("c", {200, "x", "3"});
    CHECK(c.size() == 2);
    CHECK(c.get("a"));
    CHECK_FALSE(c.get("b"));
    CHECK(c.get("c")->body == "3");
}

TEST_CASE("http: api and static bundle over a socket") {
    ExplorerService s;
    HttpServer server(s, TROPD_WEB_DIR);
    int port = server.start("127.0.0.1", 0);
    REQUIRE(port > 0);
    httplib::Client cli("127.0.0.1", port);

    auto index = cli.Get("/");
    REQUIRE(index);
    CHECK(index->status == 200);
    CHECK(index->body.find("tropd explorer") != std::string::npos);
    auto js = cli.Get("/app.js");
    REQUIRE(js);
    CHECK(js->status == 200);
    CHECK(js->body.find("/api/tds") != std::string::npos);

    auto created = cli.Post("/api/tds", R"({"preset": "crossing1"})", "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    std::string id = Json::parse(created->body)["id"];

    auto orbit = cli.Post("/api/tds/" + id + "/orbit?set=5:-25", R"({"start": ["2", "0"]})", "application/json");
    REQUIRE(orbit);
    CHECK(orbit->status == 200);
    CHECK(Json::parse(orbit->body)["termination"] == "Periodic");

    auto a = cli.Get("/api/tds/" + id + "/scene?set=5:-25&layers=curves,report");
    auto b = cli.Get("/api/tds/" + id + "/scene?set=5:-25&layers=curves,report");
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->status == 200);
    CHECK(a->body == b->body);

    auto missing = cli.Get("/api/tds/nope/report");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(Json::parse(missing->body)["error"] == "UnknownSession");
    server.stop();
}
