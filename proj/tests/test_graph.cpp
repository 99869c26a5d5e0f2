#include <doctest.h>

#include "fixtures.hpp"
#include "tropd/geometry.hpp"
#include "tropd/graph.hpp"

using namespace tropd;
using fixtures::r;

namespace {

// Arcs from the dual side: every edge of T^I between two pairs with the sign test on its normal.
std::vector<std::pair<int, int>> arcs_from_curve(const Tds& tds) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : tropical_curve(tds, AxisFilter::I).edges) {
        const auto& a = tds.pair(e.i);
        const auto& b = tds.pair(e.j);
        int x = a.flow.dot(e.normal), y = b.flow.dot(e.normal);
        if (x * y > 0) out.emplace_back(x > 0 ? e.i : e.j, x > 0 ? e.j : e.i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> by_degree(const Tds& tds, const std::vector<Degree>& degs) {
    std::vector<int> out;
    for (const auto& d : degs)
        for (const auto& p : tds.pairs())
            if (p.degree == d) out.push_back(p.index);
    return out;
}

}  // namespace

TEST_CASE("crossing graph arcs agree with the dual curve edges") {
    for (const auto& [name, tds] : fixtures::named_presets()) {
        CAPTURE(name);
        CHECK(build_graph(tds).arcs == arcs_from_curve(tds));
    }
}

TEST_CASE("crossing1 graph has the single cycle (1,0)->(4,2)->(3,3)->(0,1)") {
    for (long a : {-12, -25, -40}) {
        Tds tds = crossing1(r(a));
        auto cyc = enumerate_cycles(build_graph(tds));
        REQUIRE(cyc.cycles.size() == 1);
        CHECK(cyc.cycles[0] == by_degree(tds, {{1, 0}, {4, 2}, {3, 3}, {0, 1}}));
        CHECK_FALSE(cyc.truncated);
    }
}

TEST_CASE("crossing2 graph has the single cycle (2,0)->(4,1)->(2,3)->(0,1)") {
    for (long a : {-4, -10}) {
        Tds tds = crossing2(r(a));
        auto cyc = enumerate_cycles(build_graph(tds));
        REQUIRE(cyc.cycles.size() == 1);
        CHECK(cyc.cycles[0] == by_degree(tds, {{2, 0}, {4, 1}, {2, 3}, {0, 1}}));
    }
}

TEST_CASE("two-pair system: arcs follow the sign test") {
    // d1 = (1,0), d2 = (0,1), normal (1,1): both products positive, flow from region 1 into region 2.
    Tds t = make_tds({{1, Axis::U, {1, 0}, {0, 0}, 0}, {2, Axis::V, {0, 1}, {1, 1}, 0}});
    auto g = build_graph(t);
    CHECK(g.nodes.size() == 2);
    CHECK(g.arcs == std::vector<std::pair<int, int>>{{1, 2}});
    Tds back = make_tds({{1, Axis::U, {-1, 0}, {0, 0}, 0}, {2, Axis::V, {0, -1}, {1, 1}, 0}});
    CHECK(build_graph(back).arcs == std::vector<std::pair<int, int>>{{2, 1}});
    Tds slide = make_tds({{1, Axis::U, {1, 0}, {0, 0}, 0}, {2, Axis::V, {0, -1}, {1, 1}, 0}});
    CHECK(build_graph(slide).arcs.empty());
    CHECK(enumerate_cycles(build_graph(t)).cycles.empty());
}

TEST_CASE("cycle enumeration on small hand-made graphs") {
    CrossingGraph g;
    for (int k = 1; k <= 5; ++k) g.nodes.push_back({k, {k, 0}, {1, 0}});
    g.arcs = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {2, 1}, {3, 5}, {5, 1}};
    std::sort(g.arcs.begin(), g.arcs.end());
    auto all = enumerate_cycles(g, 1);
    CHECK(all.cycles == std::vector<std::vector<int>>{{1, 2}, {1, 2, 3, 4}, {1, 2, 3, 5}});
    CHECK(enumerate_cycles(g, 4).cycles.size() == 2);
    auto capped = enumerate_cycles(g, 1, 2);
    CHECK(capped.truncated);
    CHECK(capped.cycles.size() == 2);
}

TEST_CASE("reachability") {
    Tds tds = crossing1(r(-25));
    auto g = build_graph(tds);
    CHECK(reachable(g, {}).empty());
    // The regions adjacent to the source Q1234 (host E34) reach the regions 2 and 4 around P245.
    auto fwd = reachable(g, {3, 4});
    CHECK(fwd.count(2));
    CHECK(fwd.count(4));
    // Region 5 only has out-arcs (5->2, 5->3): connections into P245 arrive through regions 2 and 4.
    CHECK_FALSE(fwd.count(5));
    for (const auto& node : g.nodes)
        if (g.predecessors(node.pair).empty()) CHECK(reachable(g, {node.pair}, true) == std::set<int>{node.pair});
    // Brute force: closure by repeated relaxation.
    std::set<int> closure{3, 4};
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [a, b] : g.arcs)
            if (closure.count(a) && closure.insert(b).second) grew = true;
    }
    CHECK(fwd == closure);
}
