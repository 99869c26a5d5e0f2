#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tropd/analysis.hpp"
#include "tropd/error.hpp"

#include <random>
#include <set>

using namespace tropd;
using fixtures::r;

namespace {

const Carrier& carrier(const std::vector<Carrier>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name() == name) return c;
    FAIL("no carrier " << name);
    throw std::logic_error("unreachable");
}

const Separatrix* find_sep(const std::vector<Separatrix>& ss, Orientation o, const Vec2& first) {
    for (const auto& s : ss)
        if (s.orientation == o && !s.orbit.segments.empty() && s.orbit.segments[0].direction == first) return &s;
    return nullptr;
}

// Section across the middle of a vertical or horizontal leg, with a small window around its coordinate.
Section section_across(const Tds& tds, const Leg& L) {
    bool vertical = L.direction.x == 0;
    Rational x = L.coordinate.eval(tds);
    Section s;
    s.fixed = vertical ? Axis::V : Axis::U;
    s.level = vertical ? (L.from.v + L.to.v) / 2 : (L.from.u + L.to.u) / 2;
    s.lo = x - r(1, 1000);
    s.hi = x + r(1, 1000);
    return s;
}

bool proportional(const AffineInAlpha& a, const AffineInAlpha& b) {
    if (a.is_constant() || b.is_constant()) return a.is_constant() && b.is_constant();
    int k = a.coeffs.begin()->first;
    Rational bk = b.coeff(k);
    if (bk == 0) return false;
    return a == b * (a.coeff(k) / bk);
}

std::vector<Rational> alpha_vector(const Tds& t) {
    std::vector<Rational> out;
    for (const auto& p : t.pairs()) out.push_back(p.alpha.value());
    return out;
}

}  // namespace

TEST_CASE("carriers: crossing2 vertices and singularities") {
    Rational a = r(-4);
    Tds t = crossing2(a);
    auto cs = carriers(t);
    CHECK(carrier(cs, "P134").point == QPoint{r(0), r(0)});
    CHECK(carrier(cs, "P234").point == QPoint{r(0), r(1)});
    CHECK(carrier(cs, "P245").point == QPoint{r(-3, 4) - a / 4, r(1, 4) - a / 4});
    const Carrier& h = carrier(cs, "Q1234");
    CHECK(h.point == QPoint{r(0), r(2, 3)});
    CHECK(h.sing_kind == SingularityKind::HybridCenter);
    const Carrier& s = carrier(cs, "Q1245");
    CHECK(s.point == QPoint{-a - 2, r(2, 3)});
    CHECK(s.sing_kind == SingularityKind::StrongStableSaddle);
    CHECK(separatrices(t, h).empty());
}

TEST_CASE("carriers: symbolic coordinates solve the defining equalities") {
    std::mt19937_64 rng(77);
    for (const auto& [name, t] : fixtures::named_presets()) {
        CAPTURE(name);
        auto base = alpha_vector(t);
        for (const auto& c : carriers(t)) {
            if (c.kind == Carrier::Kind::Singularity && c.sing_kind == SingularityKind::Degenerate) continue;
            CHECK(c.symbolic.eval(t) == c.point);
            CHECK(c.symbolic.u.coefficient_sum() == 0);
            CHECK(c.symbolic.v.coefficient_sum() == 0);
            if (c.kind != Carrier::Kind::Vertex) continue;
            // Re-solve numerically at perturbed coefficients: the three monomials tie at the symbolic point.
            for (int k = 0; k < 5; ++k) {
                Tds moved = t;
                for (const auto& p : t.pairs())
                    moved = moved.with_alpha(p.index, p.alpha.value() + oracle::random_rational(rng, -1, 1, 997));
                QPoint q = c.symbolic.eval(moved);
                Rational f0 = eval_finite(moved.pair(c.label[0]), q);
                CHECK(eval_finite(moved.pair(c.label[1]), q) == f0);
                CHECK(eval_finite(moved.pair(c.label[2]), q) == f0);
            }
        }
    }
}

TEST_CASE("separatrices: persistent connection in the autocatalator") {
    for (Rational a : {r(3, 5), r(3, 4), r(9, 10)}) {
        CAPTURE(to_string(a));
        Tds t = autocatalator(a);
        auto cs = carriers(t);
        const Carrier& q = carrier(cs, "Q1346");
        CHECK(eval_finite(t.pair(1), q.point) == eval_finite(t.pair(3), q.point));
        CHECK(eval_finite(t.pair(4), q.point) == eval_finite(t.pair(6), q.point));
        CHECK(q.point == QPoint{-a, a});
        auto seps = separatrices(t, q);
        const Separatrix* back = find_sep(seps, Orientation::Backward, Vec2(r(1), r(0)));
        REQUIRE(back);
        REQUIRE(back->orbit.vertices.size() >= 3);
        QPoint hit = back->orbit.vertices[1];
        CHECK(hit == QPoint{a - 1, a});
        CHECK(hit.v == hit.u + 1);
        const Carrier& p = carrier(cs, "P146");
        CHECK(p.point == QPoint{a - 1, 1 - a});
        CHECK(back->orbit.termination == Termination::ReachedVertex);
        CHECK(back->orbit.vertices.back() == p.point);
        CHECK(back->legs.back().coordinate == p.symbolic.u);
    }
}

TEST_CASE("separatrices: counts by singularity kind") {
    for (const auto& [name, t] : fixtures::named_presets()) {
        CAPTURE(name);
        for (const auto& c : carriers(t)) {
            if (c.kind != Carrier::Kind::Singularity) continue;
            if (c.sing_kind == SingularityKind::Degenerate) {
                CHECK_THROWS_AS(separatrices(t, c), Error);
                continue;
            }
            auto seps = separatrices(t, c);
            int in = 0, out = 0;
            for (const auto& s : seps) (s.orientation == Orientation::Forward ? out : in)++;
            switch (c.sing_kind) {
                case SingularityKind::Sink:
                case SingularityKind::StrongStableSaddle: CHECK(in == 2); CHECK(out == 0); break;
                case SingularityKind::Source:
                case SingularityKind::StrongUnstableSaddle: CHECK(out == 2); CHECK(in == 0); break;
                default: CHECK(seps.empty());
            }
        }
    }
}

TEST_CASE("separatrices: degenerate carrier") {
    Tds t = autocatalator(r(1, 2));
    bool seen = false;
    for (const auto& c : carriers(t)) {
        if (c.kind != Carrier::Kind::Singularity || c.sing_kind != SingularityKind::Degenerate) continue;
        seen = true;
        try {
            separatrices(t, c);
            FAIL("expected NotASeparatrixCarrier");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotASeparatrixCarrier);
        }
    }
    CHECK(seen);
}

TEST_CASE("return map: the crossing1 cycle at alpha = -25") {
    Tds t = crossing1(r(-25));
    ReturnMap m = return_map(t, {1, 4, 2, 3}, Section{Axis::V, r(0)});
    CHECK(m.multiplier_c == r(4, 9));
    CHECK(m.offset.eval(t) == r(10, 9));
    CHECK(m.offset.coefficient_sum() == 0);
    CHECK(m.offset.coeff(5) == 0);
    REQUIRE(m.fixed_point);
    CHECK(*m.fixed_point == 2);
    CHECK(m.verdict() == "stable hyperbolic");
    CHECK(m.region == 4);

    // Two successive returns of a traced orbit to v = 0 moving upward.
    Orbit o = trace_orbit(t, {r(1), r(0)}, Orientation::Forward, {}, {9, Rational(1000000), 1});
    std::vector<Rational> hits;
    for (std::size_t k = 0; k < o.segments.size(); ++k) {
        const auto& s = o.segments[k];
        if (s.direction == Vec2(r(0), r(1)) && o.vertices[k].v <= 0 && o.vertices[k + 1].v > 0) hits.push_back(o.vertices[k].u);
    }
    REQUIRE(hits.size() >= 3);
    CHECK(hits[1] == m.apply(hits[0], t));
    CHECK(hits[2] == m.apply(hits[1], t));

    // Product of the slopes |(n_j - n_i)/(m_i - m_j)| at the two switching edges of the route.
    Rational prod = 1;
    std::vector<std::pair<int, int>> turns{{4, 2}, {2, 3}, {3, 1}, {1, 4}};
    for (auto [i, j] : turns) {
        const auto& a = t.pair(i);
        const auto& b = t.pair(j);
        bool vert = a.flow.x == 0;
        Rational s = vert ? Rational(b.degree.n - a.degree.n) / Rational(a.degree.m - b.degree.m)
                          : Rational(b.degree.m - a.degree.m) / Rational(a.degree.n - b.degree.n);
        prod *= abs(s);
    }
    CHECK(prod == m.multiplier_c);
}

TEST_CASE("return map: realization bounds") {
    for (Rational a : {r(-20), r(-23), r(-15)}) {
        CAPTURE(to_string(a));
        try {
            return_map(crossing1(a), {1, 4, 2, 3}, Section{Axis::V, r(0)});
            FAIL("expected CycleNotRealized");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::CycleNotRealized);
        }
    }
    // Valid while 2 < -15/4 - alpha/4.
    CHECK_NOTHROW(return_map(crossing1(r(-47, 2)), {1, 4, 2, 3}, Section{Axis::V, r(0)}));

    try {
        return_map(crossing1(r(-25)), {4, 5, 2});
        FAIL("expected NotACrossingCycle");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotACrossingCycle);
    }
}

TEST_CASE("return map: crossing2 is the identity") {
    Rational a = r(-4);
    Tds t = crossing2(a);
    ReturnMap m = return_map(t, {1, 4, 2, 3}, Section{Axis::V, r(0), r(0), r(-3, 4) - a / 4});
    CHECK(m.multiplier_c == 1);
    CHECK(m.offset == AffineInAlpha());
    CHECK(m.fixed_point.has_value());
    CHECK(m.verdict() == "nonhyperbolic");
}

TEST_CASE("crossing cycles") {
    auto c25 = find_crossing_cycles(crossing1(r(-25)));
    REQUIRE(c25.size() == 1);
    CHECK(c25[0].cycle == std::vector<int>{1, 4, 2, 3});
    CHECK(find_crossing_cycles(crossing1(r(-15))).empty());
    CHECK(find_crossing_cycles(autocatalator(r(-1, 4))).empty());
}

TEST_CASE("splitting constant: crossing2 homoclinic through P245") {
    Tds t = crossing2(r(-4));
    auto cs = carriers(t);
    const Carrier& p = carrier(cs, "P245");
    auto seps = separatrices(t, p);
    const Separatrix* d = nullptr;
    const Separatrix* a = nullptr;
    for (const auto& s : seps) {
        if (s.orbit.termination != Termination::ReachedVertex || !(s.orbit.vertices.back() == p.point)) continue;
        (s.orientation == Orientation::Forward ? d : a) = &s;
    }
    REQUIRE(d);
    REQUIRE(a);
    for (std::size_t k = 0; k + 1 < d->legs.size(); ++k) {
        SplittingConstant sc = splitting_constant(t, *d, *a, section_across(t, d->legs[k]));
        CHECK(sc.delta == 0);
        CHECK(sc.b.linear().is_constant());
    }
}

TEST_CASE("splitting constant: Q1234 to P245 in crossing1") {
    for (Rational a : {r(-25, 2), r(-13)}) {
        CAPTURE(to_string(a));
        Tds t = crossing1(a);
        auto cs = carriers(t);
        auto qs = separatrices(t, carrier(cs, "Q1234"));
        auto ps = separatrices(t, carrier(cs, "P245"));
        const Separatrix* d = find_sep(qs, Orientation::Forward, Vec2(r(0), r(1)));
        const Separatrix* arr = find_sep(ps, Orientation::Backward, Vec2(r(0), r(-1)));
        REQUIRE(d);
        REQUIRE(arr);
        Section s1{Axis::V, r(3)};
        Section s2{Axis::V, r(7, 2)};
        SplittingConstant x = splitting_constant(t, *d, *arr, s1);
        SplittingConstant y = splitting_constant(t, *d, *arr, s2);
        CHECK(x.b.coefficient_sum() == 0);
        CHECK(proportional(x.b.linear(), y.b.linear()));
        Rational b5 = x.b.coeff(5);
        REQUIRE(b5 != 0);
        CHECK(a - x.delta / b5 == -13);
        CHECK((x.delta == 0) == (a == -13));
    }
    Tds t = crossing1(r(-25, 2));
    auto cs = carriers(t);
    auto qs = separatrices(t, carrier(cs, "Q1234"));
    auto ps = separatrices(t, carrier(cs, "P245"));
    const Separatrix* d = find_sep(qs, Orientation::Forward, Vec2(r(0), r(1)));
    const Separatrix* arr = find_sep(ps, Orientation::Backward, Vec2(r(0), r(-1)));
    try {
        splitting_constant(t, *d, *arr, Section{Axis::U, r(100)});
        FAIL("expected NoCommonSection");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NoCommonSection);
    }
}

TEST_CASE("connection roots: the crossing1 ladder") {
    std::set<Rational> roots;
    for (Rational a : {r(-22), r(-20), r(-18), r(-33, 2), r(-14), r(-25, 2)})
        for (const auto& cr : connection_roots(crossing1(a), 5)) roots.insert(cr.value);
    for (Rational v : {r(-23), r(-167, 9), r(-53, 3), r(-49, 3), r(-15), r(-13)}) {
        CAPTURE(to_string(v));
        CHECK(roots.count(v) == 1);
    }
    // Each root is a true connection onto P245 under the brute-force crossing walk.
    struct Route {
        Rational alpha;
        Rational u, v;
        int region;
    };
    std::vector<Route> routes{{r(-167, 9), r(-1, 2), r(2), 4}, {r(-53, 3), r(-1), r(4), 3}, {r(-49, 3), r(-1, 2), r(2), 3},
                              {r(-15), r(0), r(0), 4},         {r(-13), r(-1, 2), r(2), 4},  {r(-175, 9), r(0), r(0), 4},
                              {r(-541, 27), r(-1, 2), r(2), 3}};
    for (const auto& rt : routes) {
        CAPTURE(to_string(rt.alpha));
        CHECK(roots.count(rt.alpha) == 1);
        auto w = oracle::crossing_walk(oracle::crossing1_linear(rt.alpha), rt.u, rt.v, rt.region);
        CHECK(w.kind == oracle::WalkEnd::Vertex);
        CHECK(w.maximizers == std::vector<int>{2, 4, 5});
    }
}

TEST_CASE("splitting constants are proportional across sections for every connection") {
    std::vector<std::pair<std::string, Tds>> cases{{"crossing1 -13", crossing1(r(-13))},
                                                    {"crossing1 -167/9", crossing1(r(-167, 9))},
                                                    {"crossing1 -15", crossing1(r(-15))},
                                                    {"autocatalator 3/4", autocatalator(r(3, 4))},
                                                    {"crossing2 -4", crossing2(r(-4))}};
    for (const auto& [name, t] : cases) {
        CAPTURE(name);
        PortraitAnalysis a = analyze(t);
        REQUIRE_FALSE(a.connections.empty());
        for (const auto& c : a.connections) {
            const auto& D = c.route;
            if (D.legs.size() < 2) continue;
            const Leg& last = D.legs.back();
            auto arrivals = separatrices(t, c.to);
            const Separatrix* A = find_sep(arrivals, Orientation::Backward, -last.direction);
            REQUIRE(A);
            auto b1 = splitting_constant(t, D, *A, section_across(t, D.legs[D.legs.size() - 1])).b.linear();
            auto b2 = splitting_constant(t, D, *A, section_across(t, D.legs[D.legs.size() - 2])).b.linear();
            CHECK(proportional(b1, b2));
            CHECK(b1.coefficient_sum() == 0);
            CHECK((b1 == c.delta.linear()));
        }
    }
}

TEST_CASE("stability report") {
    CHECK(stability_report(autocatalator(r(1, 4))).overall == Overall::StructurallyStable);
    StabilityReport half = stability_report(autocatalator(r(1, 2)));
    CHECK(half.overall == Overall::ViolationFound);
    CHECK_FALSE(half.general_position.triangulations);

    StabilityReport c13 = stability_report(crossing1(r(-13)));
    CHECK(c13.overall == Overall::ViolationFound);
    bool found = false;
    for (const auto& v : c13.separatrix_connections)
        if (v.from == "Q1234" && v.to == "P245") {
            found = true;
            CHECK_FALSE(v.ok);
        }
    CHECK(found);

    StabilityReport c2 = stability_report(crossing2(r(-4)));
    CHECK(c2.overall == Overall::StructurallyStable);
    REQUIRE(c2.crossing_cycles.size() == 1);
    CHECK(c2.crossing_cycles[0].c == 1);
    CHECK(c2.crossing_cycles[0].ok);

    StabilityReport c25 = stability_report(crossing1(r(-25)));
    CHECK(c25.overall == Overall::StructurallyStable);
    REQUIRE(c25.crossing_cycles.size() == 1);
    CHECK(c25.crossing_cycles[0].c == r(4, 9));
}

TEST_CASE("stability report: capped searches are inconclusive") {
    AnalysisLimits lim;
    lim.trace.max_segments = 3;
    StabilityReport rep = stability_report(crossing1(r(-22)), lim);
    CHECK(rep.overall == Overall::Inconclusive);
}

TEST_CASE("signatures") {
    CHECK(portrait_signature(autocatalator(r(1, 4))) == portrait_signature(autocatalator(r(3, 8))));
    CHECK_FALSE(portrait_signature(autocatalator(r(1, 4))) == portrait_signature(autocatalator(r(3, 4))));
    std::mt19937_64 rng(5);
    for (int k = 0; k < 3; ++k) {
        Rational s = oracle::random_rational(rng, -50, 50, 13);
        CHECK(portrait_signature(crossing1(r(-25))) == portrait_signature(crossing1(r(-25)).shifted(s)));
    }
    for (const auto& c : genauto_subcases()) {
        CAPTURE(c.name);
        CHECK(portrait_signature(generalized_autocatalator(c.alphas)) == portrait_signature(preset("genauto-" + c.alternate_of)));
    }
    CHECK_FALSE(portrait_signature(preset("genauto-1H_a")) == portrait_signature(preset("genauto-1H_b")));
}
