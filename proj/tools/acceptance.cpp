// Acceptance run: one PASS/FAIL line per criterion A1..A10. Exit status is the number of failures.

#include "oracles.hpp"
#include "probes.hpp"
#include "tropd/analysis.hpp"
#include "tropd/geometry.hpp"
#include "tropd/graph.hpp"
#include "tropd/presets.hpp"
#include "tropd/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tropd;

namespace {

Rational q(long a, long b = 1) { return ratio(a, b); }

class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++total_;
        if (!ok && failures_.size() < 6) failures_.push_back(what);
        if (!ok) ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::string detail() const {
        std::ostringstream o;
        o << total_ - failed_ << "/" << total_ << " checks";
        for (const auto& f : failures_) o << "; failed: " << f;
        return o.str();
    }

private:
    int total_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

const Carrier* find_carrier(const std::vector<Carrier>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name() == name) return &c;
    return nullptr;
}

std::string pt(const QPoint& p) { return "(" + to_string(p.u) + ", " + to_string(p.v) + ")"; }

std::vector<Tds> paper_presets() {
    std::vector<Tds> out{autocatalator(q(1, 4)), autocatalator(q(-1, 4)), autocatalator(q(3, 4)),
                         crossing1(q(-25)),      crossing1(q(-15)),       crossing2(q(-4))};
    for (const auto& c : genauto_cases()) out.push_back(generalized_autocatalator(c.alphas));
    return out;
}

void a1(Checks& c) {
    c.expect(is_triangulation(regular_subdivision(autocatalator(q(1, 4)), AxisFilter::I)), "alpha=1/4 triangulation");
    Subdivision s = regular_subdivision(autocatalator(q(1, 2)), AxisFilter::I);
    c.expect(!is_triangulation(s), "alpha=1/2 not a triangulation");
    bool quad = false;
    for (const auto& f : s.faces) quad |= f.boundary.size() + f.interior.size() == 4;
    c.expect(quad, "alpha=1/2 quadrilateral face");
}

void a2(Checks& c) {
    const Rational a = q(1, 4);
    Tds t = autocatalator(a);
    auto sing = singularities(t);
    c.expect(sing.size() == 1, "one singularity");
    if (sing.size() != 1) return;
    c.expect(sing[0].kind == SingularityKind::Source, "Source");
    c.expect(sing[0].location == QPoint{q(-1, 4), q(1, 4)}, "located at (-1/4, 1/4), got " + pt(sing[0].location));
    c.expect(trop_field(t, sing[0].location).contains_zero(), "0 in trop");
    // Brute force over a 1/8 grid with the six monomials written out: U maximizers must contain
    // opposite flows (1 against 2 or 3), and so must V (4 against 5 or 6).
    std::vector<QPoint> hits;
    for (int i = -32; i <= 32; ++i)
        for (int j = -32; j <= 32; ++j) {
            Rational u = q(i, 8), v = q(j, 8);
            auto vals = oracle::autocatalator_values(a, u, v);
            auto mu = oracle::argmax(vals, {1, 2, 3});
            auto mv = oracle::argmax(vals, {4, 5, 6});
            auto has = [](const std::vector<int>& s, int k) { return std::find(s.begin(), s.end(), k) != s.end(); };
            bool zu = has(mu, 1) && (has(mu, 2) || has(mu, 3));
            bool zv = has(mv, 4) && (has(mv, 5) || has(mv, 6));
            if (zu && zv) hits.push_back({u, v});
        }
    c.expect(hits.size() == 1 && hits[0] == sing[0].location, "grid oracle finds only the singularity");
}

void a3(Checks& c) {
    for (Rational a : {q(3, 5), q(3, 4), q(9, 10)}) {
        std::string tag = "alpha=" + to_string(a);
        Tds t = autocatalator(a);
        auto cs = carriers(t);
        const Carrier* src = nullptr;
        for (const auto& x : cs)
            if (x.kind == Carrier::Kind::Singularity) src = &x;
        const Carrier* p146 = find_carrier(cs, "P146");
        c.expect(src && p146, tag + " carriers");
        if (!src || !p146) continue;
        c.expect(p146->point == QPoint{a - 1, 1 - a}, tag + " P146");
        const Separatrix* back = nullptr;
        auto seps = separatrices(t, *src);
        for (const auto& s : seps)
            if (s.orientation == Orientation::Backward && !s.orbit.segments.empty() &&
                s.orbit.segments[0].direction == Vec2(q(1), q(0)))
                back = &s;
        c.expect(back != nullptr, tag + " backward d3 separatrix");
        if (!back || back->orbit.vertices.size() < 2) continue;
        const QPoint& hit = back->orbit.vertices[1];
        c.expect(hit.v == hit.u + 1, tag + " meets v = u + 1");
        c.expect(hit.u == a - 1 && hit.u == p146->point.u, tag + " u-coordinate -1 + alpha");
    }
}

void a4(Checks& c) {
    Tds t = crossing1(q(-25));
    ReturnMap m = return_map(t, {1, 4, 2, 3}, Section{Axis::V, q(0)});
    c.expect(m.multiplier_c == q(4, 9), "multiplier 4/9");
    c.expect(m.offset.eval(t) == q(10, 9), "offset 10/9");
    c.expect(m.fixed_point && *m.fixed_point == 2, "fixed point 2");
    c.expect(m.verdict() == "stable hyperbolic", "verdict");
    // Successive upward hits of v = 0 by a traced orbit follow the map.
    Orbit o = trace_orbit(t, {q(1), q(0)}, Orientation::Forward, {}, {9, Rational(1000000), 1});
    std::vector<Rational> hits;
    for (std::size_t k = 0; k < o.segments.size(); ++k)
        if (o.segments[k].direction == Vec2(q(0), q(1)) && o.vertices[k].v <= 0 && o.vertices[k + 1].v > 0)
            hits.push_back(o.vertices[k].u);
    c.expect(hits.size() >= 3 && hits[1] == m.apply(hits[0], t) && hits[2] == m.apply(hits[1], t), "traced returns");
    bool unrealized = false;
    try {
        return_map(crossing1(q(-20)), {1, 4, 2, 3}, Section{Axis::V, q(0)});
    } catch (const Error& e) {
        unrealized = e.code() == Errc::CycleNotRealized;
    }
    c.expect(unrealized, "alpha=-20 not realized");
    c.expect(find_crossing_cycles(crossing1(q(-20))).empty(), "alpha=-20 no crossing cycle");
}

void a5(Checks& c) {
    const std::vector<Rational> ladder{q(-23), q(-167, 9), q(-53, 3), q(-49, 3), q(-15), q(-13)};
    SweepResult s = sweep(crossing1(q(-25)), 5, q(-26), q(-12), q(1, 4));
    std::vector<bool> used(s.brackets.size(), false);
    for (const auto& v : ladder) {
        bool in = false;
        for (std::size_t k = 0; k < s.brackets.size(); ++k) {
            const auto& b = s.brackets[k];
            if (b.lo <= v && v <= b.hi && b.hi - b.lo <= q(1, 1000000)) in = used[k] = true;
        }
        c.expect(in, "bracket around " + to_string(v));
    }
    std::vector<std::string> extra;
    for (std::size_t k = 0; k < s.brackets.size(); ++k)
        if (!used[k]) {
            std::ostringstream o;
            o.precision(9);
            o << to_double(s.brackets[k].lo);
            extra.push_back(o.str());
        }
    std::string list;
    for (const auto& e : extra) list += (list.empty() ? "" : " ") + e;
    c.expect(extra.empty(), std::to_string(extra.size()) + " brackets beyond the six: " + list);

    std::set<Rational> roots;
    for (Rational a : {q(-22), q(-20), q(-18), q(-33, 2), q(-14), q(-25, 2)})
        for (const auto& r : connection_roots(crossing1(a), 5)) roots.insert(r.value);
    for (const auto& v : ladder) c.expect(roots.count(v) == 1, "exact root " + to_string(v));
}

void a6(Checks& c) {
    const Rational a = q(-4);
    Tds t = crossing2(a);
    auto cycles = find_crossing_cycles(t);
    c.expect(cycles.size() == 1, "one crossing cycle");
    if (cycles.size() == 1) {
        c.expect(cycles[0].map.multiplier_c == 1, "c = 1");
        c.expect(cycles[0].map.offset.eval(t) == 0, "offset 0");
    }
    auto cs = carriers(t);
    auto at = [&](const std::string& n, const QPoint& p) {
        const Carrier* x = find_carrier(cs, n);
        c.expect(x && x->point == p, n + " at " + pt(p));
        return x;
    };
    at("P134", {q(0), q(0)});
    at("P234", {q(0), q(1)});
    const Carrier* p245 = at("P245", {q(-3, 4) - a / 4, q(1, 4) - a / 4});
    const Carrier* h = at("Q1234", {q(0), q(2, 3)});
    const Carrier* s = at("Q1245", {-a - 2, q(2, 3)});
    c.expect(h && h->sing_kind == SingularityKind::HybridCenter, "Q1234 HybridCenter");
    c.expect(s && (s->sing_kind == SingularityKind::StrongStableSaddle || s->sing_kind == SingularityKind::StrongUnstableSaddle),
             "Q1245 saddle");
    if (!p245) return;
    // Homoclinic loop through P245: every section across the departure route measures zero splitting,
    // with no dependence on the coefficients.
    auto seps = separatrices(t, *p245);
    const Separatrix* d = nullptr;
    const Separatrix* r = nullptr;
    for (const auto& x : seps) {
        if (x.orbit.termination != Termination::ReachedVertex || !(x.orbit.vertices.back() == p245->point)) continue;
        (x.orientation == Orientation::Forward ? d : r) = &x;
    }
    c.expect(d && r, "homoclinic pair through P245");
    if (!d || !r) return;
    for (const auto& leg : d->legs) {
        bool vertical = leg.direction.x == 0;
        Rational x = leg.coordinate.eval(t);
        Section sec{vertical ? Axis::V : Axis::U, vertical ? (leg.from.v + leg.to.v) / 2 : (leg.from.u + leg.to.u) / 2,
                    x - q(1, 1000), x + q(1, 1000)};
        SplittingConstant sc = splitting_constant(t, *d, *r, sec);
        c.expect(sc.delta == 0 && sc.b.linear().is_constant(), "zero splitting on a section");
    }
}

std::vector<int> by_degree(const Tds& t, const std::vector<std::pair<int, int>>& degs) {
    std::vector<int> out;
    for (auto [n, m] : degs)
        for (const auto& p : t.pairs())
            if (p.degree == Degree{n, m}) out.push_back(p.index);
    return out;
}

void a7(Checks& c) {
    Tds c1 = crossing1(q(-25));
    auto g1 = enumerate_cycles(build_graph(c1));
    c.expect(g1.cycles.size() == 1 && g1.cycles[0] == by_degree(c1, {{1, 0}, {4, 2}, {3, 3}, {0, 1}}),
             "crossing1 cycle (1,0)->(4,2)->(3,3)->(0,1)");
    Tds c2 = crossing2(q(-4));
    auto g2 = enumerate_cycles(build_graph(c2));
    c.expect(g2.cycles.size() == 1 && g2.cycles[0] == by_degree(c2, {{2, 0}, {4, 1}, {2, 3}, {0, 1}}),
             "crossing2 cycle (2,0)->(4,1)->(2,3)->(0,1)");
}

void a8(Checks& c) {
    std::vector<std::pair<std::string, Signature>> sigs;
    for (const auto& k : genauto_cases()) {
        if (!k.alternate_of.empty()) continue;
        Tds t = generalized_autocatalator(k.alphas);
        PortraitAnalysis a = analyze(t);
        sigs.emplace_back(k.name, portrait_signature(t, a));
        bool cycle = false;
        for (bool b : a.limit_cycle) cycle |= b;
        c.expect(cycle == (k.name == "5V_c"), k.name + (cycle ? " has" : " lacks") + " a limit cycle");
    }
    c.expect(sigs.size() == 15, "15 cases");
    for (std::size_t i = 0; i < sigs.size(); ++i)
        for (std::size_t j = i + 1; j < sigs.size(); ++j)
            c.expect(!(sigs[i].second == sigs[j].second), sigs[i].first + " differs from " + sigs[j].first);
    for (const auto& k : genauto_subcases())
        c.expect(portrait_signature(generalized_autocatalator(k.alphas)) == portrait_signature(preset("genauto-" + k.alternate_of)),
                 k.name + " equals " + k.alternate_of);
}

void a9(Checks& c) {
    for (int N = 1; N <= 4; ++N) {
        c.expect(coefficient_count(N) == (N + 2) * (N + 1) / 2 &&
                     static_cast<long long>(full_support_degrees(N).size()) == coefficient_count(N),
                 "M(" + std::to_string(N) + ")");
        const int M = static_cast<int>(coefficient_count(N));
        Tds t = full_support_tds(N, std::vector<int>(2 * M, 1), std::vector<TropCoeff>(2 * M, TropCoeff(0)));
        std::set<Degree> distinct;
        for (const auto& p : t.pairs()) distinct.insert(p.degree);
        c.expect(static_cast<long long>(distinct.size()) == (N + 1) * (N + 4) / 2, "I-configuration size N=" + std::to_string(N));
    }
    std::mt19937_64 rng(23);
    for (int N : {2, 3}) {
        auto degs = full_support_degrees(N);
        const int M = static_cast<int>(degs.size());
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<TropCoeff> alphas;
            std::vector<int> deltas;
            for (int k = 0; k < 2 * M; ++k) {
                Degree d = k < M ? Degree{degs[k].n - 1, degs[k].m} : Degree{degs[k - M].n, degs[k - M].m - 1};
                std::uniform_int_distribution<long> e(1, 999999);
                // Strictly concave lift plus a tiny perturbation: every point is a vertex of a fine triangulation.
                alphas.push_back(Rational(-(d.n * d.n + d.m * d.m)) + Rational(e(rng), 1000000000000L));
                deltas.push_back(e(rng) % 2 ? 1 : -1);
            }
            Subdivision s = regular_subdivision(full_support_tds(N, deltas, alphas), AxisFilter::I);
            c.expect(is_triangulation(s) && static_cast<int>(s.faces.size()) == N * (N + 2),
                     "triangle count N=" + std::to_string(N));
        }
    }
}

void a10(Checks& c) {
    std::mt19937_64 rng(97);
    auto presets = paper_presets();

    // Translation invariance.
    for (int k = 0; k < 10; ++k) {
        Rational s = oracle::random_rational(rng, -50, 50, 7);
        Tds base = crossing1(q(-25)), moved = base.shifted(s);
        for (int j = 0; j < 10; ++j) {
            QPoint x(oracle::random_rational(rng, -6, 6, 4), oracle::random_rational(rng, -6, 6, 4));
            c.expect(argmax_set(base, AxisFilter::I, x) == argmax_set(moved, AxisFilter::I, x), "argmax shift");
        }
        const Tds& t = presets[k % presets.size()];
        auto c1 = tropical_curve(t, AxisFilter::I), c2 = tropical_curve(t.shifted(s), AxisFilter::I);
        bool same = c1.edges.size() == c2.edges.size();
        for (std::size_t e = 0; same && e < c1.edges.size(); ++e) same = c1.edges[e].geometry.a == c2.edges[e].geometry.a;
        c.expect(same, "curve shift");
    }
    for (Rational s : {q(7, 3), q(-11)})
        c.expect(portrait_signature(crossing1(q(-25))) == portrait_signature(crossing1(q(-25)).shifted(s)), "signature shift");

    // Duality.
    for (const Tds& t : presets)
        for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I}) {
            Subdivision s = regular_subdivision(t, f);
            TropicalCurve cv = tropical_curve(t, f);
            for (const auto& [a, b] : s.edges) {
                int i = s.points[a].pair, j = s.points[b].pair, hits = 0;
                for (const auto& e : cv.edges)
                    if ((e.i == i && e.j == j) || (e.i == j && e.j == i)) {
                        ++hits;
                        c.expect(e.geometry.dir.dot(s.points[b].degree - s.points[a].degree) == 0, "perpendicular");
                    }
                c.expect(hits == 1, "dual edge");
            }
        }

    // Upper semicontinuity.
    const Rational h(1, 1000000000);
    const int offs[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    for (const Tds& t : presets) {
        std::vector<QPoint> pts;
        for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I})
            for (const auto& v : tropical_curve(t, f).vertices) pts.push_back(v.point);
        TropicalCurve ci = tropical_curve(t, AxisFilter::I);
        std::uniform_int_distribution<std::size_t> pick(0, ci.edges.size() - 1);
        for (int k = 0; k < 50; ++k) pts.push_back(probes::random_point_on(ci.edges[pick(rng)], rng));
        for (const auto& p : pts) {
            FieldValue at = trop_field(t, p);
            bool ok = true;
            for (const auto& o : offs)
                for (const auto& w : probes::sample_members(trop_field(t, p + Vec2(h * o[0], h * o[1])))) ok &= at.contains(w);
            c.expect(ok, "semicontinuity at " + pt(p));
        }
    }

    // Filippov tangency.
    for (const Tds& t : presets)
        for (const auto& e : tropical_curve(t, AxisFilter::I).edges) {
            if (!classify_edge(t, e).filippov()) continue;
            auto fp = filippov_vector(t.pair(e.i).flow, t.pair(e.j).flow, e.normal);
            c.expect(fp.vector.dot(e.normal) == 0 && fp.q >= 0 && fp.q <= 1, "filippov tangency");
        }

    // Splitting-constant proportionality across two sections.
    for (const Tds& t : {crossing1(q(-13)), crossing1(q(-167, 9)), crossing1(q(-15)), autocatalator(q(3, 4)), crossing2(q(-4))}) {
        PortraitAnalysis a = analyze(t);
        for (const auto& cn : a.connections) {
            const auto& D = cn.route;
            if (D.legs.size() < 2) continue;
            const Separatrix* A = nullptr;
            auto arrivals = separatrices(t, cn.to);
            for (const auto& s : arrivals)
                if (s.orientation == Orientation::Backward && !s.orbit.segments.empty() &&
                    s.orbit.segments[0].direction == -D.legs.back().direction)
                    A = &s;
            if (!A) {
                c.expect(false, "arrival separatrix for " + cn.from.name() + " -> " + cn.to.name());
                continue;
            }
            std::vector<AffineInAlpha> bs;
            for (std::size_t k : {D.legs.size() - 1, D.legs.size() - 2}) {
                const Leg& L = D.legs[k];
                bool vertical = L.direction.x == 0;
                Rational x = L.coordinate.eval(t);
                Section sec{vertical ? Axis::V : Axis::U, vertical ? (L.from.v + L.to.v) / 2 : (L.from.u + L.to.u) / 2,
                            x - q(1, 1000), x + q(1, 1000)};
                bs.push_back(splitting_constant(t, D, *A, sec).b.linear());
            }
            bool prop;
            if (bs[0].is_constant() || bs[1].is_constant()) {
                prop = bs[0].is_constant() && bs[1].is_constant();
            } else {
                int k = bs[0].coeffs.begin()->first;
                prop = bs[1].coeff(k) != 0 && bs[0] == bs[1] * (bs[0].coeff(k) / bs[1].coeff(k));
            }
            c.expect(prop, "proportional splitting " + cn.from.name() + " -> " + cn.to.name());
        }
    }

    // Smooth field limit.
    for (const Tds& t : presets) {
        int done = 0;
        for (int trial = 0; trial < 2000 && done < 20; ++trial) {
            QPoint p(oracle::random_rational(rng, -4, 4, 64), oracle::random_rational(rng, -4, 4, 64));
            auto am = argmax_set(t, AxisFilter::I, p);
            if (am.size() != 1) continue;
            Rational top = eval_finite(t.pair(am[0]), p), second;
            bool have = false;
            for (const auto& x : t.pairs()) {
                if (x.index == am[0] || !x.alpha.finite()) continue;
                Rational v = eval_finite(x, p);
                if (!have || v > second) second = v, have = true;
            }
            if (top - second < Rational(1, 20)) continue;
            ++done;
            const FlowVector d = t.pair(am[0]).flow;
            auto s = smooth_field(t, to_double(p.u), to_double(p.v), 1e-3);
            c.expect(std::fabs(s.du - d.x) + std::fabs(s.dv - d.y) < 1e-6, "smooth field at " + pt(p));
        }
        c.expect(done == 20, "20 interior points");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Checks&)>>> criteria{
        {"A1 autocatalator subdivision", a1},   {"A2 autocatalator singularity", a2},
        {"A3 persistence identity", a3},         {"A4 crossing-cycle return map", a4},
        {"A5 bifurcation ladder", a5},           {"A6 structurally stable connection", a6},
        {"A7 crossing graphs", a7},              {"A8 generalized autocatalator classes", a8},
        {"A9 counting formulas", a9},            {"A10 property suites", a10},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Checks c;
        try {
            run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("%s %s: %s\n", c.ok() ? "PASS" : "FAIL", name.c_str(), c.detail().c_str());
        std::fflush(stdout);
        failed += !c.ok();
    }
    return failed;
}
