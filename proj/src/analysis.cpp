#include "tropd/analysis.hpp"

#include "tropd/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tropd {

namespace {

std::string join_indices(const std::vector<int>& v) {
    bool wide = std::any_of(v.begin(), v.end(), [](int k) { return k >= 10; });
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (wide && k > 0) s += ",";
        s += std::to_string(v[k]);
    }
    return s;
}

std::string edge_name(int i, int j) { return "E" + join_indices({std::min(i, j), std::max(i, j)}); }

std::string vec_name(const Vec2& w) { return "(" + to_string(w.x) + "," + to_string(w.y) + ")"; }

bool is_vertical(const Vec2& w) { return w.x == 0; }

Rational transverse(const QPoint& p, const Vec2& w) { return is_vertical(w) ? p.u : p.v; }

AffineInAlpha transverse(const QPointAlpha& p, const Vec2& w) { return is_vertical(w) ? p.u : p.v; }

// The line F_i = F_j as a map from the transverse coordinate of an incoming flow to the other coordinate
// of the hit point (u -> v for vertical flows, v -> u for horizontal ones).
AffineMap1D line_map(const Tds& tds, int i, int j, bool vertical) {
    const auto& a = tds.pair(i);
    const auto& b = tds.pair(j);
    AffineInAlpha rhs = AffineInAlpha::alpha(j) - AffineInAlpha::alpha(i);
    int dn = a.degree.n - b.degree.n;
    int dm = a.degree.m - b.degree.m;
    // dn*u + dm*v = alpha_j - alpha_i
    if (vertical) {
        if (dm == 0) throw std::logic_error("vertical flow parallel to " + edge_name(i, j));
        return {ratio(-dn, dm), rhs * ratio(1, dm)};
    }
    if (dn == 0) throw std::logic_error("horizontal flow parallel to " + edge_name(i, j));
    return {ratio(-dm, dn), rhs * ratio(1, dn)};
}

// a*x + b in one unknown section coordinate x.
struct Lin {
    Rational a, b;
    Rational at(const Rational& x) const { return a * x + b; }
    Lin operator-(const Lin& o) const { return {a - o.a, b - o.b}; }
    Lin operator+(const Lin& o) const { return {a + o.a, b + o.b}; }
    Lin operator*(const Rational& s) const { return {a * s, b * s}; }
};

struct LinPoint {
    Lin u, v;
    Lin dot(const Vec2& w) const { return u * w.x + v * w.y; }
};

// Open interval {x : c(x) > 0 for every constraint}; empty when infeasible.
struct Interval {
    std::optional<Rational> lo, hi;
    bool empty = false;

    void require(const Lin& c) {
        if (c.a == 0) {
            if (c.b <= 0) empty = true;
            return;
        }
        Rational x = -c.b / c.a;
        if (c.a > 0) {
            if (!lo || x > *lo) lo = x;
        } else if (!hi || x < *hi) {
            hi = x;
        }
        if (lo && hi && *lo >= *hi) empty = true;
    }
    bool contains(const Rational& x) const { return !empty && (!lo || *lo < x) && (!hi || x < *hi); }
    Rational pick() const {
        if (lo && hi) return (*lo + *hi) / 2;
        if (lo) return *lo + 1;
        if (hi) return *hi - 1;
        return 0;
    }
};

// Constraints that keep p strictly inside the edge piece (p is assumed on the edge line).
void require_on_piece(Interval& J, const EdgeGeometry& g, const LinPoint& p) {
    if (g.shape == EdgeShape::Line) return;
    Rational len2 = g.dir.dot(g.dir);
    Lin t = (LinPoint{{0, g.a.u}, {0, g.a.v}}.dot(g.dir) * Rational(-1) + p.dot(g.dir)) * (1 / len2);
    J.require(t);
    if (g.shape == EdgeShape::Segment) J.require(Lin{0, 1} - t);
}

void require_in_region(Interval& J, const Tds& tds, int r, const LinPoint& s) {
    const auto& pr = tds.pair(r);
    for (int l : tds.indices(AxisFilter::I, true)) {
        if (l == r) continue;
        const auto& pl = tds.pair(l);
        Degree d = pr.degree - pl.degree;
        Lin diff = s.u * d.n + s.v * d.m + Lin{0, pr.alpha.value() - pl.alpha.value()};
        J.require(diff);
    }
}

struct Route {
    std::vector<int> cycle;  // rotated so that cycle[0] carries the section
    Rational c;
    AffineMap1D map;
    Interval J;
    Lin leg0;  // forward length of the section leg when x is a fixed point
    std::vector<LinPoint> hits;
};

Route route_of(const Tds& tds, const TropicalCurve& curve, std::vector<int> cycle) {
    const std::size_t n = cycle.size();
    Route r;
    r.cycle = cycle;
    auto flow = [&](std::size_t k) { return Vec2(tds.pair(cycle[k % n]).flow); };
    Lin X{1, 0};
    AffineMap1D M = AffineMap1D::identity();
    for (std::size_t k = 0; k < n; ++k) {
        int i = cycle[k], j = cycle[(k + 1) % n];
        bool vert = is_vertical(flow(k));
        AffineMap1D L = line_map(tds, i, j, vert);
        Lin other{L.slope * X.a, L.slope * X.b + L.intercept.eval(tds)};
        LinPoint H = vert ? LinPoint{X, other} : LinPoint{other, X};
        const auto& e = curve.edges[curve.find_edge(std::min(i, j), std::max(i, j))];
        require_on_piece(r.J, e.geometry, H);
        r.hits.push_back(H);
        if (is_vertical(flow(k + 1)) != vert) {
            X = other;
            M = L.after(M);
        }
    }
    for (std::size_t k = 1; k < n; ++k) {
        LinPoint a = r.hits[k - 1], b = r.hits[k];
        r.J.require(LinPoint{b.u - a.u, b.v - a.v}.dot(flow(k)));
    }
    LinPoint a = r.hits[n - 1], b = r.hits[0];
    r.leg0 = LinPoint{b.u - a.u, b.v - a.v}.dot(flow(0));
    r.map = M;
    r.c = M.slope;
    return r;
}

LinPoint section_point(const Section& s) {
    Lin level{0, s.level};
    Lin x{1, 0};
    return s.fixed == Axis::V ? LinPoint{x, level} : LinPoint{level, x};
}

std::optional<ReturnMap> realize(const Tds& tds, Route r, const std::optional<Section>& given, std::string& why) {
    Rational offset = r.map.intercept.eval(tds);
    Interval J = r.J;
    if (given) {
        require_in_region(J, tds, r.cycle[0], section_point(*given));
        if (given->lo) J.require(Lin{1, -*given->lo});
        if (given->hi) J.require(Lin{-1, *given->hi});
    }
    std::optional<Rational> x;
    if (r.c != 1) {
        x = offset / (1 - r.c);
        if (!J.contains(*x) || r.leg0.at(*x) <= 0) {
            why = "fixed point " + to_string(*x) + " outside the route's validity interval";
            return std::nullopt;
        }
    } else {
        if (offset != 0) {
            why = "return map is a translation by " + to_string(offset);
            return std::nullopt;
        }
        Interval K = J;
        K.require(r.leg0);
        if (K.empty) {
            why = "no orbit follows the route";
            return std::nullopt;
        }
        x = K.pick();
    }

    ReturnMap m;
    m.region = r.cycle[0];
    m.multiplier_c = r.c;
    m.offset = r.map.intercept;
    m.fixed_point = x;
    Vec2 d(tds.pair(r.cycle[0]).flow);
    if (given) {
        m.section = *given;
    } else {
        const auto& a = r.hits.back();
        const auto& b = r.hits.front();
        m.section.fixed = is_vertical(d) ? Axis::V : Axis::U;
        m.section.level = is_vertical(d) ? (a.v.at(*x) + b.v.at(*x)) / 2 : (a.u.at(*x) + b.u.at(*x)) / 2;
        require_in_region(J, tds, r.cycle[0], section_point(m.section));
    }
    m.lo = J.lo;
    m.hi = J.hi;
    return m;
}

const Carrier* carrier_at(const std::vector<Carrier>& cs, const QPoint& p) {
    for (const auto& c : cs)
        if (c.point == p) return &c;
    return nullptr;
}

std::vector<Leg> legs_of(const Tds& tds, const Carrier& at, const Orbit& o) {
    std::vector<Leg> legs;
    AffineInAlpha x;
    for (std::size_t k = 0; k < o.segments.size(); ++k) {
        const Segment& s = o.segments[k];
        if (k == 0) {
            x = transverse(at.symbolic, s.direction);
        } else {
            const Leg& prev = legs.back();
            if (is_vertical(prev.direction) != is_vertical(s.direction)) {
                auto is = argmax_set(tds, AxisFilter::I, o.vertices[k]);
                if (is.size() != 2) throw std::logic_error("separatrix turns off a crossing edge");
                x = line_map(tds, is[0], is[1], is_vertical(prev.direction)).apply(x);
            }
        }
        if (x.eval(tds) != transverse(o.vertices[k], s.direction))
            throw std::logic_error("symbolic leg disagrees with the traced orbit");
        legs.push_back({s.region, s.direction, x, o.vertices[k], o.vertices[k + 1]});
    }
    return legs;
}

// Leg of `s` that crosses the section line, with its transverse coordinate inside the interval.
const Leg* crossing_leg(const Tds& tds, const Separatrix& s, const Section& sec, bool last) {
    const Leg* found = nullptr;
    for (const auto& L : s.legs) {
        bool moving_v = is_vertical(L.direction);
        if (moving_v != (sec.fixed == Axis::V)) continue;
        const Rational& a = moving_v ? L.from.v : L.from.u;
        const Rational& b = moving_v ? L.to.v : L.to.u;
        if (sec.level < std::min(a, b) || sec.level > std::max(a, b)) continue;
        Rational x = L.coordinate.eval(tds);
        if ((sec.lo && x <= *sec.lo) || (sec.hi && x >= *sec.hi)) continue;
        found = &L;
        if (!last) break;
    }
    return found;
}

std::string carrier_key_of_termination(const PortraitAnalysis& a, const Orbit& o) {
    switch (o.termination) {
        case Termination::ReachedVertex:
            return "P" + join_indices(o.feature);
        case Termination::ReachedSliding:
            return edge_name(o.feature[0], o.feature[1]);
        case Termination::Singularity:
        case Termination::HybridPoint:
            for (const auto& c : a.carriers)
                if (c.kind == Carrier::Kind::Singularity && c.singularity == o.termination_id) return c.class_key();
            return "?";
        case Termination::CrossingCycle: {
            const auto& cyc = a.crossing_cycles.at(o.termination_id).cycle;
            std::string s = "cycle";
            for (int k : cyc) s += " " + std::to_string(k);
            return s;
        }
        default:
            return "";
    }
}

std::string loop_feature(const Tds& tds, const Orbit& o) {
    std::set<std::string> parts;
    for (std::size_t k = o.termination_id; k < o.segments.size(); ++k) {
        const auto& s = o.segments[k];
        switch (s.mode) {
            case SegmentMode::Region: parts.insert("R" + std::to_string(s.region)); break;
            case SegmentMode::CrossingThrough: parts.insert("X" + join_indices({s.edge[0], s.edge[1]})); break;
            default: parts.insert("S" + join_indices({s.edge[0], s.edge[1]}));
        }
    }
    (void)tds;
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

}  // namespace

std::string Carrier::name() const { return (kind == Kind::Vertex ? "P" : "Q") + join_indices(label); }

std::string Carrier::class_key() const {
    if (kind == Kind::Vertex) return name();
    return std::string(singularity_kind_name(sing_kind)) + "@" + edge_name(i_host[0], i_host[1]);
}

QPointAlpha solve_symbolic(const Tds& tds, int a, int b, int c, int d) {
    Degree n1 = tds.pair(a).degree - tds.pair(b).degree;
    Degree n2 = tds.pair(c).degree - tds.pair(d).degree;
    AffineInAlpha r1 = AffineInAlpha::alpha(b) - AffineInAlpha::alpha(a);
    AffineInAlpha r2 = AffineInAlpha::alpha(d) - AffineInAlpha::alpha(c);
    int det = n1.n * n2.m - n1.m * n2.n;
    if (det == 0) throw std::logic_error("parallel edge lines");
    Rational inv = ratio(1, det);
    return {(r1 * Rational(n2.m) - r2 * Rational(n1.m)) * inv, (r2 * Rational(n1.n) - r1 * Rational(n2.n)) * inv};
}

std::vector<Carrier> carriers(const Tds& tds) {
    std::vector<Carrier> out;
    TropicalCurve curve = tropical_curve(tds, AxisFilter::I);
    for (const auto& v : curve.vertices) {
        if (v.maximizers.size() != 3) continue;
        Carrier c;
        c.kind = Carrier::Kind::Vertex;
        c.label = v.maximizers;
        c.point = v.point;
        c.symbolic = solve_symbolic(tds, v.maximizers[0], v.maximizers[1], v.maximizers[0], v.maximizers[2]);
        out.push_back(std::move(c));
    }
    auto sings = singularities(tds);
    for (std::size_t k = 0; k < sings.size(); ++k) {
        const auto& s = sings[k];
        Carrier c;
        c.kind = Carrier::Kind::Singularity;
        c.label = s.label();
        c.point = s.location;
        c.singularity = static_cast<int>(k);
        c.sing_kind = s.kind;
        c.i_host = s.i_host == Axis::U ? s.host_u : s.host_v;
        if (s.kind != SingularityKind::Degenerate)
            c.symbolic = solve_symbolic(tds, s.host_u[0], s.host_u[1], s.host_v[0], s.host_v[1]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Separatrix> separatrices(const Tds& tds, const Carrier& at, const TraceLimits& limits,
                                     const std::vector<CycleBasin>& forward_basins,
                                     const std::vector<CycleBasin>& backward_basins) {
    if (at.kind == Carrier::Kind::Singularity) {
        if (at.sing_kind == SingularityKind::Degenerate)
            throw Error(Errc::NotASeparatrixCarrier, at.name() + " is not in general position");
        if (at.sing_kind == SingularityKind::HybridCenter || at.sing_kind == SingularityKind::HybridSaddle) return {};
    }
    std::vector<Separatrix> out;
    for (Orientation dir : {Orientation::Forward, Orientation::Backward}) {
        Tds sys = dir == Orientation::Forward ? tds : tds.reversed();
        for (const Vec2& w : admissible_directions(sys, at.point, true)) {
            TracePolicy policy;
            policy.crossing_only = true;
            policy.initial_direction = w;
            policy.basins = dir == Orientation::Forward ? forward_basins : backward_basins;
            Separatrix s;
            s.carrier = at;
            s.orientation = dir;
            s.orbit = trace_orbit(tds, at.point, dir, policy, limits);
            s.legs = legs_of(tds, at, s.orbit);
            out.push_back(std::move(s));
        }
    }
    return out;
}

SplittingConstant splitting_constant(const Tds& tds, const Separatrix& depart, const Separatrix& arrive,
                                     const Section& section) {
    const Leg* d = crossing_leg(tds, depart, section, true);
    const Leg* a = crossing_leg(tds, arrive, section, false);
    if (!d || !a)
        throw Error(Errc::NoCommonSection, (d ? arrive : depart).carrier.name() + " does not cross the section");
    AffineInAlpha delta = d->coordinate - a->coordinate;
    return {delta.eval(tds), delta};
}

std::string ReturnMap::verdict() const {
    if (multiplier_c < 1) return "stable hyperbolic";
    if (multiplier_c > 1) return "unstable hyperbolic";
    return "nonhyperbolic";
}

ReturnMap return_map(const Tds& tds, const std::vector<int>& cycle, const std::optional<Section>& section) {
    const std::size_t n = cycle.size();
    if (n < 2) throw Error(Errc::NotACrossingCycle, "a cycle needs at least two regions");
    TropicalCurve curve = tropical_curve(tds, AxisFilter::I);
    for (std::size_t k = 0; k < n; ++k) {
        int a = cycle[k], b = cycle[(k + 1) % n];
        if (!tds.has(a) || !tds.has(b)) throw Error(Errc::UnknownPair, "cycle names an unknown pair");
        int e = curve.find_edge(std::min(a, b), std::max(a, b));
        if (e < 0) throw Error(Errc::CycleNotRealized, edge_name(a, b) + " is not an edge of T^I");
        if (classify_edge(tds, curve.edges[e]).sliding())
            throw Error(Errc::NotACrossingCycle, edge_name(a, b) + " is a sliding edge");
        Degree nab = tds.pair(b).degree - tds.pair(a).degree;
        if (tds.pair(a).flow.dot(nab) <= 0)
            throw Error(Errc::CycleNotRealized, "the flow does not cross " + edge_name(a, b) + " from region " +
                                                    std::to_string(a));
    }

    std::vector<std::size_t> starts;
    for (std::size_t k = 0; k < n; ++k) {
        if (!section) {
            starts.push_back(k);
            break;
        }
        const auto& f = tds.pair(cycle[k]).flow;
        if (section->fixed == Axis::V ? f.y > 0 : f.x > 0) starts.push_back(k);
    }
    if (starts.empty()) throw Error(Errc::NoCommonSection, "no region of the cycle crosses the section positively");

    std::string why;
    for (std::size_t s : starts) {
        std::vector<int> rot(cycle.begin() + s, cycle.end());
        rot.insert(rot.end(), cycle.begin(), cycle.begin() + s);
        if (auto m = realize(tds, route_of(tds, curve, rot), section, why)) return *m;
    }
    throw Error(Errc::CycleNotRealized, why);
}

std::vector<CrossingCycle> find_crossing_cycles(const Tds& tds) {
    std::vector<CrossingCycle> out;
    for (const auto& c : enumerate_cycles(build_graph(tds), 4).cycles) {
        try {
            out.push_back({c, return_map(tds, c)});
        } catch (const Error& e) {
            if (e.code() != Errc::CycleNotRealized && e.code() != Errc::NotACrossingCycle) throw;
        }
    }
    return out;
}

std::vector<CycleBasin> cycle_basins(const std::vector<CrossingCycle>& cycles, Orientation dir) {
    std::vector<CycleBasin> out;
    for (std::size_t k = 0; k < cycles.size(); ++k) {
        const auto& m = cycles[k].map;
        if (!m.hyperbolic()) continue;
        if (m.attracting() != (dir == Orientation::Forward)) continue;
        out.push_back({static_cast<int>(k), m.region, m.lo, m.hi, m.fixed_point});
    }
    return out;
}

std::vector<ConnectionRoot> connection_roots(const Tds& tds, int k, const TraceLimits& limits) {
    auto cs = carriers(tds);
    std::vector<ConnectionRoot> out;
    std::set<std::pair<std::string, Rational>> seen;
    for (const auto& P : cs) {
        std::vector<Separatrix> seps;
        try {
            seps = separatrices(tds, P, limits);
        } catch (const Error&) {
            continue;
        }
        for (const auto& D : seps) {
            if (D.orientation != Orientation::Forward) continue;
            for (const auto& L : D.legs) {
                for (const auto& Q : cs) {
                    if (Q.kind == Carrier::Kind::Singularity && Q.sing_kind == SingularityKind::Degenerate) continue;
                    auto at = argmax_set(tds, AxisFilter::I, Q.point);
                    if (std::find(at.begin(), at.end(), L.region) == at.end()) continue;
                    AffineInAlpha delta = L.coordinate - transverse(Q.symbolic, L.direction);
                    Rational bk = delta.coeff(k);
                    if (bk == 0) continue;
                    Rational root = tds.pair(k).alpha.value() - delta.eval(tds) / bk;
                    std::string key = P.name() + ">" + Q.name() + vec_name(D.orbit.segments[0].direction);
                    if (seen.count({key, root})) continue;
                    seen.insert({key, root});

                    Tds moved = tds.with_alpha(k, root);
                    auto cs2 = carriers(moved);
                    const Carrier* P2 = nullptr;
                    const Carrier* Q2 = nullptr;
                    for (const auto& c : cs2) {
                        if (c.name() == P.name()) P2 = &c;
                        if (c.name() == Q.name()) Q2 = &c;
                    }
                    if (!P2 || !Q2) continue;
                    TracePolicy policy;
                    policy.crossing_only = true;
                    policy.initial_direction = D.orbit.segments[0].direction;
                    Orbit o;
                    try {
                        o = trace_orbit(moved, P2->point, Orientation::Forward, policy, limits);
                    } catch (const Error&) {
                        continue;
                    }
                    if (o.termination != Termination::ReachedVertex && o.termination != Termination::Singularity &&
                        o.termination != Termination::HybridPoint)
                        continue;
                    if (!(o.vertices.back() == Q2->point)) continue;
                    out.push_back({P.name(), Q.name(), delta, root});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ConnectionRoot& a, const ConnectionRoot& b) {
        if (a.value != b.value) return a.value < b.value;
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    return out;
}

PortraitAnalysis analyze(const Tds& tds, const AnalysisLimits& limits) {
    PortraitAnalysis a;
    a.general_position = general_position(tds);
    a.singular = singularities(tds);
    a.carriers = carriers(tds);
    a.crossing_cycles = find_crossing_cycles(tds);
    auto fwd = cycle_basins(a.crossing_cycles, Orientation::Forward);
    auto bwd = cycle_basins(a.crossing_cycles, Orientation::Backward);

    for (const auto& c : a.carriers) {
        if (c.kind == Carrier::Kind::Singularity && c.sing_kind == SingularityKind::Degenerate) continue;
        try {
            for (auto& s : separatrices(tds, c, limits.trace, fwd, bwd)) {
                if (s.orbit.termination == Termination::SegmentCap) a.search_capped = true;
                a.separatrices.push_back(std::move(s));
            }
        } catch (const Error& e) {
            if (e.code() != Errc::StuckAtDegeneracy) throw;
            a.search_capped = true;
        }
    }

    for (const auto& s : a.separatrices) {
        if (s.orientation != Orientation::Forward || s.legs.empty()) continue;
        auto t = s.orbit.termination;
        if (t != Termination::ReachedVertex && t != Termination::Singularity && t != Termination::HybridPoint) continue;
        const Carrier* q = carrier_at(a.carriers, s.orbit.vertices.back());
        if (!q || (q->kind == Carrier::Kind::Singularity && q->sing_kind == SingularityKind::Degenerate)) continue;
        const Leg& last = s.legs.back();
        a.connections.push_back({s.carrier, *q, s, last.coordinate - transverse(q->symbolic, last.direction)});
    }

    std::set<std::vector<QPoint>> loops;
    TropicalCurve curve = tropical_curve(tds, AxisFilter::I);
    TracePolicy policy;
    policy.basins = fwd;
    for (const auto& v : curve.vertices) {
        std::vector<Orbit> orbits;
        try {
            orbits = trace_branches(tds, v.point, Orientation::Forward, policy, limits.trace);
        } catch (const Error& e) {
            if (e.code() != Errc::StuckAtDegeneracy) throw;
            a.search_capped = true;
            continue;
        }
        for (auto& o : orbits) {
            if (o.termination != Termination::Periodic) continue;
            std::vector<QPoint> loop(o.vertices.begin() + o.termination_id, o.vertices.end() - 1);
            std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
            if (!loops.insert(loop).second) continue;
            bool limit = false;
            for (std::size_t k = o.termination_id; k < o.segments.size(); ++k) {
                const auto& s = o.segments[k];
                if (s.mode != SegmentMode::FilippovSlide && s.mode != SegmentMode::NullclineSlide) continue;
                int e = curve.find_edge(s.edge[0], s.edge[1]);
                if (e >= 0 && classify_edge(tds, curve.edges[e]).stability == Stability::Stable) limit = true;
            }
            a.periodic_orbits.push_back(std::move(o));
            a.limit_cycle.push_back(limit);
        }
    }
    return a;
}

const char* overall_name(Overall o) {
    switch (o) {
        case Overall::StructurallyStable: return "StructurallyStable";
        case Overall::Inconclusive: return "Inconclusive";
        case Overall::ViolationFound: return "ViolationFound";
    }
    return "?";
}

StabilityReport stability_report(const Tds& tds, const AnalysisLimits& limits) {
    return stability_report(analyze(tds, limits));
}

StabilityReport stability_report(const PortraitAnalysis& a) {
    StabilityReport r;
    r.general_position = a.general_position;
    std::vector<std::string> witnesses;
    if (!a.general_position.ok())
        witnesses.push_back("general position: " +
                            (a.general_position.violations.empty() ? std::string("violated")
                                                                   : a.general_position.violations.front()));
    for (const auto& c : a.carriers) {
        if (c.kind != Carrier::Kind::Singularity) continue;
        r.singularity_kinds.emplace_back(c.name(), c.sing_kind);
        if (c.sing_kind == SingularityKind::Degenerate) witnesses.push_back("degenerate singularity " + c.name());
    }
    for (const auto& cc : a.crossing_cycles) {
        CycleVerdict v;
        v.cycle = cc.cycle;
        v.c = cc.map.multiplier_c;
        v.b = cc.map.offset.linear();
        v.ok = cc.map.hyperbolic() || v.b.is_constant();
        v.verdict = cc.map.verdict() + (cc.map.hyperbolic() ? "" : v.ok ? ", b = 0" : ", b != 0");
        if (!v.ok) witnesses.push_back("nonhyperbolic crossing cycle with b != 0");
        r.crossing_cycles.push_back(std::move(v));
    }
    for (const auto& c : a.connections) {
        ConnectionVerdict v{c.from.name(), c.to.name(), c.delta.linear(), c.persistent()};
        if (!v.ok) witnesses.push_back("separatrix connection " + v.from + " -> " + v.to + " with b = " + to_string(v.b));
        r.separatrix_connections.push_back(std::move(v));
    }
    if (!witnesses.empty()) {
        r.overall = Overall::ViolationFound;
        r.witness = witnesses.front();
    } else if (a.search_capped) {
        r.overall = Overall::Inconclusive;
        r.witness = "separatrix search hit its segment limit";
    }
    return r;
}

std::string Signature::text() const {
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

Signature portrait_signature(const Tds& tds, const AnalysisLimits& limits) {
    return portrait_signature(tds, analyze(tds, limits));
}

Signature portrait_signature(const Tds& tds, const PortraitAnalysis& a) {
    Signature sig;
    auto& L = sig.lines;
    for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I}) {
        Subdivision sd = regular_subdivision(tds, f);
        for (const auto& face : sd.faces) {
            std::vector<int> b, in;
            for (int p : face.boundary) b.push_back(sd.points[p].pair);
            for (int p : face.interior) in.push_back(sd.points[p].pair);
            std::sort(b.begin(), b.end());
            std::sort(in.begin(), in.end());
            std::string s = std::string("face ") + filter_name(f) + " " + join_indices(b);
            if (!in.empty()) s += " +" + join_indices(in);
            L.push_back(s);
        }
        if (sd.one_dimensional) L.push_back(std::string("flat ") + filter_name(f));
    }
    TropicalCurve curve = tropical_curve(tds, AxisFilter::I);
    for (const auto& e : curve.edges) {
        EdgeClass c = classify_edge(tds, e);
        L.push_back("edge " + edge_name(e.i, e.j) + " " + edge_kind_name(c.kind) + " " + stability_name(c.stability));
    }
    for (const auto& c : a.carriers)
        if (c.kind == Carrier::Kind::Singularity) L.push_back("singularity " + c.class_key());
    for (const auto& cc : a.crossing_cycles) {
        std::string s = "crossing-cycle";
        for (int k : cc.cycle) s += " " + std::to_string(k);
        L.push_back(s + " c=" + to_string(cc.map.multiplier_c));
    }
    for (std::size_t k = 0; k < a.periodic_orbits.size(); ++k)
        if (a.limit_cycle[k]) L.push_back("limit-cycle " + loop_feature(tds, a.periodic_orbits[k]));
    for (const auto& s : a.separatrices) {
        std::string line = "separatrix " + s.carrier.class_key() + (s.orientation == Orientation::Forward ? " out " : " in ") +
                           vec_name(s.orbit.segments.empty() ? Vec2() : s.orbit.segments[0].direction) + " -> " +
                           termination_name(s.orbit.termination);
        std::string f = carrier_key_of_termination(a, s.orbit);
        if (!f.empty()) line += " " + f;
        line += " via";
        for (std::size_t k = 1; k < s.orbit.segments.size(); ++k) line += " " + vec_name(s.orbit.segments[k].direction);
        L.push_back(line);
    }
    for (const auto& c : a.connections)
        L.push_back("connection " + c.from.class_key() + " -> " + c.to.class_key() +
                    (c.persistent() ? " persistent" : " splitting"));
    std::sort(L.begin(), L.end());
    return sig;
}

}  // namespace tropd
