#include "tropd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tropd {

const char* edge_kind_name(EdgeKind k) {
    switch (k) {
        case EdgeKind::NonSwitching: return "NonSwitching";
        case EdgeKind::Crossing: return "Crossing";
        case EdgeKind::FilippovTransversal: return "FilippovTransversal";
        case EdgeKind::FilippovTangential: return "FilippovTangential";
        case EdgeKind::NullclineTransversal: return "NullclineTransversal";
        case EdgeKind::NullclineTangential: return "NullclineTangential";
    }
    return "?";
}

const char* stability_name(Stability s) {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::NotApplicable: return "NotApplicable";
    }
    return "?";
}

const char* field_tag_name(FieldTag t) {
    switch (t) {
        case FieldTag::SingletonFlow: return "SingletonFlow";
        case FieldTag::CrossingSegment: return "CrossingSegment";
        case FieldTag::FilippovSegment: return "FilippovSegment";
        case FieldTag::NullclineFan: return "NullclineFan";
        case FieldTag::DiamondWithZero: return "DiamondWithZero";
        case FieldTag::VertexFan: return "VertexFan";
    }
    return "?";
}

const char* singularity_kind_name(SingularityKind k) {
    switch (k) {
        case SingularityKind::Sink: return "Sink";
        case SingularityKind::Source: return "Source";
        case SingularityKind::StrongStableSaddle: return "StrongStableSaddle";
        case SingularityKind::StrongUnstableSaddle: return "StrongUnstableSaddle";
        case SingularityKind::HybridCenter: return "HybridCenter";
        case SingularityKind::HybridSaddle: return "HybridSaddle";
        case SingularityKind::Degenerate: return "Degenerate";
    }
    return "?";
}

EdgeClass classify(const FlowVector& di, const FlowVector& dj, const Degree& n) {
    EdgeClass c;
    if (di == dj) return c;
    const int a = di.dot(n), b = dj.dot(n);
    const int prod = a * b;
    if (prod > 0) {
        c.kind = EdgeKind::Crossing;
        return c;
    }
    if (di.dot(dj) == 0) {
        c.kind = prod == 0 ? EdgeKind::FilippovTangential : EdgeKind::FilippovTransversal;
    } else {
        c.kind = prod == 0 ? EdgeKind::NullclineTangential : EdgeKind::NullclineTransversal;
        c.dominant_axis = di.horizontal() ? Axis::U : Axis::V;
    }
    if (prod < 0) {
        if (a > 0 && b < 0) c.stability = Stability::Stable;
        else c.stability = Stability::Unstable;
    } else if (a != 0) {
        c.stability = a > 0 ? Stability::Stable : Stability::Unstable;
    } else if (b != 0) {
        c.stability = b < 0 ? Stability::Stable : Stability::Unstable;
    }
    return c;
}

namespace {

AxisFilter edge_filter(const Tds& tds, int i, int j) {
    Axis a = tds.pair(i).axis, b = tds.pair(j).axis;
    if (a != b) return AxisFilter::I;
    return a == Axis::U ? AxisFilter::U : AxisFilter::V;
}

AxisFilter other_filter(Axis a) { return a == Axis::U ? AxisFilter::V : AxisFilter::U; }

Vec2 unit_tangent(const Degree& n) {
    Vec2 t(Rational(-n.m), Rational(n.n));
    return t * (Rational(1) / t.norm1());
}

std::vector<FlowVector> distinct_flows(const Tds& tds, const std::vector<int>& idx) {
    std::set<FlowVector> s;
    for (int k : idx) s.insert(tds.pair(k).flow);
    return {s.begin(), s.end()};
}

bool in_segment(const Vec2& w, const FlowVector& t, const FlowVector& s) {
    // w = q t + (1-q) s with t horizontal and s vertical.
    if (t == s) return w == Vec2(t);
    if (t.dot(s) != 0) return false;
    Rational q = w.x * t.x + w.y * t.y;
    Rational r = w.x * s.x + w.y * s.y;
    if (q < 0 || r < 0 || q + r != 1) return false;
    return Vec2(t) * q + Vec2(s) * r == w;
}

}  // namespace

EdgeClass classify_edge(const Tds& tds, const TropEdge& e) {
    if (e.i == e.j || !tds.has(e.i) || !tds.has(e.j))
        throw Error(Errc::NotAnEdge, "edge " + std::to_string(e.i) + "," + std::to_string(e.j) + " has unknown pairs");
    const auto& pi = tds.pair(e.i);
    const auto& pj = tds.pair(e.j);
    if (pi.degree == pj.degree || !pi.alpha.finite() || !pj.alpha.finite() || e.normal != pj.degree - pi.degree)
        throw Error(Errc::NotAnEdge, "pairs " + std::to_string(e.i) + "," + std::to_string(e.j) + " do not bound an edge");
    auto am = argmax_set(tds, edge_filter(tds, e.i, e.j), e.interior_point());
    if (std::find(am.begin(), am.end(), e.i) == am.end() || std::find(am.begin(), am.end(), e.j) == am.end())
        throw Error(Errc::NotAnEdge, "F" + std::to_string(e.i) + " = F" + std::to_string(e.j) + " is not maximal there");
    return classify(pi.flow, pj.flow, e.normal);
}

bool FieldValue::contains(const Vec2& w) const {
    if (tag == FieldTag::SingletonFlow) return w == Vec2(generators.front());
    if (w.is_zero()) return tag == FieldTag::DiamondWithZero;
    for (const auto& t : u_flows)
        for (const auto& s : v_flows)
            if (in_segment(w, t, s)) return true;
    return false;
}

FieldValue trop_field(const Tds& tds, const QPoint& p) {
    FieldValue f;
    f.i_star = argmax_set(tds, AxisFilter::I, p);
    f.u_star = argmax_set(tds, AxisFilter::U, p);
    f.v_star = argmax_set(tds, AxisFilter::V, p);
    f.u_flows = distinct_flows(tds, f.u_star);
    f.v_flows = distinct_flows(tds, f.v_star);
    f.generators = distinct_flows(tds, f.i_star);
    if (f.generators.size() == 1) {
        f.tag = FieldTag::SingletonFlow;
        f.sliding = Vec2(f.generators.front());
        return f;
    }
    if (f.u_flows.size() == 2 && f.v_flows.size() == 2) {
        f.tag = FieldTag::DiamondWithZero;
        return f;
    }
    if (f.i_star.size() != 2) {
        f.tag = FieldTag::VertexFan;
        return f;
    }
    const auto& pi = tds.pair(f.i_star[0]);
    const auto& pj = tds.pair(f.i_star[1]);
    Degree n = pj.degree - pi.degree;
    EdgeClass c = classify(pi.flow, pj.flow, n);
    if (c.kind == EdgeKind::Crossing) {
        f.tag = FieldTag::CrossingSegment;
    } else if (c.filippov()) {
        f.tag = FieldTag::FilippovSegment;
        f.sliding = filippov_vector(pi.flow, pj.flow, n).vector;
    } else {
        f.tag = FieldTag::NullclineFan;
        const auto& sub = pi.axis == Axis::U ? f.v_flows : f.u_flows;
        if (c.kind == EdgeKind::NullclineTransversal && sub.size() == 1) {
            Vec2 e = unit_tangent(n);
            Rational s = Vec2(sub.front()).dot(e);
            if (s != 0) f.sliding = s > 0 ? e : -e;
        }
    }
    return f;
}

FilippovResult filippov_vector(const FlowVector& di, const FlowVector& dj, const Degree& n) {
    const int a = di.dot(n), b = dj.dot(n);
    if (di.dot(dj) != 0 || a * b > 0 || (a == 0 && b == 0))
        throw Error(Errc::NotFilippov, "flow vectors and normal do not describe Filippov sliding");
    Rational q = ratio(b, b - a);
    return {q, Vec2(di) * q + Vec2(dj) * (Rational(1) - q)};
}

Vec2 nullcline_vector(const TropEdge& e, const FlowVector& dl) {
    Vec2 t = e.tangent();
    Rational s = Vec2(dl).dot(t);
    if (s == 0) throw Error(Errc::TangentialEdge, "subdominant flow is normal to the edge tangent");
    return s > 0 ? t : -t;
}

AffineMap1D crossing_map(const Tds& tds, const TropEdge& e) {
    const auto& pi = tds.pair(e.i);
    const auto& pj = tds.pair(e.j);
    if (classify(pi.flow, pj.flow, pj.degree - pi.degree).kind != EdgeKind::Crossing)
        throw Error(Errc::NotCrossing, "edge " + std::to_string(e.i) + "," + std::to_string(e.j) + " is not crossing");
    const int dm = pi.degree.m - pj.degree.m;
    const int dn = pj.degree.n - pi.degree.n;
    Rational inv = ratio(1, dm);
    return {Rational(dn) * inv, (AffineInAlpha::alpha(e.j) - AffineInAlpha::alpha(e.i)) * inv};
}

Transit crossing_transit(const Tds& tds, const TropEdge& e) {
    AffineMap1D m = crossing_map(tds, e);
    const auto& pi = tds.pair(e.i);
    Transit t;
    bool forward = pi.flow.dot(e.normal) > 0;
    t.from = forward ? e.i : e.j;
    t.to = forward ? e.j : e.i;
    t.from_vertical = !tds.pair(t.from).flow.horizontal();
    t.map = t.from_vertical ? m : m.inverse();
    return t;
}

std::vector<int> Singularity::label() const {
    std::vector<int> l{host_u[0], host_u[1], host_v[0], host_v[1]};
    std::sort(l.begin(), l.end());
    return l;
}

namespace {

int single_flow_sign(const Tds& tds, const std::vector<int>& idx, const Vec2& e) {
    auto flows = distinct_flows(tds, idx);
    if (flows.size() != 1) return 0;
    return Vec2(flows.front()).dot(e).sign();
}

Vec2 single_flow(const Tds& tds, const std::vector<int>& idx) {
    auto flows = distinct_flows(tds, idx);
    return flows.size() == 1 ? Vec2(flows.front()) : Vec2(0, 0);
}

void classify_singularity(const Tds& tds, Singularity& s) {
    FieldValue fv = trop_field(tds, s.location);
    if (!fv.contains_zero()) {
        s.note = "zero is not in trop";
        return;
    }
    if (fv.u_star.size() != 2 || fv.v_star.size() != 2) {
        s.note = "lies on a vertex of a nullcline curve";
        return;
    }
    const auto& pi = tds.pair(s.host_u[0]);
    const auto& pj = tds.pair(s.host_u[1]);
    const auto& pl = tds.pair(s.host_v[0]);
    const auto& pp = tds.pair(s.host_v[1]);
    Degree a = pi.degree - pj.degree, b = pl.degree - pp.degree;
    if (static_cast<long long>(a.n) * b.m - static_cast<long long>(a.m) * b.n == 0) {
        s.note = "nullclines are not transverse";
        return;
    }
    Rational fu = eval_finite(pi, s.location), fv_ = eval_finite(pl, s.location);
    if (fu == fv_) {
        s.note = "both host edges are edges of T^I";
        return;
    }
    s.i_host = fu > fv_ ? Axis::U : Axis::V;
    const auto& host = *s.i_host == Axis::U ? s.host_u : s.host_v;
    const auto& hi = tds.pair(host[0]);
    const auto& hj = tds.pair(host[1]);
    Degree n = hj.degree - hi.degree;
    EdgeClass c = classify(hi.flow, hj.flow, n);
    Vec2 e = unit_tangent(n);
    AxisFilter sub = other_filter(*s.i_host);
    auto plus = argmax_toward(tds, sub, s.location, e);
    auto minus = argmax_toward(tds, sub, s.location, -e);

    if (c.kind == EdgeKind::NullclineTangential) {
        Vec2 nv(Rational(n.n), Rational(n.m));
        Vec2 wp = single_flow(tds, plus), wm = single_flow(tds, minus);
        int r0 = nv.cross(Vec2(hj.flow)).sign();
        int r1 = e.cross(wp).sign();
        int r2 = (-e).cross(wm).sign();
        if (r0 == 0 || r1 == 0 || r2 == 0) {
            s.note = "hybrid rotation undefined";
            return;
        }
        s.kind = (r0 == r1 && r1 == r2) ? SingularityKind::HybridCenter : SingularityKind::HybridSaddle;
        return;
    }
    if (c.kind != EdgeKind::NullclineTransversal) {
        s.note = "host edge is not of nullcline type";
        return;
    }
    // d_nc = sign(d_l . e) e on each side; it points toward the singularity when it opposes the offset.
    int sp = single_flow_sign(tds, plus, e), sm = single_flow_sign(tds, minus, e);
    bool toward = sp < 0 && sm > 0;
    bool away = sp > 0 && sm < 0;
    if (!toward && !away) {
        s.note = "nullcline sliding vector is not defined on both sides";
        return;
    }
    bool stable = c.stability == Stability::Stable;
    if (stable) s.kind = toward ? SingularityKind::Sink : SingularityKind::StrongStableSaddle;
    else s.kind = away ? SingularityKind::Source : SingularityKind::StrongUnstableSaddle;
}

}  // namespace

std::vector<Singularity> singularities(const Tds& tds) {
    TropicalCurve tu = tropical_curve(tds, AxisFilter::U);
    TropicalCurve tv = tropical_curve(tds, AxisFilter::V);
    auto switching = [&](const TropEdge& e) { return tds.pair(e.i).flow != tds.pair(e.j).flow; };

    std::map<QPoint, std::vector<Singularity>> hits;
    std::vector<Singularity> out;
    for (const auto& eu : tu.edges) {
        if (!switching(eu)) continue;
        for (const auto& ev : tv.edges) {
            if (!switching(ev)) continue;
            PieceIntersection x = intersect(eu.geometry, ev.geometry);
            if (x.kind == PieceIntersection::None) continue;
            Singularity s;
            s.location = x.point;
            s.host_u = {eu.i, eu.j};
            s.host_v = {ev.i, ev.j};
            if (x.kind == PieceIntersection::Overlap) s.note = "nullclines overlap";
            hits[x.point].push_back(s);
        }
    }
    for (auto& [p, list] : hits) {
        Singularity s = list.front();
        bool overlap = false;
        for (const auto& h : list)
            if (!h.note.empty()) overlap = true;
        if (overlap) {
            s.note = "nullclines overlap";
        } else if (list.size() > 1) {
            s.note = "lies on a vertex of a nullcline curve";
        } else {
            classify_singularity(tds, s);
            if (s.note == "zero is not in trop") continue;
        }
        out.push_back(s);
    }
    return out;
}

SmoothFieldValue smooth_field(const Tds& tds, double u, double v, double eps) {
    if (!(eps > 0) || !std::isfinite(eps)) throw Error(Errc::InvalidEps, "eps must be positive");
    std::vector<std::pair<double, const TropicalPair*>> vals;
    double top = -INFINITY;
    for (const auto& p : tds.pairs()) {
        if (!p.alpha.finite()) continue;
        double f = to_double(p.alpha.value()) + p.degree.n * u + p.degree.m * v;
        vals.emplace_back(f, &p);
        top = std::max(top, f);
    }
    if (vals.empty()) throw Error(Errc::AllNegInf, "no finite pair");
    double den = 0, nu = 0, nv = 0;
    for (const auto& [f, p] : vals) {
        double w = std::exp((f - top) / eps);
        den += w;
        nu += p->flow.x * w;
        nv += p->flow.y * w;
    }
    return {nu / den, nv / den};
}

}  // namespace tropd
