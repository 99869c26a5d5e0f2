#include "tropd/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tropd {

namespace {

// Pairs that share a degree collapse to one lifted point; only the largest coefficient survives and
// equal coefficients make the members inseparable.
struct Lifted {
    int rep = 0;
    Degree degree;
    Rational alpha;
    std::vector<int> members;
};

std::vector<Lifted> lift(const Tds& tds, AxisFilter f) {
    std::map<Degree, Lifted> by_degree;
    for (const auto& p : tds.pairs()) {
        if (!in_filter(p.axis, f) || !p.alpha.finite()) continue;
        auto it = by_degree.find(p.degree);
        if (it == by_degree.end()) {
            by_degree.emplace(p.degree, Lifted{p.index, p.degree, p.alpha.value(), {p.index}});
        } else if (p.alpha.value() > it->second.alpha) {
            it->second = Lifted{p.index, p.degree, p.alpha.value(), {p.index}};
        } else if (p.alpha.value() == it->second.alpha) {
            it->second.members.push_back(p.index);
            it->second.rep = std::min(it->second.rep, p.index);
        }
    }
    if (by_degree.empty()) throw Error(Errc::AllNegInf, std::string("filter ") + filter_name(f) + " has no finite pair");
    std::vector<Lifted> out;
    for (auto& [d, l] : by_degree) {
        std::sort(l.members.begin(), l.members.end());
        out.push_back(std::move(l));
    }
    std::sort(out.begin(), out.end(), [](const Lifted& a, const Lifted& b) { return a.rep < b.rep; });
    return out;
}

Rational value(const Lifted& l, const QPoint& p) { return l.alpha + l.degree.n * p.u + l.degree.m * p.v; }

long long cross3(const Degree& o, const Degree& a, const Degree& b) {
    return static_cast<long long>(a.n - o.n) * (b.m - o.m) - static_cast<long long>(a.m - o.m) * (b.n - o.n);
}

// Counter-clockwise hull that keeps points lying on a side.
std::vector<int> hull_keep_collinear(const std::vector<Degree>& pts, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    if (idx.size() < 3) return idx;
    std::vector<int> lower, upper;
    for (int k : idx) {
        while (lower.size() >= 2 && cross3(pts[lower[lower.size() - 2]], pts[lower.back()], pts[k]) < 0) lower.pop_back();
        lower.push_back(k);
    }
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        while (upper.size() >= 2 && cross3(pts[upper[upper.size() - 2]], pts[upper.back()], pts[*it]) < 0)
            upper.pop_back();
        upper.push_back(*it);
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

struct RawEdge {
    int a = 0, b = 0;          // lifted indices of the extreme maximizers
    std::vector<int> chain;    // lifted indices co-maximal along the edge, sorted along the normal
    EdgeGeometry geometry;
};

struct Arrangement {
    std::vector<Lifted> pts;
    std::vector<std::pair<QPoint, std::vector<int>>> vertices;  // lifted indices
    std::vector<RawEdge> edges;
    bool one_dimensional = false;
};

Vec2 primitive(long long x, long long y) {
    long long g = std::gcd(std::llabs(x), std::llabs(y));
    if (g == 0) g = 1;
    return Vec2(Rational(x / g), Rational(y / g));
}

Arrangement arrange(const Tds& tds, AxisFilter f) {
    Arrangement A;
    A.pts = lift(tds, f);
    const auto& P = A.pts;
    const int K = static_cast<int>(P.size());

    bool collinear = true;
    for (int c = 2; c < K && collinear; ++c)
        if (cross3(P[0].degree, P[1].degree, P[c].degree) != 0) collinear = false;
    A.one_dimensional = collinear;

    if (!collinear) {
        std::map<QPoint, std::vector<int>> found;
        for (int a = 0; a < K; ++a)
            for (int b = a + 1; b < K; ++b)
                for (int c = b + 1; c < K; ++c) {
                    long long n1 = P[b].degree.n - P[a].degree.n, m1 = P[b].degree.m - P[a].degree.m;
                    long long n2 = P[c].degree.n - P[a].degree.n, m2 = P[c].degree.m - P[a].degree.m;
                    long long det = n1 * m2 - m1 * n2;
                    if (det == 0) continue;
                    Rational r1 = P[a].alpha - P[b].alpha, r2 = P[a].alpha - P[c].alpha;
                    QPoint x((r1 * m2 - r2 * m1) / det, (r2 * n1 - r1 * n2) / det);
                    if (found.count(x)) continue;
                    Rational top = value(P[a], x);
                    std::vector<int> maxi;
                    bool dominated = false;
                    for (int k = 0; k < K && !dominated; ++k) {
                        Rational vk = value(P[k], x);
                        if (vk > top) dominated = true;
                        else if (vk == top) maxi.push_back(k);
                    }
                    if (!dominated) found.emplace(x, std::move(maxi));
                }
        for (auto& [x, m] : found) A.vertices.emplace_back(x, std::move(m));
    }

    for (int a = 0; a < K; ++a)
        for (int b = a + 1; b < K; ++b) {
            // Orient by pair index so the normal is deg F_j - deg F_i with i < j.
            const Lifted& Li = P[a].rep < P[b].rep ? P[a] : P[b];
            const Lifted& Lj = P[a].rep < P[b].rep ? P[b] : P[a];
            long long N1 = Lj.degree.n - Li.degree.n, N2 = Lj.degree.m - Li.degree.m;
            Rational c = Lj.alpha - Li.alpha;
            Rational nn(N1 * N1 + N2 * N2);
            QPoint p0(-c * N1 / nn, -c * N2 / nn);
            Vec2 dir = primitive(-N2, N1);

            std::optional<Rational> lo, hi;
            bool empty = false;
            std::vector<int> chain{a, b};
            for (int k = 0; k < K && !empty; ++k) {
                if (k == a || k == b) continue;
                Rational g0 = value(Li, p0) - value(P[k], p0);
                Rational s = dir.dot(Li.degree) - dir.dot(P[k].degree);
                if (s == 0) {
                    if (g0 < 0) empty = true;
                    else if (g0 == 0) chain.push_back(k);
                    continue;
                }
                Rational t = -g0 / s;
                if (s > 0) {
                    if (!lo || t > *lo) lo = t;
                } else {
                    if (!hi || t < *hi) hi = t;
                }
            }
            if (empty) continue;
            if (lo && hi && !(*lo < *hi)) continue;

            std::sort(chain.begin(), chain.end(), [&](int x, int y) {
                long long px = static_cast<long long>(P[x].degree.n) * N1 + static_cast<long long>(P[x].degree.m) * N2;
                long long py = static_cast<long long>(P[y].degree.n) * N1 + static_cast<long long>(P[y].degree.m) * N2;
                return px < py;
            });
            std::set<int> ends{chain.front(), chain.back()};
            if (ends != std::set<int>{a, b}) continue;

            RawEdge e;
            e.a = a;
            e.b = b;
            e.chain = chain;
            if (lo && hi) {
                e.geometry.shape = EdgeShape::Segment;
                e.geometry.a = p0 + dir * *lo;
                e.geometry.dir = dir * (*hi - *lo);
            } else if (lo) {
                e.geometry.shape = EdgeShape::Ray;
                e.geometry.a = p0 + dir * *lo;
                e.geometry.dir = dir;
            } else if (hi) {
                e.geometry.shape = EdgeShape::Ray;
                e.geometry.a = p0 + dir * *hi;
                e.geometry.dir = -dir;
            } else {
                e.geometry.shape = EdgeShape::Line;
                e.geometry.a = p0;
                e.geometry.dir = dir;
            }
            A.edges.push_back(std::move(e));
        }
    return A;
}

std::vector<int> members_of(const std::vector<Lifted>& pts, const std::vector<int>& lifted) {
    std::vector<int> out;
    for (int k : lifted) out.insert(out.end(), pts[k].members.begin(), pts[k].members.end());
    std::sort(out.begin(), out.end());
    return out;
}

void clip(std::vector<QPoint>& poly, const Vec2& g, const Rational& g0) {
    // Keep { x : g.x + g0 >= 0 }.
    std::vector<QPoint> out;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const QPoint& p = poly[k];
        const QPoint& q = poly[(k + 1) % n];
        Rational gp = g.x * p.u + g.y * p.v + g0;
        Rational gq = g.x * q.u + g.y * q.v + g0;
        if (gp >= 0) out.push_back(p);
        if ((gp > 0 && gq < 0) || (gp < 0 && gq > 0)) {
            Rational t = gp / (gp - gq);
            out.push_back(p + (q - p) * t);
        }
    }
    std::vector<QPoint> dedup;
    for (auto& p : out)
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    poly = std::move(dedup);
}

Rational area2(const std::vector<QPoint>& poly) {
    Rational s = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const QPoint& p = poly[k];
        const QPoint& q = poly[(k + 1) % poly.size()];
        s += p.u * q.v - p.v * q.u;
    }
    return s;
}

std::vector<QPoint> lifted_region(const std::vector<Lifted>& pts, int k, const Rational& r) {
    std::vector<QPoint> poly{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    for (std::size_t l = 0; l < pts.size() && !poly.empty(); ++l) {
        if (static_cast<int>(l) == k) continue;
        Vec2 g(Rational(pts[k].degree.n - pts[l].degree.n), Rational(pts[k].degree.m - pts[l].degree.m));
        clip(poly, g, pts[k].alpha - pts[l].alpha);
    }
    if (poly.size() < 3 || area2(poly) == 0) return {};
    return poly;
}

bool in_range(const Rational& t, EdgeShape s) {
    if (s == EdgeShape::Line) return true;
    if (t < 0) return false;
    return s == EdgeShape::Ray || t <= 1;
}

}  // namespace

int Subdivision::point_of_pair(int pair) const {
    for (std::size_t k = 0; k < points.size(); ++k)
        if (points[k].pair == pair) return static_cast<int>(k);
    return -1;
}

bool EdgeGeometry::contains(const QPoint& p, bool open) const {
    Vec2 w = p - a;
    if (w.cross(dir) != 0) return false;
    Rational t = w.dot(dir) / dir.dot(dir);
    if (!in_range(t, shape)) return false;
    if (open) {
        if (shape != EdgeShape::Line && t == 0) return false;
        if (shape == EdgeShape::Segment && t == 1) return false;
    }
    return true;
}

Vec2 TropEdge::tangent() const {
    Vec2 t(Rational(-normal.m), Rational(normal.n));
    return t * (Rational(1) / t.norm1());
}

QPoint TropEdge::interior_point() const {
    switch (geometry.shape) {
        case EdgeShape::Segment: return geometry.at(Rational(1, 2));
        case EdgeShape::Ray: return geometry.at(Rational(1));
        case EdgeShape::Line: return geometry.a;
    }
    return geometry.a;
}

int TropicalCurve::find_edge(int i, int j) const {
    for (std::size_t k = 0; k < edges.size(); ++k)
        if ((edges[k].i == i && edges[k].j == j) || (edges[k].i == j && edges[k].j == i)) return static_cast<int>(k);
    return -1;
}

int TropicalCurve::find_vertex(const QPoint& p) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k].point == p) return static_cast<int>(k);
    return -1;
}

Subdivision regular_subdivision(const Tds& tds, AxisFilter f) {
    Arrangement A = arrange(tds, f);
    Subdivision s;
    s.filter = f;
    s.one_dimensional = A.one_dimensional;
    for (const auto& p : tds.pairs())
        if (in_filter(p.axis, f) && p.alpha.finite()) s.points.push_back({p.index, p.degree, p.alpha});
    auto pt = [&](int lifted) { return s.point_of_pair(A.pts[lifted].rep); };

    std::vector<Degree> degs;
    for (const auto& l : A.pts) degs.push_back(l.degree);
    for (const auto& [x, maxi] : A.vertices) {
        std::vector<int> hull = hull_keep_collinear(degs, maxi);
        Face face;
        for (int k : hull) face.boundary.push_back(pt(k));
        for (int k : maxi)
            if (std::find(hull.begin(), hull.end(), k) == hull.end()) face.interior.push_back(pt(k));
        std::sort(face.interior.begin(), face.interior.end());
        // Start the boundary at its smallest point index for a canonical form.
        auto mn = std::min_element(face.boundary.begin(), face.boundary.end());
        std::rotate(face.boundary.begin(), mn, face.boundary.end());
        s.faces.push_back(std::move(face));
    }
    auto key = [](const Face& fc) {
        std::vector<int> k = fc.boundary;
        k.insert(k.end(), fc.interior.begin(), fc.interior.end());
        std::sort(k.begin(), k.end());
        return k;
    };
    std::sort(s.faces.begin(), s.faces.end(), [&](const Face& a, const Face& b) { return key(a) < key(b); });

    std::set<std::pair<int, int>> edges;
    for (const auto& e : A.edges)
        for (std::size_t k = 0; k + 1 < e.chain.size(); ++k) {
            int x = pt(e.chain[k]), y = pt(e.chain[k + 1]);
            edges.insert({std::min(x, y), std::max(x, y)});
        }
    s.edges.assign(edges.begin(), edges.end());
    return s;
}

Rational analysis_radius(const Tds& tds) {
    Rational big = 1;
    for (const auto& p : tds.pairs())
        if (p.alpha.finite()) big = std::max(big, abs(p.alpha.value()));
    Rational r = 2 * big + 1;
    for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I}) {
        bool any = false;
        for (const auto& p : tds.pairs())
            if (in_filter(p.axis, f) && p.alpha.finite()) any = true;
        if (!any) continue;
        Arrangement A = arrange(tds, f);
        for (const auto& [x, m] : A.vertices) r = std::max(r, std::max(abs(x.u), abs(x.v)) + 2 * big + 1);
    }
    return 2 * r;
}

std::vector<QPoint> region_polygon(const Tds& tds, AxisFilter f, int pair, const Rational& r) {
    auto pts = lift(tds, f);
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (pts[k].rep == pair && pts[k].members.size() == 1) return lifted_region(pts, static_cast<int>(k), r);
    return {};
}

TropicalCurve tropical_curve(const Tds& tds, AxisFilter f) {
    Arrangement A = arrange(tds, f);
    TropicalCurve c;
    c.filter = f;
    for (const auto& [x, maxi] : A.vertices) c.vertices.push_back({x, members_of(A.pts, maxi)});

    for (const auto& e : A.edges) {
        TropEdge t;
        t.i = std::min(A.pts[e.a].rep, A.pts[e.b].rep);
        t.j = std::max(A.pts[e.a].rep, A.pts[e.b].rep);
        t.maximizers = members_of(A.pts, e.chain);
        t.geometry = e.geometry;
        t.normal = tds.pair(t.j).degree - tds.pair(t.i).degree;
        c.edges.push_back(std::move(t));
    }
    std::sort(c.edges.begin(), c.edges.end(),
              [](const TropEdge& a, const TropEdge& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });

    Rational r = analysis_radius(tds);
    for (const auto& p : tds.pairs()) {
        if (!in_filter(p.axis, f)) continue;
        RegionInfo info{p.index, std::nullopt};
        for (std::size_t k = 0; k < A.pts.size(); ++k)
            if (A.pts[k].rep == p.index && A.pts[k].members.size() == 1) {
                auto poly = lifted_region(A.pts, static_cast<int>(k), r);
                if (!poly.empty()) {
                    QPoint w(0, 0);
                    for (const auto& q : poly) w = w + Vec2(q.u, q.v);
                    Rational inv(1, static_cast<long>(poly.size()));
                    info.witness = QPoint(w.u * inv, w.v * inv);
                }
            }
        c.regions.push_back(info);
    }
    return c;
}

bool is_triangulation(const Subdivision& s) {
    for (const auto& f : s.faces)
        if (!f.is_triangle()) return false;
    return true;
}

PieceIntersection intersect(const EdgeGeometry& e, const EdgeGeometry& f) {
    PieceIntersection out;
    Rational cr = e.dir.cross(f.dir);
    Vec2 ba = f.a - e.a;
    if (cr != 0) {
        Rational t = ba.cross(f.dir) / cr;
        Rational s = ba.cross(e.dir) / cr;
        if (in_range(t, e.shape) && in_range(s, f.shape)) {
            out.kind = PieceIntersection::Point;
            out.point = e.at(t);
        }
        return out;
    }
    if (ba.cross(e.dir) != 0) return out;
    // Collinear: express f's extent in e's parameter.
    Rational dd = e.dir.dot(e.dir);
    Rational t0 = ba.dot(e.dir) / dd;
    Rational t1 = t0 + f.dir.dot(e.dir) / dd;
    std::optional<Rational> flo, fhi;
    switch (f.shape) {
        case EdgeShape::Segment: flo = std::min(t0, t1); fhi = std::max(t0, t1); break;
        case EdgeShape::Ray:
            if (t1 > t0) flo = t0; else fhi = t0;
            break;
        case EdgeShape::Line: break;
    }
    std::optional<Rational> elo, ehi;
    if (e.shape != EdgeShape::Line) elo = Rational(0);
    if (e.shape == EdgeShape::Segment) ehi = Rational(1);
    std::optional<Rational> lo = elo, hi = ehi;
    if (flo && (!lo || *flo > *lo)) lo = flo;
    if (fhi && (!hi || *fhi < *hi)) hi = fhi;
    if (lo && hi && *lo > *hi) return out;
    if (lo && hi && *lo == *hi) {
        out.kind = PieceIntersection::Point;
        out.point = e.at(*lo);
        return out;
    }
    out.kind = PieceIntersection::Overlap;
    out.point = lo ? e.at(*lo) : (hi ? e.at(*hi) : e.a);
    return out;
}

namespace {

bool is_endpoint(const EdgeGeometry& g, const QPoint& p) {
    if (g.shape == EdgeShape::Line) return false;
    if (g.a == p) return true;
    return g.shape == EdgeShape::Segment && g.end() == p;
}

std::string edge_name(const char* tag, const TropEdge& e) {
    return std::string(tag) + "E" + std::to_string(e.i) + "," + std::to_string(e.j);
}

}  // namespace

GeneralPositionReport general_position(const Tds& tds) {
    GeneralPositionReport rep;
    for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I}) {
        Subdivision s = regular_subdivision(tds, f);
        for (const auto& face : s.faces)
            if (!face.is_triangle()) {
                rep.triangulations = false;
                std::string pts;
                for (int k : face.boundary) pts += (pts.empty() ? "" : ",") + std::to_string(s.points[k].pair);
                for (int k : face.interior) pts += "," + std::to_string(s.points[k].pair);
                rep.violations.push_back(std::string("gp1: S^") + filter_name(f) + " face {" + pts + "} is not a triangle");
            }
    }
    for (const auto& p : tds.pairs())
        for (const auto& q : tds.pairs())
            if (p.index < q.index && p.axis != q.axis && p.degree == q.degree && p.alpha.finite() && q.alpha.finite() &&
                p.alpha == q.alpha) {
                rep.distinct_alphas = false;
                rep.violations.push_back("gp2: pairs " + std::to_string(p.index) + " and " + std::to_string(q.index) +
                                         " share degree and coefficient");
            }
    TropicalCurve tu = tropical_curve(tds, AxisFilter::U);
    TropicalCurve tv = tropical_curve(tds, AxisFilter::V);
    // Non-switching edges (equal flows) are not discontinuities of the field component; only the
    // switching parts of the two curves take part.
    auto switching = [&](const TropEdge& e) { return tds.pair(e.i).flow != tds.pair(e.j).flow; };
    for (const auto& e : tu.edges)
        for (const auto& g : tv.edges) {
            if (!switching(e) || !switching(g)) continue;
            PieceIntersection x = intersect(e.geometry, g.geometry);
            if (x.kind == PieceIntersection::None) continue;
            bool bad = x.kind == PieceIntersection::Overlap || e.geometry.dir.cross(g.geometry.dir) == 0 ||
                       is_endpoint(e.geometry, x.point) || is_endpoint(g.geometry, x.point);
            if (bad) {
                rep.transversal_curves = false;
                rep.violations.push_back("gp3: " + edge_name("U", e) + " meets " + edge_name("V", g) + " at (" +
                                         to_string(x.point.u) + "," + to_string(x.point.v) + ")");
            }
        }
    return rep;
}

}  // namespace tropd
