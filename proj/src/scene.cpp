#include "tropd/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tropd {

SceneOptions SceneOptions::all() {
    SceneOptions o;
    o.regions = o.singularities = o.separatrices = o.limit_cycles = o.graph = o.report = true;
    return o;
}

SceneOptions SceneOptions::from_layers(const std::string& csv) {
    if (csv == "all") return all();
    SceneOptions o;
    o.curves = false;
    std::stringstream ss(csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name == "curves") o.curves = true;
        else if (name == "regions") o.regions = true;
        else if (name == "singularities") o.singularities = true;
        else if (name == "separatrices") o.separatrices = true;
        else if (name == "limit_cycles") o.limit_cycles = true;
        else if (name == "graph") o.graph = true;
        else if (name == "report") o.report = true;
        else if (!name.empty()) throw Error(Errc::BadSchema, "unknown layer '" + name + "'");
    }
    return o;
}

bool Scene::has_layer(const std::string& name) const {
    return std::find(layers.begin(), layers.end(), name) != layers.end();
}

const char* flow_color(const FlowVector& d) {
    if (d.x == 0 && d.y > 0) return "#d62728";
    if (d.x == 0 && d.y < 0) return "#8c564b";
    if (d.y == 0 && d.x > 0) return "#1f77b4";
    if (d.y == 0 && d.x < 0) return "#9ecae1";
    return "#7f7f7f";
}

const char* edge_style(const EdgeClass& c) { return c.sliding() ? "solid" : "dashed"; }

std::optional<SceneEdge> clip_edge(const EdgeGeometry& g, const Rational& r) {
    std::optional<Rational> lo, hi;
    if (g.shape != EdgeShape::Line) lo = Rational(0);
    if (g.shape == EdgeShape::Segment) hi = Rational(1);
    auto tighten = [&](const Rational& p, const Rational& d) {
        // -r <= p + t d <= r
        if (d == 0) return -r <= p && p <= r;
        Rational t1 = (-r - p) / d, t2 = (r - p) / d;
        if (t1 > t2) std::swap(t1, t2);
        if (!lo || t1 > *lo) lo = t1;
        if (!hi || t2 < *hi) hi = t2;
        return true;
    };
    if (!tighten(g.a.u, g.dir.x) || !tighten(g.a.v, g.dir.y)) return std::nullopt;
    if (!lo || !hi || !(*lo < *hi)) return std::nullopt;
    SceneEdge e;
    e.a = g.at(*lo);
    e.b = g.at(*hi);
    if (g.shape == EdgeShape::Segment) {
        e.a_clipped = *lo > 0;
        e.b_clipped = *hi < 1;
    } else if (g.shape == EdgeShape::Ray) {
        e.a_clipped = *lo > 0;
        e.b_clipped = true;
    } else {
        e.a_clipped = e.b_clipped = true;
    }
    return e;
}

namespace {

std::string cycle_label(const std::vector<int>& c) {
    std::string s;
    for (int k : c) s += (s.empty() ? "" : "-") + std::to_string(k);
    return s;
}

QPoint midpoint(const QPoint& a, const QPoint& b) { return {(a.u + b.u) / 2, (a.v + b.v) / 2}; }

}  // namespace

Scene export_scene(const Tds& tds, const SceneOptions& o) {
    Scene s;
    s.clip = o.clip;
    for (const auto& p : tds.pairs()) s.alphas.emplace_back(p.index, p.alpha);

    if (o.curves) {
        s.layers.push_back("curves");
        for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I}) {
            TropicalCurve c = tropical_curve(tds, f);
            for (const auto& e : c.edges) {
                auto piece = clip_edge(e.geometry, o.clip);
                if (!piece) continue;
                piece->layer = f;
                piece->i = e.i;
                piece->j = e.j;
                if (f == AxisFilter::I) {
                    piece->cls = classify_edge(tds, e);
                    if (piece->cls->sliding()) {
                        FieldValue fv = trop_field(tds, midpoint(piece->a, piece->b));
                        piece->slide = fv.sliding;
                    }
                }
                s.curves.push_back(*piece);
            }
            if (f == AxisFilter::I)
                for (const auto& v : c.vertices)
                    if (abs(v.point.u) <= o.clip && abs(v.point.v) <= o.clip) s.vertices.push_back(v);
        }
    }
    if (o.regions) {
        s.layers.push_back("regions");
        for (const auto& p : tds.pairs()) {
            auto poly = region_polygon(tds, AxisFilter::I, p.index, o.clip);
            if (poly.empty()) continue;
            s.regions.push_back({p.index, p.flow, std::move(poly)});
        }
    }
    if (o.singularities) {
        s.layers.push_back("singularities");
        s.singularities = singularities(tds);
    }
    if (o.separatrices || o.limit_cycles || o.report) {
        PortraitAnalysis a = analyze(tds, o.limits);
        if (o.separatrices) {
            s.layers.push_back("separatrices");
            for (const auto& sep : a.separatrices)
                s.orbits.push_back({"separatrix", sep.carrier.name() + " " + orientation_name(sep.orientation), sep.orbit});
        }
        if (o.limit_cycles) {
            s.layers.push_back("limit_cycles");
            for (std::size_t k = 0; k < a.periodic_orbits.size(); ++k)
                if (a.limit_cycle[k]) s.orbits.push_back({"limit-cycle", "sliding", a.periodic_orbits[k]});
            for (const auto& c : a.crossing_cycles) {
                if (!c.map.fixed_point) continue;
                const Section& sec = c.map.section;
                QPoint start = sec.fixed == Axis::V ? QPoint{*c.map.fixed_point, sec.level} : QPoint{sec.level, *c.map.fixed_point};
                s.orbits.push_back({"crossing-cycle", cycle_label(c.cycle),
                                    trace_orbit(tds, start, Orientation::Forward, {}, o.limits.trace)});
            }
        }
        if (o.report) {
            s.layers.push_back("report");
            s.report = stability_report(a);
        }
    }
    if (o.graph) {
        s.layers.push_back("graph");
        s.graph = build_graph(tds);
        s.graph_cycles = enumerate_cycles(*s.graph);
    }
    if (!o.orbit_seeds.empty()) {
        s.layers.push_back("orbits");
        for (const auto& p : o.orbit_seeds) {
            std::string label = "(" + to_string(p.u) + "," + to_string(p.v) + ")";
            if (o.branch_all) {
                for (auto& orb : trace_branches(tds, p, Orientation::Forward, {}, o.limits.trace))
                    s.orbits.push_back({"seed", label, std::move(orb)});
            } else {
                s.orbits.push_back({"seed", label, trace_orbit(tds, p, Orientation::Forward, {}, o.limits.trace)});
            }
        }
    }
    return s;
}

Json scene_json(const Scene& s) {
    Json alphas = Json::object();
    for (const auto& [k, a] : s.alphas) alphas[std::to_string(k)] = coeff_json(a);
    Json j{{"clip", {{"exact", to_string(s.clip)}, {"float", to_double(s.clip)}}}, {"alphas", alphas}, {"layers", s.layers}};
    if (s.has_layer("curves")) {
        Json curves = Json::array();
        for (const auto& e : s.curves) {
            Json c{{"layer", std::string("T") + filter_name(e.layer)},
                   {"pairs", {e.i, e.j}},
                   {"a", point_json(e.a)},
                   {"b", point_json(e.b)},
                   {"a_clipped", e.a_clipped},
                   {"b_clipped", e.b_clipped}};
            if (e.cls) {
                c["kind"] = edge_kind_name(e.cls->kind);
                c["stability"] = stability_name(e.cls->stability);
                c["style"] = edge_style(*e.cls);
            } else {
                c["style"] = "thin";
            }
            if (e.slide) c["slide"] = vec_json(*e.slide);
            curves.push_back(c);
        }
        j["curves"] = curves;
        Json verts = Json::array();
        for (const auto& v : s.vertices) verts.push_back({{"point", point_json(v.point)}, {"maximizers", v.maximizers}});
        j["vertices"] = verts;
    }
    if (s.has_layer("regions")) {
        Json regions = Json::array();
        for (const auto& r : s.regions) {
            Json poly = Json::array();
            for (const auto& p : r.polygon) poly.push_back(point_json(p));
            regions.push_back({{"pair", r.pair}, {"flow", {r.flow.x, r.flow.y}}, {"color", flow_color(r.flow)}, {"polygon", poly}});
        }
        j["regions"] = regions;
    }
    if (s.has_layer("singularities")) {
        Json sing = Json::array();
        for (const auto& q : s.singularities)
            sing.push_back({{"label", q.label()}, {"kind", singularity_kind_name(q.kind)}, {"location", point_json(q.location)}});
        j["singularities"] = sing;
    }
    if (!s.orbits.empty() || s.has_layer("orbits") || s.has_layer("separatrices") || s.has_layer("limit_cycles")) {
        Json orbits = Json::array();
        for (const auto& o : s.orbits) {
            Json e = orbit_json(o.orbit);
            e["role"] = o.role;
            e["label"] = o.label;
            orbits.push_back(e);
        }
        j["orbits"] = orbits;
    }
    if (s.graph) j["graph"] = graph_json(*s.graph, s.graph_cycles ? &*s.graph_cycles : nullptr);
    if (s.report) j["report"] = report_json(*s.report);
    return j;
}

namespace {

struct Canvas {
    double clip;
    int size;
    double x(double u) const { return (u + clip) / (2 * clip) * size; }
    double y(double v) const { return (clip - v) / (2 * clip) * size; }
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string pt(const Canvas& c, double u, double v) { return num(c.x(u)) + "," + num(c.y(v)); }

// Filled arrowhead with its tip at (px, py) pointing along (dx, dy) in pixel space.
std::string arrowhead(double px, double py, double dx, double dy, const char* color, double len = 7) {
    double n = std::hypot(dx, dy);
    if (n == 0) return "";
    dx /= n;
    dy /= n;
    double bx = px - dx * len, by = py - dy * len;
    double w = len * 0.45;
    std::string s = "<polygon class=\"arrow\" fill=\"" + std::string(color) + "\" points=\"" + num(px) + "," + num(py) + " " +
                    num(bx - dy * w) + "," + num(by + dx * w) + " " + num(bx + dy * w) + "," + num(by - dx * w) + "\"/>\n";
    return s;
}

std::string arrows(double px, double py, double dx, double dy, const char* color, bool fast) {
    std::string s = arrowhead(px, py, dx, dy, color);
    if (fast) {
        double n = std::hypot(dx, dy);
        s += arrowhead(px - dx / n * 5, py - dy / n * 5, dx, dy, color);
    }
    return s;
}

const char* orbit_color(const std::string& role) {
    if (role == "limit-cycle" || role == "crossing-cycle") return "#d62728";
    if (role == "separatrix") return "#8e44ad";
    return "#1f4fd6";
}

}  // namespace

std::string export_svg(const Scene& scene, int size) {
    Canvas cv{to_double(scene.clip), size};
    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 " << size
      << ' ' << size << "\">\n";
    o << "<defs><clipPath id=\"box\"><rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size
      << "\"/></clipPath></defs>\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    if (scene.report) o << "<desc>" << overall_name(scene.report->overall) << "</desc>\n";

    o << "<g id=\"regions\">\n";
    for (const auto& r : scene.regions) {
        o << "<polygon class=\"region\" data-pair=\"" << r.pair << "\" fill=\"" << flow_color(r.flow)
          << "\" fill-opacity=\"0.12\" stroke=\"none\" points=\"";
        double cu = 0, cvv = 0;
        for (std::size_t k = 0; k < r.polygon.size(); ++k) {
            double u = to_double(r.polygon[k].u), v = to_double(r.polygon[k].v);
            cu += u;
            cvv += v;
            o << (k ? " " : "") << pt(cv, u, v);
        }
        o << "\"/>\n";
        cu /= static_cast<double>(r.polygon.size());
        cvv /= static_cast<double>(r.polygon.size());
        double px = cv.x(cu), py = cv.y(cvv);
        double dx = r.flow.x, dy = -r.flow.y;
        o << "<line class=\"flow\" stroke=\"black\" x1=\"" << num(px - dx * 10) << "\" y1=\"" << num(py - dy * 10) << "\" x2=\""
          << num(px + dx * 10) << "\" y2=\"" << num(py + dy * 10) << "\"/>\n";
        o << arrows(px + dx * 10, py + dy * 10, dx, dy, "black", true);
        o << "<text x=\"" << num(px + 6) << "\" y=\"" << num(py - 6) << "\" font-size=\"11\">" << r.pair << "</text>\n";
    }
    o << "</g>\n<g id=\"curves\">\n";
    for (const auto& e : scene.curves) {
        double ax = cv.x(to_double(e.a.u)), ay = cv.y(to_double(e.a.v));
        double bx = cv.x(to_double(e.b.u)), by = cv.y(to_double(e.b.v));
        std::string cls = std::string("T") + filter_name(e.layer);
        if (e.layer != AxisFilter::I) {
            o << "<line class=\"" << cls << "\" stroke=\"#b0b0b0\" stroke-width=\"0.8\" x1=\"" << num(ax) << "\" y1=\"" << num(ay)
              << "\" x2=\"" << num(bx) << "\" y2=\"" << num(by) << "\"/>\n";
            continue;
        }
        bool solid = e.cls && e.cls->sliding();
        o << "<line class=\"TI " << (e.cls ? edge_kind_name(e.cls->kind) : "") << "\" stroke=\"black\" stroke-width=\"1.6\""
          << (solid ? "" : " stroke-dasharray=\"6,4\"") << " x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx)
          << "\" y2=\"" << num(by) << "\"/>\n";
        double dx = bx - ax, dy = by - ay;
        if (e.a_clipped) o << "<g class=\"arrow-out\">" << arrowhead(ax, ay, -dx, -dy, "#555555", 6) << "</g>\n";
        if (e.b_clipped) o << "<g class=\"arrow-out\">" << arrowhead(bx, by, dx, dy, "#555555", 6) << "</g>\n";
        if (e.slide) {
            double mx = (ax + bx) / 2, my = (ay + by) / 2;
            double sx = to_double(e.slide->x), sy = -to_double(e.slide->y);
            if (e.cls->nullcline()) {
                o << "<g class=\"nc-triangle\">" << arrowhead(mx + sx * 5, my + sy * 5, sx, sy, "#d62728", 9) << "</g>\n";
            } else {
                o << "<g class=\"fp-arrow\">" << arrows(mx + sx * 5, my + sy * 5, sx, sy, "black", true) << "</g>\n";
            }
        }
    }
    for (const auto& v : scene.vertices)
        o << "<circle class=\"vertex\" r=\"2.5\" fill=\"black\" cx=\"" << num(cv.x(to_double(v.point.u))) << "\" cy=\""
          << num(cv.y(to_double(v.point.v))) << "\"/>\n";
    o << "</g>\n<g id=\"orbits\" clip-path=\"url(#box)\">\n";
    for (const auto& so : scene.orbits) {
        const char* color = orbit_color(so.role);
        const Orbit& orb = so.orbit;
        o << "<polyline class=\"orbit " << so.role << "\" data-termination=\"" << termination_name(orb.termination)
          << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t k = 0; k < orb.vertices.size(); ++k)
            o << (k ? " " : "") << pt(cv, to_double(orb.vertices[k].u), to_double(orb.vertices[k].v));
        o << "\"/>\n";
        for (std::size_t k = 0; k < orb.segments.size() && k + 1 < orb.vertices.size(); ++k) {
            const QPoint& a = orb.vertices[k];
            const QPoint& b = orb.vertices[k + 1];
            double ax = cv.x(to_double(a.u)), ay = cv.y(to_double(a.v));
            double bx = cv.x(to_double(b.u)), by = cv.y(to_double(b.v));
            double mx = (ax + bx) / 2, my = (ay + by) / 2;
            if (std::hypot(bx - ax, by - ay) < 14 || mx < 0 || my < 0 || mx > size || my > size) continue;
            bool fast = orb.segments[k].mode != SegmentMode::NullclineSlide;
            o << arrows(mx, my, bx - ax, by - ay, color, fast);
        }
    }
    o << "</g>\n<g id=\"singularities\">\n";
    for (const auto& q : scene.singularities)
        o << "<circle class=\"singularity " << singularity_kind_name(q.kind) << "\" r=\"4\" fill=\"white\" stroke=\"black\" "
          << "stroke-width=\"1.2\" cx=\"" << num(cv.x(to_double(q.location.u))) << "\" cy=\"" << num(cv.y(to_double(q.location.v)))
          << "\"/>\n";
    o << "</g>\n</svg>\n";
    return o.str();
}

}  // namespace tropd
