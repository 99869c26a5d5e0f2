#pragma once

#include "tropd/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropd {

struct SubdivisionPoint {
    int pair = 0;
    Degree degree;
    TropCoeff alpha;
};

// A cell of the regular subdivision. `boundary` runs counter-clockwise and keeps points that sit on a
// side; `interior` holds lifted-coplanar points strictly inside.
struct Face {
    std::vector<int> boundary;
    std::vector<int> interior;
    bool is_triangle() const { return boundary.size() == 3 && interior.empty(); }
};

struct Subdivision {
    AxisFilter filter = AxisFilter::I;
    std::vector<SubdivisionPoint> points;   // finite-alpha pairs of the filter, by pair index
    std::vector<Face> faces;                 // indices into points
    std::vector<std::pair<int, int>> edges;  // indices into points, first < second
    bool one_dimensional = false;

    int point_of_pair(int pair) const;
};

enum class EdgeShape { Segment, Ray, Line };

// Points a + t*dir with t in [0,1] (segment, dir = b - a), [0,inf) (ray) or all of R (line).
struct EdgeGeometry {
    EdgeShape shape = EdgeShape::Segment;
    QPoint a;
    Vec2 dir;

    QPoint end() const { return a + dir; }
    bool contains(const QPoint& p, bool open) const;
    QPoint at(const Rational& t) const { return a + dir * t; }
};

struct TropEdge {
    int i = 0;                   // lower pair index of the two extreme maximizers
    int j = 0;
    std::vector<int> maximizers;  // every pair attaining the max on the relative interior
    EdgeGeometry geometry;
    Degree normal;  // deg F_j - deg F_i

    // Unit 1-norm tangent, oriented so that cross(normal, tangent) > 0.
    Vec2 tangent() const;
    QPoint interior_point() const;
};

struct CurveVertex {
    QPoint point;
    std::vector<int> maximizers;
};

struct RegionInfo {
    int pair = 0;
    std::optional<QPoint> witness;  // nullopt = EMPTY
};

struct TropicalCurve {
    AxisFilter filter = AxisFilter::I;
    std::vector<CurveVertex> vertices;
    std::vector<TropEdge> edges;
    std::vector<RegionInfo> regions;

    int find_edge(int i, int j) const;  // -1 if absent
    int find_vertex(const QPoint& p) const;
};

Subdivision regular_subdivision(const Tds& tds, AxisFilter f);
TropicalCurve tropical_curve(const Tds& tds, AxisFilter f);
bool is_triangulation(const Subdivision& s);

// Box that contains every vertex of the three curves with margin and meets every edge; used as the
// "infinite" clip for exact region polygons.
Rational analysis_radius(const Tds& tds);

// Closure of the region of `pair` clipped to [-r, r]^2, counter-clockwise. Empty if the region is empty.
std::vector<QPoint> region_polygon(const Tds& tds, AxisFilter f, int pair, const Rational& r);

struct GeneralPositionReport {
    bool triangulations = true;     // gp1
    bool distinct_alphas = true;    // gp2
    bool transversal_curves = true; // gp3
    std::vector<std::string> violations;

    bool ok() const { return triangulations && distinct_alphas && transversal_curves; }
};

GeneralPositionReport general_position(const Tds& tds);

// Intersection of two closed edge pieces when they cross in a single point.
struct PieceIntersection {
    enum Kind { None, Point, Overlap } kind = None;
    QPoint point;
};
PieceIntersection intersect(const EdgeGeometry& e, const EdgeGeometry& f);

}  // namespace tropd
