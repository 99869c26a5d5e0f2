#pragma once

#include "tropd/dynamics.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tropd {

enum class Orientation { Forward, Backward };
enum class SegmentMode { Region, CrossingThrough, FilippovSlide, NullclineSlide };
enum class Termination {
    Unbounded,       // left the clip box
    Singularity,     // id = index into singularities(tds)
    HybridPoint,     // id = index into singularities(tds)
    Periodic,        // id = index of the repeated vertex
    SegmentCap,
    ReachedVertex,   // crossing-flow traces stop at vertices of T^I; feature = maximizers
    ReachedSliding,  // crossing-flow traces stop at sliding edges; feature = edge pair
    CrossingCycle,   // entered the basin of an attracting crossing cycle; id = cycle index
};

const char* orientation_name(Orientation o);
const char* segment_mode_name(SegmentMode m);
const char* termination_name(Termination t);

struct Segment {
    Vec2 direction;  // 1-norm 1, in the time direction of the trace
    SegmentMode mode = SegmentMode::Region;
    int region = 0;                 // Region: pair index of the region
    std::array<int, 2> edge{0, 0};  // CrossingThrough / slides: the edge pair
};

struct Orbit {
    std::vector<QPoint> vertices;  // vertices[k] -> vertices[k+1] is segments[k]
    std::vector<Segment> segments;
    Orientation orientation = Orientation::Forward;
    Termination termination = Termination::SegmentCap;
    int termination_id = -1;
    std::vector<int> feature;
};

// A leg of a cycle route that captures every orbit entering it: an orbit moving with the flow of
// `region` whose transverse coordinate lies strictly inside (lo, hi) converges to the cycle.
struct CycleBasin {
    int id = 0;
    int region = 0;
    std::optional<Rational> lo, hi;
    std::optional<Rational> fixed;  // the cycle itself: traced to its exact repeat instead
};

struct TracePolicy {
    bool crossing_only = false;            // crossing flow: no sliding, stop at vertices and sliding edges
    std::optional<Vec2> initial_direction;  // forced first direction (separatrices)
    std::vector<CycleBasin> basins;         // basins in the time direction of the trace
};

struct TraceLimits {
    std::size_t max_segments = 10000;
    Rational clip = 1000000;
    std::size_t max_branches = 64;
};

// Deterministic polygonal orbit: unique continuation when there is one; otherwise attracting sliding,
// then straight continuation, then region flows by pair index, then other slides.
Orbit trace_orbit(const Tds& tds, const QPoint& start, Orientation dir, const TracePolicy& policy = {},
                  const TraceLimits& limits = {});

// Every admissible continuation at each choice point, depth-first, up to limits.max_branches orbits.
std::vector<Orbit> trace_branches(const Tds& tds, const QPoint& start, Orientation dir, const TracePolicy& policy = {},
                                  const TraceLimits& limits = {});

// Admissible directions at p in the forward time of `tds`, in policy order; `crossing_only` keeps the
// region flows.
std::vector<Vec2> admissible_directions(const Tds& tds, const QPoint& p, bool crossing_only = false);

// First t > 0 at which the maximizer set of the filter changes along p + t*w.
std::optional<Rational> next_event(const Tds& tds, AxisFilter f, const QPoint& p, const Vec2& w);

}  // namespace tropd
