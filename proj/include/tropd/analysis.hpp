#pragma once

#include "tropd/graph.hpp"
#include "tropd/orbit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropd {

// A vertex of T^I in general position or a tropical singularity: the points separatrices start from.
struct Carrier {
    enum class Kind { Vertex, Singularity } kind = Kind::Vertex;
    std::vector<int> label;  // vertex: the three maximizers; singularity: both host edges
    QPoint point;
    QPointAlpha symbolic;    // coordinates as affine forms in the alphas
    int singularity = -1;    // index into singularities(tds)
    SingularityKind sing_kind = SingularityKind::Degenerate;
    std::array<int, 2> i_host{0, 0};  // singularity: the host edge that is also an edge of T^I

    std::string name() const;  // "P134", "Q1234"
    // Name that survives moving a singularity along its T^I host edge: "Source@E34".
    std::string class_key() const;
};

std::vector<Carrier> carriers(const Tds& tds);

// Coordinates of the point where F_a = F_b and F_c = F_d, as affine forms (rows sum to zero).
QPointAlpha solve_symbolic(const Tds& tds, int a, int b, int c, int d);

// A straight piece of a crossing-flow orbit: moves along `direction` with the transverse coordinate
// (u for vertical motion, v for horizontal) fixed at `coordinate`.
struct Leg {
    int region = 0;
    Vec2 direction;
    AffineInAlpha coordinate;
    QPoint from, to;
};

struct Separatrix {
    Carrier carrier;
    Orientation orientation = Orientation::Forward;  // Forward = departure, Backward = arrival
    Orbit orbit;
    std::vector<Leg> legs;
};

// Departure and arrival separatrices: crossing-flow orbits leaving the point in forward and backward
// time. Hybrid points have none.
std::vector<Separatrix> separatrices(const Tds& tds, const Carrier& at, const TraceLimits& limits = {},
                                     const std::vector<CycleBasin>& forward_basins = {},
                                     const std::vector<CycleBasin>& backward_basins = {});

// Section {fixed = V, level = c} is the line v = c with coordinate u (and the other way round).
struct Section {
    Axis fixed = Axis::V;
    Rational level;
    std::optional<Rational> lo, hi;
};

struct SplittingConstant {
    Rational delta;   // D - A at the current coefficients
    AffineInAlpha b;  // Delta as an affine form; its linear part is the splitting constant
};

SplittingConstant splitting_constant(const Tds& tds, const Separatrix& depart, const Separatrix& arrive,
                                     const Section& section);

struct ReturnMap {
    Section section;
    int region = 0;                   // cycle region the section lies in
    Rational multiplier_c;            // P(x) = c x + offset
    AffineInAlpha offset;
    std::optional<Rational> fixed_point;
    std::optional<Rational> lo, hi;   // coordinates on the section for which the route is valid

    bool hyperbolic() const { return multiplier_c != 1; }
    bool attracting() const { return multiplier_c < 1; }
    Rational apply(const Rational& x, const Tds& tds) const { return multiplier_c * x + offset.eval(tds); }
    std::string verdict() const;
};

// Return map of the crossing flow around a cycle of the crossing graph.
ReturnMap return_map(const Tds& tds, const std::vector<int>& cycle, const std::optional<Section>& section = std::nullopt);

struct CrossingCycle {
    std::vector<int> cycle;
    ReturnMap map;
};

std::vector<CrossingCycle> find_crossing_cycles(const Tds& tds);

// Basins of the realized cycles for forward (attracting) or backward (repelling) traces.
std::vector<CycleBasin> cycle_basins(const std::vector<CrossingCycle>& cycles, Orientation dir);

struct Connection {
    Carrier from, to;
    Separatrix route;  // the departure separatrix that ends on `to`
    AffineInAlpha delta;  // measured on a section across the last leg
    bool persistent() const { return delta.linear().is_constant(); }
};

// A root alpha_k = value of a splitting function along the line that varies only coefficient k.
struct ConnectionRoot {
    std::string from, to;
    AffineInAlpha delta;
    Rational value;
};

// Separatrix connections that occur when only alpha_k changes, found by solving the splitting function
// of every leg against every carrier next to it and confirming the route at the root by tracing.
std::vector<ConnectionRoot> connection_roots(const Tds& tds, int k, const TraceLimits& limits = {});

struct PortraitAnalysis {
    GeneralPositionReport general_position;
    std::vector<Singularity> singular;
    std::vector<Carrier> carriers;
    std::vector<CrossingCycle> crossing_cycles;
    std::vector<Separatrix> separatrices;
    std::vector<Connection> connections;
    std::vector<Orbit> periodic_orbits;  // distinct periodic orbits found from the vertices
    std::vector<bool> limit_cycle;       // per periodic orbit
    bool search_capped = false;
};

struct AnalysisLimits {
    TraceLimits trace{400, Rational(1000000), 16};
};

PortraitAnalysis analyze(const Tds& tds, const AnalysisLimits& limits = {});

enum class Overall { StructurallyStable, Inconclusive, ViolationFound };
const char* overall_name(Overall o);

struct CycleVerdict {
    std::vector<int> cycle;
    Rational c;
    AffineInAlpha b;
    bool ok = true;
    std::string verdict;
};

struct ConnectionVerdict {
    std::string from, to;
    AffineInAlpha b;
    bool ok = true;
};

struct StabilityReport {
    GeneralPositionReport general_position;
    std::vector<std::pair<std::string, SingularityKind>> singularity_kinds;
    std::vector<CycleVerdict> crossing_cycles;
    std::vector<ConnectionVerdict> separatrix_connections;
    Overall overall = Overall::StructurallyStable;
    std::string witness;
};

StabilityReport stability_report(const Tds& tds, const AnalysisLimits& limits = {});
StabilityReport stability_report(const PortraitAnalysis& a);

// Canonical combinatorial record of the phase portrait; equal signatures are reported as the same class.
struct Signature {
    std::vector<std::string> lines;
    friend bool operator==(const Signature&, const Signature&) = default;
    std::string text() const;
};

Signature portrait_signature(const Tds& tds, const AnalysisLimits& limits = {});
Signature portrait_signature(const Tds& tds, const PortraitAnalysis& a);

}  // namespace tropd
