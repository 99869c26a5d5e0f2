#pragma once

#include "tropd/analysis.hpp"
#include "tropd/io.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropd {

struct SceneOptions {
    Rational clip = 8;  // drawing box [-clip, clip]^2
    bool curves = true;
    bool regions = false;
    bool singularities = false;
    bool separatrices = false;
    bool limit_cycles = false;  // sliding limit cycles and realized crossing cycles
    bool graph = false;
    bool report = false;
    std::vector<QPoint> orbit_seeds;  // traced forward
    bool branch_all = false;          // every admissible continuation of each seed
    AnalysisLimits limits;

    static SceneOptions all();
    // "curves,regions,..." or "all"; unknown names raise BadSchema.
    static SceneOptions from_layers(const std::string& csv);
};

struct SceneEdge {
    AxisFilter layer = AxisFilter::I;
    int i = 0, j = 0;
    QPoint a, b;  // clipped to the box
    bool a_clipped = false, b_clipped = false;  // the edge continues past the box at that end
    std::optional<EdgeClass> cls;               // T^I edges
    std::optional<Vec2> slide;                  // d_Fp or d_nc at the midpoint
};

struct SceneRegion {
    int pair = 0;
    FlowVector flow;
    std::vector<QPoint> polygon;
};

struct SceneOrbit {
    std::string role;  // "seed", "separatrix", "limit-cycle", "crossing-cycle"
    std::string label;
    Orbit orbit;
};

struct Scene {
    std::vector<std::pair<int, TropCoeff>> alphas;
    Rational clip;
    std::vector<std::string> layers;
    std::vector<SceneEdge> curves;
    std::vector<SceneRegion> regions;
    std::vector<CurveVertex> vertices;  // of T^I
    std::vector<Singularity> singularities;
    std::vector<SceneOrbit> orbits;
    std::optional<CrossingGraph> graph;
    std::optional<CycleList> graph_cycles;
    std::optional<StabilityReport> report;

    bool has_layer(const std::string& name) const;
};

Scene export_scene(const Tds& tds, const SceneOptions& options = {});
Json scene_json(const Scene& scene);

const char* flow_color(const FlowVector& d);
const char* edge_style(const EdgeClass& c);  // "solid" or "dashed"

// Deterministic SVG document of `size` x `size` pixels.
std::string export_svg(const Scene& scene, int size = 640);

// Clip a closed edge piece to the box; nullopt if it misses the box.
std::optional<SceneEdge> clip_edge(const EdgeGeometry& g, const Rational& r);

}  // namespace tropd
