#pragma once

#include "tropd/affine.hpp"
#include "tropd/geometry.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tropd {

enum class EdgeKind { NonSwitching, Crossing, FilippovTransversal, FilippovTangential, NullclineTransversal, NullclineTangential };
enum class Stability { Stable, Unstable, NotApplicable };

const char* edge_kind_name(EdgeKind k);
const char* stability_name(Stability s);

struct EdgeClass {
    EdgeKind kind = EdgeKind::NonSwitching;
    Stability stability = Stability::NotApplicable;
    std::optional<Axis> dominant_axis;  // nullcline kinds only

    bool sliding() const { return kind != EdgeKind::NonSwitching && kind != EdgeKind::Crossing; }
    bool nullcline() const { return kind == EdgeKind::NullclineTransversal || kind == EdgeKind::NullclineTangential; }
    bool filippov() const { return kind == EdgeKind::FilippovTransversal || kind == EdgeKind::FilippovTangential; }
};

// Classification from the two flow vectors and the normal n = deg F_j - deg F_i (region i on the n-negative side).
EdgeClass classify(const FlowVector& di, const FlowVector& dj, const Degree& n);
EdgeClass classify_edge(const Tds& tds, const TropEdge& e);

enum class FieldTag { SingletonFlow, CrossingSegment, FilippovSegment, NullclineFan, DiamondWithZero, VertexFan };
const char* field_tag_name(FieldTag t);

struct FieldValue {
    FieldTag tag = FieldTag::SingletonFlow;
    std::vector<int> i_star, u_star, v_star;
    std::vector<FlowVector> u_flows, v_flows;  // distinct flows of U* and V*
    std::vector<FlowVector> generators;        // distinct flows of I*
    std::optional<Vec2> sliding;               // d_Fp or d_nc when unique

    bool contains(const Vec2& w) const;
    bool contains_zero() const { return tag == FieldTag::DiamondWithZero; }
};

FieldValue trop_field(const Tds& tds, const QPoint& p);

// q*d_i + (1-q)*d_j with q = (n.d_j)/(n.d_j - n.d_i).
struct FilippovResult {
    Rational q;
    Vec2 vector;
};
FilippovResult filippov_vector(const FlowVector& di, const FlowVector& dj, const Degree& n);

// sign(d_l . e) e for the unit tangent e of a transversal nullcline edge.
Vec2 nullcline_vector(const TropEdge& e, const FlowVector& dl);

// The edge as a graph v = slope*u + intercept: the u -> v transit of a vertical flow across it.
AffineMap1D crossing_map(const Tds& tds, const TropEdge& e);

// Transit in forward time: transverse coordinate of the incoming flow -> transverse coordinate of the
// outgoing flow (u -> v when the incoming flow is vertical, v -> u otherwise).
struct Transit {
    int from = 0;  // pair whose region the flow leaves
    int to = 0;
    AffineMap1D map;
    bool from_vertical = true;
};
Transit crossing_transit(const Tds& tds, const TropEdge& e);

enum class SingularityKind { Sink, Source, StrongStableSaddle, StrongUnstableSaddle, HybridCenter, HybridSaddle, Degenerate };
const char* singularity_kind_name(SingularityKind k);

struct Singularity {
    QPoint location;
    SingularityKind kind = SingularityKind::Degenerate;
    std::array<int, 2> host_u{};  // pair indices of the T^U edge
    std::array<int, 2> host_v{};
    std::optional<Axis> i_host;   // which host edge is also an edge of T^I
    std::string note;             // reason when Degenerate

    // Pair indices of both hosts, sorted: the label Q_{ijlp}.
    std::vector<int> label() const;
};

std::vector<Singularity> singularities(const Tds& tds);

struct SmoothFieldValue {
    double du = 0;
    double dv = 0;
};
SmoothFieldValue smooth_field(const Tds& tds, double u, double v, double eps);

}  // namespace tropd
