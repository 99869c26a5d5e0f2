#include "tropd/orbit.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropd {

const char* orientation_name(Orientation o) { return o == Orientation::Forward ? "Forward" : "Backward"; }

const char* segment_mode_name(SegmentMode m) {
    switch (m) {
        case SegmentMode::Region: return "Region";
        case SegmentMode::CrossingThrough: return "CrossingThrough";
        case SegmentMode::FilippovSlide: return "FilippovSlide";
        case SegmentMode::NullclineSlide: return "NullclineSlide";
    }
    return "?";
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Unbounded: return "Unbounded";
        case Termination::Singularity: return "Singularity";
        case Termination::HybridPoint: return "HybridPoint";
        case Termination::Periodic: return "Periodic";
        case Termination::SegmentCap: return "SegmentCap";
        case Termination::ReachedVertex: return "ReachedVertex";
        case Termination::ReachedSliding: return "ReachedSliding";
        case Termination::CrossingCycle: return "CrossingCycle";
    }
    return "?";
}

std::optional<Rational> next_event(const Tds& tds, AxisFilter f, const QPoint& p, const Vec2& w) {
    auto top = argmax_toward(tds, f, p, w);
    const auto& lead = tds.pair(top.front());
    Rational value = eval_finite(lead, p), slope = w.dot(lead.degree);
    std::optional<Rational> best;
    for (const auto& pair : tds.pairs()) {
        if (!in_filter(pair.axis, f) || !pair.alpha.finite()) continue;
        Rational s = w.dot(pair.degree);
        if (s <= slope) continue;
        Rational t = (value - eval_finite(pair, p)) / (s - slope);
        if (t > 0 && (!best || t < *best)) best = t;
    }
    return best;
}

namespace {

std::vector<FlowVector> flows_of(const Tds& tds, const std::vector<int>& idx) {
    std::set<FlowVector> s;
    for (int k : idx) s.insert(tds.pair(k).flow);
    return {s.begin(), s.end()};
}

// What an orbit leaving p along w sees until the first event.
struct Probe {
    std::optional<Rational> t;
    FieldValue field;
    bool region = true;
    int pair = 0;
    std::array<int, 2> edge{0, 0};
    EdgeClass cls;
};

Probe probe(const Tds& tds, const QPoint& p, const Vec2& w) {
    Probe r;
    auto toward = argmax_toward(tds, AxisFilter::I, p, w);
    r.region = flows_of(tds, toward).size() == 1;
    r.t = next_event(tds, AxisFilter::I, p, w);
    if (!r.region) {
        for (AxisFilter f : {AxisFilter::U, AxisFilter::V}) {
            auto t = next_event(tds, f, p, w);
            if (t && (!r.t || *t < *r.t)) r.t = t;
        }
    }
    QPoint mid = r.t ? p + w * (*r.t / 2) : p + w;
    r.field = trop_field(tds, mid);
    if (r.region) {
        r.pair = *std::min_element(r.field.i_star.begin(), r.field.i_star.end());
    } else if (r.field.i_star.size() >= 2) {
        r.edge = {r.field.i_star.front(), r.field.i_star.back()};
        const auto& a = tds.pair(r.edge[0]);
        const auto& b = tds.pair(r.edge[1]);
        r.cls = classify(a.flow, b.flow, b.degree - a.degree);
    }
    return r;
}

struct Candidate {
    Vec2 w;
    Probe pr;
    int rank = 0;
};

std::vector<Candidate> candidates(const Tds& tds, const TropicalCurve& curve, const QPoint& p,
                                  const std::optional<Vec2>& prev, bool crossing_only) {
    std::vector<Vec2> dirs;
    auto add = [&](const Vec2& w) {
        if (std::find(dirs.begin(), dirs.end(), w) == dirs.end()) dirs.push_back(w);
    };
    for (const auto& d : flows_of(tds, argmax_set(tds, AxisFilter::I, p))) add(Vec2(d));
    if (!crossing_only)
        for (const auto& e : curve.edges)
            if (e.geometry.contains(p, false)) {
                add(e.tangent());
                add(-e.tangent());
            }
    std::vector<Candidate> out;
    for (const auto& w : dirs) {
        Probe pr = probe(tds, p, w);
        if (!pr.field.contains(w)) continue;
        if (crossing_only && !pr.region) continue;
        Candidate c{w, pr, 0};
        if (!pr.region && pr.cls.sliding() && pr.cls.stability == Stability::Stable) c.rank = 0;
        else if (prev && w == *prev) c.rank = 1;
        else if (pr.region) c.rank = 2;
        else c.rank = 3;
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        if (a.pr.region != b.pr.region) return a.pr.region;
        return a.pr.region ? a.pr.pair < b.pr.pair : a.pr.edge < b.pr.edge;
    });
    return out;
}

Segment segment_of(const Candidate& c) {
    Segment s;
    s.direction = c.w;
    if (c.pr.region) {
        s.mode = SegmentMode::Region;
        s.region = c.pr.pair;
    } else {
        s.mode = c.pr.cls.filippov() ? SegmentMode::FilippovSlide : SegmentMode::NullclineSlide;
        s.edge = c.pr.edge;
    }
    return s;
}

struct Key {
    QPoint p;
    Vec2 w;
    bool operator<(const Key& o) const {
        if (p < o.p) return true;
        if (o.p < p) return false;
        return w < o.w;
    }
};

struct State {
    QPoint p;
    std::optional<Vec2> prev;
    Orbit orbit;
    std::map<Key, int> seen;
    bool at_start = true;
};

class Runner {
public:
    Runner(const Tds& original, Orientation dir, const TracePolicy& policy, const TraceLimits& limits)
        : tds_(dir == Orientation::Forward ? original : original.reversed()),
          curve_(tropical_curve(tds_, AxisFilter::I)),
          sings_(singularities(original)),
          dir_(dir),
          policy_(policy),
          limits_(limits) {}

    State initial(const QPoint& start) const {
        State s;
        s.p = start;
        s.orbit.orientation = dir_;
        s.orbit.vertices.push_back(start);
        return s;
    }

    // Runs until termination; in branch mode every admissible alternative is explored.
    void run(State s, std::vector<Orbit>& out, bool branch, std::optional<Vec2> forced = std::nullopt) {
        while (true) {
            if (out.size() >= limits_.max_branches) return;
            if (s.orbit.segments.size() >= limits_.max_segments && !forced) return finish(s, out, Termination::SegmentCap);

            FieldValue here = trop_field(tds_, s.p);
            if (here.contains_zero() && !(s.at_start && policy_.initial_direction)) {
                int id = -1;
                for (std::size_t k = 0; k < sings_.size(); ++k)
                    if (sings_[k].location == s.p) id = static_cast<int>(k);
                bool hybrid = id >= 0 && (sings_[id].kind == SingularityKind::HybridCenter ||
                                          sings_[id].kind == SingularityKind::HybridSaddle);
                return finish(s, out, hybrid ? Termination::HybridPoint : Termination::Singularity, id);
            }
            if (policy_.crossing_only && !s.at_start) {
                if (curve_.find_vertex(s.p) >= 0) {
                    auto m = argmax_set(tds_, AxisFilter::I, s.p);
                    return finish(s, out, Termination::ReachedVertex, -1, m);
                }
                if (here.generators.size() >= 2 && here.i_star.size() == 2) {
                    const auto& a = tds_.pair(here.i_star[0]);
                    const auto& b = tds_.pair(here.i_star[1]);
                    if (classify(a.flow, b.flow, b.degree - a.degree).sliding())
                        return finish(s, out, Termination::ReachedSliding, -1, here.i_star);
                }
            }

            std::vector<Candidate> cands;
            if (forced) {
                for (auto& c : candidates(tds_, curve_, s.p, s.prev, policy_.crossing_only))
                    if (c.w == *forced) cands.push_back(c);
                forced.reset();
            } else if (s.at_start && policy_.initial_direction) {
                for (auto& c : candidates(tds_, curve_, s.p, s.prev, policy_.crossing_only))
                    if (c.w == *policy_.initial_direction) cands.push_back(c);
            } else {
                cands = candidates(tds_, curve_, s.p, s.prev, policy_.crossing_only);
            }
            if (cands.empty())
                throw Error(Errc::StuckAtDegeneracy,
                            "no admissible continuation at (" + to_string(s.p.u) + ", " + to_string(s.p.v) + ")");
            if (branch && cands.size() > 1) {
                for (const auto& c : cands) {
                    if (out.size() >= limits_.max_branches) return;
                    run(s, out, true, c.w);
                }
                return;
            }
            if (!advance(s, cands.front(), out)) return;
        }
    }

private:
    void finish(State& s, std::vector<Orbit>& out, Termination t, int id = -1, std::vector<int> feature = {}) {
        if (!s.orbit.segments.empty() && !(s.orbit.vertices.back() == s.p)) s.orbit.vertices.push_back(s.p);
        s.orbit.termination = t;
        s.orbit.termination_id = id;
        s.orbit.feature = std::move(feature);
        out.push_back(std::move(s.orbit));
    }

    static Rational transverse(const QPoint& p, const Vec2& w) { return w.x == 0 ? p.u : p.v; }

    // Takes one step along c.w; returns false when the orbit terminated.
    bool advance(State& s, const Candidate& c, std::vector<Orbit>& out) {
        auto& o = s.orbit;
        const Vec2& w = c.w;
        Segment seg = segment_of(c);
        bool extend = !o.segments.empty() && o.segments.back().direction == w;
        if (extend) {
            Segment& last = o.segments.back();
            if (last.mode == SegmentMode::Region && seg.mode == SegmentMode::Region && last.region != seg.region) {
                last.mode = SegmentMode::CrossingThrough;
                last.edge = {std::min(last.region, seg.region), std::max(last.region, seg.region)};
            }
        } else {
            if (!o.segments.empty()) {
                o.vertices.push_back(s.p);
                auto it = s.seen.find({s.p, w});
                if (it != s.seen.end()) {
                    o.termination = Termination::Periodic;
                    o.termination_id = it->second;
                    out.push_back(std::move(o));
                    return false;
                }
            }
            if (c.pr.region) {
                Rational x = transverse(s.p, w);
                for (const auto& b : policy_.basins)
                    if (b.region == c.pr.pair && (!b.lo || *b.lo < x) && (!b.hi || x < *b.hi) &&
                        !(b.fixed && *b.fixed == x)) {
                        finish(s, out, Termination::CrossingCycle, b.id);
                        return false;
                    }
            }
            s.seen[{s.p, w}] = static_cast<int>(o.vertices.size()) - 1;
            o.segments.push_back(seg);
        }

        // Exit time of the clip box.
        const Rational& B = limits_.clip;
        std::optional<Rational> t_exit;
        auto bound = [&](const Rational& pos, const Rational& vel) {
            if (vel == 0) return;
            Rational t = ((vel > 0 ? B : -B) - pos) / vel;
            if (!t_exit || t < *t_exit) t_exit = t;
        };
        bound(s.p.u, w.x);
        bound(s.p.v, w.y);
        std::optional<Rational> t = c.pr.t;

        // Passing through the start again in the starting direction closes the orbit.
        const QPoint& start = o.vertices.front();
        if (!s.at_start && !o.segments.empty() && o.segments.front().direction == w) {
            Vec2 d = start - s.p;
            if (d.cross(w) == 0) {
                Rational along = d.dot(w) / w.dot(w);
                if (along > 0 && (!t || along <= *t) && (!t_exit || along < *t_exit)) {
                    s.p = start;
                    o.vertices.push_back(start);
                    o.termination = Termination::Periodic;
                    o.termination_id = 0;
                    out.push_back(std::move(o));
                    return false;
                }
            }
        }

        if (t_exit && (*t_exit <= 0 || !t || *t >= *t_exit)) {
            if (*t_exit > 0) {
                s.p = s.p + w * *t_exit;
            } else if (!extend) {
                o.segments.pop_back();
            }
            finish(s, out, Termination::Unbounded);
            return false;
        }
        if (!t) {
            finish(s, out, Termination::Unbounded);
            return false;
        }
        s.p = s.p + w * *t;
        s.prev = w;
        s.at_start = false;
        return true;
    }

    Tds tds_;
    TropicalCurve curve_;
    std::vector<Singularity> sings_;
    Orientation dir_;
    TracePolicy policy_;
    TraceLimits limits_;
};

}  // namespace

std::vector<Vec2> admissible_directions(const Tds& tds, const QPoint& p, bool crossing_only) {
    std::vector<Vec2> out;
    for (const auto& c : candidates(tds, tropical_curve(tds, AxisFilter::I), p, std::nullopt, crossing_only))
        out.push_back(c.w);
    return out;
}

Orbit trace_orbit(const Tds& tds, const QPoint& start, Orientation dir, const TracePolicy& policy,
                  const TraceLimits& limits) {
    TraceLimits one = limits;
    one.max_branches = 1;
    Runner r(tds, dir, policy, one);
    std::vector<Orbit> out;
    r.run(r.initial(start), out, false);
    return out.front();
}

std::vector<Orbit> trace_branches(const Tds& tds, const QPoint& start, Orientation dir, const TracePolicy& policy,
                                  const TraceLimits& limits) {
    Runner r(tds, dir, policy, limits);
    std::vector<Orbit> out;
    r.run(r.initial(start), out, true);
    return out;
}

}  // namespace tropd
