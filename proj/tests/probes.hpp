#pragma once

#include "oracles.hpp"
#include "tropd/dynamics.hpp"

#include <random>
#include <vector>

namespace probes {

using namespace tropd;

inline QPoint random_point_on(const TropEdge& e, std::mt19937_64& rng) {
    Rational t = oracle::random_rational(rng, 0, 1, 997);
    if (e.geometry.shape == EdgeShape::Segment) {
        if (t == 0) t = Rational(1, 997);
        if (t == 1) t = Rational(996, 997);
    } else {
        t = t * 20 + Rational(1, 997);
        if (e.geometry.shape == EdgeShape::Line) t -= 10;
    }
    return e.geometry.at(t);
}

// Every vector of trop(q) that the definition builds from generators, plus segment midpoints.
inline std::vector<Vec2> sample_members(const FieldValue& f) {
    std::vector<Vec2> out;
    if (f.tag == FieldTag::SingletonFlow) return {Vec2(f.generators.front())};
    for (const auto& t : f.u_flows)
        for (const auto& s : f.v_flows) {
            out.push_back(Vec2(t));
            out.push_back(Vec2(s));
            out.push_back((Vec2(t) + Vec2(s)) * Rational(1, 2));
        }
    if (f.sliding) out.push_back(*f.sliding);
    if (f.contains_zero()) out.push_back(Vec2(0, 0));
    return out;
}

}  // namespace probes
