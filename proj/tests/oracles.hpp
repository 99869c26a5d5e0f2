#pragma once

// Independent reference evaluations written straight from the model formulas, used to freeze
// expected values without going through the library's monomial tables.

#include "tropd/rational.hpp"

#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using tropd::Rational;

// Autocatalator monomials as functions of (alpha, u, v).
inline std::map<int, Rational> autocatalator_values(const Rational& a, const Rational& u, const Rational& v) {
    return {{1, a - 1 - u}, {2, Rational(-1)}, {3, -1 + 2 * v}, {4, Rational(0)}, {5, u - v}, {6, u + v}};
}

// The two crossing-cycle systems, indices 1..5.
inline std::map<int, Rational> crossing1_values(const Rational& a, const Rational& u, const Rational& v) {
    return {{1, u}, {2, -5 + 3 * u + 3 * v}, {3, v}, {4, 4 * u + 2 * v}, {5, a + 5 * u + 5 * v}};
}

inline std::map<int, Rational> crossing2_values(const Rational& a, const Rational& u, const Rational& v) {
    return {{1, 2 * u}, {2, -2 + 2 * u + 3 * v}, {3, v}, {4, 4 * u + v}, {5, a + 5 * u + 4 * v}};
}

inline std::vector<int> argmax(const std::map<int, Rational>& vals, const std::vector<int>& among) {
    Rational best;
    std::vector<int> out;
    for (int k : among) {
        const Rational& x = vals.at(k);
        if (out.empty() || x > best) {
            best = x;
            out = {k};
        } else if (x == best) {
            out.push_back(k);
        }
    }
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
    std::uniform_int_distribution<long> d(lo * den, hi * den);
    return Rational(d(rng), den);
}

// Crossing-flow walk for a system given as linear forms alpha_k + n_k u + m_k v with flows d_k, stepping
// region by region with exit times from all pairwise equalities. Stops at a vertex (three or more
// maximizers), at a sliding edge, when unbounded, or after max_steps.
struct Linear {
    Rational alpha;
    int n = 0, m = 0;
    int dx = 0, dy = 0;
};

struct WalkEnd {
    enum Kind { Vertex, Sliding, Unbounded, Cap } kind = Cap;
    Rational u, v;
    std::vector<int> maximizers;
    int turns = 0;
};

inline WalkEnd crossing_walk(const std::map<int, Linear>& sys, Rational u, Rational v, int region, int max_steps = 500) {
    auto val = [&](int k) { const auto& f = sys.at(k); return f.alpha + f.n * u + f.m * v; };
    WalkEnd end;
    for (int step = 0; step < max_steps; ++step) {
        const auto& r = sys.at(region);
        std::optional<Rational> best;
        for (const auto& [l, f] : sys) {
            if (l == region) continue;
            int s = (f.n - r.n) * r.dx + (f.m - r.m) * r.dy;
            if (s <= 0) continue;
            Rational t = (val(region) - val(l)) / Rational(s);
            if (t > 0 && (!best || t < *best)) best = t;
        }
        if (!best) {
            end.kind = WalkEnd::Unbounded;
            return end;
        }
        u += *best * r.dx;
        v += *best * r.dy;
        Rational top = val(region);
        std::vector<int> mx;
        for (const auto& [l, f] : sys)
            if (val(l) == top) mx.push_back(l);
        end.u = u;
        end.v = v;
        end.maximizers = mx;
        if (mx.size() > 2) {
            end.kind = WalkEnd::Vertex;
            return end;
        }
        int l = mx[0] == region ? mx[1] : mx[0];
        const auto& g = sys.at(l);
        if (g.dx * (g.n - r.n) + g.dy * (g.m - r.m) <= 0) {
            end.kind = WalkEnd::Sliding;
            return end;
        }
        if (g.dx != r.dx || g.dy != r.dy) ++end.turns;
        region = l;
    }
    return end;
}

inline std::map<int, Linear> crossing1_linear(const Rational& a) {
    return {{1, {0, 1, 0, 1, 0}}, {2, {-5, 3, 3, -1, 0}}, {3, {0, 0, 1, 0, -1}}, {4, {0, 4, 2, 0, 1}}, {5, {a, 5, 5, 0, -1}}};
}

}  // namespace oracle
