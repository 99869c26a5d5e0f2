#include "tropd/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tropd {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::DuplicateDegreeInAxis: return "DuplicateDegreeInAxis";
        case Errc::DuplicateIndex: return "DuplicateIndex";
        case Errc::EmptyAxis: return "EmptyAxis";
        case Errc::BadDegreeRange: return "BadDegreeRange";
        case Errc::AxisFlowMismatch: return "AxisFlowMismatch";
        case Errc::AllNegInf: return "AllNegInf";
        case Errc::InvalidEps: return "InvalidEps";
        case Errc::NotAnEdge: return "NotAnEdge";
        case Errc::NotFilippov: return "NotFilippov";
        case Errc::TangentialEdge: return "TangentialEdge";
        case Errc::NotCrossing: return "NotCrossing";
        case Errc::StuckAtDegeneracy: return "StuckAtDegeneracy";
        case Errc::NotASeparatrixCarrier: return "NotASeparatrixCarrier";
        case Errc::NoCommonSection: return "NoCommonSection";
        case Errc::CycleNotRealized: return "CycleNotRealized";
        case Errc::NotACrossingCycle: return "NotACrossingCycle";
        case Errc::UnknownPair: return "UnknownPair";
        case Errc::BadRational: return "BadRational";
        case Errc::BadSchema: return "BadSchema";
        case Errc::UnknownPreset: return "UnknownPreset";
    }
    return "Unknown";
}

const char* axis_name(Axis a) { return a == Axis::U ? "U" : "V"; }

const char* filter_name(AxisFilter f) {
    switch (f) {
        case AxisFilter::U: return "U";
        case AxisFilter::V: return "V";
        case AxisFilter::I: return "I";
    }
    return "?";
}

bool operator<(const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

bool operator<(const QPoint& a, const QPoint& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

const Rational& TropCoeff::value() const {
    if (!value_) throw Error(Errc::AllNegInf, "value() on NEG_INF");
    return *value_;
}

std::strong_ordering operator<=>(const TropCoeff& a, const TropCoeff& b) {
    if (!a.finite() || !b.finite()) return a.finite() <=> b.finite();
    if (a.value() < b.value()) return std::strong_ordering::less;
    if (b.value() < a.value()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string to_string(const TropCoeff& c) { return c.finite() ? to_string(c.value()) : "-inf"; }

bool Tds::has(int index) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), index,
                               [](const TropicalPair& p, int i) { return p.index < i; });
    return it != pairs_.end() && it->index == index;
}

const TropicalPair& Tds::pair(int index) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), index,
                               [](const TropicalPair& p, int i) { return p.index < i; });
    if (it == pairs_.end() || it->index != index)
        throw Error(Errc::UnknownPair, "no pair with index " + std::to_string(index));
    return *it;
}

std::vector<int> Tds::indices(AxisFilter f, bool finite_only) const {
    std::vector<int> out;
    for (const auto& p : pairs_)
        if (in_filter(p.axis, f) && (!finite_only || p.alpha.finite())) out.push_back(p.index);
    return out;
}

Tds Tds::with_alpha(int index, TropCoeff alpha) const {
    Tds copy = *this;
    for (auto& p : copy.pairs_)
        if (p.index == index) {
            p.alpha = std::move(alpha);
            return copy;
        }
    throw Error(Errc::UnknownPair, "no pair with index " + std::to_string(index));
}

Tds Tds::shifted(const Rational& a) const {
    Tds copy = *this;
    for (auto& p : copy.pairs_) p.alpha = p.alpha + a;
    return copy;
}

Tds Tds::reversed() const {
    Tds copy = *this;
    for (auto& p : copy.pairs_) p.flow = -p.flow;
    return copy;
}

bool operator==(const Tds& a, const Tds& b) {
    if (a.degree_n_ != b.degree_n_ || a.pairs_.size() != b.pairs_.size()) return false;
    for (std::size_t k = 0; k < a.pairs_.size(); ++k) {
        const auto& x = a.pairs_[k];
        const auto& y = b.pairs_[k];
        if (x.index != y.index || x.axis != y.axis || x.flow != y.flow || x.degree != y.degree || !(x.alpha == y.alpha))
            return false;
    }
    return true;
}

Tds make_tds(std::vector<TropicalPair> pairs, std::optional<int> degree_n) {
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    std::set<Degree> seen_u, seen_v;
    int max_norm = 0;
    bool any_u = false, any_v = false;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& p = pairs[k];
        if (k > 0 && pairs[k - 1].index == p.index)
            throw Error(Errc::DuplicateIndex, "index " + std::to_string(p.index) + " used twice");
        bool horizontal = (p.flow.x == 1 || p.flow.x == -1) && p.flow.y == 0;
        bool vertical = p.flow.x == 0 && (p.flow.y == 1 || p.flow.y == -1);
        if (p.axis == Axis::U ? !horizontal : !vertical)
            throw Error(Errc::AxisFlowMismatch, "pair " + std::to_string(p.index) + " flow does not match its axis");
        const Degree& d = p.degree;
        if (p.axis == Axis::U) {
            any_u = true;
            if (d.n < -1 || d.m < 0)
                throw Error(Errc::BadDegreeRange, "U-pair " + std::to_string(p.index) + " needs n >= -1, m >= 0");
            if (!seen_u.insert(d).second)
                throw Error(Errc::DuplicateDegreeInAxis, "two U-pairs share degree (" + std::to_string(d.n) + "," +
                                                             std::to_string(d.m) + ")");
        } else {
            any_v = true;
            if (d.n < 0 || d.m < -1)
                throw Error(Errc::BadDegreeRange, "V-pair " + std::to_string(p.index) + " needs n >= 0, m >= -1");
            if (!seen_v.insert(d).second)
                throw Error(Errc::DuplicateDegreeInAxis, "two V-pairs share degree (" + std::to_string(d.n) + "," +
                                                             std::to_string(d.m) + ")");
        }
        max_norm = std::max(max_norm, std::abs(d.n) + std::abs(d.m));
    }
    if (!any_u) throw Error(Errc::EmptyAxis, "no U-pairs");
    if (!any_v) throw Error(Errc::EmptyAxis, "no V-pairs");

    Tds t;
    t.pairs_ = std::move(pairs);
    if (degree_n) {
        if (*degree_n < 1 || max_norm > *degree_n + 1)
            throw Error(Errc::BadDegreeRange, "a degree exceeds |deg|_1 <= N+1 for N=" + std::to_string(*degree_n));
        t.degree_n_ = *degree_n;
    } else {
        t.degree_n_ = max_norm + 1;
    }
    return t;
}

Rational eval_finite(const TropicalPair& pair, const QPoint& p) {
    return pair.alpha.value() + pair.degree.n * p.u + pair.degree.m * p.v;
}

TropCoeff eval_monomial(const TropicalPair& pair, const QPoint& p) {
    if (!pair.alpha.finite()) return TropCoeff::neg_inf();
    return eval_finite(pair, p);
}

std::vector<int> argmax_set(const Tds& tds, AxisFilter f, const QPoint& p) {
    std::vector<int> best;
    Rational best_value;
    for (const auto& pair : tds.pairs()) {
        if (!in_filter(pair.axis, f) || !pair.alpha.finite()) continue;
        Rational val = eval_finite(pair, p);
        if (best.empty() || val > best_value) {
            best.assign(1, pair.index);
            best_value = std::move(val);
        } else if (val == best_value) {
            best.push_back(pair.index);
        }
    }
    if (best.empty()) throw Error(Errc::AllNegInf, std::string("filter ") + filter_name(f) + " has no finite pair");
    return best;
}

std::vector<int> argmax_toward(const Tds& tds, AxisFilter f, const QPoint& p, const Vec2& w) {
    std::vector<int> best;
    Rational best_value, best_slope;
    for (const auto& pair : tds.pairs()) {
        if (!in_filter(pair.axis, f) || !pair.alpha.finite()) continue;
        Rational val = eval_finite(pair, p);
        Rational slope = w.dot(pair.degree);
        bool better = best.empty() || val > best_value || (val == best_value && slope > best_slope);
        if (better) {
            best.assign(1, pair.index);
            best_value = std::move(val);
            best_slope = std::move(slope);
        } else if (val == best_value && slope == best_slope) {
            best.push_back(pair.index);
        }
    }
    if (best.empty()) throw Error(Errc::AllNegInf, std::string("filter ") + filter_name(f) + " has no finite pair");
    return best;
}

Tds tropicalize(const std::vector<ClassicalTerm>& u_terms, const std::vector<ClassicalTerm>& v_terms,
                const Rational& eps, const TropicalizeOptions& opts) {
    if (eps <= 0) throw Error(Errc::InvalidEps, "eps must be positive");
    const double e = to_double(eps);
    std::vector<TropicalPair> pairs;
    int index = 1;
    auto emit = [&](const ClassicalTerm& t, Axis axis) {
        if (t.n < 0 || t.m < 0) throw Error(Errc::BadDegreeRange, "classical exponents must be non-negative");
        TropicalPair p;
        p.index = index++;
        p.axis = axis;
        int s = t.a >= 0 ? 1 : -1;
        p.flow = axis == Axis::U ? FlowVector{s, 0} : FlowVector{0, s};
        p.degree = axis == Axis::U ? Degree{t.n - 1, t.m} : Degree{t.n, t.m - 1};
        if (t.a == 0.0)
            p.alpha = TropCoeff::neg_inf();
        else
            p.alpha = snap(e * std::log(std::fabs(t.a)), opts.max_denominator);
        pairs.push_back(p);
    };
    for (const auto& t : u_terms) emit(t, Axis::U);
    for (const auto& t : v_terms) emit(t, Axis::V);
    return make_tds(std::move(pairs));
}

long long coefficient_count(int N) { return static_cast<long long>(N + 2) * (N + 1) / 2; }

long long i_configuration_size(int N) { return static_cast<long long>(N + 1) * (N + 4) / 2; }

std::vector<Degree> full_support_degrees(int N) {
    std::vector<Degree> out;
    for (int l = 0; l <= N; ++l)
        for (int n = 0; n <= N - l; ++n) out.push_back({n, l});
    return out;
}

Tds full_support_tds(int N, const std::vector<int>& deltas, const std::vector<TropCoeff>& alphas) {
    auto base = full_support_degrees(N);
    const int M = static_cast<int>(base.size());
    if (static_cast<int>(deltas.size()) != 2 * M || static_cast<int>(alphas.size()) != 2 * M)
        throw Error(Errc::BadSchema, "full-support system needs 2M deltas and alphas");
    std::vector<TropicalPair> pairs;
    for (int k = 0; k < 2 * M; ++k) {
        TropicalPair p;
        p.index = k + 1;
        const Degree& d = base[k % M];
        int s = deltas[k] >= 0 ? 1 : -1;
        if (k < M) {
            p.axis = Axis::U;
            p.flow = {s, 0};
            p.degree = {d.n - 1, d.m};
        } else {
            p.axis = Axis::V;
            p.flow = {0, s};
            p.degree = {d.n, d.m - 1};
        }
        p.alpha = alphas[k];
        pairs.push_back(p);
    }
    return make_tds(std::move(pairs), N);
}

}  // namespace tropd
