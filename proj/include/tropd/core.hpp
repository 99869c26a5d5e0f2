#pragma once

#include "tropd/error.hpp"
#include "tropd/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace tropd {

enum class Axis { U, V };
enum class AxisFilter { U, V, I };

const char* axis_name(Axis a);
const char* filter_name(AxisFilter f);

inline bool in_filter(Axis a, AxisFilter f) {
    return f == AxisFilter::I || (f == AxisFilter::U) == (a == Axis::U);
}

struct Degree {
    int n = 0;
    int m = 0;
    friend auto operator<=>(const Degree&, const Degree&) = default;
    Degree operator-(const Degree& o) const { return {n - o.n, m - o.m}; }
};

struct FlowVector {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const FlowVector&, const FlowVector&) = default;
    FlowVector operator-() const { return {-x, -y}; }
    int dot(const Degree& d) const { return x * d.n + y * d.m; }
    int dot(const FlowVector& o) const { return x * o.x + y * o.y; }
    bool horizontal() const { return y == 0; }
};

struct Vec2 {
    Rational x;
    Rational y;
    Vec2() = default;
    Vec2(Rational a, Rational b) : x(std::move(a)), y(std::move(b)) {}
    explicit Vec2(const FlowVector& d) : x(d.x), y(d.y) {}
    friend bool operator==(const Vec2&, const Vec2&) = default;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(const Rational& s) const { return {x * s, y * s}; }
    Rational dot(const Vec2& o) const { return x * o.x + y * o.y; }
    Rational dot(const Degree& d) const { return x * d.n + y * d.m; }
    Rational cross(const Vec2& o) const { return x * o.y - y * o.x; }
    Rational norm1() const { return abs(x) + abs(y); }
    bool is_zero() const { return x == 0 && y == 0; }
};

bool operator<(const Vec2& a, const Vec2& b);

struct QPoint {
    Rational u;
    Rational v;
    QPoint() = default;
    QPoint(Rational a, Rational b) : u(std::move(a)), v(std::move(b)) {}
    friend bool operator==(const QPoint&, const QPoint&) = default;
    QPoint operator+(const Vec2& w) const { return {u + w.x, v + w.y}; }
    Vec2 operator-(const QPoint& o) const { return {u - o.u, v - o.v}; }
};

bool operator<(const QPoint& a, const QPoint& b);

// Rational extended by a bottom element. Default-constructed value is NEG_INF.
class TropCoeff {
public:
    TropCoeff() = default;
    TropCoeff(Rational r) : value_(std::move(r)) {}
    TropCoeff(int r) : value_(Rational(r)) {}
    static TropCoeff neg_inf() { return TropCoeff(); }

    bool finite() const { return value_.has_value(); }
    bool is_neg_inf() const { return !value_.has_value(); }
    const Rational& value() const;

    TropCoeff operator+(const Rational& r) const { return finite() ? TropCoeff(*value_ + r) : TropCoeff(); }
    friend bool operator==(const TropCoeff&, const TropCoeff&) = default;
    friend std::strong_ordering operator<=>(const TropCoeff& a, const TropCoeff& b);

private:
    std::optional<Rational> value_;
};

std::string to_string(const TropCoeff& c);

struct TropicalPair {
    int index = 0;
    Axis axis = Axis::U;
    FlowVector flow;
    Degree degree;
    TropCoeff alpha;
};

class Tds {
public:
    const std::vector<TropicalPair>& pairs() const { return pairs_; }
    int degree_n() const { return degree_n_; }

    bool has(int index) const;
    const TropicalPair& pair(int index) const;

    // Indices in the filter; `finite_only` drops NEG_INF pairs.
    std::vector<int> indices(AxisFilter f, bool finite_only = false) const;

    Tds with_alpha(int index, TropCoeff alpha) const;
    Tds shifted(const Rational& a) const;
    // Same monomials, every flow vector negated: forward orbits of this system are backward orbits of the original.
    Tds reversed() const;

    friend bool operator==(const Tds& a, const Tds& b);

private:
    friend Tds make_tds(std::vector<TropicalPair> pairs, std::optional<int> degree_n);
    std::vector<TropicalPair> pairs_;
    int degree_n_ = 1;
};

Tds make_tds(std::vector<TropicalPair> pairs, std::optional<int> degree_n = std::nullopt);

// Requires a finite coefficient.
Rational eval_finite(const TropicalPair& pair, const QPoint& p);
TropCoeff eval_monomial(const TropicalPair& pair, const QPoint& p);

std::vector<int> argmax_set(const Tds& tds, AxisFilter f, const QPoint& p);

// Maximizers at p + t*w for all sufficiently small t > 0 (value first, then slope along w).
std::vector<int> argmax_toward(const Tds& tds, AxisFilter f, const QPoint& p, const Vec2& w);

struct ClassicalTerm {
    double a = 0.0;
    int n = 0;
    int m = 0;
};

struct TropicalizeOptions {
    long long max_denominator = 1000000;
};

// x' = sum a x^n y^m over u_terms, y' likewise over v_terms. Indices run 1.. over u_terms then v_terms.
Tds tropicalize(const std::vector<ClassicalTerm>& u_terms, const std::vector<ClassicalTerm>& v_terms,
                const Rational& eps, const TropicalizeOptions& opts = {});

// Number of monomials of degree <= N in two variables.
long long coefficient_count(int N);
long long i_configuration_size(int N);

// Full-support system of degree N: U = {1..M}, V = {M+1..2M} with the row-by-row degree enumeration.
// `deltas` and `alphas` have length 2M.
Tds full_support_tds(int N, const std::vector<int>& deltas, const std::vector<TropCoeff>& alphas);
std::vector<Degree> full_support_degrees(int N);

}  // namespace tropd
