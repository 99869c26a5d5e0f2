#pragma once

#include "tropd/core.hpp"

#include <map>
#include <string>

namespace tropd {

// c0 + sum_k b_k * alpha_k over pair indices k. Zero coefficients are never stored.
struct AffineInAlpha {
    Rational constant;
    std::map<int, Rational> coeffs;

    AffineInAlpha() = default;
    AffineInAlpha(Rational c) : constant(std::move(c)) {}
    AffineInAlpha(int c) : constant(c) {}
    static AffineInAlpha alpha(int k);

    AffineInAlpha operator+(const AffineInAlpha& o) const;
    AffineInAlpha operator-(const AffineInAlpha& o) const;
    AffineInAlpha operator-() const;
    AffineInAlpha operator*(const Rational& s) const;
    friend bool operator==(const AffineInAlpha&, const AffineInAlpha&) = default;

    // Uses the coefficients of `tds`; every referenced pair must be finite.
    Rational eval(const Tds& tds) const;
    Rational coeff(int k) const;
    Rational coefficient_sum() const;
    bool is_constant() const { return coeffs.empty(); }
    // Linear part only: the map alpha -> sum b_k alpha_k.
    AffineInAlpha linear() const;
};

std::string to_string(const AffineInAlpha& a);

struct QPointAlpha {
    AffineInAlpha u;
    AffineInAlpha v;
    QPoint eval(const Tds& tds) const { return {u.eval(tds), v.eval(tds)}; }
};

// x -> slope * x + intercept.
struct AffineMap1D {
    Rational slope = 1;
    AffineInAlpha intercept;

    AffineInAlpha apply(const AffineInAlpha& x) const { return x * slope + intercept; }
    Rational apply(const Rational& x, const Tds& tds) const { return slope * x + intercept.eval(tds); }
    // (this o first)(x) = this(first(x)).
    AffineMap1D after(const AffineMap1D& first) const;
    AffineMap1D inverse() const;
    static AffineMap1D identity() { return {}; }
};

}  // namespace tropd
