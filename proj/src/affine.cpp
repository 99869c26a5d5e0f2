#include "tropd/affine.hpp"

namespace tropd {

namespace {

void put(std::map<int, Rational>& m, int k, const Rational& v) {
    if (v == 0) m.erase(k);
    else m[k] = v;
}

}  // namespace

AffineInAlpha AffineInAlpha::alpha(int k) {
    AffineInAlpha a;
    a.coeffs[k] = 1;
    return a;
}

AffineInAlpha AffineInAlpha::operator+(const AffineInAlpha& o) const {
    AffineInAlpha r = *this;
    r.constant += o.constant;
    for (const auto& [k, b] : o.coeffs) put(r.coeffs, k, r.coeff(k) + b);
    return r;
}

AffineInAlpha AffineInAlpha::operator-(const AffineInAlpha& o) const { return *this + (-o); }

AffineInAlpha AffineInAlpha::operator-() const { return *this * Rational(-1); }

AffineInAlpha AffineInAlpha::operator*(const Rational& s) const {
    AffineInAlpha r;
    if (s == 0) return r;
    r.constant = constant * s;
    for (const auto& [k, b] : coeffs) r.coeffs[k] = b * s;
    return r;
}

Rational AffineInAlpha::eval(const Tds& tds) const {
    Rational x = constant;
    for (const auto& [k, b] : coeffs) x += b * tds.pair(k).alpha.value();
    return x;
}

Rational AffineInAlpha::coeff(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Rational(0) : it->second;
}

Rational AffineInAlpha::coefficient_sum() const {
    Rational s = 0;
    for (const auto& [k, b] : coeffs) s += b;
    return s;
}

AffineInAlpha AffineInAlpha::linear() const {
    AffineInAlpha r = *this;
    r.constant = 0;
    return r;
}

std::string to_string(const AffineInAlpha& a) {
    std::string s = to_string(a.constant);
    for (const auto& [k, b] : a.coeffs) {
        s += b < 0 ? " - " : " + ";
        Rational m = abs(b);
        if (m != 1) s += to_string(m) + "*";
        s += "a" + std::to_string(k);
    }
    return s;
}

AffineMap1D AffineMap1D::after(const AffineMap1D& first) const {
    return {slope * first.slope, first.intercept * slope + intercept};
}

AffineMap1D AffineMap1D::inverse() const {
    if (slope == 0) throw Error(Errc::NotCrossing, "affine map with zero slope has no inverse");
    Rational inv = Rational(1) / slope;
    return {inv, -(intercept * inv)};
}

}  // namespace tropd
