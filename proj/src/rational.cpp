#include "tropd/rational.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tropd {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// The string constructor reads a leading zero as octal, so strip it first.
Integer decimal(std::string digits) {
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    return Integer(digits);
}

std::optional<Integer> parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return std::nullopt;
    Integer z = decimal(std::string(s));
    return neg ? Integer(-z) : z;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!num || !all_digits(den_text)) return std::nullopt;
        Integer den = decimal(std::string(den_text));
        if (den == 0) return std::nullopt;
        return Rational(*num, den);
    }

    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
        std::string digits = std::string(whole) + std::string(frac);
        if (digits.empty()) return std::nullopt;
        Integer num = decimal(digits);
        Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
        Rational r(num, den);
        return neg ? Rational(-r) : r;
    }

    auto z = parse_integer(text);
    if (!z) return std::nullopt;
    return Rational(*z);
}

std::string to_string(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

int sign(const Rational& r) { return r.sign(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

Rational snap(double x, long long max_den) {
    if (!std::isfinite(x)) throw std::invalid_argument("snap: non-finite value");
    if (max_den < 1) max_den = 1;
    // Convergents h/k of the continued fraction of x; stop before k exceeds max_den.
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rem);
        if (std::fabs(a) > 9e15) break;
        long long ai = static_cast<long long>(a);
        long long k2 = ai * k1 + k0;
        if (k2 > max_den || k2 <= 0) {
            if (k1 == 0) return Rational(Integer(ai));
            // Semiconvergent with the largest admissible partial quotient.
            long long t = (max_den - k0) / k1;
            Rational best{Integer(h1), Integer(k1)};
            if (t > 0) {
                Rational semi{Integer(t * h1 + h0), Integer(t * k1 + k0)};
                if (std::fabs(to_double(semi) - x) < std::fabs(to_double(best) - x)) best = semi;
            }
            return best;
        }
        long long h2 = ai * h1 + h0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        double frac = rem - a;
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    return Rational(Integer(h1), Integer(k1));
}

}  // namespace tropd
