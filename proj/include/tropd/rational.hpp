#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace tropd {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

// Accepts "p/q", integers and finite decimals ("-0.75"). Returns nullopt on junk.
std::optional<Rational> parse_rational(std::string_view text);

// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// a/b for any nonzero b. The two-argument constructor reads the denominator as unsigned, so a negative
// b must not reach it.
inline Rational ratio(long long a, long long b) { return Rational(a) / Rational(b); }

double to_double(const Rational& r);

int sign(const Rational& r);

Rational abs(const Rational& r);

// Best rational approximation of x with denominator <= max_den (continued fractions).
Rational snap(double x, long long max_den);

}  // namespace tropd
