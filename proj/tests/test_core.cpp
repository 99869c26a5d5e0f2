#include <doctest.h>

#include "oracles.hpp"
#include "tropd/core.hpp"
#include "tropd/presets.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace tropd;

namespace {

Rational r(long a, long b = 1) { return Rational(a, b); }

TropicalPair tp(int idx, Axis ax, FlowVector d, Degree g, TropCoeff a) { return {idx, ax, d, g, a}; }

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(*parse_rational("3/4") == r(3, 4));
    CHECK(*parse_rational("-6/8") == r(-3, 4));
    CHECK(*parse_rational("7") == r(7));
    CHECK(*parse_rational("-0.75") == r(-3, 4));
    CHECK(*parse_rational(".5") == r(1, 2));
    CHECK(*parse_rational("010/08") == r(5, 4));
    CHECK(*parse_rational("0.05") == r(1, 20));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational("1.2.3"));
    CHECK(to_string(r(-3, 4)) == "-3/4");
    CHECK(to_string(r(4, 2)) == "2");
}

TEST_CASE("snap recovers simple fractions from doubles") {
    CHECK(snap(0.75, 1000000) == r(3, 4));
    CHECK(snap(-1.0 / 3.0, 1000000) == r(-1, 3));
    CHECK(snap(0.0, 10) == r(0));
    Rational pi = snap(3.141592653589793, 1000);
    CHECK(pi == r(355, 113));
}

TEST_CASE("make_tds validates and computes the degree") {
    Tds t = autocatalator(r(1, 4));
    CHECK(t.degree_n() == 3);
    CHECK(t.indices(AxisFilter::U).size() == 3);
    CHECK(t.indices(AxisFilter::V).size() == 3);

    Tds minimal = make_tds({tp(1, Axis::U, {1, 0}, {0, 0}, 0), tp(2, Axis::V, {0, 1}, {0, 0}, 0)});
    CHECK(minimal.degree_n() == 1);

    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return std::string(errc_name(e.code()));
        }
        return std::string("none");
    };
    CHECK(code_of([] {
              make_tds({tp(1, Axis::U, {1, 0}, {-1, 0}, 0), tp(2, Axis::U, {-1, 0}, {-1, 0}, 1),
                        tp(3, Axis::V, {0, 1}, {0, 0}, 0)});
          }) == "DuplicateDegreeInAxis");
    CHECK(code_of([] { make_tds({tp(1, Axis::U, {1, 0}, {0, 0}, 0)}); }) == "EmptyAxis");
    CHECK(code_of([] {
              make_tds({tp(1, Axis::U, {1, 0}, {0, -1}, 0), tp(2, Axis::V, {0, 1}, {0, 0}, 0)});
          }) == "BadDegreeRange");
    CHECK(code_of([] {
              make_tds({tp(1, Axis::U, {0, 1}, {0, 0}, 0), tp(2, Axis::V, {0, 1}, {0, 0}, 0)});
          }) == "AxisFlowMismatch");
    CHECK(code_of([] {
              make_tds({tp(1, Axis::U, {1, 0}, {0, 4}, 0), tp(2, Axis::V, {0, 1}, {0, 0}, 0)}, 2);
          }) == "BadDegreeRange");
}

TEST_CASE("eval_monomial") {
    Tds t = autocatalator(r(1, 4));
    CHECK(eval_monomial(t.pair(6), QPoint(r(1, 4), r(1, 4))) == TropCoeff(r(1, 2)));
    Tds g = t.with_alpha(2, TropCoeff::neg_inf());
    CHECK(eval_monomial(g.pair(2), QPoint(r(5), r(-7))).is_neg_inf());
    for (long v : {-3L, 0L, 11L})
        CHECK(eval_monomial(t.pair(1), QPoint(r(1, 4), r(v))) == TropCoeff(r(-1)));
}

TEST_CASE("argmax_set against the formula oracle") {
    const Rational a(1, 4);
    Tds t = autocatalator(a);
    QPoint p(r(-1, 4), r(1, 4));
    auto vals = oracle::autocatalator_values(a, p.u, p.v);
    CHECK(oracle::argmax(vals, {1, 2, 3}) == std::vector<int>{1, 3});
    CHECK(argmax_set(t, AxisFilter::U, p) == std::vector<int>{1, 3});
    CHECK(argmax_set(t, AxisFilter::V, p) == std::vector<int>{4, 6});
    CHECK(argmax_set(t, AxisFilter::I, p) == oracle::argmax(vals, {1, 2, 3, 4, 5, 6}));
    CHECK(argmax_set(t, AxisFilter::I, QPoint(r(5), r(1))).size() == 1);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        QPoint x(oracle::random_rational(rng, -3, 3, 8), oracle::random_rational(rng, -3, 3, 8));
        auto ov = oracle::autocatalator_values(a, x.u, x.v);
        CHECK(argmax_set(t, AxisFilter::I, x) == oracle::argmax(ov, {1, 2, 3, 4, 5, 6}));
    }

    Tds dead = make_tds({tp(1, Axis::U, {1, 0}, {0, 0}, TropCoeff::neg_inf()), tp(2, Axis::V, {0, 1}, {0, 0}, 0)});
    CHECK_THROWS_AS(argmax_set(dead, AxisFilter::U, QPoint(0, 0)), Error);
}

TEST_CASE("argmax_toward breaks ties by slope") {
    Tds t = autocatalator(r(1, 4));
    QPoint p(r(-1, 4), r(1, 4));
    CHECK(argmax_toward(t, AxisFilter::U, p, Vec2(r(1), r(0))) == std::vector<int>{3});
    CHECK(argmax_toward(t, AxisFilter::U, p, Vec2(r(-1), r(0))) == std::vector<int>{1});
    // Along the edge direction both stay maximal.
    CHECK(argmax_toward(t, AxisFilter::U, p, Vec2(r(-2, 3), r(1, 3))) == std::vector<int>{1, 3});
}

TEST_CASE("translation invariance of argmax") {
    std::mt19937_64 rng(11);
    Tds base = crossing1(r(-25));
    for (int trial = 0; trial < 10; ++trial) {
        Rational shift = oracle::random_rational(rng, -50, 50, 7);
        Tds moved = base.shifted(shift);
        for (int k = 0; k < 30; ++k) {
            QPoint x(oracle::random_rational(rng, -6, 6, 4), oracle::random_rational(rng, -6, 6, 4));
            for (AxisFilter f : {AxisFilter::U, AxisFilter::V, AxisFilter::I})
                CHECK(argmax_set(base, f, x) == argmax_set(moved, f, x));
        }
    }
}

TEST_CASE("tropicalize reproduces the autocatalator pairs") {
    for (Rational eps : {r(1, 10), r(1, 20)}) {
        const double e = to_double(eps);
        const double alpha = 0.25;
        const double theta = std::exp(-1.0 / e), mu = std::exp(alpha / e);
        Tds t = tropicalize({{theta * mu, 0, 0}, {-theta, 1, 0}, {-theta, 1, 2}}, {{-1.0, 0, 1}, {1.0, 1, 0}, {1.0, 1, 2}},
                            eps);
        Tds expected = autocatalator(r(1, 4));
        CHECK(t == expected);
    }
}

TEST_CASE("tropicalize edge cases") {
    Tds ones = tropicalize({{1.0, 0, 0}, {1.0, 1, 1}}, {{1.0, 0, 0}}, r(3, 7));
    for (const auto& p : ones.pairs()) CHECK(p.alpha == TropCoeff(0));
    Tds zero = tropicalize({{0.0, 0, 0}, {2.0, 1, 1}}, {{1.0, 0, 0}}, r(1));
    CHECK(zero.pair(1).alpha.is_neg_inf());
    CHECK_THROWS_AS(tropicalize({{1.0, 0, 0}}, {{1.0, 0, 0}}, r(0)), Error);
    CHECK_THROWS_AS(tropicalize({{1.0, 0, 0}}, {{1.0, 0, 0}}, r(-1)), Error);
}

TEST_CASE("counting formulas for the full-support enumeration") {
    for (int N = 1; N <= 6; ++N) {
        auto degs = full_support_degrees(N);
        CHECK(static_cast<long long>(degs.size()) == coefficient_count(N));
        CHECK(coefficient_count(N) == (N + 2) * (N + 1) / 2);
        const int M = static_cast<int>(degs.size());
        Tds t = full_support_tds(N, std::vector<int>(2 * M, 1), std::vector<TropCoeff>(2 * M, TropCoeff(0)));
        std::set<Degree> distinct;
        for (const auto& p : t.pairs()) distinct.insert(p.degree);
        CHECK(static_cast<long long>(distinct.size()) == i_configuration_size(N));
        CHECK(i_configuration_size(N) == (N + 1) * (N + 4) / 2);
        CHECK(t.degree_n() == N);
    }
}
