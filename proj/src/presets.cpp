#include "tropd/presets.hpp"

namespace tropd {

namespace {

TropicalPair make_pair(int index, Axis axis, FlowVector d, Degree deg, TropCoeff alpha) {
    return TropicalPair{index, axis, d, deg, std::move(alpha)};
}

Rational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

Tds generalized_autocatalator(const std::vector<Rational>& a) {
    if (a.size() != 6) throw Error(Errc::BadSchema, "generalized autocatalator takes six coefficients");
    return make_tds({
        make_pair(1, Axis::U, {1, 0}, {-1, 0}, a[0]),
        make_pair(2, Axis::U, {-1, 0}, {0, 0}, a[1]),
        make_pair(3, Axis::U, {-1, 0}, {0, 2}, a[2]),
        make_pair(4, Axis::V, {0, -1}, {0, 0}, a[3]),
        make_pair(5, Axis::V, {0, 1}, {1, -1}, a[4]),
        make_pair(6, Axis::V, {0, 1}, {1, 1}, a[5]),
    });
}

Tds autocatalator(const Rational& alpha) {
    return generalized_autocatalator({alpha - 1, q(-1), q(-1), q(0), q(0), q(0)});
}

Tds crossing1(const Rational& alpha) {
    return make_tds({
        make_pair(1, Axis::U, {1, 0}, {1, 0}, q(0)),
        make_pair(2, Axis::U, {-1, 0}, {3, 3}, q(-5)),
        make_pair(3, Axis::V, {0, -1}, {0, 1}, q(0)),
        make_pair(4, Axis::V, {0, 1}, {4, 2}, q(0)),
        make_pair(5, Axis::V, {0, -1}, {5, 5}, alpha),
    });
}

Tds crossing2(const Rational& alpha) {
    return make_tds({
        make_pair(1, Axis::U, {1, 0}, {2, 0}, q(0)),
        make_pair(2, Axis::U, {-1, 0}, {2, 3}, q(-2)),
        make_pair(3, Axis::V, {0, -1}, {0, 1}, q(0)),
        make_pair(4, Axis::V, {0, 1}, {4, 1}, q(0)),
        make_pair(5, Axis::V, {0, -1}, {5, 4}, alpha),
    });
}

const std::vector<GenautoCase>& genauto_cases() {
    static const std::vector<GenautoCase> cases = [] {
        auto d = [](long x) { return Rational(x, 100); };
        std::vector<GenautoCase> c;
        c.push_back({"1H_a", {d(0), d(25), d(0), d(0), d(0), d(-100)}, ""});
        c.push_back({"1H_b", {d(0), d(25), d(0), d(-75), d(0), d(-100)}, ""});
        c.push_back({"1V", {d(0), d(10), d(0), d(25), d(0), d(-100)}, ""});
        c.push_back({"2", {d(0), d(-50), d(0), d(-50), d(0), d(-100)}, ""});
        c.push_back({"3", {d(0), d(-40), d(0), d(-50), d(-100), d(0)}, ""});
        c.push_back({"4H_a", {d(0), d(0), d(-100), d(-20), d(-100), d(0)}, ""});
        c.push_back({"4H_b", {d(0), d(0), d(-100), d(-65), d(-100), d(0)}, ""});
        c.push_back({"4V_a", {d(0), d(-70), d(-100), d(0), d(-100), d(0)}, ""});
        // The caption names alpha_4 for panel (b) although alpha_2 is the varied coefficient.
        c.push_back({"4V_b", {d(0), d(-20), d(-100), d(0), d(-100), d(0)}, ""});
        c.push_back({"5H_a", {d(0), d(50), d(0), d(0), d(-100), d(0)}, ""});
        c.push_back({"5H_b", {d(0), d(50), d(0), d(-50), d(-100), d(0)}, ""});
        c.push_back({"5H_c", {d(0), d(50), d(0), d(-120), d(-100), d(0)}, ""});
        c.push_back({"5V_a", {d(0), d(0), d(0), d(30), d(-100), d(20)}, ""});
        c.push_back({"5V_b", {d(0), d(-50), d(0), d(30), d(-100), d(20)}, ""});
        // Same caption issue: panel (c) names alpha_4.
        c.push_back({"5V_c", {d(0), d(-80), d(0), d(30), d(-100), d(20)}, ""});
        // Literal readings: the named coefficient changes, the rest carries over from the previous panel.
        c.push_back({"4V_b/alt", {d(0), d(-70), d(-100), d(-20), d(-100), d(0)}, "4V_b"});
        c.push_back({"5V_c/alt", {d(0), d(-50), d(0), d(-80), d(-100), d(20)}, "5V_c"});
        return c;
    }();
    return cases;
}

const std::vector<GenautoCase>& genauto_subcases() {
    static const std::vector<GenautoCase> cases = [] {
        auto d = [](long x) { return Rational(x, 100); };
        std::vector<GenautoCase> c;
        // Sink on E12^U x E45^V (the 1V caption values) and on E13^U x E45^V.
        c.push_back({"1V/E12", {d(0), d(10), d(0), d(25), d(0), d(-100)}, "1V"});
        c.push_back({"1V/E13", {d(0), d(-150), d(0), d(5), d(0), d(-200)}, "1V"});
        // Sink on E13^U x E46^V, across a separatrix connection from 1H_b.
        c.push_back({"1H_c", {d(0), d(5), d(0), d(-150), d(0), d(-75)}, "1H_b"});
        return c;
    }();
    return cases;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out{"autocatalator", "crossing1", "crossing2"};
    for (const auto& c : genauto_cases()) out.push_back("genauto-" + c.name);
    for (const auto& c : genauto_subcases()) out.push_back("genauto-" + c.name);
    return out;
}

Tds preset(const std::string& name) {
    if (name == "autocatalator") return autocatalator(q(1, 4));
    if (name == "crossing1") return crossing1(q(-25));
    if (name == "crossing2") return crossing2(q(-4));
    const std::string prefix = "genauto-";
    if (name.rfind(prefix, 0) == 0) {
        std::string key = name.substr(prefix.size());
        for (const auto& c : genauto_cases())
            if (c.name == key) return generalized_autocatalator(c.alphas);
        for (const auto& c : genauto_subcases())
            if (c.name == key) return generalized_autocatalator(c.alphas);
    }
    throw Error(Errc::UnknownPreset, name);
}

}  // namespace tropd
