#pragma once

#include "tropd/presets.hpp"

#include <string>
#include <utility>
#include <vector>

namespace fixtures {

inline tropd::Rational r(long a, long b = 1) { return tropd::Rational(a, b); }

// The example systems at their documented parameter values plus every genauto case.
inline std::vector<std::pair<std::string, tropd::Tds>> named_presets() {
    using namespace tropd;
    std::vector<std::pair<std::string, Tds>> out{
        {"autocatalator 1/4", autocatalator(r(1, 4))},   {"autocatalator -1/4", autocatalator(r(-1, 4))},
        {"autocatalator 3/4", autocatalator(r(3, 4))},   {"crossing1 -25", crossing1(r(-25))},
        {"crossing1 -15", crossing1(r(-15))},           {"crossing2 -4", crossing2(r(-4))},
    };
    for (const auto& c : genauto_cases()) out.emplace_back("genauto " + c.name, generalized_autocatalator(c.alphas));
    return out;
}

}  // namespace fixtures
