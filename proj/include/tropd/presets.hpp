#pragma once

#include "tropd/core.hpp"

#include <string>
#include <vector>

namespace tropd {

// x' = mu - x - x y^2 style model with a single parameter: F1 = alpha - 1 - u, F2 = -1, F3 = -1 + 2v,
// F4 = 0, F5 = u - v, F6 = u + v.
Tds autocatalator(const Rational& alpha);

// Same flows and degrees with all six coefficients free.
Tds generalized_autocatalator(const std::vector<Rational>& alphas);

Tds crossing1(const Rational& alpha);
Tds crossing2(const Rational& alpha);

struct GenautoCase {
    std::string name;               // e.g. "5V_c"
    std::vector<Rational> alphas;   // alpha_1..alpha_6
    std::string alternate_of;       // non-empty for an alternate reading of an ambiguous caption
};

// The fifteen captioned cases plus alternate readings (named "<case>/alt").
const std::vector<GenautoCase>& genauto_cases();

// General-position sub-cases the text names but the captions do not give values for; `alternate_of`
// is the case each one is equivalent to.
const std::vector<GenautoCase>& genauto_subcases();

std::vector<std::string> preset_names();

// "autocatalator", "crossing1", "crossing2", "genauto-<case>" (and "genauto-<case>/alt").
Tds preset(const std::string& name);

}  // namespace tropd
