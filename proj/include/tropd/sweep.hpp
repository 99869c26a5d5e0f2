#pragma once

#include "tropd/analysis.hpp"
#include "tropd/io.hpp"

#include <string>
#include <vector>

namespace tropd {

struct SweepSample {
    Rational alpha;
    int signature = -1;  // index into SweepResult::signatures
    Overall verdict = Overall::StructurallyStable;
    bool degenerate = false;  // a violation at the sample itself: it sits on a boundary
    std::string error;        // analysis failure at this sample (also degenerate)
};

// Consecutive grid samples with one signature.
struct Chamber {
    Rational lo, hi;
    int signature = -1;
};

// A signature change located to within the tolerance, or a degenerate sample (lo == hi).
struct Bracket {
    Rational lo, hi;
    int from = -1, to = -1;  // signatures on either side
    Overall verdict_lo = Overall::StructurallyStable, verdict_hi = Overall::StructurallyStable;
    bool point = false;
};

struct SweepOptions {
    Rational tolerance = ratio(1, 1000000);
    unsigned threads = 0;  // 0: hardware concurrency
    AnalysisLimits limits;
};

struct SweepResult {
    int param = 0;
    std::vector<Signature> signatures;  // distinct, in order of first appearance on the grid
    std::vector<SweepSample> samples;
    std::vector<Chamber> chambers;
    std::vector<Bracket> brackets;  // sorted by lo
};

// Samples alpha_param = lo, lo + step, ... <= hi, merges equal signatures into chambers and bisects every
// change between neighbouring samples. `step` must be positive.
SweepResult sweep(const Tds& tpl, int param, const Rational& lo, const Rational& hi, const Rational& step,
                  const SweepOptions& options = {});

Json sweep_json(const SweepResult& r);

}  // namespace tropd
