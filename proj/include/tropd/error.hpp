#pragma once

#include <stdexcept>
#include <string>

namespace tropd {

enum class Errc {
    DuplicateDegreeInAxis,
    DuplicateIndex,
    EmptyAxis,
    BadDegreeRange,
    AxisFlowMismatch,
    AllNegInf,
    InvalidEps,
    NotAnEdge,
    NotFilippov,
    TangentialEdge,
    NotCrossing,
    StuckAtDegeneracy,
    NotASeparatrixCarrier,
    NoCommonSection,
    CycleNotRealized,
    NotACrossingCycle,
    UnknownPair,
    BadRational,
    BadSchema,
    UnknownPreset,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code), detail_(detail) {}

    Errc code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

}  // namespace tropd
