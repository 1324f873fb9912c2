#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace veerpoly {

enum class ErrorCode {
    SyntaxError,
    UnknownFormatVersion,
    CountMismatch,
    GluingNotInvolutive,
    NotOriented,
    CoorientationMismatch,
    AngleSumViolation,
    VeerSlotConflict,
    ModelTetrahedronViolation,
    EmptyFanSide,
    Unsatisfiable,
    Ambiguous,
    MalformedCode,
    NonVeering,
    FacesNotAdjacent,
    NotIncident,
    NotClosed,
    SwitchConditionViolated,
    DivisionByZero,
    Inexact,
    InternalMismatch,
    CycleBudgetExceeded,
    MinorBudgetExceeded,
    DimensionBudgetExceeded,
    Io,
};

std::string_view error_name(ErrorCode c);

// True for the codes that map to CLI exit status 3.
bool is_budget_error(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string location, const std::string& detail = {});

    ErrorCode code() const { return code_; }
    const std::string& location() const { return location_; }

private:
    ErrorCode code_;
    std::string location_;
};

}  // namespace veerpoly
