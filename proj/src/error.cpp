#include "veerpoly/error.hpp"

namespace veerpoly {

std::string_view error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UnknownFormatVersion: return "UnknownFormatVersion";
        case ErrorCode::CountMismatch: return "CountMismatch";
        case ErrorCode::GluingNotInvolutive: return "GluingNotInvolutive";
        case ErrorCode::NotOriented: return "NotOriented";
        case ErrorCode::CoorientationMismatch: return "CoorientationMismatch";
        case ErrorCode::AngleSumViolation: return "AngleSumViolation";
        case ErrorCode::VeerSlotConflict: return "VeerSlotConflict";
        case ErrorCode::ModelTetrahedronViolation: return "ModelTetrahedronViolation";
        case ErrorCode::EmptyFanSide: return "EmptyFanSide";
        case ErrorCode::Unsatisfiable: return "Unsatisfiable";
        case ErrorCode::Ambiguous: return "Ambiguous";
        case ErrorCode::MalformedCode: return "MalformedCode";
        case ErrorCode::NonVeering: return "NonVeering";
        case ErrorCode::FacesNotAdjacent: return "FacesNotAdjacent";
        case ErrorCode::NotIncident: return "NotIncident";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::SwitchConditionViolated: return "SwitchConditionViolated";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::Inexact: return "Inexact";
        case ErrorCode::InternalMismatch: return "InternalMismatch";
        case ErrorCode::CycleBudgetExceeded: return "CycleBudgetExceeded";
        case ErrorCode::MinorBudgetExceeded: return "MinorBudgetExceeded";
        case ErrorCode::DimensionBudgetExceeded: return "DimensionBudgetExceeded";
        case ErrorCode::Io: return "IoError";
    }
    return "Unknown";
}

bool is_budget_error(ErrorCode c) {
    return c == ErrorCode::CycleBudgetExceeded || c == ErrorCode::MinorBudgetExceeded ||
           c == ErrorCode::DimensionBudgetExceeded;
}

static std::string compose(ErrorCode code, const std::string& location, const std::string& detail) {
    std::string s(error_name(code));
    if (!location.empty()) s += " at " + location;
    if (!detail.empty()) s += ": " + detail;
    return s;
}

Error::Error(ErrorCode code, std::string location, const std::string& detail)
    : std::runtime_error(compose(code, location, detail)), code_(code), location_(std::move(location)) {}

}  // namespace veerpoly
