#include "dks/error.hpp"

namespace dks {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorCode::TruncationUnachievable: return "TruncationUnachievable";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::ZeroMeanPhoton: return "ZeroMeanPhoton";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularDenominatorForm: return "SingularDenominatorForm";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfValidityRange: return "OutOfValidityRange";
    case ErrorCode::TargetBelowFloor: return "TargetBelowFloor";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::StateTooLarge: return "StateTooLarge";
    case ErrorCode::NumericalOverflow: return "NumericalOverflow";
    }
    return "Unknown";
}

} // namespace dks
