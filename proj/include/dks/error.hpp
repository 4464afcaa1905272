#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dks {

enum class ErrorCode {
    InvalidArgument,
    AmplitudeTooLarge,
    TruncationUnachievable,
    OrderTooHigh,
    ZeroMeanPhoton,
    DegenerateDenominator,
    NonConvergence,
    SingularDenominatorForm,
    DivisionByZero,
    OutOfValidityRange,
    TargetBelowFloor,
    NoRealRoot,
    StateTooLarge,
    NumericalOverflow,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

} // namespace dks
