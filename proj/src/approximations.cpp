#include "dks/approximations.hpp"

#include "dks/error.hpp"

#include <cmath>
#include <string>

namespace dks {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorCode::InvalidArgument, std::string(name) + " must be finite and > 0 (got " + std::to_string(v) + ")");
}

void require_kz(double kz) {
    if (!(kz >= 0.0) || !std::isfinite(kz))
        fail(ErrorCode::InvalidArgument, "kz must be finite and >= 0 (got " + std::to_string(kz) + ")");
}

} // namespace

const char* to_string(Regime regime) noexcept {
    return regime == Regime::ShortLength ? "short_length" : "near_optimum";
}

namespace approx_constants {

double kz_app_coefficient() { return std::cbrt(std::sqrt(3.0) / 2.0); }
double kz_opt_coefficient() { return std::pow(3.0 / 256.0, 1.0 / 6.0); }
double f_min_coefficient() { return 0.25 * std::cbrt(4.5); } // (3/sqrt2)^{2/3} = (9/2)^{1/3}

} // namespace approx_constants

double f1_short(double alpha_sq, double kz) {
    require_positive(alpha_sq, "alpha_sq");
    require_kz(kz);
    const double x = alpha_sq * kz;
    return std::exp(-4.0 * x + x * x);
}

double f2_near_opt(double alpha_sq, double kz) {
    require_positive(alpha_sq, "alpha_sq");
    require_kz(kz);
    if (kz == 0.0)
        fail(ErrorCode::DivisionByZero, "f2_near_opt is singular at kz = 0");
    const double x = alpha_sq * kz;
    return (8.0 / 3.0) * x * x * x * x / (alpha_sq * alpha_sq) + 1.0 / (16.0 * x * x);
}

double kz_app(double alpha_sq) {
    require_positive(alpha_sq, "alpha_sq");
    return approx_constants::kz_app_coefficient() / alpha_sq;
}

double kz_opt_approx(double alpha) {
    require_positive(alpha, "|alpha|");
    return approx_constants::kz_opt_coefficient() * std::pow(alpha, -4.0 / 3.0);
}

double f_min_approx(double alpha) {
    require_positive(alpha, "|alpha|");
    return approx_constants::f_min_coefficient() * std::pow(alpha, -4.0 / 3.0);
}

ApproxCurve approx_curve(Regime regime, double alpha) {
    const double cross = kz_app(alpha * alpha);
    if (regime == Regime::ShortLength)
        return {regime, {0.0, cross}};
    return {regime, {cross, 2.0 * kz_opt_approx(alpha)}};
}

PiecewiseValue f_piecewise(double alpha, double kz) {
    require_positive(alpha, "|alpha|");
    require_kz(kz);
    const double upper = 2.0 * kz_opt_approx(alpha);
    if (kz > upper * (1.0 + 1e-12))
        fail(ErrorCode::OutOfValidityRange,
             "kz = " + std::to_string(kz) + " exceeds 2 (Kz)_opt = " + std::to_string(upper));
    const double a2 = alpha * alpha;
    PiecewiseValue out;
    if (kz < kz_app(a2)) {
        out.fano = f1_short(a2, kz);
        out.curve = approx_curve(Regime::ShortLength, alpha);
    } else {
        out.fano = f2_near_opt(a2, kz);
        out.curve = approx_curve(Regime::NearOptimum, alpha);
    }
    return out;
}

} // namespace dks
