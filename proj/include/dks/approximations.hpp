#pragma once

#include <utility>

namespace dks {

enum class Regime { ShortLength, NearOptimum };

const char* to_string(Regime regime) noexcept;

/// Which closed-form estimate applies, and over which Kz interval.
struct ApproxCurve {
    Regime regime = Regime::ShortLength;
    std::pair<double, double> valid_kz_range{0.0, 0.0};
};

/// Short-length estimate exp(-4|a|^2 Kz + |a|^4 Kz^2).
double f1_short(double alpha_sq, double kz);

/// Near-optimum estimate (8/3)|a|^4 Kz^4 + 1/(16 |a|^4 Kz^2).
/// Throws DivisionByZero at kz = 0.
double f2_near_opt(double alpha_sq, double kz);

/// Crossover length (sqrt(3)/2)^{1/3} / |a|^2 between the two estimates.
double kz_app(double alpha_sq);

/// Minimiser of f2_near_opt: (3/256)^{1/6} |a|^{-4/3}.
double kz_opt_approx(double alpha);

/// Minimum of f2_near_opt: (1/4)(3/sqrt 2)^{2/3} |a|^{-4/3}.
double f_min_approx(double alpha);

namespace approx_constants {
double kz_app_coefficient();  ///< (sqrt(3)/2)^{1/3}
double kz_opt_coefficient();  ///< (3/256)^{1/6}
double f_min_coefficient();   ///< (1/4)(3/sqrt 2)^{2/3}
} // namespace approx_constants

ApproxCurve approx_curve(Regime regime, double alpha);

struct PiecewiseValue {
    double fano = 1.0;
    ApproxCurve curve;
};

/// f1_short below kz_app, f2_near_opt from kz_app up to 2 kz_opt_approx.
/// Throws OutOfValidityRange outside [0, 2 kz_opt_approx].
PiecewiseValue f_piecewise(double alpha, double kz);

} // namespace dks
