#pragma once

#include <cmath>
#include <vector>

namespace dks {

/// Real number carried as mantissa * e^exponent so that Laguerre values far
/// outside the double range (x in the thousands, n in the hundreds) survive.
struct ScaledReal {
    double mantissa = 0.0;
    double exponent = 0.0;

    double value() const { return mantissa == 0.0 ? 0.0 : mantissa * std::exp(exponent); }
    double log_abs() const { return std::log(std::abs(mantissa)) + exponent; }
};

/// Associated Laguerre polynomial L_n^m(x) from the three-term recurrence in n,
/// rescaling the running pair whenever it leaves [2^-500, 2^500].
/// m = 0 gives the ordinary polynomial.
ScaledReal laguerre_assoc(int n, int m, double x);

/// Normalised Laguerre functions
///     f_j^k(x) = e^{-x/2} x^{k/2} sqrt(j!/(j+k)!) L_j^k(x),   j = 0..count-1.
/// These are the moduli of the displacement matrix elements <j+k|D(d)|j> with
/// x = |d|^2, so |f_j^k| <= 1. Values below the double range come back as 0.
std::vector<double> laguerre_function_sequence(int k, double x, int count);

} // namespace dks
