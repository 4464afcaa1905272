#include "dks/laguerre.hpp"

#include "dks/error.hpp"

#include <cmath>
#include <string>

namespace dks {

namespace {

constexpr double kRescaleAbove = 0x1p500;
constexpr double kRescaleBy = 0x1p-500;
const double kLogRescale = 500.0 * std::log(2.0);

} // namespace

ScaledReal laguerre_assoc(int n, int m, double x) {
    if (n < 0 || m < 0 || !(x >= 0.0) || !std::isfinite(x))
        fail(ErrorCode::InvalidArgument,
             "laguerre_assoc requires n >= 0, m >= 0, finite x >= 0 (n=" + std::to_string(n) +
                 ", m=" + std::to_string(m) + ")");
    if (n == 0)
        return {1.0, 0.0};

    double prev = 1.0;
    double cur = 1.0 + m - x;
    double exponent = 0.0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + m - x) * cur - (k + m) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur *= kRescaleBy;
            prev *= kRescaleBy;
            exponent += kLogRescale;
        }
    }
    return {cur, exponent};
}

std::vector<double> laguerre_function_sequence(int k, double x, int count) {
    if (k < 0 || count < 0 || !(x >= 0.0) || !std::isfinite(x))
        fail(ErrorCode::InvalidArgument, "laguerre_function_sequence requires k >= 0, count >= 0, finite x >= 0");
    std::vector<double> out(static_cast<std::size_t>(count), 0.0);
    if (count == 0)
        return out;

    if (x == 0.0) {
        // f_j^0(0) = L_j(0) = 1; every k > 0 vanishes.
        if (k == 0)
            std::fill(out.begin(), out.end(), 1.0);
        return out;
    }

    // Start value e^{-x/2} x^{k/2} / sqrt(k!) kept as a pure exponent.
    double exponent = -0.5 * x + 0.5 * k * std::log(x) - 0.5 * std::lgamma(k + 1.0);
    double prev = 0.0;
    double cur = 1.0;
    for (int j = 0; j < count; ++j) {
        out[static_cast<std::size_t>(j)] = cur * std::exp(exponent);
        const double next = ((2.0 * j + 1.0 + k - x) * cur - std::sqrt(double(j) * double(j + k)) * prev) /
                            std::sqrt(double(j + 1) * double(j + 1 + k));
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescaleAbove) {
            cur *= kRescaleBy;
            prev *= kRescaleBy;
            exponent += kLogRescale;
        }
    }
    return out;
}

} // namespace dks
