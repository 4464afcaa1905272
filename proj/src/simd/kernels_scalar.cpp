#include "dks/simd/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace dks::simd::detail {

void fano_batch_scalar(const FanoCoefficients& c, const double* re, const double* im, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double x = re[i], y = im[i];
        const double xx = x * x, yy = y * y, xy = x * y;
        const double r2 = xx + yy;
        const double denom = 1.0 + 2.0 * (x * c.g1_re + y * c.g1_im) + r2;
        const double numer = 2.0 * (x * c.u_re - y * c.u_im) + 2.0 * ((xx - yy) * c.w_re - 2.0 * xy * c.w_im) + c.s * r2;
        out[i] = denom > 0.0 ? 1.0 + c.scale * numer / denom : std::numeric_limits<double>::infinity();
    }
}

void wigner_points_scalar(const WignerTables& t, const double* re, const double* im, double* out, std::size_t count) {
    const int dim = t.dim;
    for (std::size_t p = 0; p < count; ++p) {
        const double r2 = re[p] * re[p] + im[p] * im[p];
        const double x = 4.0 * r2 > kTinyX ? 4.0 * r2 : kTinyX;
        const double half_log_x = 0.5 * std::log(x);
        const double r = std::sqrt(r2);
        const double c1 = r > 0.0 ? re[p] / r : 1.0;
        const double s1 = r > 0.0 ? im[p] / r : 0.0;

        double ck = 1.0, sk = 0.0;  // cos(k theta), sin(k theta)
        double total = 0.0;
        for (int k = 0; k < dim; ++k) {
            const std::size_t base = t.offset[static_cast<std::size_t>(k)];
            const int len = dim - k;
            double exponent = -0.5 * x + k * half_log_x + t.log_start[static_cast<std::size_t>(k)];
            double prev = 0.0, cur = 1.0;
            double acc_re = 0.0, acc_im = 0.0;
            for (int n = 0; n < len; ++n) {
                const std::size_t i = base + static_cast<std::size_t>(n);
                acc_re += t.coef_re[i] * cur;
                acc_im += t.coef_im[i] * cur;
                const double next = ((t.diag[i] - x) * cur - t.lower[i] * prev) * t.inv_norm[i];
                prev = cur;
                cur = next;
                if (std::abs(cur) > kRescaleAbove) {
                    cur *= kRescaleBy;
                    prev *= kRescaleBy;
                    acc_re *= kRescaleBy;
                    acc_im *= kRescaleBy;
                    exponent += kLogRescale;
                }
            }
            total += (ck * acc_re - sk * acc_im) * std::exp(exponent);
            const double cn = ck * c1 - sk * s1;
            sk = sk * c1 + ck * s1;
            ck = cn;
        }
        out[p] = total * (2.0 / std::numbers::pi);
    }
}

} // namespace dks::simd::detail
