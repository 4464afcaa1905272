// Built with -mavx2 -ffp-contract=off; only reached after a runtime CPU check.
// Operation order mirrors kernels_scalar.cpp so both paths round identically.

#include "dks/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>

namespace dks::simd::detail {

namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

template <class F>
inline __m256d map_lanes(__m256d v, F&& f) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    for (double& l : lanes)
        l = f(l);
    return _mm256_load_pd(lanes);
}

} // namespace

void fano_batch_avx2(const FanoCoefficients& c, const double* re, const double* im, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    const __m256d g1r = _mm256_set1_pd(c.g1_re), g1i = _mm256_set1_pd(c.g1_im);
    const __m256d ur = _mm256_set1_pd(c.u_re), ui = _mm256_set1_pd(c.u_im);
    const __m256d wr = _mm256_set1_pd(c.w_re), wi = _mm256_set1_pd(c.w_im);
    const __m256d s = _mm256_set1_pd(c.s), scale = _mm256_set1_pd(c.scale);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(re + i);
        const __m256d y = _mm256_loadu_pd(im + i);
        const __m256d xx = _mm256_mul_pd(x, x), yy = _mm256_mul_pd(y, y), xy = _mm256_mul_pd(x, y);
        const __m256d r2 = _mm256_add_pd(xx, yy);
        const __m256d lin_d = _mm256_add_pd(_mm256_mul_pd(x, g1r), _mm256_mul_pd(y, g1i));
        const __m256d denom = _mm256_add_pd(_mm256_add_pd(one, _mm256_mul_pd(two, lin_d)), r2);
        const __m256d lin_n = _mm256_sub_pd(_mm256_mul_pd(x, ur), _mm256_mul_pd(y, ui));
        const __m256d quad =
            _mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(xx, yy), wr), _mm256_mul_pd(_mm256_mul_pd(two, xy), wi));
        const __m256d numer = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(two, lin_n), _mm256_mul_pd(two, quad)),
                                            _mm256_mul_pd(s, r2));
        const __m256d f = _mm256_add_pd(one, _mm256_div_pd(_mm256_mul_pd(scale, numer), denom));
        const __m256d ok = _mm256_cmp_pd(denom, zero, _CMP_GT_OQ);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(inf, f, ok));
    }
    if (i < n)
        fano_batch_scalar(c, re + i, im + i, out + i, n - i);
}

void wigner_points_avx2(const WignerTables& t, const double* re, const double* im, double* out, std::size_t count) {
    const int dim = t.dim;
    const __m256d big = _mm256_set1_pd(kRescaleAbove);
    const __m256d small = _mm256_set1_pd(kRescaleBy);
    const __m256d log_step = _mm256_set1_pd(kLogRescale);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d minus_half = _mm256_set1_pd(-0.5);

    std::size_t p = 0;
    for (; p + 4 <= count; p += 4) {
        const __m256d vre = _mm256_loadu_pd(re + p);
        const __m256d vim = _mm256_loadu_pd(im + p);
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(vre, vre), _mm256_mul_pd(vim, vim));
        const __m256d x4 = _mm256_mul_pd(_mm256_set1_pd(4.0), r2);
        const __m256d tiny = _mm256_set1_pd(kTinyX);
        const __m256d x = _mm256_blendv_pd(tiny, x4, _mm256_cmp_pd(x4, tiny, _CMP_GT_OQ));
        const __m256d half_log_x = map_lanes(x, [](double v) { return 0.5 * std::log(v); });
        const __m256d r = _mm256_sqrt_pd(r2);
        const __m256d has_r = _mm256_cmp_pd(r, zero, _CMP_GT_OQ);
        const __m256d c1 = _mm256_blendv_pd(one, _mm256_div_pd(vre, r), has_r);
        const __m256d s1 = _mm256_blendv_pd(zero, _mm256_div_pd(vim, r), has_r);
        const __m256d x_half = _mm256_mul_pd(minus_half, x);

        __m256d ck = one, sk = zero;
        __m256d total = zero;
        for (int k = 0; k < dim; ++k) {
            const std::size_t base = t.offset[static_cast<std::size_t>(k)];
            const int len = dim - k;
            __m256d exponent =
                _mm256_add_pd(_mm256_add_pd(x_half, _mm256_mul_pd(_mm256_set1_pd(double(k)), half_log_x)),
                              _mm256_set1_pd(t.log_start[static_cast<std::size_t>(k)]));
            __m256d prev = zero, cur = one;
            __m256d acc_re = zero, acc_im = zero;
            const double* cre = t.coef_re.data() + base;
            const double* cim = t.coef_im.data() + base;
            const double* dg = t.diag.data() + base;
            const double* lw = t.lower.data() + base;
            const double* nm = t.inv_norm.data() + base;
            for (int n = 0; n < len; ++n) {
                acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(_mm256_set1_pd(cre[n]), cur));
                acc_im = _mm256_add_pd(acc_im, _mm256_mul_pd(_mm256_set1_pd(cim[n]), cur));
                const __m256d next =
                    _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_set1_pd(dg[n]), x), cur),
                                                _mm256_mul_pd(_mm256_set1_pd(lw[n]), prev)),
                                  _mm256_set1_pd(nm[n]));
                prev = cur;
                cur = next;
                const __m256d over = _mm256_cmp_pd(abs_pd(cur), big, _CMP_GT_OQ);
                if (_mm256_movemask_pd(over) != 0) {
                    cur = _mm256_blendv_pd(cur, _mm256_mul_pd(cur, small), over);
                    prev = _mm256_blendv_pd(prev, _mm256_mul_pd(prev, small), over);
                    acc_re = _mm256_blendv_pd(acc_re, _mm256_mul_pd(acc_re, small), over);
                    acc_im = _mm256_blendv_pd(acc_im, _mm256_mul_pd(acc_im, small), over);
                    exponent = _mm256_blendv_pd(exponent, _mm256_add_pd(exponent, log_step), over);
                }
            }
            const __m256d scale = map_lanes(exponent, [](double v) { return std::exp(v); });
            total = _mm256_add_pd(
                total, _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(ck, acc_re), _mm256_mul_pd(sk, acc_im)), scale));
            const __m256d cn = _mm256_sub_pd(_mm256_mul_pd(ck, c1), _mm256_mul_pd(sk, s1));
            sk = _mm256_add_pd(_mm256_mul_pd(sk, c1), _mm256_mul_pd(ck, s1));
            ck = cn;
        }
        _mm256_storeu_pd(out + p, _mm256_mul_pd(total, _mm256_set1_pd(2.0 / std::numbers::pi)));
    }
    if (p < count)
        wigner_points_scalar(t, re + p, im + p, out + p, count - p);
}

} // namespace dks::simd::detail
