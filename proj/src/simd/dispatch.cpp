#include "dks/simd/kernels.hpp"

#include "dks/error.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dks::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(DKS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() noexcept {
    const char* env = std::getenv("DKS_SIMD");
    const std::string choice = env ? env : "auto";
    if (choice == "scalar")
        return Backend::Scalar;
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t out) {
    if (a != b || a != out)
        fail(ErrorCode::InvalidArgument, "kernel input and output spans differ in length");
}

} // namespace

std::string_view to_string(Backend backend) noexcept {
    switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    }
    return "unknown";
}

bool available(Backend backend) noexcept {
    return backend == Backend::Scalar || (backend == Backend::Avx2 && cpu_has_avx2());
}

Backend active_backend() noexcept {
    static const Backend chosen = detect();
    return chosen;
}

void fano_batch(const FanoCoefficients& coeffs, std::span<const double> beta_re, std::span<const double> beta_im,
                std::span<double> out, Backend backend) {
    check_sizes(beta_re.size(), beta_im.size(), out.size());
#if defined(DKS_HAVE_AVX2_KERNELS)
    if (backend == Backend::Avx2 && available(Backend::Avx2)) {
        detail::fano_batch_avx2(coeffs, beta_re.data(), beta_im.data(), out.data(), out.size());
        return;
    }
#endif
    (void)backend;
    detail::fano_batch_scalar(coeffs, beta_re.data(), beta_im.data(), out.data(), out.size());
}

void wigner_points(const WignerTables& tables, std::span<const double> re, std::span<const double> im,
                   std::span<double> out, Backend backend) {
    check_sizes(re.size(), im.size(), out.size());
#if defined(DKS_HAVE_AVX2_KERNELS)
    if (backend == Backend::Avx2 && available(Backend::Avx2)) {
        detail::wigner_points_avx2(tables, re.data(), im.data(), out.data(), out.size());
        return;
    }
#endif
    (void)backend;
    detail::wigner_points_scalar(tables, re.data(), im.data(), out.data(), out.size());
}

WignerTables make_wigner_tables(std::span<const double> c_re, std::span<const double> c_im) {
    if (c_re.size() != c_im.size() || c_re.empty())
        fail(ErrorCode::InvalidArgument, "amplitude spans must be non-empty and of equal length");
    WignerTables t;
    t.dim = static_cast<int>(c_re.size());
    const auto dim = static_cast<std::size_t>(t.dim);
    const std::size_t total = dim * (dim + 1) / 2;
    t.offset.resize(dim + 1);
    t.coef_re.resize(total);
    t.coef_im.resize(total);
    t.diag.resize(total);
    t.lower.resize(total);
    t.inv_norm.resize(total);
    t.log_start.resize(dim);

    std::size_t pos = 0;
    for (std::size_t k = 0; k < dim; ++k) {
        t.offset[k] = pos;
        t.log_start[k] = -0.5 * std::lgamma(static_cast<double>(k) + 1.0);
        const double weight = k == 0 ? 1.0 : 2.0;
        for (std::size_t n = 0; n + k < dim; ++n, ++pos) {
            // conj(c_{n+k}) c_n
            const double ar = c_re[n + k], ai = -c_im[n + k];
            const double br = c_re[n], bi = c_im[n];
            const double sign = (n % 2 == 0) ? weight : -weight;
            t.coef_re[pos] = sign * (ar * br - ai * bi);
            t.coef_im[pos] = sign * (ar * bi + ai * br);
            const double dn = static_cast<double>(n), dk = static_cast<double>(k);
            t.diag[pos] = 2.0 * dn + 1.0 + dk;
            t.lower[pos] = std::sqrt(dn * (dn + dk));
            t.inv_norm[pos] = 1.0 / std::sqrt((dn + 1.0) * (dn + 1.0 + dk));
        }
    }
    t.offset[dim] = pos;
    return t;
}

} // namespace dks::simd
