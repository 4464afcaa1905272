#pragma once

// Data-parallel inner loops with a scalar reference and vector variants.
// The variant is picked once at startup from CPU features; DKS_SIMD=scalar|avx2
// in the environment forces a choice (unavailable choices fall back to scalar).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dks::simd {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend) noexcept;

/// Whether `backend` was compiled in and the CPU supports it.
bool available(Backend backend) noexcept;

/// Backend used when callers do not ask for one.
Backend active_backend() noexcept;

/// Real-arithmetic expansion of F(beta) = 1 + scale * N / D with beta = x + iy:
///   D = 1 + 2(x g1r + y g1i) + x^2 + y^2
///   N = 2(x ur - y ui) + 2((x^2 - y^2) wr - 2xy wi) + s (x^2 + y^2)
struct FanoCoefficients {
    double scale = 0.0;
    double g1_re = 1.0, g1_im = 0.0;
    double u_re = 0.0, u_im = 0.0;
    double w_re = 0.0, w_im = 0.0;
    double s = 0.0;
};

/// Writes F for every (beta_re[i], beta_im[i]); +inf where D <= 0.
void fano_batch(const FanoCoefficients& coeffs, std::span<const double> beta_re, std::span<const double> beta_im,
                std::span<double> out, Backend backend = active_backend());

/// Per-state tables for the Wigner double sum, laid out by diagonal offset k.
/// For each k the entries n = 0..dim-1-k start at offset[k].
struct WignerTables {
    int dim = 0;
    std::vector<std::size_t> offset;
    std::vector<double> coef_re;   ///< w_k (-1)^n Re(conj(c_{n+k}) c_n), w_0 = 1, w_k = 2
    std::vector<double> coef_im;   ///< same, imaginary part
    std::vector<double> diag;      ///< 2n + 1 + k
    std::vector<double> lower;     ///< sqrt(n (n + k))
    std::vector<double> inv_norm;  ///< 1 / sqrt((n + 1)(n + 1 + k))
    std::vector<double> log_start; ///< -lgamma(k + 1) / 2
};

/// Builds the tables from amplitudes c_0..c_{dim-1} given as real/imag parts.
WignerTables make_wigner_tables(std::span<const double> c_re, std::span<const double> c_im);

/// W(alpha') at the points alpha' = re[i] + i im[i], including the 2/pi factor.
void wigner_points(const WignerTables& tables, std::span<const double> re, std::span<const double> im,
                   std::span<double> out, Backend backend = active_backend());

namespace detail {

void fano_batch_scalar(const FanoCoefficients&, const double*, const double*, double*, std::size_t);
void wigner_points_scalar(const WignerTables&, const double*, const double*, double*, std::size_t);

#if defined(DKS_HAVE_AVX2_KERNELS)
void fano_batch_avx2(const FanoCoefficients&, const double*, const double*, double*, std::size_t);
void wigner_points_avx2(const WignerTables&, const double*, const double*, double*, std::size_t);
#endif

// Shared constants for the scaled Laguerre recurrence.
inline constexpr double kRescaleAbove = 0x1p500;
inline constexpr double kRescaleBy = 0x1p-500;
inline constexpr double kLogRescale = 346.57359027997265; // 500 ln 2
inline constexpr double kTinyX = 1e-300;

} // namespace detail

} // namespace dks::simd
