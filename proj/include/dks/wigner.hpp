#pragma once

#include "dks/fock.hpp"
#include "dks/simd/kernels.hpp"

#include <utility>
#include <vector>

namespace dks {

inline constexpr int kMaxWignerTruncation = 400;

enum class WindowMode {
    Auto,      ///< coarse pre-scan, then a square around the significant support
    Mean,      ///< square of half_width centred on <a>
    Explicit,  ///< x_range / y_range as given
};

const char* to_string(WindowMode mode) noexcept;

struct GridSpec {
    WindowMode window = WindowMode::Auto;
    double half_width = 6.0;               ///< Mean window
    std::pair<double, double> x_range{-6.0, 6.0};  ///< Explicit window, Re alpha'
    std::pair<double, double> y_range{-6.0, 6.0};  ///< Explicit window, Im alpha'
    int resolution = 201;                  ///< points per axis
    int parallelism = 1;
    simd::Backend backend = simd::active_backend();
};

/// Samples W on a uniform grid; values[j * resolution + i] is taken at
/// Re alpha' = x(i), Im alpha' = y(j).
struct WignerGrid {
    std::pair<double, double> x_range{0.0, 0.0};
    std::pair<double, double> y_range{0.0, 0.0};
    int resolution = 0;
    std::vector<double> values;

    double x(int i) const;
    double y(int j) const;
    double dx() const;
    double dy() const;
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * resolution + i]; }
};

/// W(alpha') = (2/pi) sum_k w_k Re(e^{ik theta} sum_n (-1)^n c*_{n+k} c_n f_n^k(4|alpha'|^2)),
/// with the Gaussian prefactor carried inside the scaled Laguerre functions.
/// Throws StateTooLarge above n_trunc = 400 and NumericalOverflow when a value
/// is not finite.
WignerGrid wigner(const FockState& state, const GridSpec& spec = {});

/// Single-point evaluation.
double wigner_at(const FockState& state, cplx point, simd::Backend backend = simd::active_backend());

/// Window that `spec` resolves to for this state.
std::pair<std::pair<double, double>, std::pair<double, double>> wigner_window(const FockState& state,
                                                                              const GridSpec& spec);

/// Riemann sum of W dx dy.
double grid_integral(const WignerGrid& grid);

/// Integral over Im alpha' for each column, i.e. the Re alpha' quadrature marginal.
std::vector<double> marginal_over_imag(const WignerGrid& grid);

double grid_max_abs(const WignerGrid& grid);

} // namespace dks
