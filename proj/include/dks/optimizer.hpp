#pragma once

#include "dks/analytic.hpp"
#include "dks/simd/kernels.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace dks {

/// Best displacement found for one scenario.
struct Optimum {
    cplx beta_opt{};
    double kz = 0.0;
    double fano_min = 1.0;
    double suppression_db = 0.0;
    double mean_photon = 0.0;
    double beta_magnitude = 0.0;  ///< |beta| = |alpha_S / alpha| for tau = 1
};

struct OptimizerConfig {
    int grid_angles = 64;
    int grid_magnitudes = 32;
    int simplex_starts = 3;          ///< best distinct grid cells refined by the simplex
    double simplex_ftol = 1e-12;     ///< spread of F over the simplex
    int simplex_max_iterations = 10000;
    double tie_tolerance = 1e-12;    ///< F values this close prefer the smaller |beta|
    double length_lower = 0.2;       ///< golden-section bracket in units of kz_opt_approx
    double length_upper = 2.5;
    double length_rel_tol = 1e-6;
    int length_max_iterations = 200;
    int parallelism = 1;             ///< threads used by sweep_length
    bool warm_start = true;          ///< sequential sweeps only
    simd::Backend backend = simd::active_backend();
};

/// Minimises the exact Fano factor over complex beta at fixed (alpha, Kz):
/// polar grid around a seed perpendicular to <a>, then simplex refinement.
/// kz = 0 returns F = 1 at beta = 0. Throws NonConvergence past the
/// iteration cap.
Optimum optimize_beta(const KerrScenario& scenario, const OptimizerConfig& cfg = {},
                      std::optional<cplx> warm_start = std::nullopt);

/// Minimises optimize_beta(...).fano_min over Kz by golden section inside
/// [length_lower, length_upper] * kz_opt_approx(|alpha|). Requires |alpha| >= 2.
Optimum optimize_length(cplx alpha, const OptimizerConfig& cfg = {});

/// optimize_beta at every kz (sorted, non-negative). Sequential runs start
/// each simplex also from the previous optimum; parallel runs do not.
std::vector<Optimum> sweep_length(cplx alpha, const std::vector<double>& kz_values, const OptimizerConfig& cfg = {});

/// Minimum generalised eigenvalue of the 3x3 pencil (N, D) in homogeneous
/// coordinates (v0, Re beta, Im beta). Equals min_beta F when the eigenvector
/// has v0 != 0. kz = 0 gives 1; a numerically singular D form throws
/// SingularDenominatorForm.
double rayleigh_lower_bound(const KerrScenario& scenario, double tau = 1.0);

struct RayleighSolution {
    double bound = 1.0;
    std::array<double, 3> eigenvector{1.0, 0.0, 0.0};
    std::optional<cplx> beta;  ///< (v1 + i v2) / v0 when v0 is not negligible
};
RayleighSolution rayleigh_solution(const KerrScenario& scenario, double tau = 1.0);

/// Plain Nelder-Mead in two variables.
struct SimplexResult {
    std::array<double, 2> x{};
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};
SimplexResult nelder_mead_2d(const std::function<double(double, double)>& f, std::array<double, 2> start,
                             std::array<double, 2> step, double ftol, int max_iterations);

/// Golden-section minimisation on [lo, hi] until hi - lo < rel_tol * |mid|.
struct LineMinimum {
    double x = 0.0;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};
LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                           int max_iterations);

} // namespace dks
