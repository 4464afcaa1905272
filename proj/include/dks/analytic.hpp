#pragma once

#include "dks/fock.hpp"

#include <complex>

namespace dks {

/// Dimensionless problem instance: input amplitude and accumulated Kerr phase
/// parameter K*z.
struct KerrScenario {
    cplx alpha{};
    double kz = 0.0;

    double alpha_sq() const { return std::norm(alpha); }
    /// Throws InvalidArgument unless kz >= 0 and both fields are finite.
    void validate() const;
};

/// Beam-splitter mixing expressed in the normalised shift coordinate beta.
struct DisplacementSetting {
    double tau = 1.0;  ///< amplitude transmission, (0, 1]
    cplx beta{};

    void validate() const;

    /// beta = rho*alpha0 * e^{-2i|a|^2 Kz} / (tau * alpha * e^{iKz}); requires
    /// tau^2 + |rho|^2 <= 1 and alpha != 0.
    static DisplacementSetting from_raw(const KerrScenario& scenario, cplx rho, cplx alpha0, double tau);

    /// Inverse of the normalisation: the added field alpha_S = rho*alpha0.
    cplx shift_amplitude(const KerrScenario& scenario) const;
};

struct GFactors {
    cplx g1{1.0, 0.0};
    cplx g2{1.0, 0.0};
};

/// g1 = e^{-2i|a|^2 Kz} e^{|a|^2 (e^{2iKz} - 1)}, g2 likewise with 2Kz -> 4Kz.
/// The exponents are assembled from sin^2 and (sin t - t) so that small Kz
/// keeps full relative accuracy.
GFactors g_factors(const KerrScenario& scenario);

/// Closed forms of the Kerr-state field averages.
struct ClosedFormMoments {
    cplx a;         ///< <a>
    cplx a2;        ///< <a^2>
    cplx ad_a2;     ///< <a^dagger a^2>
    double n_mean;  ///< <a^dagger a> = |alpha|^2
};

ClosedFormMoments closed_form_moments(const KerrScenario& scenario);

struct FanoReport {
    double mean_photon = 0.0;
    double variance = 0.0;
    double fano = 1.0;
    double mandel_q = 0.0;
    double suppression_db = 0.0;
};

/// Assembles a consistent report from <n> and F.
FanoReport make_fano_report(double mean_photon, double fano);

/// Coefficients of F(beta) = 1 + scale * N(beta) / D(beta) with
///   N = 2 Re(beta*linear) + 2 Re(beta^2*quadratic) + radial*|beta|^2,
///   D = 1 + 2 Re(beta*conj(g1)) + |beta|^2.
struct FanoForm {
    double scale = 0.0;  ///< tau^2 |alpha|^2
    cplx g1{1.0, 0.0};
    cplx linear{};     ///< 2 (e^{-2iKz} - 1) g1*
    cplx quadratic{};  ///< e^{-2iKz} g2* - g1*^2
    double radial = 0.0;  ///< 2 (1 - |g1|^2)
};

FanoForm fano_form(const KerrScenario& scenario, double tau = 1.0);

/// Exact Fano factor of the displaced Kerr state as a function of beta.
/// Throws DegenerateDenominator when <n_S> vanishes.
FanoReport fano_displaced(const KerrScenario& scenario, const DisplacementSetting& setting);

/// Same evaluation on a precomputed form (hot path for optimisers).
FanoReport fano_displaced(const FanoForm& form, cplx beta);

} // namespace dks
