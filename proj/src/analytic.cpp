#include "dks/analytic.hpp"

#include "dks/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dks {

namespace {

// sin(t) - t without cancellation for small t.
double sin_minus_arg(double t) {
    if (std::abs(t) < 0.1) {
        const double t2 = t * t;
        return -t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0 * (1.0 - t2 / 72.0 * (1.0 - t2 / 110.0))));
    }
    return std::sin(t) - t;
}

// e^{it} - 1 = -2 sin^2(t/2) + i sin t
cplx expi_minus_one(double t) {
    const double s = std::sin(0.5 * t);
    return {-2.0 * s * s, std::sin(t)};
}

// e^z - 1 for complex z, accurate when |z| is small.
cplx complex_expm1(cplx z) {
    const double half = std::sin(0.5 * z.imag());
    return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * half * half, std::exp(z.real()) * std::sin(z.imag())};
}

// log g for phase step t (t = 2Kz for g1, 4Kz for g2).
cplx log_g(double a2, double t) {
    const double s = std::sin(0.5 * t);
    return {-2.0 * a2 * s * s, a2 * sin_minus_arg(t)};
}

constexpr double kDegenerateDenominator = 64.0 * std::numeric_limits<double>::epsilon();

} // namespace

void KerrScenario::validate() const {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        fail(ErrorCode::InvalidArgument, "alpha must be finite");
    if (!std::isfinite(kz) || kz < 0.0)
        fail(ErrorCode::InvalidArgument, "kz must be finite and >= 0 (got " + std::to_string(kz) + ")");
}

void DisplacementSetting::validate() const {
    if (!(tau > 0.0 && tau <= 1.0))
        fail(ErrorCode::InvalidArgument, "tau must lie in (0, 1] (got " + std::to_string(tau) + ")");
    if (!std::isfinite(beta.real()) || !std::isfinite(beta.imag()))
        fail(ErrorCode::InvalidArgument, "beta must be finite");
}

DisplacementSetting DisplacementSetting::from_raw(const KerrScenario& scenario, cplx rho, cplx alpha0, double tau) {
    scenario.validate();
    if (scenario.alpha == cplx{})
        fail(ErrorCode::InvalidArgument, "beta is undefined for alpha = 0");
    if (tau * tau + std::norm(rho) > 1.0 + 1e-12)
        fail(ErrorCode::InvalidArgument, "tau^2 + |rho|^2 must not exceed 1");
    DisplacementSetting s;
    s.tau = tau;
    s.validate();
    const double a2 = scenario.alpha_sq();
    const cplx alpha_s = rho * alpha0;
    s.beta = alpha_s * std::polar(1.0, -2.0 * a2 * scenario.kz) / (tau * scenario.alpha * std::polar(1.0, scenario.kz));
    return s;
}

cplx DisplacementSetting::shift_amplitude(const KerrScenario& scenario) const {
    const double a2 = scenario.alpha_sq();
    return beta * tau * scenario.alpha * std::polar(1.0, scenario.kz) * std::polar(1.0, 2.0 * a2 * scenario.kz);
}

GFactors g_factors(const KerrScenario& scenario) {
    scenario.validate();
    const double a2 = scenario.alpha_sq();
    return {std::exp(log_g(a2, 2.0 * scenario.kz)), std::exp(log_g(a2, 4.0 * scenario.kz))};
}

ClosedFormMoments closed_form_moments(const KerrScenario& scenario) {
    scenario.validate();
    const double a2 = scenario.alpha_sq();
    const double kz = scenario.kz;
    const cplx alpha = scenario.alpha;
    // e^{2i|a|^2 Kz} g1 = exp(|a|^2 (e^{2iKz} - 1)), likewise for g2.
    const cplx rot1 = std::exp(a2 * expi_minus_one(2.0 * kz));
    const cplx rot2 = std::exp(a2 * expi_minus_one(4.0 * kz));
    ClosedFormMoments m;
    m.a = alpha * std::polar(1.0, kz) * rot1;
    m.a2 = alpha * alpha * std::polar(1.0, 4.0 * kz) * rot2;
    m.ad_a2 = alpha * a2 * std::polar(1.0, 3.0 * kz) * rot1;
    m.n_mean = a2;
    return m;
}

FanoReport make_fano_report(double mean_photon, double fano) {
    FanoReport r;
    r.mean_photon = mean_photon;
    r.fano = fano;
    r.variance = fano * mean_photon;
    r.mandel_q = fano - 1.0;
    r.suppression_db = fano > 0.0 ? 10.0 * std::log10(fano) : -std::numeric_limits<double>::infinity();
    return r;
}

FanoForm fano_form(const KerrScenario& scenario, double tau) {
    scenario.validate();
    if (!(tau > 0.0 && tau <= 1.0))
        fail(ErrorCode::InvalidArgument, "tau must lie in (0, 1]");
    const double a2 = scenario.alpha_sq();
    const double kz = scenario.kz;
    const cplx l1 = log_g(a2, 2.0 * kz);
    const cplx g1 = std::exp(l1);

    FanoForm f;
    f.scale = tau * tau * a2;
    f.g1 = g1;
    f.linear = 2.0 * std::conj(expi_minus_one(2.0 * kz) * g1);
    // e^{2iKz} g2 - g1^2 = g1^2 expm1(2iKz + |a|^2 (e^{2iKz}-1)^2), (e^{2iKz}-1)^2 = -4 sin^2(Kz) e^{2iKz}
    const double s1 = std::sin(kz);
    const cplx inner = cplx{0.0, 2.0 * kz} - 4.0 * a2 * s1 * s1 * std::polar(1.0, 2.0 * kz);
    f.quadratic = std::conj(g1 * g1 * complex_expm1(inner));
    f.radial = -2.0 * std::expm1(2.0 * l1.real());
    return f;
}

FanoReport fano_displaced(const FanoForm& form, cplx beta) {
    const cplx g1c = std::conj(form.g1);
    const double beta2 = std::norm(beta);
    const double denom = 1.0 + 2.0 * (beta * g1c).real() + beta2;
    if (!(denom > kDegenerateDenominator))
        fail(ErrorCode::DegenerateDenominator, "mean photon number of the displaced state vanishes");
    // 2 beta (e^{-2iKz} - 1) g1* + c.c. + beta^2 (e^{-2iKz} g2* - g1*^2) + c.c. + 2|beta|^2 (1 - |g1|^2)
    const double bracket =
        2.0 * (beta * form.linear).real() + 2.0 * (beta * beta * form.quadratic).real() + form.radial * beta2;
    const double fano = 1.0 + form.scale * bracket / denom;
    return make_fano_report(form.scale * denom, fano);
}

FanoReport fano_displaced(const KerrScenario& scenario, const DisplacementSetting& setting) {
    setting.validate();
    return fano_displaced(fano_form(scenario, setting.tau), setting.beta);
}

} // namespace dks
