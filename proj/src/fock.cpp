#include "dks/fock.hpp"

#include "dks/error.hpp"
#include "dks/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace dks {

namespace detail {

struct FockAccess {
    static FockState make(std::vector<double> modulus, std::vector<double> phase, double tail) {
        FockState s;
        s.modulus_ = std::move(modulus);
        s.phase_ = std::move(phase);
        s.tail_mass_ = tail;
        return s;
    }
    static const std::vector<double>& modulus(const FockState& s) { return s.modulus_; }
    static const std::vector<double>& phase(const FockState& s) { return s.phase_; }
};

} // namespace detail

namespace {

using detail::FockAccess;

double sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return s;
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    return phi < 0.0 ? phi + two_pi : phi;
}

void to_polar(const std::vector<cplx>& amplitudes, std::vector<double>& modulus, std::vector<double>& phase) {
    modulus.resize(amplitudes.size());
    phase.resize(amplitudes.size());
    for (std::size_t n = 0; n < amplitudes.size(); ++n) {
        modulus[n] = std::abs(amplitudes[n]);
        phase[n] = modulus[n] == 0.0 ? 0.0 : wrap_phase(std::arg(amplitudes[n]));
    }
}

void scale(std::vector<double>& modulus, double norm2) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& m : modulus)
        m *= inv;
}

// log of Poisson weight e^{-a2} a2^n / n!
double log_poisson(double a2, int n) {
    if (a2 == 0.0)
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -a2 + n * std::log(a2) - std::lgamma(n + 1.0);
}

// Sum of Poisson weights above n_trunc, accumulated until terms stop mattering.
double poisson_tail(double a2, int n_trunc) {
    if (a2 == 0.0)
        return 0.0;
    double tail = 0.0;
    for (int n = n_trunc + 1;; ++n) {
        const double term = std::exp(log_poisson(a2, n));
        tail += term;
        if (n > a2 && (term == 0.0 || term < 1e-18 * tail))
            break;
    }
    return tail;
}

} // namespace

FockState::FockState(const std::vector<cplx>& amplitudes, double prior_tail, double tol) {
    if (amplitudes.size() < 2)
        fail(ErrorCode::InvalidArgument, "FockState needs n_trunc >= 1");
    to_polar(amplitudes, modulus_, phase_);
    const double norm2 = sum_squares(modulus_);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        fail(ErrorCode::InvalidArgument, "FockState amplitudes have zero or non-finite norm");
    tail_mass_ = prior_tail + std::abs(1.0 - norm2);
    if (!(tail_mass_ < tol))
        fail(ErrorCode::TruncationUnachievable,
             "tail mass " + std::to_string(tail_mass_) + " exceeds tolerance " + std::to_string(tol));
    scale(modulus_, norm2);
}

FockState FockState::from_unnormalized(const std::vector<cplx>& amplitudes) {
    if (amplitudes.size() < 2)
        fail(ErrorCode::InvalidArgument, "FockState needs n_trunc >= 1");
    FockState s;
    to_polar(amplitudes, s.modulus_, s.phase_);
    const double norm2 = sum_squares(s.modulus_);
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        fail(ErrorCode::InvalidArgument, "FockState amplitudes have zero or non-finite norm");
    scale(s.modulus_, norm2);
    return s;
}

FockState FockState::vacuum(int n_trunc) {
    if (n_trunc < 1)
        fail(ErrorCode::InvalidArgument, "vacuum needs n_trunc >= 1");
    const auto dim = static_cast<std::size_t>(n_trunc) + 1;
    std::vector<double> modulus(dim, 0.0);
    modulus[0] = 1.0;
    return FockAccess::make(std::move(modulus), std::vector<double>(dim, 0.0), 0.0);
}

cplx FockState::amplitude(int n) const {
    const auto i = static_cast<std::size_t>(n);
    return std::polar(modulus_[i], phase_[i]);
}

std::vector<cplx> FockState::amplitudes() const {
    std::vector<cplx> out(modulus_.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = std::polar(modulus_[n], phase_[n]);
    return out;
}

double FockState::norm_squared() const { return sum_squares(modulus_); }

FockState coherent_state(cplx alpha, double tol, const FockConfig& cfg) {
    if (!(tol > 0.0 && tol <= 1e-6))
        fail(ErrorCode::InvalidArgument, "truncation tolerance must lie in (0, 1e-6]");
    const double a = std::abs(alpha);
    if (!std::isfinite(a))
        fail(ErrorCode::InvalidArgument, "alpha must be finite");
    if (a > cfg.max_amplitude)
        fail(ErrorCode::AmplitudeTooLarge, "|alpha| = " + std::to_string(a) + " exceeds the Fock engine limit " +
                                               std::to_string(cfg.max_amplitude) + "; use the analytic path");
    const double a2 = a * a;
    int n_trunc = static_cast<int>(std::ceil(a2 + 10.0 * a + 20.0));
    double tail = poisson_tail(a2, n_trunc);
    while (tail >= tol) {
        if (n_trunc >= cfg.max_dimension)
            fail(ErrorCode::TruncationUnachievable,
                 "Poisson tail " + std::to_string(tail) + " above tolerance at the dimension cap");
        n_trunc = std::min(cfg.max_dimension, n_trunc + std::max(10, n_trunc / 10));
        tail = poisson_tail(a2, n_trunc);
    }

    const double theta = a == 0.0 ? 0.0 : std::arg(alpha);
    std::vector<double> modulus(static_cast<std::size_t>(n_trunc) + 1);
    std::vector<double> phase(modulus.size());
    for (int n = 0; n <= n_trunc; ++n) {
        modulus[static_cast<std::size_t>(n)] = std::exp(0.5 * log_poisson(a2, n));
        phase[static_cast<std::size_t>(n)] = wrap_phase(theta * n);
    }
    scale(modulus, sum_squares(modulus));
    return FockAccess::make(std::move(modulus), std::move(phase), tail);
}

FockState apply_diagonal_phase(const FockState& state, double quadratic, double linear, double constant) {
    if (!std::isfinite(quadratic) || !std::isfinite(linear) || !std::isfinite(constant))
        fail(ErrorCode::InvalidArgument, "phase coefficients must be finite");
    std::vector<double> phase = FockAccess::phase(state);
    for (std::size_t n = 0; n < phase.size(); ++n) {
        const double dn = static_cast<double>(n);
        phase[n] = wrap_phase(phase[n] + wrap_phase(quadratic * dn * dn) + wrap_phase(linear * dn) + constant);
    }
    return FockAccess::make(FockAccess::modulus(state), std::move(phase), state.tail_mass());
}

FockState kerr_evolve(const FockState& state, double kz) { return apply_diagonal_phase(state, kz, 0.0); }

FockState kerr_evolve_nn1(const FockState& state, double kz) { return apply_diagonal_phase(state, kz, -kz); }

FockState rotate(const FockState& state, double theta) { return apply_diagonal_phase(state, 0.0, theta); }

FockState displace(const FockState& state, cplx delta, const FockConfig& cfg) {
    const double r = std::abs(delta);
    if (!std::isfinite(r))
        fail(ErrorCode::InvalidArgument, "displacement must be finite");
    if (r == 0.0)
        return state;

    const auto in = state.amplitudes();
    const int m_in = state.dimension();
    const double x = r * r;
    const double phi = std::arg(delta);
    int extension = static_cast<int>(std::ceil(10.0 * (r + 1.0)));

    for (;;) {
        const int dim = m_in + extension;
        if (dim > cfg.max_dimension)
            fail(ErrorCode::TruncationUnachievable, "displacement needs more than " +
                                                        std::to_string(cfg.max_dimension) + " basis states");
        std::vector<cplx> out(static_cast<std::size_t>(dim), cplx{});
        for (int k = 0; k < dim; ++k) {
            const int count = std::min(m_in, dim - k);
            if (count <= 0)
                break;
            const auto f = laguerre_function_sequence(k, x, count);
            const cplx up = std::polar(1.0, k * phi);
            // <j+k|D|j> = e^{ik phi} f_j^k
            for (int j = 0; j < count; ++j)
                out[static_cast<std::size_t>(j + k)] += up * f[static_cast<std::size_t>(j)] * in[static_cast<std::size_t>(j)];
            if (k == 0)
                continue;
            // <j|D|j+k> = (-1)^k e^{-ik phi} f_j^k
            const cplx down = (k % 2 == 0 ? 1.0 : -1.0) * std::conj(up);
            for (int j = 0; j + k < m_in; ++j)
                out[static_cast<std::size_t>(j)] += down * f[static_cast<std::size_t>(j)] * in[static_cast<std::size_t>(j + k)];
        }

        double norm2 = 0.0;
        for (const auto& c : out)
            norm2 += std::norm(c);
        const double defect = std::abs(1.0 - norm2);
        if (defect < cfg.truncation_tol) {
            std::vector<double> modulus;
            std::vector<double> phase;
            to_polar(out, modulus, phase);
            scale(modulus, norm2);
            return FockAccess::make(std::move(modulus), std::move(phase), state.tail_mass() + defect);
        }
        extension *= 2;
    }
}

cplx field_moment(const FockState& state, int k, int l) {
    if (k < 0 || l < 0)
        fail(ErrorCode::InvalidArgument, "moment orders must be non-negative");
    if (k + l > 4)
        fail(ErrorCode::OrderTooHigh, "k + l = " + std::to_string(k + l) + " > 4");
    const auto c = state.amplitudes();
    const int top = std::max(k, l);
    cplx sum{};
    for (int n = 0; n + top <= state.n_trunc(); ++n) {
        double weight = 1.0;
        for (int j = 1; j <= k; ++j)
            weight *= n + j;
        for (int j = 1; j <= l; ++j)
            weight *= n + j;
        sum += std::conj(c[static_cast<std::size_t>(n + k)]) * c[static_cast<std::size_t>(n + l)] * std::sqrt(weight);
    }
    return sum;
}

NumberMoments number_moments(const FockState& state) {
    const auto p = photon_distribution(state);
    double mean = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n)
        mean += static_cast<double>(n) * p[n];
    double variance = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        const double d = static_cast<double>(n) - mean;
        variance += d * d * p[n];
    }
    return {mean, variance};
}

PhotonStatistics photon_statistics(const FockState& state) {
    const auto m = number_moments(state);
    if (!(m.mean > std::numeric_limits<double>::min()))
        fail(ErrorCode::ZeroMeanPhoton, "Fano factor undefined for zero mean photon number");
    const double fano = m.variance / m.mean;
    return {m.mean, m.variance, fano, fano - 1.0};
}

std::vector<double> photon_distribution(const FockState& state) {
    const auto mod = state.moduli();
    std::vector<double> p(mod.size());
    for (std::size_t n = 0; n < p.size(); ++n)
        p[n] = mod[n] * mod[n];
    return p;
}

double fidelity(const FockState& a, const FockState& b) {
    const auto ca = a.amplitudes();
    const auto cb = b.amplitudes();
    const std::size_t n = std::min(ca.size(), cb.size());
    cplx overlap{};
    for (std::size_t i = 0; i < n; ++i)
        overlap += std::conj(ca[i]) * cb[i];
    return std::norm(overlap);
}

} // namespace dks
