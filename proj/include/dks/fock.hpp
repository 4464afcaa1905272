#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dks {

namespace detail {
struct FockAccess;
}

using cplx = std::complex<double>;

/// Knobs for the truncated Fock engine.
struct FockConfig {
    double truncation_tol = 1e-12;  ///< max probability mass allowed above the cut
    double max_amplitude = 200.0;   ///< beyond this only the analytic path applies
    int max_dimension = 200000;     ///< hard cap on basis size
};

/// Pure single-mode state in the photon-number basis |0>..|n_trunc>.
///
/// Stored in polar form (modulus, phase) so that diagonal phase maps leave the
/// photon-number distribution bit-identical. The probability mass cut off at
/// construction, plus any renormalisation defect of later truncated
/// operations, is accumulated in tail_mass.
class FockState {
public:
    /// Treats `amplitudes` as the truncation of a normalised state: the missing
    /// mass 1 - sum|c|^2 (plus prior_tail) becomes tail_mass and the vector is
    /// renormalised. Throws TruncationUnachievable when the tail reaches `tol`.
    explicit FockState(const std::vector<cplx>& amplitudes, double prior_tail = 0.0,
                       double tol = FockConfig{}.truncation_tol);

    /// Normalises an arbitrary non-zero vector; tail_mass is zero.
    static FockState from_unnormalized(const std::vector<cplx>& amplitudes);

    static FockState vacuum(int n_trunc = 1);

    cplx amplitude(int n) const;
    std::vector<cplx> amplitudes() const;
    std::span<const double> moduli() const { return modulus_; }
    std::span<const double> phases() const { return phase_; }

    int n_trunc() const { return static_cast<int>(modulus_.size()) - 1; }
    int dimension() const { return static_cast<int>(modulus_.size()); }
    double tail_mass() const { return tail_mass_; }
    double norm_squared() const;

private:
    FockState() = default;

    std::vector<double> modulus_;
    std::vector<double> phase_;
    double tail_mass_ = 0.0;

    friend struct detail::FockAccess;
};

/// Coherent state with amplitudes computed in the log domain; the basis is
/// cut at ceil(|a|^2 + 10|a| + 20) and grown until the Poisson tail is < tol.
FockState coherent_state(cplx alpha, double tol = FockConfig{}.truncation_tol, const FockConfig& cfg = {});

/// c_n <- exp(i (q n^2 + l n + c)) c_n; the building block of both Kerr maps
/// and of phase-space rotations.
FockState apply_diagonal_phase(const FockState& state, double quadratic, double linear, double constant = 0.0);

/// c_n <- exp(i kz n^2) c_n.
FockState kerr_evolve(const FockState& state, double kz);

/// Alternative Hamiltonian n(n-1): c_n <- exp(i kz n(n-1)) c_n. Differs from
/// kerr_evolve by a rigid phase-space rotation through -kz.
FockState kerr_evolve_nn1(const FockState& state, double kz);

/// c_n <- exp(i theta n) c_n, i.e. a -> a e^{i theta}.
FockState rotate(const FockState& state, double theta);

/// Applies D(delta) using closed-form matrix elements (normalised Laguerre
/// functions). The basis grows by ceil(10(|delta|+1)) levels, and the growth
/// is doubled while the leaked norm exceeds cfg.truncation_tol.
FockState displace(const FockState& state, cplx delta, const FockConfig& cfg = {});

/// Normally ordered moment <a^dagger^k a^l>, k + l <= 4.
cplx field_moment(const FockState& state, int k, int l);

struct NumberMoments {
    double mean = 0.0;
    double variance = 0.0;
};

struct PhotonStatistics {
    double mean = 0.0;
    double variance = 0.0;
    double fano = 0.0;
    double mandel_q = 0.0;
};

NumberMoments number_moments(const FockState& state);

/// Mean, variance, Fano factor and Mandel Q. Throws ZeroMeanPhoton for vacuum.
PhotonStatistics photon_statistics(const FockState& state);

/// |c_n|^2 for n = 0..n_trunc.
std::vector<double> photon_distribution(const FockState& state);

/// |<a|b>|^2 over the common basis (the shorter state is zero-padded).
double fidelity(const FockState& a, const FockState& b);

} // namespace dks
