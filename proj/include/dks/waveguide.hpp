#pragma once

#include <optional>
#include <string>

namespace dks {

namespace phys {
inline constexpr double c = 299792458.0;          // m/s
inline constexpr double hbar = 1.054571817e-34;   // J s
} // namespace phys

/// Kerr medium. n0 is carried for completeness; it cancels from every output.
struct WaveguideSpec {
    double n2 = 0.0;         ///< m^2/W
    double n0 = 1.0;
    double sigma_eff = 0.0;  ///< m^2
    double lambda = 0.0;     ///< m, vacuum wavelength
    void validate() const;
    double omega() const;    ///< 2 pi c / lambda
};

/// Optical input: power and spectral width (coherence time = 1 / width).
struct BeamSpec {
    double power = 0.0;           ///< W
    double spectral_width = 0.0;  ///< Hz
    void validate() const;
    double coherence_time() const { return 1.0 / spectral_width; }
    static BeamSpec from_coherence_time(double power, double coherence_time);
};

/// K = n2 hbar omega^2 / (2 c tau_coh sigma_eff), per metre.
double kerr_coupling(const WaveguideSpec& wg, const BeamSpec& beam);

/// |alpha| = sqrt(P tau_coh / (hbar omega)).
double alpha_from_power(const BeamSpec& beam, const WaveguideSpec& wg);

/// gamma = 2 pi n2 / (lambda sigma_eff), 1/(W m).
double gamma(const WaveguideSpec& wg);

/// Optimal length (Kz)_opt / K from the exact radical constants.
double z_opt_physical(const WaveguideSpec& wg, const BeamSpec& beam);

/// Same length written in the engineering form
///   z = lambda (sqrt(3)/2)^{1/3} / (2 pi n2 I) (P tau_coh / hbar omega)^{1/3},  I = P / sigma_eff.
double z_opt_engineering(const WaveguideSpec& wg, const BeamSpec& beam);

/// 10 log10 of the minimum Fano factor at |alpha| from alpha_from_power.
double fano_floor_physical(const WaveguideSpec& wg, const BeamSpec& beam);

struct LengthDesign {
    double z = 0.0;  ///< m
    double x = 0.0;  ///< |alpha|^2 Kz
    bool short_length_regime = true;
};

/// Dimensionless length x = |alpha|^2 Kz reaching `target_db` (< 0): the
/// smaller root of exp(-4x + x^2) = F above -12.1 dB, else 1/(16 x^2) = F.
double suppression_x(double target_db);

/// Medium length for a target suppression: z = 2x / (gamma P). The floor
/// check needs |alpha| and therefore runs only when a spectral width is given.
LengthDesign length_for_suppression(double target_db, double power, const WaveguideSpec& wg,
                                    std::optional<double> spectral_width = std::nullopt);

/// z = 2x / (gamma P) for a given dimensionless x.
double length_from_x(double x, double power, const WaveguideSpec& wg);

/// Regime boundary of the short-length formula, in dB.
inline constexpr double kShortLengthFloorDb = -12.1;

/// Built-in Si3N4 waveguide (n2 = 2.5e-19 m^2/W, sigma_eff = 0.3 um^2, 1.55 um).
WaveguideSpec si3n4_preset();

/// Parses "key = value" lines (n2_m2_per_W, n0, sigma_eff_m2, lambda_m);
/// '#' starts a comment. Throws InvalidArgument on unknown or missing keys.
WaveguideSpec parse_preset(const std::string& text);
WaveguideSpec load_preset_file(const std::string& path);
std::string format_preset(const WaveguideSpec& wg);

/// Name of a built-in preset or a path to a preset file.
WaveguideSpec resolve_preset(const std::string& name_or_path);

} // namespace dks
