#include "dks/waveguide.hpp"

#include "dks/approximations.hpp"
#include "dks/error.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace dks {

namespace {

void require_positive(double v, const std::string& name) {
    if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorCode::InvalidArgument, name + " must be finite and > 0");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        fail(ErrorCode::InvalidArgument, "preset key " + key + " has non-numeric value '" + text + "'");
    return v;
}

} // namespace

void WaveguideSpec::validate() const {
    require_positive(n2, "n2");
    require_positive(n0, "n0");
    require_positive(sigma_eff, "sigma_eff");
    require_positive(lambda, "lambda");
    if (lambda < 0.1e-6 || lambda > 10e-6)
        fail(ErrorCode::InvalidArgument, "lambda must lie in [0.1e-6, 10e-6] m");
}

double WaveguideSpec::omega() const { return 2.0 * std::numbers::pi * phys::c / lambda; }

void BeamSpec::validate() const {
    require_positive(power, "power");
    require_positive(spectral_width, "spectral_width");
}

BeamSpec BeamSpec::from_coherence_time(double power, double coherence_time) {
    require_positive(coherence_time, "coherence_time");
    BeamSpec b{power, 1.0 / coherence_time};
    b.validate();
    return b;
}

double kerr_coupling(const WaveguideSpec& wg, const BeamSpec& beam) {
    wg.validate();
    beam.validate();
    const double w = wg.omega();
    return wg.n2 * phys::hbar * w * w / (2.0 * phys::c * beam.coherence_time() * wg.sigma_eff);
}

double alpha_from_power(const BeamSpec& beam, const WaveguideSpec& wg) {
    wg.validate();
    beam.validate();
    return std::sqrt(beam.power * beam.coherence_time() / (phys::hbar * wg.omega()));
}

double gamma(const WaveguideSpec& wg) {
    wg.validate();
    return 2.0 * std::numbers::pi * wg.n2 / (wg.lambda * wg.sigma_eff);
}

double z_opt_physical(const WaveguideSpec& wg, const BeamSpec& beam) {
    return kz_opt_approx(alpha_from_power(beam, wg)) / kerr_coupling(wg, beam);
}

double z_opt_engineering(const WaveguideSpec& wg, const BeamSpec& beam) {
    wg.validate();
    beam.validate();
    const double intensity = beam.power / wg.sigma_eff;
    const double coeff = approx_constants::kz_app_coefficient() / (2.0 * std::numbers::pi);
    const double photons = beam.power * beam.coherence_time() / (phys::hbar * wg.omega());
    return wg.lambda * coeff / (wg.n2 * intensity) * std::cbrt(photons);
}

double fano_floor_physical(const WaveguideSpec& wg, const BeamSpec& beam) {
    return 10.0 * std::log10(f_min_approx(alpha_from_power(beam, wg)));
}

double suppression_x(double target_db) {
    if (!(target_db < 0.0) || !std::isfinite(target_db))
        fail(ErrorCode::InvalidArgument, "target_db must be finite and < 0");
    const double f = std::pow(10.0, target_db / 10.0);
    if (target_db >= kShortLengthFloorDb) {
        // x^2 - 4x - ln F = 0, smaller root
        const double disc = 4.0 + std::log(f);
        if (disc < 0.0)
            fail(ErrorCode::NoRealRoot, "short-length formula has no real root for " + std::to_string(target_db) + " dB");
        return 2.0 - std::sqrt(disc);
    }
    return 1.0 / (4.0 * std::sqrt(f));
}

double length_from_x(double x, double power, const WaveguideSpec& wg) {
    require_positive(power, "power");
    return 2.0 * x / (gamma(wg) * power);
}

LengthDesign length_for_suppression(double target_db, double power, const WaveguideSpec& wg,
                                    std::optional<double> spectral_width) {
    wg.validate();
    require_positive(power, "power");
    if (spectral_width) {
        const double floor_db = fano_floor_physical(wg, BeamSpec{power, *spectral_width});
        if (target_db < floor_db)
            fail(ErrorCode::TargetBelowFloor, "target " + std::to_string(target_db) + " dB is below the floor " +
                                                  std::to_string(floor_db) + " dB");
    }
    LengthDesign d;
    d.x = suppression_x(target_db);
    d.short_length_regime = target_db >= kShortLengthFloorDb;
    d.z = length_from_x(d.x, power, wg);
    return d;
}

WaveguideSpec si3n4_preset() {
    WaveguideSpec wg;
    wg.n2 = 2.5e-19;
    wg.n0 = 2.0;
    wg.sigma_eff = 0.3e-12;
    wg.lambda = 1.55e-6;
    return wg;
}

WaveguideSpec parse_preset(const std::string& text) {
    std::map<std::string, double> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidArgument, "preset line " + std::to_string(lineno) + " lacks '='");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key != "n2_m2_per_W" && key != "n0" && key != "sigma_eff_m2" && key != "lambda_m")
            fail(ErrorCode::InvalidArgument, "unknown preset key '" + key + "'");
        values[key] = parse_number(key, val);
    }
    for (const char* key : {"n2_m2_per_W", "sigma_eff_m2", "lambda_m"})
        if (!values.count(key))
            fail(ErrorCode::InvalidArgument, std::string("preset is missing key ") + key);
    WaveguideSpec wg;
    wg.n2 = values["n2_m2_per_W"];
    wg.sigma_eff = values["sigma_eff_m2"];
    wg.lambda = values["lambda_m"];
    wg.n0 = values.count("n0") ? values["n0"] : 1.0;
    wg.validate();
    return wg;
}

WaveguideSpec load_preset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::InvalidArgument, "cannot open preset file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_preset(ss.str());
}

std::string format_preset(const WaveguideSpec& wg) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "n2_m2_per_W = " << wg.n2 << "\n"
       << "n0 = " << wg.n0 << "\n"
       << "sigma_eff_m2 = " << wg.sigma_eff << "\n"
       << "lambda_m = " << wg.lambda << "\n";
    return ss.str();
}

WaveguideSpec resolve_preset(const std::string& name_or_path) {
    if (name_or_path == "si3n4")
        return si3n4_preset();
    return load_preset_file(name_or_path);
}

} // namespace dks
