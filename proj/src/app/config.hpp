#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dks::app {

enum class Format { Csv, Json };

/// Everything a CLI run depends on. Text form is one "key = value" per line,
/// '#' comments, keys from config_keys(); unset optionals are omitted.
struct RunConfig {
    std::string command;
    std::optional<std::string> target;  ///< reproduce recipe

    // scenario
    std::optional<double> alpha;     ///< Re alpha
    std::optional<double> alpha_im;  ///< Im alpha
    std::optional<double> kz;
    std::vector<double> kz_values;
    std::optional<double> kz_min, kz_max;
    std::optional<int> kz_points;
    std::optional<double> beta_re, beta_im;
    bool optimal_beta = false;
    std::optional<double> tau;

    // waveguide and beam
    std::optional<std::string> preset;
    std::optional<double> n2, n0, sigma_eff, lambda;
    std::optional<double> power, spectral_width;
    std::optional<double> target_db;

    // wigner grid
    std::optional<std::string> window;
    std::optional<double> half_width;
    std::optional<double> x_min, x_max, y_min, y_max;
    std::optional<int> resolution;

    // tolerances
    std::optional<double> tol_simplex, tol_length, tol_truncation;
    std::optional<int> max_iterations;

    // output
    Format format = Format::Csv;
    std::optional<std::string> out;  ///< destination only; never embedded in artifacts
    int parallel = 1;

    bool operator==(const RunConfig&) const = default;
};

const std::vector<std::string>& config_keys();

/// Throws dks::Error(InvalidArgument) naming the offending key or line.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// Canonical text: schema key order, shortest round-trip numbers, no comments.
/// `with_output` includes the `out` key.
std::string serialize_config(const RunConfig& cfg, bool with_output = false);

/// Canonicalises config text without building a RunConfig; equals
/// serialize_config(parse_config(text), true) for every valid text.
std::string normalize_config(const std::string& text);

/// Fills defaults that depend on the command and checks field consistency.
void validate_config(const RunConfig& cfg);

std::string format_number(double v);
const char* to_string(Format f) noexcept;

} // namespace dks::app
