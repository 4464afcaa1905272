#pragma once

#include "app/artifact.hpp"
#include "app/config.hpp"

#include <string>
#include <vector>

namespace dks::app {

/// One computed-vs-reference comparison. Passing means lower <= computed <= upper.
struct Check {
    std::string name;
    double computed = 0.0;
    double reference = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::string tolerance;  ///< human-readable description of [lower, upper]
    bool asserted = true;   ///< reported-only checks never cause a miss
    bool pass = false;
};

Check relative_check(std::string name, double computed, double reference, double rel_tol, bool asserted = true);
Check absolute_check(std::string name, double computed, double reference, double abs_tol, bool asserted = true);
Check range_check(std::string name, double computed, double lower, double upper, bool asserted = true);

struct Reproduction {
    Artifact artifact;
    std::vector<Check> checks;
    bool passed() const;
};

const std::vector<std::string>& reproduce_targets();

/// Builds the artifact for table1 | table2 | table3 | fig3 | fig4 | fig5.
Reproduction reproduce(const std::string& target, const RunConfig& cfg);

/// Tabulated reference values.
namespace reference {
inline constexpr double table1_alpha[4] = {10, 30, 50, 100};
inline constexpr double table1_fano[4] = {0.0203, 0.00449, 0.00226, 0.000892};
inline constexpr double table1_db[4] = {-16.9, -23.5, -26.5, -30.5};
inline constexpr double table1_kz[4] = {0.0218, 0.00511, 0.00257, 0.00102};
inline constexpr double table1_beta[4] = {0.123, 0.0569, 0.0401, 0.0253};
inline constexpr double table1_mean[4] = {98.6, 894, 2490, 9980};
inline constexpr double spotlight_variance = 1.99;
inline constexpr double spotlight_db = -16.9;
inline constexpr double crossover_db = -12.1;
inline constexpr double crossover_f1_db = -12.6;
inline constexpr double crossover_f2_db = -11.6;
inline constexpr double fig5_alpha[6] = {10, 20, 30, 50, 70, 100};
} // namespace reference

} // namespace dks::app
