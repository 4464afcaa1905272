#pragma once

#include "app/artifact.hpp"
#include "app/config.hpp"
#include "dks/error.hpp"
#include "dks/fock.hpp"
#include "dks/optimizer.hpp"
#include "dks/waveguide.hpp"

#include <string>

namespace dks::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitToleranceMiss = 4;

int exit_code_for(ErrorCode code) noexcept;

struct CommandResult {
    Artifact artifact;
    std::string summary;  ///< human-readable, 6 significant digits
    int exit_code = kExitOk;
};

/// Runs cfg.command. Library errors propagate as dks::Error.
CommandResult run_command(const RunConfig& cfg);

OptimizerConfig optimizer_config(const RunConfig& cfg);
FockConfig fock_config(const RunConfig& cfg);

/// Exactly one of `preset` or the inline fields (n2, sigma_eff, lambda, n0).
WaveguideSpec waveguide_from(const RunConfig& cfg);

/// Kerr-evolved coherent state displaced by the shift implied by beta.
FockState displaced_kerr_state(cplx alpha, double kz, cplx beta, const FockConfig& fock);

} // namespace dks::app
