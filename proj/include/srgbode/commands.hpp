#pragma once

#include <ostream>

#include "srgbode/config.hpp"
#include "srgbode/lure_gain.hpp"
#include "srgbode/simulation.hpp"

namespace srgbode::cli {

// Exit status contract: 0 success, 1 usage/config error, 2 certification or
// hypothesis failure, 3 validation violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCertification = 2;
inline constexpr int kExitViolation = 3;

/// Computes the full surface and writes surface.csv, surface_meta.json and
/// plot_surface.py into the output directory.
int run_surface(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Single-point probe; pass u_infinity for the U -> inf asymptote column.
int run_analyze(const RunConfig& config, double omega, double U, bool u_infinity,
                std::ostream& out, std::ostream& err);

/// Computes the surface, validates it against time-domain simulations and
/// writes validation.json.
int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Validation of an already computed surface (shares the exit-status logic
/// with run_validate).
int run_validate_on_surface(const GainSurface& surface, const RunConfig& config,
                            std::ostream& out, std::ostream& err);

/// CSV of the linearized closed-loop magnitude |G/(1 + k0 G)| over the omega
/// grid (plus a DC row), where k0 is the nonlinearity's slope at zero.
int run_lti_reference(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace srgbode::cli
