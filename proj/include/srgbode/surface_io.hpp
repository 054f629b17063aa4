#pragma once

#include <string>
#include <vector>

#include "srgbode/lure_gain.hpp"
#include "srgbode/simulation.hpp"

namespace srgbode {

/// Shortest round-trip decimal form of a double; infinities serialize as
/// "inf" / "-inf".
std::string format_double(double v);

/// CSV with the fixed header
/// omega,U,r_omega_A,r_partial_omega_A,A_bound,gamma,feasible
/// one row per grid point in omega-major order.
std::string surface_to_csv(const GainSurface& surface);

/// Parses a CSV produced by surface_to_csv back into records (bit-exact for
/// finite values).
std::vector<GainRecord> parse_surface_csv(const std::string& text);

struct RunTimings {
    double surface_ms = 0.0;
};

std::string surface_metadata_json(const GainSurface& surface, const RunTimings& timings);

std::string validation_report_json(const ValidationReport& report);

/// Self-contained Python script rendering the gain and amplitude surfaces
/// from the CSV.
std::string plot_script_text();

/// Writes via a temp file in the same directory plus rename, so consumers
/// never observe partial files.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace srgbode
