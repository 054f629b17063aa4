#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "srgbode/lure_gain.hpp"
#include "srgbode/simulation.hpp"

namespace srgbode {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Everything a CLI run needs: the analysis setup plus simulation,
/// validation and output options. Parsed from a flat key-value document
/// with dotted sections, e.g.
///
///     system.num = 1
///     system.den = 2 1
///     nonlinearity.kind = sine
///     grid.omega.min = 0.1
///     grid.omega.max = 100
///     grid.omega.count = 40
///     grid.omega.scale = log
///     grid.U.min = 1e-3
///     grid.U.max = 1e3
///     grid.U.count = 40
///     grid.U.scale = log
///
/// Unknown or duplicate keys are rejected.
struct RunConfig {
    AnalysisConfig analysis;
    SimParams sim;
    int validate_points = 5;
    int validate_inputs_per_point = 10;
    double validate_margin = 0.01;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace srgbode
