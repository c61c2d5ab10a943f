#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qlimit/propagator.hpp"

namespace qlimit {

/// Parses the flat JSON run configuration:
///
///   {"q": 10, "kappa": 0.2, "mu": 1, "beta": 0.1, "omega": 0.0002,
///    "t_end": 28800, "dt": 1, "method": "strang", "snapshots": [0, 1800, 28800]}
///
/// q, kappa, mu, beta, omega and t_end are required; dt defaults to 1, method to
/// strang and snapshots to [0, t_end]. Unknown keys are rejected. The result is not
/// yet snapped to the step grid (see validate_config). Throws ConfigError naming the key.
SimulationConfig parse_config_json(std::string_view text);

/// Reads and parses a config file. Throws IoError when the file cannot be read.
SimulationConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config_json; emits every key.
std::string emit_config_json(const SimulationConfig& config);

/// Named parameter sets: "fig2" is the published evolution run. Throws ConfigError
/// for unknown names.
SimulationConfig preset_config(std::string_view name);

} // namespace qlimit
