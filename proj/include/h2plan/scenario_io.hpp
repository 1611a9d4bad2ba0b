#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "h2plan/types.hpp"

namespace h2plan::core {

/// Loads, normalizes, and validates a scenario document.
///
/// Input units may use the table spellings ($/kW, $/kWh, kWh/kg, percent);
/// they are converted to canonical units (MW, MWh, fractions) while reading.
/// Series fields accept an inline array or {"csv": "relative/path.csv"}
/// resolved against the scenario file's directory (overridable with the
/// H2PLAN_CONFIG_PATH environment variable). Throws ScenarioError with
/// per-field diagnostics on any violation.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Same, from an already-parsed JSON text (series must be inline).
ScenarioConfig load_scenario_text(const std::string& json_text,
                                  const std::filesystem::path& base_dir = {});

/// Canonical serialization: all fields in canonical units, deterministic
/// key order, round-trip exact numerics.
std::string save_scenario(const ScenarioConfig& config);
void save_scenario_file(const ScenarioConfig& config, const std::filesystem::path& path);

/// SHA-256 over the canonical serialization; independent of file layout.
std::string scenario_fingerprint(const ScenarioConfig& config);

/// SHA-256 of a file's raw bytes (run manifests).
std::string file_sha256(const std::filesystem::path& path);

/// Reads a `hour,value` CSV (1-based contiguous hours). Errors carry line
/// numbers.
std::vector<double> read_series_csv(const std::filesystem::path& path);
void write_series_csv(const std::filesystem::path& path, const std::vector<double>& values);

}  // namespace h2plan::core
