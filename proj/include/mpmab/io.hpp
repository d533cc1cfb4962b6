#pragma once

#include <string>

#include "mpmab/harness.hpp"

namespace mpmab {

// %.17g rendering: shortest text that always round-trips a double.
std::string format_double(double value);

// Reads a JSON experiment description. Recognized keys mirror
// ExperimentConfig: scenario | arms (+plays), horizon, replications, seed,
// stride, threads, out, policies[{name, gamma, xi, delta, width, action_cap}].
// Errors carry the offending field or the parser position.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin);

std::string config_to_json_text(const ExperimentConfig& config);

// The CSV body (header plus one row per policy and logged slot) —
// deterministic for a fixed result.
std::string results_csv(const ExperimentResult& result);

// Writes <prefix>.csv and a <prefix>.json sidecar holding the full config,
// seeds, per-policy parameters and summary values. Returns the CSV path.
std::string serialize_results(const ExperimentResult& result, const std::string& prefix);

}  // namespace mpmab
