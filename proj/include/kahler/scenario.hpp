#pragma once

/// @file scenario.hpp
/// @brief Batch scenarios: JSON config in, deterministic JSON report out.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kahler/classify.hpp"
#include "kahler/verify.hpp"

namespace kahler {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitBuild = 3 };

struct Scenario {
    nlohmann::json config;  ///< effective config (after overrides), hashed into the report
    std::string f_mode;     ///< "explicit" or a class kind
    SpectrumSpec spectrum;  ///< F filled for explicit mode
    ClassSpec class_spec;   ///< used for class modes
    SuiteOptions options;
    std::vector<std::string> checks;
};

/// Parses and validates a schema-1 config. Unknown keys are ConfigError.
/// A seed override replaces samples.seed before hashing.
Scenario parse_scenario(nlohmann::json config, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads a config file; ConfigError if it cannot be read or parsed.
nlohmann::json load_config(const std::string& path);

/// Hex SHA-256 of the canonical (sorted-key, compact) dump.
std::string config_hash(const nlohmann::json& config);

struct ScenarioResult {
    nlohmann::json report;
    int exit_code = kExitPass;
};

/// Builds the model and runs the checks in declared order. ConfigError and BuildError
/// propagate; suite failures give exit code 1 with a complete report.
ScenarioResult run_scenario(const Scenario& s);

/// Serializes with floats at 17 significant digits; NaN and infinities become null.
std::string dump_report(const nlohmann::json& j);

struct IdentityRun {
    nlohmann::json report;
    int exit_code = kExitPass;
    std::string witness;  ///< message of the first violation
};

/// Exact Vandermonde identities on `trials` random rational sets for each m = 1..max_m.
IdentityRun run_identities(int max_m, int max_k, int trials, std::uint64_t seed, bool inject_fault = false);

}  // namespace kahler
