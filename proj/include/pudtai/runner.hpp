#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace pudtai {

inline constexpr const char* kVersion = "0.1.0";

// Resolved run description. params is the full parameter tree with defaults
// filled in; serializing and re-parsing is the identity on resolved configs.
struct RunConfig {
    std::string mode = "fisher";
    std::uint64_t seed = 1;
    std::string output_path = "pudtai_out";
    bool verbose_stages = false;
    nlohmann::json params;
};

// Parameter tree defaults for every mode.
nlohmann::json default_params();

// Reads {mode, seed, out, verbose_stages, params{...}}; unknown keys are
// rejected, missing ones take defaults.
RunConfig parse_config(const nlohmann::json& doc);

nlohmann::json config_json(const RunConfig& config);

// Dotted-path override, e.g. "processor.alpha=640". Paths not starting with a
// top-level config key are routed into params. The value is parsed as JSON
// when possible, else taken as a string.
void apply_override(RunConfig& config, const std::string& key_path, const std::string& value);

// Executes the mode, writes <out>.csv (plus mode-specific extra files) and
// <out>.manifest.json. Returns 0 on success; on error writes a JSON error
// object to stderr and returns nonzero. Identical config and seed produce
// byte-identical outputs. The PUDTAI_THREADS environment variable sets the
// worker count for bootstrap sweeps.
int run(const RunConfig& config);

}  // namespace pudtai
