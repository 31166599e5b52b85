#pragma once

#include <eivarx/errors.hpp>
#include <eivarx/mc_harness.hpp>
#include <eivarx/pipeline.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eivarx::cli {

/// Everything a config file or preset can set.
struct RunConfig {
    Scenario scenario;
    PipelineConfig pipeline;
    int replications = 100;
    std::optional<std::uint64_t> base_seed;
    std::vector<Method> methods{Method::Proposed};
    unsigned threads = 0;
    std::optional<double> snr_y;  ///< target var(y*) / var(v_y)
    std::optional<double> snr_u;  ///< target var(u*) / var(e_u)
    /// "file:line" where each key was last set, for error messages.
    std::map<std::string, std::string> sources;
};

/// Invalid config content; the message carries file and line.
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Keys accepted in config files.
const std::vector<std::string>& config_keys();

/// Named scenarios: example1, example2, table1, table7, table8, table9.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/**
 * Apply a config document on top of `base`. Flat `key = value` lines with
 * `#` comments, or a JSON object (nested objects flatten to dotted keys).
 */
RunConfig parse_config(const std::string& text, const std::string& origin, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Flat key -> value view of a resolved config, for manifests.
std::map<std::string, std::string> describe(const RunConfig& config);

/// Throws ConfigError when the resolved config cannot be simulated.
void validate(const RunConfig& config);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace eivarx::cli
