#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wedge/common.hpp"

namespace wedge {

/// Malformed configuration; maps to exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  /// constants | reconstruct | radius | wedge-check | zoo | sweep
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string output_path = ".";
};

const std::vector<std::string>& run_commands();

/// Strict parse of {"command", "params", "seed", "output_path"}. Unknown
/// top-level keys throw ConfigError naming the key.
RunConfig parse_run_config(const nlohmann::json& j);

/// `overrides` (a config file) on top of `base` (built from flags). Params
/// are merged key by key.
RunConfig merge_run_config(RunConfig base, const nlohmann::json& overrides);

/// Execute one command, writing artifacts under output_path. Returns 0 on
/// success, 2 on a hypothesis failure, 1 on any other error. Diagnostics go
/// to `err`, a one-line summary to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace wedge
