#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace cuntzk {

inline constexpr const char* kToolVersion = "0.1.0";

/// One command run. `payload` and `certificate` are deterministic for fixed
/// inputs and seed; `wall_time` is reported on stderr only.
struct RunReport {
  std::string command;
  std::string inputs_fingerprint;
  nlohmann::json payload;
  nlohmann::json certificate;
  std::string version = kToolVersion;
  std::chrono::duration<double> wall_time{};

  nlohmann::json to_json() const;
};

/// Runs the command line. JSON goes to `out` (or a text summary with
/// --format text), diagnostics to `err`. Returns the process exit code:
/// 0 success, 2 parse, 3 validation, 4 hypothesis violation, 5 internal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuntzk
