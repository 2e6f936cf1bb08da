#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"

namespace zkd {

// Runs one experiment and writes its artifacts into out_dir (created if
// missing): config.resolved, summary.json and command-specific CSV files.
// Throws zkd::Error on failure.
void RunExperiment(const Config& config, const std::string& out_dir);

struct RunRequest {
  Command command = Command::kSimulate;
  std::string config_path;  // empty: defaults, preset and overrides only
  std::string out_dir;
  std::vector<std::string> overrides;
};

struct RunStatus {
  ErrorCode code = ErrorCode::kOk;
  std::string message;
  int exit_code = 0;
};

// Exit codes: 0 ok, 1 internal, 2 parse / invalid argument, 3 validation or
// domain, 4 io, 5 divergence, 6 invalid initial data, 7 insufficient data,
// 8 other numerical failures (symmetry, backward heat, certificate, bound).
int ExitCodeFor(ErrorCode code);

// Parses, validates and runs. Never throws. On failure writes error.json into
// out_dir when possible; `message` always carries the error text.
RunStatus RunRequestChecked(const RunRequest& request) noexcept;

}  // namespace zkd
