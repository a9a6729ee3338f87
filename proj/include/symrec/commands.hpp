#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "symrec/config.hpp"

namespace symrec::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitHypothesis = 2,
  kExitBudget = 3,
};

/// entropy, pressure, bowen, dim-rpsi, dim-rf, cover-audit, spec-check,
/// free-concat, mistake-profile, edit-ball, "moran build", "moran audit", point.
const std::vector<std::string>& command_names();

/// Runs one command and returns its report, without the common envelope.
/// Errors propagate as exceptions.
nlohmann::json execute(const std::string& command, RunConfig& config);

/// Rounds every floating-point number to 12 significant digits; NaN and
/// infinities become null.
nlohmann::json round_numbers(const nlohmann::json& value);

/// Loads the config, runs the command and writes the report to flags.out
/// (or `out`). Returns the exit code; diagnostics go to `err`.
int run(const std::string& command, const std::string& config_path, const Flags& flags,
        std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace symrec::cli
