#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gridqaoa::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitTestFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResourceError = 3;

// Fills every default of an experiment config and validates it. Throws
// InvalidArgument on malformed input.
nlohmann::json resolve_config(const nlohmann::json& raw);

// Runs the generate -> embed -> optimize pipeline for a resolved config and
// returns the report (no wall-clock fields, so reruns are byte-identical).
// Also fills `trace_csv` and the assignment / schedule documents.
struct SolveOutputs {
  nlohmann::json report;
  std::string trace_csv;
  nlohmann::json assignment;
  nlohmann::json schedule;
};
SolveOutputs solve(const nlohmann::json& resolved, int threads);

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridqaoa::cli
