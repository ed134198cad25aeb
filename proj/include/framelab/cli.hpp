#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "framelab/error.hpp"
#include "json.hpp"

namespace framelab::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kDimensionMismatch = 3,
  kZeroGenerator = 4,
};

int exit_code_for(ErrorCode code);

struct RunConfig {
  std::string command;
  std::string rep;
  std::string psi_path;
  double tol = 1e-10;
  std::string out_path;  // empty: standard output
  std::string format = "json";
  std::uint64_t seed = 0;
  std::vector<std::string> groups;
  bool oracle = false;
  bool inject_fault = false;
};

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bracket(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (argv[0] is the program name) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits "Z4,D4,shift:4,2" into {"Z4", "D4", "shift:4,2"}: a purely numeric
/// piece continues the previous target.
std::vector<std::string> split_targets(const std::string& list);

std::vector<std::string> default_verify_targets();

struct SuiteResult {
  nlohmann::json report;
  bool pass = false;
};

/// Runs the invariant checks over the given group specs / model specs.
SuiteResult run_verify_suite(const std::vector<std::string>& targets, std::uint64_t seed, bool inject_fault = false);

}  // namespace framelab::cli
