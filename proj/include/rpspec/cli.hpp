#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpspec/report.hpp"

namespace rpspec {

/// Invalid command line or configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  double C{0.5};
  double alpha{2.0};
  double k{0.0625};
  double lmin{1e3};
  double lmax{1e7};
  std::optional<int> points;  // default 40 for sweeps, 30 for the oracle
  bool log_spacing{true};
  std::string out{"rpspec_out"};
  double c{1.0};  // tail policy constant
  std::vector<int> grids{64, 128, 256};
  int M{0};       // 0: chosen by tail control (sweeps) or 2 (oracle)
  double lambda{1e4};
  std::optional<double> h;  // single-room mode for skeleton and sl-spectrum
  double delta{0.0};
  std::string bc{"neumann"};
  std::optional<int> count;  // default 6 for sl-spectrum, 20 for the oracle
  int n{128};                // coarsest SL cell count
  int jmin{3};
  int jmax{8};
  int pieces{4};
  bool svg{false};
  std::map<std::string, double> tol;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"asymptotics", "brackets",    "tail",  "essential",
                                              "skeleton",    "sl-spectrum", "oracle"};
  return names;
}

/// Parses argv (flags win over a --config key=value file). Throws ConfigError;
/// returns nullopt after printing help.
std::optional<ExperimentConfig> parse_command_line(int argc, const char* const* argv);

/// Checks the command's preconditions; throws ConfigError naming the problem.
void validate(const ExperimentConfig& cfg);

/// Tolerance `name` for the command: the --tol override or the default.
/// Unknown names are a ConfigError.
double tolerance(const ExperimentConfig& cfg, const std::string& name);
std::map<std::string, double> default_tolerances(const std::string& command);

struct OutputFile {
  std::string path;
  std::string content;
};

struct RunResult {
  Report report;
  std::vector<OutputFile> files;  // written only after the run succeeds
};

/// Executes the command in memory. Throws ConfigError on precondition
/// violations and std::runtime_error (or other std::exception) on numeric failure.
RunResult run(const ExperimentConfig& cfg);

/// Writes each file through a temporary and a rename; on failure removes
/// everything written so far and rethrows.
void write_outputs(const std::vector<OutputFile>& files);

/// Whole program: parse, validate, run, write, print the summary.
/// Returns 0 (ok), 1 (check failed or numeric failure) or 2 (config error).
int cli_main(int argc, const char* const* argv);

}  // namespace rpspec
