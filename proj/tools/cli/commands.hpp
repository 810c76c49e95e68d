#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace aoi::cli {

/// Fully resolved options of one invocation.
struct RunConfig {
  std::string command;
  double p = 0.5;
  double q = 0.5;
  /// sweep only: "start:step:end" or a single value.
  std::string p_range;
  std::string q_range;
  /// mw | op | file:<path>; sweep also accepts "both".
  std::string policy = "mw";
  int y_hat = 1024;
  int n_trunc = 256;
  std::uint64_t steps = 1'000'000;
  std::uint64_t seed = 1;
  std::uint64_t burn_in = 1000;
  std::string out;
  /// grid | csv | json; empty picks the command default.
  std::string format;
  double tol = 1e-9;
  int max_iter = 200;
  std::string method = "pi";
  std::string diff_against;
  std::string diff_out;
  std::vector<std::string> checks;
  unsigned threads = 1;
  std::string surface;
  std::string overlay;
  int window = 40;
  int oracle_n = 0;
};

/// One-line "key=value ..." echo written into every output header.
std::string describe(const RunConfig& config);

/// Throws ValidationError for out-of-range options.
void validate_config(const RunConfig& config);

/// Runs a validated configuration. Data goes to files or `out`,
/// diagnostics to `err`. Returns the exit status.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and executes. Exit status 0 on
/// success, 1 for solver errors or failed validation checks, 2 for
/// invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aoi::cli
