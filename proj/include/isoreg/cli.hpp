#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "isoreg/iterative_fit.hpp"
#include "isoreg/simulation.hpp"

namespace isoreg::cli {

enum ExitCode : int {
  kOk = 0,
  kDataError = 1,
  kUsageError = 2,
  kDegenerateCriterion = 3,
};

enum class Command { fit, decompose, trace, simulate };

struct CliConfig {
  Command command = Command::fit;
  std::string input = "-";
  std::string output = "-";
  std::string trace_output;        // fit: optional trace JSON path
  std::string format = "json";     // trace: json | long; simulate experiment: csv | long
  Algorithm algorithm = Algorithm::iir;
  std::string stop = "criterion:aicc";
  std::string grid;                // empty: 1..min(50, n)
  std::size_t max_iter = 0;        // 0: derived from the stop rule
  bool strict_ties = false;

  // simulate
  SignalSpec signal;
  std::size_t k_max = 0;           // 0: no experiment table
  std::string experiment_output;
};

/// Parses argv-style arguments (without the program name) and dispatches.
/// Data go to out, diagnostics to err; in serves '-' inputs.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

int cmd_fit(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_decompose(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_trace(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_simulate(const CliConfig& config, std::ostream& out, std::ostream& err);

/// "fixed:<k>", "tol:<eps>" or "criterion:<name>" with grid and cap applied.
/// Throws InvalidArgument on malformed input or a grid beyond max_iter.
StoppingPolicy parse_stop(const std::string& stop, const std::string& grid, std::size_t max_iter,
                          std::size_t n);

}  // namespace isoreg::cli
