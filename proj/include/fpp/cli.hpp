#pragma once

#include <string>

#include "fpp/experiments.hpp"

// Command-line front end: one subcommand per experiment, JSON config files,
// deterministic CSV/JSON outputs, and resource-guard aware exit codes:
//   0  success / all checks passed
//   1  a bound or consistency check failed
//   2  usage, flag, or config error
//   3  a resource guard refused the run
namespace fpp {

// Parses a JSON config file into an ExperimentConfig.  An empty (or
// whitespace-only) file yields the defaults; unknown keys and invalid values
// are errors.  The seed may be a number or a "0x..." string.
ExperimentConfig load_config(const std::string& path);

// Full entry point used by the fpplab binary: parse argv, dispatch the
// subcommand, map errors to the exit codes above.
int run_cli(int argc, const char* const* argv);

}  // namespace fpp
