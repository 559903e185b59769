#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/io/config.hpp"

namespace landscape::io {

/// Environment variable that supplies the output directory when --out is absent.
inline constexpr const char* kOutDirEnv = "LANDSCAPE_OUT_DIR";

/// Thrown by parse_command_line for -h/--help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2 };

/// Builds the loss described by `spec`. Random graphs and targets draw from
/// spec.graph_seed; shot noise draws from `seed`.
ModelPtr build_model(const ModelSpec& spec, std::uint64_t seed);

/// Runs one configured experiment and writes its artifacts. Diagnostics and
/// the evaluation-budget report go to `log`.
void run_experiment(const ExperimentConfig& config, std::ostream& log);

/// Parses the command line (argv[0] is the program name) into a config.
ExperimentConfig parse_command_line(const std::vector<std::string>& args);

/// Full entry point: parse, run, map errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

} // namespace landscape::io
