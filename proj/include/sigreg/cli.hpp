#pragma once

// Subcommands of the sigreg executable. run_command is the in-memory core
// (no file IO); run parses argv, loads the config and writes the outputs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sigreg/report_json.hpp"

namespace sigreg::cli {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInput = 2, kExitIo = 3 };

struct CommandOutput {
    Json report;
    std::string csv;
    int exit_code = kExitOk;
};

const std::vector<std::string>& command_names();

/// Throws InputError (and the numerical errors of the library) on bad input.
/// A seed given here overrides a "seed" key in the config.
CommandOutput run_command(const std::string& name, const Json& config,
                          std::optional<std::uint64_t> seed = std::nullopt);

int run(int argc, char** argv);

}  // namespace sigreg::cli
