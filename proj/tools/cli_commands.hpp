#pragma once

#include "cli_config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace somos::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct CommandResult {
    nlohmann::json results;
    std::optional<Table> table;  // present for tabular subcommands
};

/// Runs one validated configuration. Throws ConfigError or MathError.
CommandResult run_command(const RunConfig& cfg);

} // namespace somos::cli
