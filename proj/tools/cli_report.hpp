#pragma once

#include "cli_commands.hpp"

#include <optional>
#include <string>

namespace somos::cli {

/// Versioned report envelope: schema, tool version, config echo, results.
nlohmann::json build_report(const RunConfig& cfg, const CommandResult& result);

/// Serialized report in the configured format, newline terminated.
std::string render(const RunConfig& cfg, const CommandResult& result);

/// Writes through a temporary sibling file and renames it into place.
/// Throws std::runtime_error on I/O failure.
void write_atomic(const std::string& path, const std::string& content);

struct ErrorInfo {
    std::string kind;  // ErrorKind name, ConfigError or IoError
    std::string message;
    std::optional<long> index;
    std::optional<std::string> field;
};

nlohmann::json error_json(const ErrorInfo& e);

} // namespace somos::cli
