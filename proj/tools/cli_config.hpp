#pragma once

#include "somos/bigint.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace somos::cli {

inline constexpr const char* kReportSchema = "somos-report/1";
inline constexpr const char* kBatchSchema = "somos-batch/1";

/// Invalid configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what) : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct OptionSpec {
    std::string key;
    std::string default_value;  // empty with required = false means "unset"
    std::string help;
    bool required = false;
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<OptionSpec> options;
    bool tabular = false;  // supports CSV output
};

/// Every subcommand except batch, in a fixed order.
const std::vector<CommandSpec>& command_table();
const CommandSpec* find_command(const std::string& name);

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;  // every option of the command, defaults applied
    std::string format = "json";                 // json | csv | text
    std::string output;                          // empty = stdout
};

/// Applies defaults and rejects unknown keys, missing required keys and bad
/// formats. Throws ConfigError.
RunConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& given,
                      const std::string& format, const std::string& output);

/// Batch file: {"schema": "somos-batch/1", "runs": [{"subcommand", "params", "format", "output"}]}.
std::vector<RunConfig> parse_batch(const nlohmann::json& doc);

nlohmann::json config_echo(const RunConfig& cfg);

/// Typed access to a run's parameters. Conversion failures name the field.
class Params {
public:
    explicit Params(const RunConfig& cfg) : cfg_(cfg) {}

    const std::string& str(const std::string& key) const;
    bool has(const std::string& key) const { return !str(key).empty(); }
    long integer(const std::string& key) const;
    BigInt big(const std::string& key) const;
    Rat rat(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::vector<std::string> list(const std::string& key) const;
    std::vector<long> integers(const std::string& key) const;
    std::vector<BigInt> bigs(const std::string& key) const;
    std::vector<Rat> rats(const std::string& key) const;

private:
    const RunConfig& cfg_;
};

} // namespace somos::cli
