// somos-cli: front end for the sequence, divisibility and curve reports.
//
// Exit codes: 0 success, 1 arithmetic error, 2 configuration error, 3 I/O error.
// SOMOS_JOBS sets the number of parallel workers for `batch`.

#include "cli_report.hpp"

#include "somos/error.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace somos;
using namespace somos::cli;
using nlohmann::json;

enum ExitCode { kOk = 0, kMathError = 1, kConfigError = 2, kIoError = 3 };

struct Outcome {
    int code = kOk;
    std::optional<ErrorInfo> error;
};

/// Runs one configuration and writes its report. Never throws.
Outcome execute(const RunConfig& cfg)
{
    try {
        const CommandResult result = run_command(cfg);
        const std::string text = render(cfg, result);
        if (cfg.output.empty()) {
            std::cout << text;
            std::cout.flush();
        }
        else {
            try {
                write_atomic(cfg.output, text);
            }
            catch (const std::runtime_error& e) {
                return {kIoError, ErrorInfo{"IoError", e.what(), std::nullopt, std::nullopt}};
            }
        }
        return {};
    }
    catch (const ConfigError& e) {
        return {kConfigError, ErrorInfo{"ConfigError", e.what(), std::nullopt, e.field()}};
    }
    catch (const MathError& e) {
        return {kMathError, ErrorInfo{std::string(to_string(e.kind())), e.what(), e.index(), std::nullopt}};
    }
}

void report_error(const ErrorInfo& e)
{
    std::cerr << error_json(e).dump() << '\n';
}

unsigned worker_count(std::size_t runs)
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SOMOS_JOBS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            n = static_cast<unsigned>(v);
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(runs, 1)));
}

int run_batch(const std::string& path)
{
    std::vector<RunConfig> runs;
    try {
        std::ifstream in(path);
        if (!in) {
            report_error({"IoError", "cannot read " + path, std::nullopt, std::nullopt});
            return kIoError;
        }
        json doc;
        try {
            doc = json::parse(in);
        }
        catch (const json::parse_error& e) {
            throw ConfigError("config", std::string("batch file is not valid JSON: ") + e.what());
        }
        runs = parse_batch(doc);
    }
    catch (const ConfigError& e) {
        report_error({"ConfigError", e.what(), std::nullopt, e.field()});
        return kConfigError;
    }

    std::vector<Outcome> outcomes(runs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < runs.size(); i = next++)
            outcomes[i] = execute(runs[i]);
    };
    std::vector<std::thread> pool;
    const unsigned workers = worker_count(runs.size());
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    json summary = json::array();
    int code = kOk;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        json entry = {{"subcommand", runs[i].subcommand}, {"output", runs[i].output},
                      {"status", outcomes[i].error ? "error" : "ok"}};
        if (outcomes[i].error)
            entry["error"] = error_json(*outcomes[i].error)["error"];
        summary.push_back(entry);
        if (code == kOk)
            code = outcomes[i].code;
    }
    std::cout << json{{"schema", kBatchSchema}, {"runs", summary}}.dump(2) << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Somos-4/5 and elliptic divisibility sequence reports"};
    app.require_subcommand(1);

    struct Bound {
        CLI::App* sub;
        const CommandSpec* spec;
        std::map<std::string, std::string> values;
        std::string format = "json";
        std::string output;
    };
    std::vector<Bound> bound;
    bound.reserve(command_table().size());
    for (const auto& cmd : command_table()) {
        bound.push_back({app.add_subcommand(cmd.name, cmd.help), &cmd, {}, "json", {}});
        Bound& b = bound.back();
        for (const auto& opt : cmd.options) {
            std::string help = opt.help;
            if (opt.required)
                help += " (required)";
            else if (!opt.default_value.empty())
                help += " (default " + opt.default_value + ")";
            b.sub->add_option("--" + opt.key, b.values[opt.key], help);
        }
        b.sub->add_option("--format", b.format, cmd.tabular ? "json, csv or text" : "json or text");
        b.sub->add_option("--output", b.output, "report path (default stdout)");
    }
    std::string batch_path;
    CLI::App* batch = app.add_subcommand("batch", "run every entry of a JSON batch file");
    batch->add_option("--config", batch_path, "batch file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        report_error({"ConfigError", e.what(), std::nullopt, std::nullopt});
        return kConfigError;
    }

    if (batch->parsed())
        return run_batch(batch_path);

    for (auto& b : bound) {
        if (!b.sub->parsed())
            continue;
        std::map<std::string, std::string> given;
        for (const auto& opt : b.spec->options)
            if (b.sub->count("--" + opt.key) > 0)
                given[opt.key] = b.values[opt.key];
        RunConfig cfg;
        try {
            cfg = make_config(b.spec->name, given, b.format, b.output);
        }
        catch (const ConfigError& e) {
            report_error({"ConfigError", e.what(), std::nullopt, e.field()});
            return kConfigError;
        }
        const Outcome out = execute(cfg);
        if (out.error)
            report_error(*out.error);
        return out.code;
    }
    return kConfigError;
}
