#include "cli_report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef SOMOS_VERSION
#define SOMOS_VERSION "0.0.0"
#endif

namespace somos::cli {

using nlohmann::json;

json build_report(const RunConfig& cfg, const CommandResult& result)
{
    return {{"schema", kReportSchema},
            {"tool_version", SOMOS_VERSION},
            {"subcommand", cfg.subcommand},
            {"config", config_echo(cfg)},
            {"results", result.results}};
}

namespace {

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_line(std::ostringstream& out, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
        out << (i ? "," : "") << csv_cell(cells[i]);
    out << '\n';
}

void text_lines(std::ostringstream& out, const json& v, const std::string& path)
{
    if (v.is_object()) {
        for (const auto& [key, value] : v.items())
            text_lines(out, value, path.empty() ? key : path + "." + key);
    }
    else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        for (std::size_t i = 0; i < v.size(); ++i)
            text_lines(out, v[i], path + "[" + std::to_string(i) + "]");
    }
    else if (v.is_array()) {
        out << path << " =";
        for (const auto& x : v)
            out << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
        out << '\n';
    }
    else {
        out << path << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
}

} // namespace

std::string render(const RunConfig& cfg, const CommandResult& result)
{
    std::ostringstream out;
    if (cfg.format == "csv") {
        if (!result.table)
            throw ConfigError("format", "field 'format': " + cfg.subcommand + " has no tabular form");
        csv_line(out, result.table->columns);
        for (const auto& row : result.table->rows)
            csv_line(out, row);
        return out.str();
    }
    if (cfg.format == "text") {
        out << "subcommand = " << cfg.subcommand << '\n';
        text_lines(out, result.results, "");
        return out.str();
    }
    return build_report(cfg, result).dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
        if (ec)
            throw std::runtime_error("cannot create directory " + target.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f)
            throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move report into " + path);
    }
}

json error_json(const ErrorInfo& e)
{
    json err = {{"kind", e.kind}, {"message", e.message}};
    if (e.index)
        err["index"] = *e.index;
    if (e.field)
        err["field"] = *e.field;
    return {{"error", err}};
}

} // namespace somos::cli
