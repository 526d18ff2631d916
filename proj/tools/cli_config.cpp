#include "cli_config.hpp"

#include "somos/error.hpp"

#include <algorithm>
#include <set>

namespace somos::cli {

namespace {

std::vector<OptionSpec> sequence_options(const std::string& from = "-20", const std::string& to = "200")
{
    return {
        {"k", "4", "order of the recurrence (4 or 5)"},
        {"alpha", "1", "coefficient alpha: a rational or a polynomial such as alpha"},
        {"beta", "1", "coefficient beta: a rational or a polynomial such as beta"},
        {"init", "", "comma-separated initial values t1..tk (default: all 1)"},
        {"from", from, "first index of the window"},
        {"to", to, "last index of the window"},
        {"budget", "24", "largest index computed symbolically"},
    };
}

std::vector<OptionSpec> curve_options()
{
    return {
        {"p", "", "prime modulus", true},
        {"c", "", "curve coefficients c3,c2,c1,c0 of y^2 = c3 x^3 + c2 x^2 + c1 x + c0", true},
        {"x", "", "x coordinate: q, sqrt:d or q*sqrt:d", true},
        {"y", "", "y coordinate: q, sqrt:d or q*sqrt:d", true},
        {"adjoin", "", "radicand d of the quadratic extension F_p(sqrt d)"},
        {"transform", "", "u,r,w: use Y^2 = f(uX+r)/w^2 and the image of the point"},
    };
}

std::vector<OptionSpec> concat(std::vector<OptionSpec> a, const std::vector<OptionSpec>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<CommandSpec> build_table()
{
    std::vector<CommandSpec> t;
    t.push_back({"seq", "extend a Somos-k sequence over a window", sequence_options(), true});
    t.push_back({"invariants", "conserved quantities T, I (k=4) or S, J (k=5) along a window",
                 sequence_options("1", "24"), true});
    t.push_back({"symmetry", "check t[n] against its mirror image",
                 concat(sequence_options("-19", "24"),
                        {{"rule", "palindromic", "palindromic or fibonacci_sign"}}),
                 false});
    t.push_back({"period", "period of an integer window modulo m",
                 concat(sequence_options(), {{"modulus", "4", "modulus m"}}), false});
    t.push_back({"transform", "verify an equivalence transform",
                 {{"kind", "", "mg, mgs, somos5_abcba or sign_twist", true},
                  {"nmax", "12", "largest index compared"},
                  {"numeric", "false", "evaluate at rational parameters instead of symbolically"},
                  {"gamma", "", "gamma for numeric mg"},
                  {"delta", "", "delta for numeric mgs"},
                  {"a", "", "a for numeric somos5_abcba"},
                  {"b", "", "b for numeric somos5_abcba"},
                  {"c", "", "c for numeric somos5_abcba"},
                  {"alpha-at", "2", "alpha for numeric runs"},
                  {"beta-at", "3", "beta for numeric runs"}},
                 false});
    t.push_back({"eds", "elliptic divisibility sequence report",
                 {{"init", "1,1,-1,1", "a1,a2,a3,a4"},
                  {"from", "-30", "first index"},
                  {"to", "30", "last index"},
                  {"kmax", "8", "largest k for the divisor sets V_k"},
                  {"mmax", "10", "largest m (and n) of the identity grid"},
                  {"generic", "false", "also check V_k on the symbolic EDS (1, x2, x3, x2*x4)"},
                  {"budget", "24", "largest index computed symbolically"}},
                 false});
    t.push_back({"companion", "companion EDS identities for Somos-4 or Somos-5",
                 {{"k", "4", "4 or 5"},
                  {"alpha", "alpha", "alpha: rational or polynomial"},
                  {"beta", "beta", "beta: rational or polynomial"},
                  {"from", "-12", "first index"},
                  {"to", "22", "last index"},
                  {"mmax", "10", "largest m of the grid 1 <= n <= m"},
                  {"budget", "30", "largest index computed symbolically"}},
                 false});
    t.push_back({"gaps", "occurrences and gaps of p^r",
                 concat(sequence_options(), {{"p", "", "prime", true}, {"rmax", "3", "largest power r"}}), true});
    t.push_back({"robinson", "gap observations for several primes",
                 concat(sequence_options(), {{"primes", "2,3,5,7,11", "comma-separated primes"},
                                             {"rmax", "3", "largest power r"}}),
                 true});
    t.push_back({"polydiv", "t[n] | t[n + l(2n-k-1)] by exact polynomial division",
                 {{"k", "4", "4 or 5"},
                  {"n", "", "index n", true},
                  {"l", "-2,-1,1,2", "comma-separated multipliers l"},
                  {"budget", "40", "largest index computed symbolically"}},
                 true});
    t.push_back({"laurent", "Laurent window with variable initials x1..xk",
                 {{"k", "4", "4 or 5"},
                  {"alpha", "alpha", "alpha: polynomial"},
                  {"beta", "beta", "beta: polynomial"},
                  {"from", "1", "first index"},
                  {"to", "20", "last index"},
                  {"budget", "24", "largest index computed symbolically"},
                  {"values", "false", "include the terms themselves"}},
                 true});
    t.push_back({"closure", "closure of a seed under (s, t) -> 2s - t",
                 {{"seed", "", "comma-separated integers", true},
                  {"lo", "-2000", "lower bound"},
                  {"hi", "2000", "upper bound"}},
                 false});
    t.push_back({"conjecture", "predicted indices for powers of q = t[n]",
                 {{"k", "4", "4 or 5"},
                  {"n", "6", "index n"},
                  {"mmax", "1", "largest m"},
                  {"from", "1", "first scanned index"},
                  {"to", "200", "last scanned index"},
                  {"budget", "2000", "largest predicted index"}},
                 false});
    t.push_back({"cavachi", "f_n^(m+1) | f_(n f_n^m) for Fibonacci numbers",
                 {{"nlo", "4", "smallest n"},
                  {"nhi", "9", "largest n"},
                  {"mlo", "1", "smallest m"},
                  {"mhi", "2", "largest m"},
                  {"exmax", "6", "largest m for the n = 3 rule"},
                  {"budget", "10000000", "largest Fibonacci index"}},
                 true});
    t.push_back({"curve-order", "order of a point on a cubic curve mod p", curve_options(), false});
    t.push_back({"gap-vs-order", "gap of p^r against the order of a curve point",
                 concat(concat(sequence_options(), {{"r", "1", "power of p"}, {"rmax", "3", "largest power scanned"}}),
                        curve_options()),
                 false});
    return t;
}

[[noreturn]] void bad(const std::string& key, const std::string& expected, const std::string& got)
{
    throw ConfigError(key, "field '" + key + "': expected " + expected + ", got '" + got + "'");
}

} // namespace

const std::vector<CommandSpec>& command_table()
{
    static const std::vector<CommandSpec> table = build_table();
    return table;
}

const CommandSpec* find_command(const std::string& name)
{
    for (const auto& c : command_table())
        if (c.name == name)
            return &c;
    return nullptr;
}

RunConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& given,
                      const std::string& format, const std::string& output)
{
    const CommandSpec* cmd = find_command(subcommand);
    if (!cmd)
        throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
    RunConfig cfg;
    cfg.subcommand = subcommand;
    cfg.format = format.empty() ? "json" : format;
    cfg.output = output;
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        bad("format", "json, csv or text", cfg.format);
    if (cfg.format == "csv" && !cmd->tabular)
        throw ConfigError("format", "field 'format': " + subcommand + " has no tabular form");
    for (const auto& [key, value] : given) {
        const bool known = std::any_of(cmd->options.begin(), cmd->options.end(),
                                       [&](const OptionSpec& o) { return o.key == key; });
        if (!known)
            throw ConfigError(key, "field '" + key + "': not an option of " + subcommand);
    }
    for (const auto& opt : cmd->options) {
        const auto it = given.find(opt.key);
        std::string value = it != given.end() ? it->second : opt.default_value;
        if (opt.required && value.empty())
            throw ConfigError(opt.key, "field '" + opt.key + "': required");
        cfg.params[opt.key] = std::move(value);
    }
    return cfg;
}

std::vector<RunConfig> parse_batch(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ConfigError("batch", "batch file must be a JSON object");
    if (doc.value("schema", "") != kBatchSchema)
        throw ConfigError("schema", std::string("field 'schema': expected '") + kBatchSchema + "'");
    if (!doc.contains("runs") || !doc["runs"].is_array())
        throw ConfigError("runs", "field 'runs': expected an array");
    std::vector<RunConfig> runs;
    std::set<std::string> outputs;
    for (std::size_t i = 0; i < doc["runs"].size(); ++i) {
        const auto& run = doc["runs"][i];
        const std::string where = "runs[" + std::to_string(i) + "]";
        if (!run.is_object() || !run.contains("subcommand") || !run["subcommand"].is_string())
            throw ConfigError(where + ".subcommand", "field '" + where + ".subcommand': expected a string");
        std::map<std::string, std::string> given;
        if (run.contains("params")) {
            if (!run["params"].is_object())
                throw ConfigError(where + ".params", "field '" + where + ".params': expected an object");
            for (const auto& [key, value] : run["params"].items()) {
                if (value.is_string())
                    given[key] = value.get<std::string>();
                else if (value.is_array()) {
                    std::string joined;
                    for (const auto& v : value)
                        joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
                    given[key] = joined;
                }
                else
                    given[key] = value.dump();
            }
        }
        const std::string output = run.value("output", "");
        if (output.empty())
            throw ConfigError(where + ".output", "field '" + where + ".output': required in batch runs");
        if (!outputs.insert(output).second)
            throw ConfigError(where + ".output", "field '" + where + ".output': duplicate path " + output);
        try {
            runs.push_back(make_config(run["subcommand"].get<std::string>(), given, run.value("format", "json"), output));
        }
        catch (const ConfigError& e) {
            throw ConfigError(where + "." + e.field(), where + ": " + e.what());
        }
    }
    return runs;
}

nlohmann::json config_echo(const RunConfig& cfg)
{
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [key, value] : cfg.params)
        params[key] = value;
    return {{"subcommand", cfg.subcommand}, {"params", params}, {"format", cfg.format}};
}

const std::string& Params::str(const std::string& key) const
{
    const auto it = cfg_.params.find(key);
    if (it == cfg_.params.end())
        throw ConfigError(key, "field '" + key + "': not defined for " + cfg_.subcommand);
    return it->second;
}

long Params::integer(const std::string& key) const
{
    const std::string& s = str(key);
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    }
    catch (const std::exception&) {
    }
    bad(key, "an integer", s);
}

BigInt Params::big(const std::string& key) const
{
    const std::string& s = str(key);
    try {
        return parse_bigint(s);
    }
    catch (const MathError&) {
        bad(key, "an integer", s);
    }
}

Rat Params::rat(const std::string& key) const
{
    const std::string& s = str(key);
    try {
        return parse_rat(s);
    }
    catch (const MathError&) {
        bad(key, "a rational num/den", s);
    }
}

bool Params::flag(const std::string& key) const
{
    const std::string& s = str(key);
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no" || s.empty())
        return false;
    bad(key, "true or false", s);
}

std::vector<std::string> Params::list(const std::string& key) const
{
    std::vector<std::string> out;
    const std::string& s = str(key);
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        item = b == std::string::npos ? "" : item.substr(b, e - b + 1);
        if (item.empty())
            bad(key, "a comma-separated list without empty items", s);
        out.push_back(std::move(item));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::vector<long> Params::integers(const std::string& key) const
{
    std::vector<long> out;
    for (const auto& item : list(key)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size())
                bad(key, "integers", item);
        }
        catch (const std::logic_error&) {
            bad(key, "integers", item);
        }
    }
    return out;
}

std::vector<BigInt> Params::bigs(const std::string& key) const
{
    std::vector<BigInt> out;
    for (const auto& item : list(key)) {
        try {
            out.push_back(parse_bigint(item));
        }
        catch (const MathError&) {
            bad(key, "integers", item);
        }
    }
    return out;
}

std::vector<Rat> Params::rats(const std::string& key) const
{
    std::vector<Rat> out;
    for (const auto& item : list(key)) {
        try {
            out.push_back(parse_rat(item));
        }
        catch (const MathError&) {
            bad(key, "rationals num/den", item);
        }
    }
    return out;
}

} // namespace somos::cli
