#include "cli_report.hpp"

#include "somos/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace somos;
using namespace somos::cli;
using nlohmann::json;

namespace {

std::string run_rendered(const std::string& sub, const std::map<std::string, std::string>& given,
                         const std::string& format = "json")
{
    const RunConfig cfg = make_config(sub, given, format, "");
    return render(cfg, run_command(cfg));
}

std::string field_of(const std::function<void()>& f)
{
    try {
        f();
    }
    catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST_CASE("configs get defaults and reject bad input")
{
    const RunConfig cfg = make_config("seq", {{"to", "12"}}, "json", "");
    CHECK(cfg.params.at("k") == "4");
    CHECK(cfg.params.at("to") == "12");

    CHECK(field_of([] { make_config("seq", {{"bogus", "1"}}, "json", ""); }) == "bogus");
    CHECK(field_of([] { make_config("gaps", {}, "json", ""); }) == "p");
    CHECK(field_of([] { make_config("seq", {}, "xml", ""); }) == "format");
    CHECK(field_of([] { make_config("eds", {}, "csv", ""); }) == "format");
    CHECK_THROWS_AS(make_config("nope", {}, "json", ""), ConfigError);
}

TEST_CASE("typed parameter access names the field on failure")
{
    const RunConfig cfg = make_config("gaps", {{"p", "two"}}, "json", "");
    const Params p(cfg);
    CHECK(field_of([&] { (void)p.big("p"); }) == "p");
    CHECK(p.integer("rmax") == 3);
    CHECK(field_of([] { run_command(make_config("gaps", {{"p", "4"}}, "json", "")); }) == "p");
}

TEST_CASE("batch files are validated")
{
    const json good = json::parse(R"({"schema": "somos-batch/1", "runs": [
        {"subcommand": "seq", "params": {"to": 12, "init": [1, 1, 1, 1]}, "output": "a.json"},
        {"subcommand": "gaps", "params": {"p": "3"}, "format": "csv", "output": "b.csv"}]})");
    const auto runs = parse_batch(good);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].params.at("to") == "12");
    CHECK(runs[0].params.at("init") == "1,1,1,1");
    CHECK(runs[1].format == "csv");

    json dup = good;
    dup["runs"][1]["output"] = "a.json";
    CHECK_THROWS_AS(parse_batch(dup), ConfigError);
    json schema = good;
    schema["schema"] = "other/1";
    CHECK_THROWS_AS(parse_batch(schema), ConfigError);
    json missing = good;
    missing["runs"][0].erase("output");
    CHECK_THROWS_AS(parse_batch(missing), ConfigError);
}

TEST_CASE("reports carry schema, version and config echo")
{
    const json doc = json::parse(run_rendered("seq", {{"from", "1"}, {"to", "12"}}));
    CHECK(doc["schema"] == kReportSchema);
    CHECK(doc.contains("tool_version"));
    CHECK(doc["subcommand"] == "seq");
    CHECK(doc["config"]["params"]["to"] == "12");
    CHECK(doc["results"]["terms"].back() == "8209");
    CHECK(json::parse(doc.dump()) == doc);
}

TEST_CASE("robinson CSV has one row per prime")
{
    const std::string csv = run_rendered("robinson", {}, "csv");
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0].rfind("p,N1", 0) == 0);
    CHECK(lines[1].rfind("2,5,", 0) == 0);
    CHECK(lines[2].rfind("3,7,", 0) == 0);
}

TEST_CASE("an empty gap report is still valid output")
{
    const json doc = json::parse(run_rendered("gaps", {{"p", "5"}, {"rmax", "2"}}));
    const auto& reports = doc["results"]["reports"];
    REQUIRE(reports.size() == 2);
    CHECK(reports[0]["occurrences"].empty());
    CHECK(reports[0]["gap"].is_null());
    CHECK(doc["results"]["classification"] == "inconclusive");
}

TEST_CASE("arithmetic failures surface as MathError with an index")
{
    try {
        run_rendered("seq", {{"init", "0,1,1,1"}, {"from", "1"}, {"to", "30"}});
        FAIL("expected ZeroDivisor");
    }
    catch (const MathError& e) {
        CHECK(e.kind() == ErrorKind::ZeroDivisor);
        CHECK(e.index() == 1);
    }
    const json err = error_json({"NotDivisible", "t[5]", 5L, std::nullopt});
    CHECK(err["error"]["kind"] == "NotDivisible");
    CHECK(err["error"]["index"] == 5);
    CHECK_FALSE(err["error"].contains("field"));
}

TEST_CASE("rendering is deterministic")
{
    for (const char* sub : {"seq", "invariants", "period", "eds", "closure", "conjecture"}) {
        std::map<std::string, std::string> given;
        if (std::string(sub) == "closure")
            given["seed"] = "0,6,10";
        CHECK_MESSAGE(run_rendered(sub, given) == run_rendered(sub, given), sub);
    }
}

TEST_CASE("atomic writes leave no partial file")
{
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "somos_cli_test";
    fs::remove_all(dir);
    const fs::path target = dir / "nested" / "report.json";
    write_atomic(target.string(), "{}\n");
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content == "{}\n");
    CHECK_FALSE(fs::exists(target.string() + ".partial"));
    fs::remove_all(dir);
}
