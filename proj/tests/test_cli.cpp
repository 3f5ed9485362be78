#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "campaigns.hpp"
#include "config.hpp"
#include "csv.hpp"

using namespace heis::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("heis_cli_test_" + std::to_string(::getpid())) / name;
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HEIS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("config parse errors carry line and column") {
    try {
        parse_config("{\n  \"kind\": \"gram\",\n  \"seed\": ,\n}", "bad.json");
        FAIL("no error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.json:3:") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/heis.json"), ConfigError);
    CHECK(parse_config("{\"a\": [1, 2]}")["a"][1] == 2);
}

TEST_CASE("sections reject unknown keys and bad types") {
    const json j = parse_config(R"({"gram": {"J": 2, "typo": 1}, "seed": "x"})");
    const Section root(j, "");
    const Section g = root.sub("gram");
    CHECK_THROWS_AS(g.allow({"J", "K"}), ConfigError);
    CHECK_NOTHROW(g.allow({"J", "typo"}));
    CHECK(g.get<int>("J", 0) == 2);
    CHECK(g.get<int>("K", 7) == 7);
    try {
        root.get<int>("seed", 0);
        FAIL("no error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("seed") != std::string::npos);
    }
    RunOptions o;
    o.config = parse_config(R"({"kind": "gram", "gram": {"unknown_key": 1}})");
    CHECK_THROWS_AS(run_campaign("gram", o), ConfigError);
    o.config = parse_config(R"({"kind": "weyl"})");
    CHECK_THROWS_AS(run_campaign("gram", o), ConfigError);
    o.config = parse_config(R"({"kind": "gram", "extra": 1})");
    CHECK_THROWS_AS(run_campaign("gram", o), ConfigError);
}

TEST_CASE("csv tables") {
    CsvTable t({"a", "b"});
    CHECK(t.str() == "a,b\n");
    t.add({1, 0.1});
    CHECK(t.str() == "a,b\n1,0.10000000000000001\n");
    CHECK_THROWS(t.add({1.0}));
    CHECK(format_number(0.5) == "0.5");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    const auto dir = scratch("csv");
    CsvTable e({"x", "y", "z"});
    e.write((dir / "empty.csv").string());
    CHECK(slurp(dir / "empty.csv") == "x,y,z\n");
}

TEST_CASE("output directory resolution") {
    ::unsetenv("HEIS_OUT_DIR");
    CHECK(resolve_out_dir("", json::object()) == "heis_out");
    ::setenv("HEIS_OUT_DIR", "/tmp/from_env", 1);
    CHECK(resolve_out_dir("", json::object()) == "/tmp/from_env");
    CHECK(resolve_out_dir("", json{{"output_dir", "cfg"}}) == "cfg");
    CHECK(resolve_out_dir("flag", json{{"output_dir", "cfg"}}) == "flag");
    ::unsetenv("HEIS_OUT_DIR");
}

TEST_CASE("campaign outputs are reproducible") {
    RunOptions o;
    o.config = parse_config(R"({"kind": "conventions", "conventions": {"pairs": [[0, 0], [1, 0]]}})");
    o.grid = std::vector<std::size_t>{41};
    const auto a = run_campaign("conventions", o);
    const auto b = run_campaign("conventions", o);
    const auto da = scratch("rep_a"), db = scratch("rep_b");
    write_outputs(a, da.string());
    write_outputs(b, db.string());
    for (const auto& name : {"conventions_table.csv", "conventions_summary.txt"}) {
        REQUIRE(fs::exists(da / name));
        CHECK(slurp(da / name) == slurp(db / name));
    }
    const auto rep = json::parse(slurp(da / "conventions_report.json"));
    CHECK(rep["schema"] == "heis.conventions_report");
    CHECK(rep["schema_version"] == 1);
    CHECK(rep.contains("conventions"));
    CHECK(rep["all_checks_pass"] == a.ok());
}

TEST_CASE("solve log is indexed by increasing iteration") {
    RunOptions o;
    o.grid = std::vector<std::size_t>{13};
    o.config = parse_config(R"({"kind": "solve", "folland_stein": {"budget": 40}})");
    const auto r = run_campaign("solve", o);
    const auto dir = scratch("solve");
    write_outputs(r, dir.string());
    const auto rows = read_csv(slurp(dir / "solve_ps_log.csv"));
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"iteration", "energy", "grad_norm", "norm"});
    for (std::size_t i = 2; i < rows.size(); ++i) REQUIRE(std::stol(rows[i][0]) > std::stol(rows[i - 1][0]));
    const auto rep = json::parse(slurp(dir / "solve_report.json"));
    CHECK(rep["result"].contains("threshold_comparison"));
}

TEST_CASE("exit status") {
    const auto dir = scratch("exit");
    CHECK(run_cli("conventions --grid 41 --out " + (dir / "ok").string()) == 0);
    {
        std::ofstream f(dir / "broken.json");
        f << "{ \"kind\": \"gram\", ";
    }
    CHECK(run_cli("gram --config " + (dir / "broken.json").string() + " --out " + dir.string()) == 2);
    {
        std::ofstream f(dir / "window.json");
        f << R"({"kind": "solve", "problem": {"kirchhoff": {"kappa": 2.5}}})";
    }
    CHECK(run_cli("solve --config " + (dir / "window.json").string() + " --out " + (dir / "window").string()) == 2);
    const auto rep = json::parse(slurp(dir / "window" / "solve_report.json"));
    CHECK(rep["all_checks_pass"] == false);
    CHECK(run_cli("nonsense") != 0);
    ::setenv("HEIS_OUT_DIR", (dir / "env").c_str(), 1);
    CHECK(run_cli("conventions --grid 41") == 0);
    ::unsetenv("HEIS_OUT_DIR");
    CHECK(fs::exists(dir / "env" / "conventions_report.json"));
}
