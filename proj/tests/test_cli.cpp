#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "fbm/cli/run.hpp"
#include "fbm/cli/table.hpp"

using namespace fbm::cli;

namespace {

struct Output {
    int status;
    std::string out;
    std::string log;
};

Output run_manifest(const RunManifest& m) {
    std::ostringstream out, log;
    const int status = run(m, out, log);
    return {status, out.str(), log.str()};
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    FAIL("no column " << name);
    return 0;
}

int shell(const std::string& args) {
    const std::string cmd = std::string(FBMSIM_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

} // namespace

TEST_CASE("number formatting") {
    CHECK(format_fixed(3.44523, 4) == "3.4452");
    CHECK(format_fixed(-0.00001, 4) == "0.0000");
    CHECK(format_fixed(-1.5, 2) == "-1.50");
    CHECK(format_full(0.1) == "0.1");
    CHECK(format_full(0.0001) == "0.0001");
    CHECK(std::stod(format_full(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv round trip") {
    Table t{{"a", "b", "c", "d", "e"}};
    t.add_row({std::string("x"), std::int64_t{42}, 1.0 / 7.0, Rounded{2.0 / 3.0}, Cell{}});
    t.add_row({std::string("y"), std::int64_t{-1}, -1e-300, Rounded{-1.25, 1}, true});
    const std::string csv = to_csv(t);
    CHECK(csv.find('\r') == std::string::npos);
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"a", "b", "c", "d", "e"});
    CHECK(rows[1][0] == "x");
    CHECK(std::stoll(rows[1][1]) == 42);
    CHECK(std::stod(rows[1][2]) == 1.0 / 7.0);
    CHECK(rows[1][3] == "0.6667");
    CHECK(rows[1][4].empty());
    CHECK(std::stod(rows[2][2]) == -1e-300);
    CHECK(rows[2][3] == "-1.2");
    CHECK(rows[2][4] == "true");
    CHECK_THROWS_AS(t.add_row({std::string("short")}), std::logic_error);
}

TEST_CASE("limit command") {
    RunManifest m;
    m.command = Command::limit;
    m.n_exponents = {20};
    const auto r = run_manifest(m);
    REQUIRE(r.status == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][column(rows[0], "value")] == "3.4452");
    const double full = std::stod(rows[1][column(rows[0], "value_full")]);
    CHECK(std::abs(full - 3.4452) < 5e-5);
}

TEST_CASE("table4 Borovkov cell at H=0.0013") {
    RunManifest m;
    m.command = Command::table4;
    const auto r = run_manifest(m);
    REQUIRE(r.status == kExitOk);
    const auto rows = parse_csv(r.out);
    const auto q = column(rows[0], "quantity"), h = column(rows[0], "H"), v = column(rows[0], "value");
    bool found = false;
    for (const auto& row : rows)
        if (row[q] == "borovkov_lower" && row[h] == "0.0013") {
            found = true;
            CHECK(row[v] == "5.6998");
        }
    CHECK(found);
}

TEST_CASE("simulate: single-point paths have mean 0") {
    RunManifest m;
    m.command = Command::simulate;
    m.h_values = {0.5};
    m.n_exponents = {0};
    m.sample_size = 100000;
    const auto r = run_manifest(m);
    REQUIRE(r.status == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 100001);
    const auto col = column(rows[0], "max");
    double sum = 0, sq = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][col]);
        sum += x;
        sq += x * x;
    }
    const double n = 100000, mean = sum / n, var = (sq - n * mean * mean) / (n - 1);
    CHECK(std::abs(mean) < 3 * std::sqrt(var / n));
}

TEST_CASE("same manifest gives byte-identical files") {
    const auto dir = std::filesystem::temp_directory_path() / "fbmsim_cli_test";
    std::filesystem::create_directories(dir);
    RunManifest m;
    m.command = Command::table1;
    m.h_values = {0.01, 0.0001};
    m.n_exponents = {6, 7};
    m.sample_size = 50;
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    m.output_path = (dir / "a.csv").string();
    REQUIRE(run_manifest(m).status == kExitOk);
    m.output_path = (dir / "b.csv").string();
    m.policy = fbm::ExecutionPolicy::serial;
    REQUIRE(run_manifest(m).status == kExitOk);
    const std::string a = slurp(dir / "a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("json output has one object per row with csv keys") {
    RunManifest m;
    m.command = Command::bounds;
    m.h_values = {0.05};
    m.n_exponents = {20};
    m.format = OutputFormat::json;
    const auto r = run_manifest(m);
    REQUIRE(r.status == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 8);
    for (const auto& row : j) {
        CHECK(row.contains("quantity"));
        CHECK(row.contains("value_full"));
    }
    m.format = OutputFormat::csv;
    const auto rows = parse_csv(run_manifest(m).out);
    CHECK(rows.size() == j.size() + 1);
    for (std::size_t i = 0; i < j.size(); ++i)
        CHECK(j[i]["value_full"].get<double>() == std::stod(rows[i + 1][column(rows[0], "value_full")]));
}

TEST_CASE("table1 marks Clark cells above the size guard") {
    RunManifest m;
    m.command = Command::table1;
    m.h_values = {0.01};
    m.n_exponents = {18};
    m.methods = {Method::clark};
    const auto r = run_manifest(m);
    REQUIRE(r.status == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][column(rows[0], "status")] == "skipped");
    CHECK(rows[1][column(rows[0], "value")].empty());
}

TEST_CASE("usage errors") {
    RunManifest m;
    m.command = Command::table1;
    m.h_values = {1.5};
    CHECK(run_manifest(m).status == kExitUsage);
    m.h_values = {0.1};
    m.n_exponents = {32};
    CHECK(run_manifest(m).status == kExitUsage);
    m.n_exponents = {8};
    m.sample_size = 1;
    CHECK(run_manifest(m).status == kExitUsage);
    m.sample_size.reset();
    m.command = Command::limit;
    m.methods = {Method::clark};
    CHECK(run_manifest(m).status == kExitUsage);
    m.methods.clear();
    m.output_path = "/nonexistent-dir/x.csv";
    CHECK(run_manifest(m).status != kExitOk);
}

TEST_CASE("fbmsim exit codes") {
    CHECK(shell("limit --n-exp 8") == 0);
    CHECK(shell("table4 --h 0.5 --n-exp 8 --format json") == 0);
    CHECK(shell("") == 2);
    CHECK(shell("nonsense") == 2);
    CHECK(shell("table1 --h 2") == 2);
    CHECK(shell("limit --format xml") == 2);
    CHECK(shell("table1 --n-exp 40") == 2);
    CHECK(shell("--help") == 0);
}
