#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rml/experiment.hpp"

using namespace rml;

namespace {

int run_cli(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "rml");
    for (auto& a : args) argv.push_back(a.data());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/rml_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    json read() const {
        std::ifstream in(path);
        json j;
        in >> j;
        return j;
    }
};

}  // namespace

TEST_CASE("validation errors exit with code 2") {
    CHECK(run_cli({"gkp-mc", "--p", "2", "--m", "3", "--n", "3", "--k", "4", "--trials", "1"}) == 2);
    CHECK(run_cli({"gkp-mc", "--p", "6", "--m", "3", "--n", "3", "--k", "2", "--trials", "1"}) == 2);
    CHECK(run_cli({"nonsense"}) == 2);
}

TEST_CASE("guard violations exit with code 3") {
    TempFile out("guard.json");
    CHECK(run_cli({"ld-mrd", "--m", "9", "--n", "9", "--k", "2", "--ell", "9", "--trials", "1",
                   "--out", out.path}) == 3);
}

TEST_CASE("empty trial list gives a clean empty report") {
    TempFile out("empty.json");
    CHECK(run_cli({"gkp-mc", "--m", "4", "--n", "3", "--k", "2", "--ell", "2", "--trials", "0",
                   "--seed", "1", "--out", out.path}) == 0);
    json report = out.read();
    CHECK(report["trials"].empty());
    CHECK(report["pass_count"] == 0);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
    TempFile out1("det1.json"), out2("det2.json");
    const std::vector<std::string> base{"gkp-mc", "--m",    "6",        "--n",  "3",
                                        "--k",    "2",      "--ell",    "2",    "--trials",
                                        "8",      "--seed", "424242",   "--out"};
    auto args1 = base;
    args1.push_back(out1.path);
    auto args2 = base;
    args2.push_back(out2.path);
    CHECK(run_cli(args1) == 0);
    CHECK(run_cli(args2) == 0);
    json r1 = out1.read(), r2 = out2.read();
    r1.erase("wall_clock_ms");
    r2.erase("wall_clock_ms");
    CHECK(r1.dump() == r2.dump());
}

TEST_CASE("gkp-mc report carries the floor block") {
    TempFile out("floor.json");
    CHECK(run_cli({"gkp-mc", "--m", "28", "--n", "3", "--k", "2", "--ell", "2", "--trials", "3",
                   "--seed", "7", "--out", out.path}) == 0);
    json report = out.read();
    CHECK(report["floor"]["factor"] == 6);
    CHECK(report["floor"]["exponent"] == 3 * 2 * 2 + 2 - 28);
    CHECK(report["pass_count"] == 3);
    CHECK(report["patterns_per_trial"] == 29);
}

TEST_CASE("equivalence command on tiny parameters") {
    TempFile out("equiv.json");
    CHECK(run_cli({"equivalence", "--m", "3", "--n", "3", "--k", "1", "--ell", "1", "--trials",
                   "6", "--seed", "11", "--out", out.path}) == 0);
    json report = out.read();
    CHECK(report["pass_count"] == 6);
    CHECK(report["violations"] == 0);
}

TEST_CASE("dual command emits a verification block") {
    TempFile out("dual.json");
    CHECK(run_cli({"dual", "--m", "4", "--n", "3", "--k", "1", "--seed", "5", "--out",
                   out.path}) == 0);
    json report = out.read();
    CHECK(report["verification"]["pairings_all_zero"] == true);
    CHECK(report["verification"]["beta_independent"] == true);
    CHECK(report["verification"]["double_dual_equals_code"] == true);

    // Round-trip through a code file.
    TempFile code_file("code.json");
    {
        std::ofstream os(code_file.path);
        os << report["code"].dump();
    }
    TempFile out2("dual2.json");
    CHECK(run_cli({"dual", "--in", code_file.path, "--out", out2.path}) == 0);
    CHECK(out2.read()["verification"]["pairings_all_zero"] == true);
}

TEST_CASE("ms-scan on tiny parameters stays clean") {
    TempFile out("msscan.json");
    CHECK(run_cli({"ms-scan", "--m", "8", "--n", "3", "--k", "2", "--ell", "2", "--trials", "2",
                   "--seed", "3", "--out", out.path}) == 0);
    json report = out.read();
    CHECK(report["hard_violations"] == 0);
}

TEST_CASE("intersection command certifies and scans") {
    TempFile out("inter.json");
    CHECK(run_cli({"intersection", "--m", "12", "--n", "3", "--k", "2", "--ell", "2", "--seed",
                   "9", "--out", out.path}) == 0);
    json report = out.read();
    CHECK(report["certified"] == true);
    CHECK(report["tuples_checked"] == 225);
}

TEST_CASE("csv format emits one row per trial") {
    TempFile out("rows.csv");
    CHECK(run_cli({"gkp-mc", "--m", "5", "--n", "3", "--k", "2", "--ell", "1", "--trials", "4",
                   "--seed", "2", "--format", "csv", "--out", out.path}) == 0);
    std::ifstream in(out.path);
    std::string line;
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);  // header + 4 trials
}
