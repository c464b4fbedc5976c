#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "jfx/json_io.hpp"

namespace fs = std::filesystem;
using jfx::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr combined
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(JFX_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

class TempDir {
  public:
    TempDir() : path_(fs::temp_directory_path() / "jfx_cli_test") {
        fs::create_directories(path_);
    }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path_ / name;
        std::ofstream out(p);
        out << content;
        return p;
    }

  private:
    fs::path path_;
};

const std::string kH2Json = R"({"breakpoints": ["0", "1/2", "1"], "values": ["1", "-1"]})";
const std::string kTentCsv = "0,0\n1/2,1\n1,0\n";

}  // namespace

TEST_CASE("cli norm prints a certificate and exits 0") {
    TempDir dir;
    const auto input = dir.file("h2.json", kH2Json);
    const auto res = run_cli("norm " + input.string());
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["value"] == 0.7071067811865476);
    CHECK(j["mode"] == "exact");
    CHECK(j["family"] == json::array({"0", "1/2", "1"}));
    CHECK(j["stats"]["elapsed_ms"] == 0);  // timing suppressed by default

    // Byte-identical across runs.
    const auto again = run_cli("norm " + input.string());
    CHECK(again.output == res.output);

    const auto csv = run_cli("norm --out csv " + input.string());
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.rfind("value,mode,nodes,elapsed_ms,family\n", 0) == 0);
    CHECK(csv.output.find("0.7071067811865476,exact,") != std::string::npos);
    CHECK(csv.output.find("0;1/2;1") != std::string::npos);
}

TEST_CASE("cli norm handles grids and reading from stdin") {
    TempDir dir;
    const std::string grid =
        R"({"cuts": [["0","1/2","1"],["0","1/2","1"]], "cells": [["1","-1"],["-1","1"]]})";
    const auto input = dir.file("checker.json", grid);
    const auto res = run_cli("norm " + input.string());
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["value"] == 0.5);
    CHECK(j["family"][0].contains("lo"));

    const auto piped = run_cli("norm - < " + input.string());
    CHECK(piped.exit_code == 0);
    CHECK(piped.output == res.output);
}

TEST_CASE("cli norm reports lower bounds through exit code 2") {
    TempDir dir;
    // 32 cells in a non-lp space exceeds the exhaustive cap; a tiny node
    // budget then forces a truncated search.
    json f;
    f["breakpoints"] = json::array();
    f["values"] = json::array();
    for (int i = 0; i <= 32; ++i)
        f["breakpoints"].push_back(std::to_string(i) + "/32");
    for (int i = 0; i < 32; ++i)
        f["values"].push_back(i % 3 == 0 ? "1" : (i % 3 == 1 ? "-2" : "1/2"));
    const auto input = dir.file("long.json", f.dump());

    const std::string space = " --space lorentz:p=2,w=harmonic --limit-nodes 50 ";
    const auto strict = run_cli("norm" + space + input.string());
    CHECK(strict.exit_code == 1);
    CHECK(strict.output.find("error:") != std::string::npos);

    const auto bounded = run_cli("norm --mode bounded" + space + input.string());
    REQUIRE(bounded.exit_code == 2);
    const json j = json::parse(bounded.output);
    CHECK(j["mode"] == "lower_bound");
    CHECK(j["value"] > 0.0);
}

TEST_CASE("cli norm rejects malformed input with a named field") {
    TempDir dir;
    const auto missing = dir.file("missing.json", R"({"breakpoints": ["0","1"]})");
    const auto res = run_cli("norm " + missing.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("values") != std::string::npos);

    const auto neither = dir.file("neither.json", R"({"nope": 1})");
    const auto res2 = run_cli("norm " + neither.string());
    CHECK(res2.exit_code == 1);
    CHECK(res2.output.find("breakpoints") != std::string::npos);

    const auto res3 = run_cli("norm --space lp:0.5 " + missing.string());
    CHECK(res3.exit_code == 1);
    CHECK(res3.output.find("lp") != std::string::npos);

    const auto res4 = run_cli("norm /nonexistent/in.json");
    CHECK(res4.exit_code == 1);
}

TEST_CASE("cli var reports variation, modulus, and split") {
    TempDir dir;
    const auto input = dir.file("tent.csv", kTentCsv);
    const auto res = run_cli("var --modulus 1/4 --split 1/2 " + input.string());
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.output);
    CHECK(j["value"].get<double>() == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(j["mode"] == "exact");
    CHECK(j["modulus"]["delta"] == "1/4");
    CHECK(j["modulus"]["value"].get<double>() > 0.0);
    CHECK(j["split"]["eps"] == "1/2");
    CHECK(j["split"]["support_measure"] == "1/2");
    CHECK(j["split"]["regions"][0] == json::array({"1/4", "3/4"}));

    const auto csv = run_cli("var --out csv --split 1/2 " + input.string());
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.output.find("split_eps") != std::string::npos);
    CHECK(csv.output.find(",1/2,1/2\n") != std::string::npos);
}

TEST_CASE("cli var rejects paths that do not start at the origin") {
    TempDir dir;
    const auto input = dir.file("bad.csv", "0,1\n1,0\n");
    const auto res = run_cli("var " + input.string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("f(0) = 0") != std::string::npos);
}

TEST_CASE("cli ccp growth table") {
    const auto res =
        run_cli("ccp --schedule 4,5,6 --space lorentz:p=2,w=harmonic --out csv");
    REQUIRE(res.exit_code == 0);
    REQUIRE(res.output.rfind("K,value,control,annotation\n", 0) == 0);
    std::istringstream lines(res.output);
    std::string line;
    std::getline(lines, line);  // header
    double prev = 0.0;
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        const double value = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(value > prev);
        prev = value;
    }
    CHECK(rows == 3);

    // The same experiment in json.
    const auto js = run_cli("ccp --schedule 4,5,6 --space lorentz:p=2,w=harmonic");
    const json arr = json::parse(js.output);
    REQUIRE(arr.size() == 3);
    CHECK(arr[0]["K"] == 1);
    CHECK(arr[2]["value"].get<double>() > arr[0]["value"].get<double>());
}

TEST_CASE("cli ccp instance and rademacher modes") {
    const auto inst = run_cli("ccp --levels 1,2 --sizes 1,2 --out csv");
    REQUIRE(inst.exit_code == 0);
    CHECK(inst.output.rfind("density,value\n", 0) == 0);
    CHECK(inst.output.find("\n1,") != std::string::npos);  // density exactly 1

    const auto rad = run_cli("ccp --rademacher 1,3 --out csv");
    REQUIRE(rad.exit_code == 0);
    CHECK(rad.output.rfind("K,index,value\n", 0) == 0);

    CHECK(run_cli("ccp --levels 1,2 --sizes 9,1").exit_code == 1);
    CHECK(run_cli("ccp").exit_code == 1);
    CHECK(run_cli("ccp --schedule 4 --rademacher 1").exit_code == 1);
    CHECK(run_cli("ccp --schedule 4 --space lp:2").exit_code == 1);
}

TEST_CASE("cli verify prints one line per invariant") {
    const auto res = run_cli("verify symnorm --seed 99");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("PASS symnorm/") != std::string::npos);
    CHECK(res.output.find("slack=") != std::string::npos);
    CHECK(res.output.find("summary:") != std::string::npos);
    CHECK(res.output.find("FAIL") == std::string::npos);

    const auto unknown = run_cli("verify bogus");
    CHECK(unknown.exit_code == 1);
    CHECK(unknown.output.find("unknown suite") != std::string::npos);
    CHECK(unknown.output.find("ccp") != std::string::npos);
}
