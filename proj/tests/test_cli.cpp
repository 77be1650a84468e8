#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "steklov/characteristic.hpp"
#include "steklov/cli.hpp"
#include "steklov/table_io.hpp"

using namespace steklov;
using cli::Command;
using cli::RunSpec;

namespace {

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome run(const RunSpec& spec) {
    std::ostringstream out, err;
    const int status = cli::run(spec, out, err);
    return {status, out.str(), err.str()};
}

Outcome run_argv(std::vector<std::string> args) {
    // main_entry writes to std::cout; redirect into a buffer.
    std::vector<char*> argv;
    args.insert(args.begin(), "steklov-cli");
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    const int status = cli::main_entry(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("range parsing") {
    const auto r = cli::parse_index_range("0..6");
    CHECK(r.first == 0);
    CHECK(r.last == 6);
    CHECK(cli::parse_index_range("3").first == 3);
    CHECK(cli::parse_index_range("3").last == 3);
    const auto e = cli::parse_real_range("0.005..0.995");
    CHECK(e.first == 0.005);
    CHECK(e.last == 0.995);
    CHECK_THROWS_AS(cli::parse_index_range("a..b"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_real_range("1..2..3"), cli::UsageError);
}

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 2.0, 1e-300, 6.02214076e23}) CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("spectrum command") {
    RunSpec s;
    s.command = Command::Spectrum;
    s.dimension = 3;
    s.mass = "4pi";
    s.l_max = 3;
    const Outcome o = run(s);
    REQUIRE(o.status == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"l", "lambda", "multiplicity", "slope"});
    CHECK(rows[2][1] == "1");
    CHECK(rows[4][2] == "7");

    s.format = cli::Format::Json;
    const auto j = nlohmann::json::parse(run(s).out);
    CHECK(j.size() == 4);
    CHECK(j[3]["multiplicity"] == "7");
}

TEST_CASE("branch table re-validates") {
    RunSpec s;
    s.command = Command::Branch;
    s.l = {2, 2};
    s.eps_max = 0.9;
    s.steps = 30;
    const Outcome o = run(s);
    REQUIRE(o.status == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 31);
    CHECK(rows[0] == std::vector<std::string>{"epsilon", "lambda", "residual"});
    const model::ProblemConfig cfg(2, model::parse_mass("pi"), 2);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double eps = std::stod(rows[i][0]);
        const double lambda = std::stod(rows[i][1]);
        CHECK(branch::residual_at(cfg, eps, lambda) <= branch::root_tolerance());
    }
}

TEST_CASE("branch sidecar next to the output file") {
    const auto dir = std::filesystem::temp_directory_path() / "steklov_cli_test";
    std::filesystem::create_directories(dir);
    const auto csv = dir / "b.csv";
    RunSpec s;
    s.command = Command::Branch;
    s.l = {1, 1};
    s.eps_max = 0.3;
    s.steps = 5;
    s.output = csv.string();
    REQUIRE(run(s).status == 0);
    std::ifstream meta(csv.string() + ".json");
    REQUIRE(meta.good());
    const auto j = nlohmann::json::parse(meta);
    CHECK(j["N"] == 2);
    CHECK(j["l"] == 1);
    CHECK(j["anchor_lambda"] == 2.0);
    CHECK(j["truncated"] == false);
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure output is deterministic") {
    RunSpec s;
    s.command = Command::Figure;
    s.l = {0, 3};
    s.eps_range = {0.05, 0.95};
    s.eps_count = 10;
    const Outcome a = run(s);
    const Outcome b = run(s);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto rows = parse_csv(a.out);
    CHECK(rows[0] == std::vector<std::string>{"l", "branch", "epsilon", "lambda", "residual"});
    CHECK(rows.size() > 40);
}

TEST_CASE("slope and verification commands") {
    RunSpec s;
    s.command = Command::Slope;
    s.l = {1, 1};
    const auto rows = parse_csv(run(s).out);
    REQUIRE(rows.size() == 4);
    CHECK(std::abs(std::stod(rows[3][2]) - 7.0 / 3.0) < 1e-3);

    RunSpec v;
    v.command = Command::VerifyCrossprod;
    v.k_max = 6;
    CHECK(run(v).status == 0);

    RunSpec r;
    r.command = Command::VerifyRemainder;
    r.l = {2, 2};
    CHECK(run(r).status == 0);

    RunSpec oc;
    oc.command = Command::OracleCompare;
    oc.l = {1, 1};
    oc.epsilon = 0.05;
    const auto orows = parse_csv(run(oc).out);
    REQUIRE(orows.size() == 2);
    CHECK(std::stod(orows[1][3]) < 1e-8);

    RunSpec ef;
    ef.command = Command::Eigenfunction;
    ef.l = {1, 1};
    ef.epsilon = 0.3;
    ef.points = 11;
    const auto erows = parse_csv(run(ef).out);
    REQUIRE(erows.size() == 12);
    CHECK(std::abs(std::stod(erows.back()[2])) < 1e-8);
}

TEST_CASE("errors are JSON with exit codes") {
    RunSpec s;
    s.command = Command::Branch;
    s.l = {1, 1};
    s.eps_max = 1.5;
    const Outcome o = run(s);
    CHECK(o.status == 2);
    const auto j = nlohmann::json::parse(o.err);
    CHECK(j["code"] == "domain_error");
    CHECK(j.contains("message"));
    CHECK(j.contains("context"));

    RunSpec m;
    m.command = Command::Spectrum;
    m.mass = "abc";
    CHECK(run(m).status == 2);

    RunSpec oc;
    oc.command = Command::OracleCompare;
    oc.l = {1, 1};
    CHECK(run(oc).status == 2);  // missing --eps
}

TEST_CASE("argument parsing") {
    const Outcome o = run_argv({"spectrum", "--N", "2", "--M", "pi", "--l-max", "2"});
    CHECK(o.status == 0);
    CHECK(parse_csv(o.out).size() == 4);

    const Outcome sl = run_argv({"slope", "--N", "2", "--M", "pi", "--l", "1", "--eps-list", "0.01,0.001"});
    CHECK(sl.status == 0);
    CHECK(parse_csv(sl.out).size() == 3);

    const Outcome bad = run_argv({"figure", "--N", "2", "--l", "0..2"});
    CHECK(bad.status == 2);
    CHECK(nlohmann::json::parse(bad.err)["code"] == "usage");

    CHECK(run_argv({"spectrum", "--N", "0"}).status == 2);
    CHECK(run_argv({"nonsense"}).status == 2);
}
