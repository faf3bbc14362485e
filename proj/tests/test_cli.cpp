#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sigreg/cli.hpp"
#include "sigreg/errors.hpp"

using namespace sigreg;
using namespace sigreg::cli;

namespace {

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "sigreg");
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path scratch(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("sigreg_test_cli_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string write_config(const std::filesystem::path& dir, const Json& j) {
    const auto p = dir / "config.json";
    std::ofstream(p) << j.dump();
    return p.string();
}

Json flipped_table() {
    const std::vector<double> xs{1, 2, 3}, ys{0, 1, 2};
    std::vector<std::vector<double>> t;
    for (double x : xs) {
        t.emplace_back();
        for (double y : ys) t.back().push_back(std::pow(x, y));
    }
    t[1][1] = -t[1][1];
    return {{"kernel", {{"family", "custom_table"}, {"table_x", xs}, {"table_y", ys}, {"table", t}}}};
}

}  // namespace

TEST_CASE("every command runs on its defaults and validates") {
    for (const std::string& name : command_names()) {
        CAPTURE(name);
        Json cfg = Json::object();
        if (name == "identity-check") cfg["draws"] = 100;
        const CommandOutput out = run_command(name, cfg, 7);
        CHECK(out.exit_code == kExitOk);
        CHECK(out.report["kind"] == name);
        CHECK(!out.csv.empty());
        CHECK_NOTHROW(validate_report(out.report));
        CHECK_NOTHROW(validate_report(Json::parse(out.report.dump(2))));
    }
}

TEST_CASE("outputs are deterministic for a fixed seed") {
    const Json cfg = {{"xs", {{"type", "uniform"}, {"lo", 0.1}, {"hi", 3.0}, {"count", 30}}},
                      {"ys", {{"type", "uniform"}, {"lo", 0.1}, {"hi", 3.0}, {"count", 30}}},
                      {"kernel", {{"family", "exp_decay"}}},
                      {"subset_budget", 500}};
    const auto a = run_command("certify", cfg, 5);
    const auto b = run_command("certify", cfg, 5);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.csv == b.csv);
    const auto c = run_command("identity-check", {{"draws", 50}}, 3);
    const auto d = run_command("identity-check", {{"draws", 50}, {"seed", 3}});
    CHECK(c.report["result"].dump() == d.report["result"].dump());
}

TEST_CASE("command results") {
    CHECK(run_command("certify", Json::object()).report["result"]["signature"] == "(+,+,+)");
    const auto flip = run_command("certify", flipped_table());
    CHECK(flip.exit_code == kExitViolation);
    CHECK(!flip.report["counterexamples"].empty());
    const auto same = run_command("classify-series", {{"a", {1, 2, 3}}, {"b", {1, 2, 3}}});
    CHECK(same.report["result"]["verdict"]["class"] == "constant");
    const auto inv = run_command("classify-series", {{"family", "inverse_factorial"}, {"a", {0, 1}}, {"b", {1, 1}}});
    CHECK(inv.report["result"]["tail_slope_at_grid_end"].get<double>() < 0.0);
    const auto nut = run_command("nuttall", Json::object());
    REQUIRE(nut.report.contains("kummer_check"));
    CHECK(nut.report["kummer_check"]["max_relative_deviation"].get<double>() <= 1e-6);
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(run_command("certify", {{"kernel", {{"family", "q_pochhammer"}, {"q", 1.5}}}}), Error);
    CHECK_THROWS_AS(run_command("certify", {{"colour", "red"}}), InputError);
    CHECK_THROWS_AS(run_command("certify", {{"kernel", {{"family", "power"}, {"alpha", 2}}}}), InputError);
    CHECK_THROWS_AS(run_command("teleport", Json::object()), InputError);
    CHECK_THROWS_AS(run_command("classify-series", {{"a", {1, 2}}, {"b", {1}}}), Error);
}

TEST_CASE("exit codes and files") {
    const auto dir = scratch("codes");
    CHECK(run_args({"certify", "--out", dir.string()}) == kExitOk);
    CHECK(std::filesystem::exists(dir / "certify.json"));
    CHECK(std::filesystem::exists(dir / "certify.meta.json"));
    CHECK(!std::filesystem::exists(dir / "certify.csv"));
    CHECK(run_args({"certify", "--out", dir.string(), "--format", "both"}) == kExitOk);
    CHECK(std::filesystem::exists(dir / "certify.csv"));
    CHECK(run_args({"certify", "--config", write_config(dir, flipped_table()), "--out", dir.string()}) == kExitViolation);
    CHECK(run_args({"certify", "--config", write_config(dir, {{"kernel", {{"family", "q_pochhammer"}, {"q", 1.5}}}}),
                    "--out", dir.string()}) == kExitInput);
    CHECK(run_args({"certify", "--config", write_config(dir, {{"colour", 1}}), "--out", dir.string()}) == kExitInput);
    {
        std::ofstream(dir / "broken.json") << "{ not json";
    }
    CHECK(run_args({"certify", "--config", (dir / "broken.json").string(), "--out", dir.string()}) == kExitInput);
    CHECK(run_args({"certify", "--config", (dir / "missing.json").string()}) == kExitIo);
    CHECK(run_args({"certify", "--format", "xml"}) == kExitInput);
    CHECK(run_args({}) == kExitInput);
    std::ofstream(dir / "blocker") << "x";
    CHECK(run_args({"certify", "--out", (dir / "blocker" / "sub").string()}) == kExitIo);
    std::filesystem::remove_all(dir);
}
