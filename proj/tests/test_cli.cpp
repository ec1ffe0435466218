// Copyright 2026 The qdconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qdconv/cli.hpp"
#include "qdconv/config.hpp"

using namespace qdconv;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qdconv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

// Value printed on the "name  value" line of a record.
double printed(const std::string& text, const std::string& name)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key, value;
        ls >> key >> value;
        if (key == name) return std::stod(value);
    }
    FAIL("no line for " << name);
    return 0.0;
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "qdconv_cli_tests";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::filesystem::remove(p);
    std::filesystem::remove(p.string() + ".meta.json");
    return p;
}

void write(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("empty config gives the documented defaults")
{
    const RunConfig c = parse_config(Json::object());
    CHECK(c.params.gamma_p == 1.0);
    CHECK(c.params.gamma_l == 1.0);
    CHECK(c.params.gamma_r == 1.0);
    CHECK(c.params.temp == 295.0);
    CHECK(c.params.temp_p == 5780.0);
    CHECK(c.params.r_p == 0.0);
    CHECK(c.params.r_l == 0.0);
    CHECK(c.params.tau == 0.0);
    CHECK(c.scaled_input);
    CHECK(c.format == TableFormat::Csv);
    CHECK_FALSE(c.out);
    CHECK(c.workers >= 1);
}

TEST_CASE("physical and scaled blocks are exclusive")
{
    const Json both = Json::parse(R"({"scaled": {"x_g": 2}, "physical": {"eps_g": 1, "eps_l": 0, "mu_l": 0, "mu_r": 0}})");
    CHECK_THROWS_AS(parse_config(both), ConfigError);
    const Json phys = Json::parse(R"({"physical": {"eps_g": 11560, "eps_l": 0, "mu_l": 0, "mu_r": 100}})");
    ConfigOverrides ov;
    ov.x_l = 1.0;
    CHECK_THROWS_AS(parse_config(phys, ov), ConfigError);
    const RunConfig c = parse_config(phys);
    CHECK_FALSE(c.scaled_input);
    CHECK(c.scaled.x_g == 2.0);
    CHECK(c.params.mu_r == 100.0);
}

TEST_CASE("coupling out of range is rejected with its constraint")
{
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({"model": {"r_p": 1.5}})")),
                         "r_p = 1.5 violates 0 <= r_P <= 1", ConfigError);
}

TEST_CASE("unknown keys are all listed")
{
    const Json doc = Json::parse(R"({"model": {"rp": 1}, "extra": 2, "optimizer": {"bounds": {"x_q": [0, 1]}}})");
    CHECK_THROWS_WITH_AS(parse_config(doc), "config: unknown key(s): model.rp extra optimizer.bounds.x_q",
                         ConfigError);
}

TEST_CASE("flags override the file")
{
    const Json doc = Json::parse(R"({"model": {"r_p": 0.2, "tau": 3, "gamma": 2}, "scaled": {"x_l": 1}, "workers": 3})");
    ConfigOverrides ov;
    ov.r_p = 0.7;
    ov.tau = "inf";
    ov.workers = 1;
    const RunConfig c = parse_config(doc, ov);
    CHECK(c.params.r_p == 0.7);
    CHECK(c.params.tau == kInfiniteDecoherence);
    CHECK(c.params.gamma_l == 2.0);
    CHECK(c.scaled.x_l == 1.0);
    CHECK(c.workers == 1);
}

TEST_CASE("echo parses back to the same configuration")
{
    const Json doc = Json::parse(R"({"model": {"r_p": 0.3, "tau": "inf"}, "scaled": {"x_g": 3, "x_l": -1, "x_r": 5},
        "optimizer": {"free": ["x_g", "x_r"], "grid_points": 8}, "sweeps": {"fig3b": {"tau_values": [0, "inf"]}}})");
    const RunConfig c = parse_config(doc);
    const RunConfig again = parse_config(c.echo());
    CHECK(again.echo() == c.echo());
    CHECK(again.free.size() == 2);
    CHECK(again.optimizer.grid_points == 8);
}

TEST_CASE("invalid optimizer and sweep settings")
{
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"optimizer": {"free": ["x_g", "x_g"]}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"optimizer": {"bounds": {"x_l": [5, -5]}}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"sweeps": {"fig3a": {"eta_c_grid": [0.5, 1.0]}}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"output": {"format": "xml"}})")), ConfigError);
    CHECK_THROWS_AS(parse_config(Json::parse(R"({"model": {"temp": "hot"}})")), ConfigError);
}

TEST_CASE("output path checks")
{
    const auto p = scratch("exists.csv");
    write(p, "x");
    ConfigOverrides ov;
    ov.out = p;
    CHECK_THROWS_WITH_AS(parse_config(Json::object(), ov),
                         doctest::Contains("refusing to overwrite"), ConfigError);
    ov.force = true;
    CHECK_NOTHROW(parse_config(Json::object(), ov));
    ov.out = p.parent_path() / "missing_dir" / "x.csv";
    CHECK_THROWS_AS(parse_config(Json::object(), ov), ConfigError);
}

TEST_CASE("steady with matched couplings prints no coherence")
{
    const Run r = run({"steady", "--r-p", "0.6", "--r-l", "0.6", "--x-l", "-1", "--x-r", "2"});
    REQUIRE(r.status == kExitOk);
    CHECK(std::abs(printed(r.out, "abs_rho12")) < 1e-12);
    CHECK(printed(r.out, "trace") == doctest::Approx(1.0));
    CHECK(r.out.rfind("# config {", 0) == 0);
    CHECK(r.err.empty());
}

TEST_CASE("thermo at equilibrium prints zero currents and power")
{
    const Run r = run({"thermo", "--temp", "5780", "--x-g", "2", "--x-l", "0.5", "--x-r", "2.5", "--r-p", "0.4"});
    REQUIRE(r.status == kExitOk);
    for (const char* k : {"j_l", "j_r", "j", "power"}) CHECK(std::abs(printed(r.out, k)) < 1e-12);
}

TEST_CASE("selftest passes on a clean build")
{
    const Run r = run({"selftest"});
    CHECK(r.status == kExitOk);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("errors are single-line records with stable exit codes")
{
    Run r = run({"steady", "--r-p", "1.5"});
    CHECK(r.status == kExitUsage);
    CHECK(r.out.empty());
    REQUIRE(!r.err.empty());
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    const Json rec = Json::parse(r.err);
    CHECK(rec["error"] == "config");
    CHECK(rec["message"].get<std::string>().find("0 <= r_P <= 1") != std::string::npos);

    CHECK(run({}).status == kExitUsage);
    CHECK(run({"steady", "--bogus"}).status == kExitUsage);
    CHECK(run({"steady", "--format", "xml"}).status == kExitUsage);
    CHECK(run({"steady", "--config", "/nonexistent/c.json"}).status == kExitUsage);

    // Cut off from both leads: no unique steady state.
    const auto cfg = scratch("isolated.json");
    write(cfg, R"({"model": {"gamma_l": 0, "gamma_r": 0}})");
    r = run({"steady", "--config", cfg.string()});
    CHECK(r.status == kExitComputation);
    CHECK(Json::parse(r.err)["error"] == "no_unique_steady_state");
}

TEST_CASE("machine output goes to the requested file with the configuration")
{
    const auto p = scratch("thermo.json");
    const Run r = run({"thermo", "--r-p", "0.9", "--out", p.string(), "--format", "json"});
    REQUIRE(r.status == kExitOk);
    std::ifstream in(p);
    const Json doc = Json::parse(in);
    CHECK(doc["rows"].size() == 1);
    CHECK(doc["provenance"]["config"]["model"]["r_p"] == 0.9);
    CHECK(doc["rows"][0]["stationary"] == 1);

    const Run again = run({"thermo", "--out", p.string(), "--format", "json"});
    CHECK(again.status == kExitUsage);
    CHECK(run({"thermo", "--out", p.string(), "--format", "json", "--force"}).status == kExitOk);
}

TEST_CASE("fig2 writes a sweep table")
{
    const auto cfg = scratch("fig2.json");
    const auto out = scratch("fig2.csv");
    write(cfg, R"({"sweeps": {"fig2": {"step": 0.5}}, "workers": 2})");
    const Run r = run({"fig2", "--config", cfg.string(), "--out", out.string()});
    REQUIRE(r.status == kExitOk);
    std::ifstream in(out);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 10);
    std::ifstream meta(out.string() + ".meta.json");
    CHECK(Json::parse(meta)["provenance"]["config"]["workers"] == 2);
}

}
