#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include <kahlerq/errors.hpp>

#include "json_util.hpp"
#include "plot.hpp"
#include "runner.hpp"
#include "schema.hpp"

using namespace kahlerq;
using namespace kahlerq::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::path("cli_scratch");
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const json& config) {
  const fs::path path = scratch_dir() / name;
  std::ofstream out(path);
  out << config.dump(2) << "\n";
  return path;
}

json fast_validate_config() {
  return json{{"kind", "Validate"},
              {"seed", 5},
              {"params", {{"n", 8}, {"samples", 32}, {"tol", 1e-12}}}};
}

json read_report(const fs::path& dir) {
  std::ifstream in(dir / "report.json");
  REQUIRE(in.good());
  return json::parse(in);
}

std::string scrubbed(json report) {
  report.erase("wall_time_ms");
  return report.dump(2);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("a passing run exits 0 and writes a full report") {
  const fs::path config = write_config("ok.json", fast_validate_config());
  const fs::path out = scratch_dir() / "ok_out";
  CHECK(run_config(config, {out, 1, 0}) == 0);

  const json report = read_report(out);
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("artifact_version").is_string());
  CHECK(report.at("config_echo").at("kind") == "Validate");
  CHECK(report.at("checks").is_array());
  CHECK(!report.at("checks").empty());
  for (const json& c : report.at("checks")) {
    CHECK(c.at("pass").get<bool>());
    CHECK(c.at("residual").get<double>() <= c.at("tolerance").get<double>());
  }
}

TEST_CASE("reports are byte-identical across repeat runs, modulo timing") {
  const fs::path config = write_config("repeat.json", fast_validate_config());
  const fs::path out_a = scratch_dir() / "repeat_a";
  const fs::path out_b = scratch_dir() / "repeat_b";
  REQUIRE(run_config(config, {out_a, 1, 0}) == 0);
  REQUIRE(run_config(config, {out_b, 1, 0}) == 0);
  CHECK(scrubbed(read_report(out_a)) == scrubbed(read_report(out_b)));
}

TEST_CASE("a failing check exits 1 but still writes the report") {
  json config = json{{"kind", "Lift"},
                     {"seed", 2},
                     {"params", {{"n", 4}, {"cases", 5}, {"tol", 1e-18}}}};
  const fs::path path = write_config("fail.json", config);
  const fs::path out = scratch_dir() / "fail_out";
  CHECK(run_config(path, {out, 1, 0}) == 1);
  const json report = read_report(out);
  CHECK_FALSE(report.at("pass").get<bool>());
}

TEST_CASE("config validation failures exit 2") {
  SUBCASE("unknown field") {
    json config = fast_validate_config();
    config["params"]["bogus"] = 1;
    CHECK(run_config(write_config("unknown.json", config), {scratch_dir() / "u", 1, 0}) == 2);
  }
  SUBCASE("negative dimension") {
    json config = fast_validate_config();
    config["params"]["n"] = -1;
    CHECK(run_config(write_config("negative.json", config), {scratch_dir() / "n", 1, 0}) == 2);
  }
  SUBCASE("missing kind") {
    json config = fast_validate_config();
    config.erase("kind");
    CHECK(run_config(write_config("nokind.json", config), {scratch_dir() / "k", 1, 0}) == 2);
  }
  SUBCASE("unparsable file") {
    const fs::path path = scratch_dir() / "broken.json";
    std::ofstream(path) << "{ not json";
    CHECK(run_config(path, {scratch_dir() / "b", 1, 0}) == 2);
  }
  SUBCASE("nonexistent file") {
    CHECK(run_config(scratch_dir() / "missing.json", {scratch_dir() / "m", 1, 0}) == 2);
  }
}

TEST_CASE("an oversized independence scan exits 3") {
  json config = {
      {"kind", "Ergodic"},
      {"seed", 1},
      {"params",
       {{"hamiltonian", {{"kind", "diagonal"}, {"lambdas", {1.0, 1.1, 1.2, 1.3, 1.4, 1.5}}}},
        {"actions", {1.0, 1.0, 1.0, 1.0, 1.0, 1.0}},
        {"observable",
         {{"terms",
           {{{"coeff", 1.0},
             {"q_exp", {2, 0, 0, 0, 0, 0}},
             {"p_exp", {0, 0, 0, 0, 0, 0}}}}}}},
        {"t_final", 1.0},
        {"steps", 10},
        {"bound", 50}}}};
  CHECK(run_config(write_config("budget.json", config), {scratch_dir() / "bud", 1, 0}) == 3);
}

TEST_CASE("unknown-field errors name the offending field") {
  const json params = {{"n", 8}, {"typo", true}};
  CHECK_THROWS_WITH_AS(check_keys(params, "params", {"n"}),
                       doctest::Contains("typo"), ConfigError);
}

TEST_CASE("budget can come from the environment") {
  REQUIRE(setenv("KAHLERQ_BUDGET", "123456", 1) == 0);
  CHECK(budget_from_env() == 123456);
  REQUIRE(setenv("KAHLERQ_BUDGET", "12abc", 1) == 0);
  CHECK_THROWS_AS(budget_from_env(), ConfigError);
  REQUIRE(unsetenv("KAHLERQ_BUDGET") == 0);
  CHECK(budget_from_env() == 20'000'000);
}

TEST_CASE("plot data emission") {
  // A small quasi-periodic run produces a running-average series to plot.
  json config = {
      {"kind", "Ergodic"},
      {"seed", 1},
      {"params",
       {{"hamiltonian", {{"kind", "diagonal"}, {"lambdas", {1.0, 1.4142135623730951}}}},
        {"actions", {1.0, 1.0}},
        {"phases", {0.0, 0.0}},
        {"observable",
         {{"terms", {{{"coeff", 1.0}, {"q_exp", {2, 2}}, {"p_exp", {0, 0}}}}}}},
        {"t_final", 200.0},
        {"steps", 4000},
        {"torus_grid", 16},
        {"bound", 10}}}};
  const fs::path out = scratch_dir() / "plot_out";
  REQUIRE(run_config(write_config("plot.json", config), {out, 1, 0}) == 0);

  CHECK(emit_plot_data(out) == 0);
  CHECK(fs::exists(out / "convergence.dat"));
  CHECK(fs::exists(out / "plots.md"));

  const fs::path empty = scratch_dir() / "empty_dir";
  fs::create_directories(empty);
  CHECK_THROWS_AS(emit_plot_data(empty), MissingReport);
}

TEST_CASE("schema text covers every experiment kind") {
  const std::string text = schema_text();
  for (const char* kind :
       {"Validate", "Lift", "Evolve", "Ergodic", "Tensor", "Grid", "Commutator"}) {
    CHECK(text.find(kind) != std::string::npos);
  }
  CHECK(text.find("KAHLERQ_BUDGET") != std::string::npos);
}

TEST_CASE("bundled configs parse and the fast ones pass end to end") {
  const fs::path configs = fs::path(KAHLERQ_CONFIG_DIR);
  REQUIRE(fs::exists(configs / "validate_n16.json"));
  CHECK(run_config(configs / "validate_n16.json", {scratch_dir() / "g1", 1, 0}) == 0);
  CHECK(run_config(configs / "lift_n8.json", {scratch_dir() / "g2", 1, 0}) == 0);
  CHECK(run_config(configs / "tensor_2x3.json", {scratch_dir() / "g3", 1, 0}) == 0);
}

}  // TEST_SUITE
