#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "skred/cli.hpp"

using namespace skred;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

fs::path fresh_dir(const std::string& tag) {
  auto dir = fs::temp_directory_path() / ("skred_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json read_report(const fs::path& dir, const std::string& name) {
  std::ifstream in(dir / name);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

TEST_CASE("brute subcommand reports the unit-instance value") {
  cli::ExperimentConfig cfg;
  cfg.n = 7;
  cfg.precision = 0;
  cfg.all_ones = true;
  cfg.p = 11;
  cfg.out_dir = fresh_dir("brute").string();
  CHECK(cli::run("brute", cfg) == 0);
  auto j = read_report(cfg.out_dir, "brute.json");
  CHECK(j["results"]["Z"] == "128");
  CHECK(j["results"]["Z_mod_p"] == 128 % 11);
  CHECK(j["pass"] == true);
}

TEST_CASE("recursion-check sweep has zero failures") {
  cli::ExperimentConfig cfg;
  cfg.trials = 60;
  cfg.precision = 3;
  cfg.out_dir = fresh_dir("rec").string();
  CHECK(cli::run("recursion-check", cfg) == 0);
  auto j = read_report(cfg.out_dir, "recursion-check.json");
  CHECK(j["results"]["failures"] == 0);
}

TEST_CASE("reduce-modp with a perfect oracle succeeds every trial") {
  cli::ExperimentConfig cfg;
  cfg.n = 4;
  cfg.p = 101;
  cfg.precision = 2;
  cfg.q = 1.0;
  cfg.trials = 3;
  cfg.min_success = 1.0;
  cfg.out_dir = fresh_dir("modp").string();
  CHECK(cli::run("reduce-modp", cfg) == 0);
  auto j = read_report(cfg.out_dir, "reduce-modp.json");
  CHECK(j["results"]["success_rate"] == 1.0);
}

TEST_CASE("identical config and seed give byte-identical reports modulo the header") {
  cli::ExperimentConfig cfg;
  cfg.samples = 20000;
  cfg.p = 11;
  cfg.n = 4;
  cfg.precision_sweep = {2, 6};
  cfg.uniformity_final_max = 1.0;  // not under test here
  cfg.out_dir = fresh_dir("det1").string();
  CHECK(cli::run("uniformity", cfg) == 0);
  auto j1 = read_report(cfg.out_dir, "uniformity.json");
  cfg.out_dir = fresh_dir("det2").string();
  CHECK(cli::run("uniformity", cfg) == 0);
  auto j2 = read_report(cfg.out_dir, "uniformity.json");
  j1.erase("header");
  j2.erase("header");
  CHECK(j1.dump() == j2.dump());
}

TEST_CASE("lipschitz subcommand passes at the reference point") {
  cli::ExperimentConfig cfg;
  cfg.n = 4;
  cfg.beta = 1.0;
  cfg.grid = 30;
  cfg.out_dir = fresh_dir("lip").string();
  CHECK(cli::run("lipschitz", cfg) == 0);
}

TEST_CASE("tvcurve writes csv alongside json") {
  cli::ExperimentConfig cfg;
  cfg.tv_a = {1.0};
  cfg.tv_lambda_points = 6;
  cfg.out_dir = fresh_dir("tv").string();
  CHECK(cli::run("tvcurve", cfg) == 0);
  CHECK(fs::exists(fs::path(cfg.out_dir) / "tvcurve.csv"));
}

TEST_CASE("unknown subcommand is rejected") {
  cli::ExperimentConfig cfg;
  CHECK_THROWS_AS(cli::run("nonsense", cfg), std::invalid_argument);
}

TEST_SUITE_END();
