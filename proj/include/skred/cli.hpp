#pragma once

// Experiment driver: one entry point per subcommand, a flat config struct
// shared by the command-line tool and the tests, JSON/CSV reports with the
// timestamp isolated in a header block, and nonzero exit on any failed
// run assertion.

#include <cstdint>
#include <string>
#include <vector>

namespace skred::cli {

struct ExperimentConfig {
  // common
  uint64_t seed = 1;
  int workers = 1;
  bool demo_mode = false;
  std::string out_dir = "reports";
  int brute_force_cap = 20;

  // instance parameters
  int n = 7;
  int precision = 4;
  double beta = 1.0;
  bool all_ones = false;        // unit inputs instead of sampling
  std::string instance_path;   // optional JSON instance to load

  // oracle / hardness parameters
  double q = 0.5;
  double k = -1.0;              // <0: derive from q via q = n^{-k}
  std::string fault_mode = "uniform-error";  // | adversarial-constant | sticky

  // mod-p reduction
  uint64_t p = 1063;
  int base_spins = -1;          // <0: max(4, n-4)
  int rounds = 1;               // majority votes R
  int trials = 50;
  int retry_budget = 3;
  uint64_t demo_list_size = 0;
  double min_success = 0.9;

  // exact pipeline
  uint64_t prime_lo = 0;        // 0: demo default window
  uint64_t prime_hi = 0;

  // real-valued pipeline
  double delta = 0.05;
  double real_q = 0.85;
  int precision_bits = 12;
  double tv_constant = -1.0;    // <0: estimate from the TV curve, rounded up

  // uniformity
  uint64_t samples = 1000000;
  std::string entry_kind = "J";
  std::vector<int> precision_sweep = {4, 8, 12, 16};
  double uniformity_final_max = 0.01;

  // lipschitz
  double lip_delta = 0.5;
  double lip_big_delta = 8.0;
  int grid = 100;

  // tv curve
  std::vector<double> tv_a = {1.0, 2.0, 5.0};
  int tv_lambda_points = 24;
  double tv_ratio_max = 10.0;

  // decode bench
  uint64_t bench_p = 4229;
  uint64_t bench_list = 2000;
  int bench_degree = 25;
  uint64_t bench_agreement = 340;
  int bench_trials = 3;
};

// Runs one subcommand (brute | recursion-check | reduce-modp | reduce-exact |
// real-reduce | uniformity | lipschitz | tvcurve | decode-bench), writes
// report files under cfg.out_dir, returns 0 iff every assertion passed.
int run(const std::string& subcommand, const ExperimentConfig& cfg);

std::vector<std::string> subcommands();

}  // namespace skred::cli
