// Command-line experiment driver. Flags override config-file values; every
// subcommand writes JSON (and CSV where tabular) reports under --out and
// exits nonzero when a run assertion fails.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "skred/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Average-case reduction experiments for spin-glass partition functions"};
  app.set_config("--config", "", "declarative config file; flags win on conflict");
  app.require_subcommand(1);

  skred::cli::ExperimentConfig cfg;
  std::string sub_selected;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "root seed; all randomness derives from it");
    sub->add_option("--workers", cfg.workers, "trial-level worker threads");
    sub->add_flag("--demo-mode", cfg.demo_mode,
                  "relax theory-faithful parameter bounds (smaller primes/lists)");
    sub->add_option("--out", cfg.out_dir, "report output directory");
    sub->add_option("--cap", cfg.brute_force_cap, "brute-force spin cap");
    sub->callback([&, sub]() { sub_selected = sub->get_name(); });
  };

  auto* brute = app.add_subcommand("brute", "exact Z by enumeration, BigInt and mod-p");
  brute->add_option("-n,--spins", cfg.n, "spin count");
  brute->add_option("-N,--precision", cfg.precision, "truncation bits");
  brute->add_option("--beta", cfg.beta, "inverse temperature");
  brute->add_flag("--all-ones", cfg.all_ones, "unit inputs instead of sampling");
  brute->add_option("--instance", cfg.instance_path, "instance JSON path");
  brute->add_option("-p,--prime", cfg.p, "modulus for the mod-p cross check");
  add_common(brute);

  auto* rec = app.add_subcommand("recursion-check", "downward self-recursion identity sweep");
  rec->add_option("--trials", cfg.trials, "random instances");
  rec->add_option("-N,--precision", cfg.precision, "truncation bits");
  add_common(rec);

  auto* modp = app.add_subcommand("reduce-modp", "single-level mod-p reduction vs faulty oracle");
  modp->add_option("-n,--spins", cfg.n, "spin count");
  modp->add_option("-p,--prime", cfg.p, "working prime");
  modp->add_option("-N,--precision", cfg.precision, "truncation bits");
  modp->add_option("-q,--oracle-success", cfg.q, "oracle per-input success probability");
  modp->add_option("-k,--hardness", cfg.k, "hardness exponent; default derives from q");
  modp->add_option("--fault-mode", cfg.fault_mode,
                   "uniform-error | adversarial-constant | sticky");
  modp->add_option("--trials", cfg.trials, "trial count");
  modp->add_option("--base-spins", cfg.base_spins, "recursion floor H; default n-1");
  modp->add_option("--retries", cfg.retry_budget, "fresh-curve retries per level");
  modp->add_option("--list-size", cfg.demo_list_size, "resampled list size override");
  modp->add_option("--min-success", cfg.min_success, "pass threshold on the success rate");
  add_common(modp);

  auto* exact = app.add_subcommand("reduce-exact", "CRT pipeline: exact Z via faulty oracles");
  exact->add_option("-n,--spins", cfg.n, "spin count");
  exact->add_option("-N,--precision", cfg.precision, "truncation bits");
  exact->add_option("--beta", cfg.beta, "inverse temperature");
  exact->add_option("-q,--oracle-success", cfg.q, "oracle per-input success probability");
  exact->add_option("--fault-mode", cfg.fault_mode, "oracle failure mode");
  exact->add_option("-R,--rounds", cfg.rounds, "majority votes per prime (odd)");
  exact->add_option("--trials", cfg.trials, "meta-trials");
  exact->add_option("--base-spins", cfg.base_spins, "recursion floor H; default max(4, n-4)");
  exact->add_option("--prime-lo", cfg.prime_lo, "prime window lower end (exclusive)");
  exact->add_option("--prime-hi", cfg.prime_hi, "prime window upper end (inclusive)");
  exact->add_option("--min-success", cfg.min_success, "pass threshold");
  add_common(exact);

  auto* real = app.add_subcommand("real-reduce", "real-valued pipeline over exact rationals");
  real->add_option("-n,--spins", cfg.n, "spin count");
  real->add_option("--delta", cfg.delta, "advantage parameter");
  real->add_option("--oracle-success", cfg.real_q, "oracle success probability");
  real->add_option("--fault-mode", cfg.fault_mode, "oracle failure mode");
  real->add_option("--precision-bits", cfg.precision_bits, "dyadic bits for sampled couplings");
  real->add_option("--tv-constant", cfg.tv_constant, "schedule TV constant; default estimated");
  real->add_option("-R,--rounds", cfg.rounds, "majority votes (1 = single trials)");
  real->add_option("--trials", cfg.trials, "trial count");
  add_common(real);

  auto* uni = app.add_subcommand("uniformity", "truncated log-normal residues mod p");
  uni->add_option("-p,--prime", cfg.p, "modulus");
  uni->add_option("--samples", cfg.samples, "Monte Carlo samples per precision");
  uni->add_option("--kind", cfg.entry_kind, "J | B | C");
  uni->add_option("-n,--spins", cfg.n, "spin count entering the J scaling");
  uni->add_option("--beta", cfg.beta, "inverse temperature");
  uni->add_option("--sweep", cfg.precision_sweep, "precision values to sweep");
  uni->add_option("--final-max", cfg.uniformity_final_max, "deviation bound at the last N");
  add_common(uni);

  auto* lip = app.add_subcommand("lipschitz", "multiplicative density bound on a grid");
  lip->add_option("--delta", cfg.lip_delta, "interval lower end");
  lip->add_option("--Delta", cfg.lip_big_delta, "interval upper end");
  lip->add_option("-n,--spins", cfg.n, "spin count");
  lip->add_option("--beta", cfg.beta, "inverse temperature");
  lip->add_option("--grid", cfg.grid, "grid resolution per axis");
  add_common(lip);

  auto* tv = app.add_subcommand("tvcurve", "TV distance of the shifted log-normal family");
  tv->add_option("--a", cfg.tv_a, "worst-case entries to sweep");
  tv->add_option("--points", cfg.tv_lambda_points, "lambda grid size");
  tv->add_option("--ratio-max", cfg.tv_ratio_max, "pass bound on sup tv/lambda");
  add_common(tv);

  auto* bench = app.add_subcommand("decode-bench", "plant-and-recover decoder benchmark");
  bench->add_option("-p,--prime", cfg.bench_p, "field size");
  bench->add_option("--list", cfg.bench_list, "list length");
  bench->add_option("--degree", cfg.bench_degree, "planted degree");
  bench->add_option("--agreement", cfg.bench_agreement, "planted agreement count");
  bench->add_option("--trials", cfg.bench_trials, "trials");
  add_common(bench);

  CLI11_PARSE(app, argc, argv);
  try {
    return skred::cli::run(sub_selected, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
