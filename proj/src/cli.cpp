#include "skred/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "skred/ff.hpp"
#include "skred/poly.hpp"
#include "skred/realred.hpp"
#include "skred/reduction.hpp"
#include "skred/sk.hpp"
#include "skred/stats.hpp"

namespace skred::cli {

namespace {

using nlohmann::ordered_json;

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// Deterministic body, volatile fields (timestamp, wall time) in the header.
int finish(const std::string& sub, const ExperimentConfig& cfg, const ordered_json& results,
           bool pass, double wall_ms, const std::string& extra_name = "",
           const std::string& extra_content = "") {
  ordered_json doc;
  doc["header"] = {{"timestamp", timestamp_utc()},
                   {"wall_ms", wall_ms},
                   {"subcommand", sub},
                   {"seed", cfg.seed},
                   {"demo_mode", cfg.demo_mode},
                   {"workers", cfg.workers}};
  doc["results"] = results;
  doc["pass"] = pass;
  std::filesystem::create_directories(cfg.out_dir);
  write_file(std::filesystem::path(cfg.out_dir) / (sub + ".json"), doc.dump(2) + "\n");
  if (!extra_name.empty())
    write_file(std::filesystem::path(cfg.out_dir) / extra_name, extra_content);
  std::cout << sub << ": " << (pass ? "pass" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

double derived_k(const ExperimentConfig& cfg, int n) {
  if (cfg.k >= 0) return cfg.k;
  if (cfg.q >= 1.0) return 0.0;
  return std::log(1.0 / cfg.q) / std::log(static_cast<double>(n));
}

reduction::FaultMode parse_fault(const std::string& s) {
  if (s == "uniform-error") return reduction::FaultMode::UniformError;
  if (s == "adversarial-constant") return reduction::FaultMode::AdversarialConstant;
  if (s == "sticky") return reduction::FaultMode::Sticky;
  throw std::invalid_argument("unknown fault mode: " + s);
}

stats::EntryKind parse_kind(const std::string& s) {
  if (s == "J") return stats::EntryKind::J;
  if (s == "B") return stats::EntryKind::B;
  if (s == "C") return stats::EntryKind::C;
  throw std::invalid_argument("unknown entry kind: " + s);
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(workers, count); ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

sk::SkInstance all_ones_instance(int n, int precision) {
  sk::SkInstance inst;
  inst.n = n;
  inst.precision = precision;
  inst.J.assign(static_cast<size_t>(n) * (n - 1) / 2, 1);
  inst.B.assign(n, 1);
  inst.C.assign(n, 1);
  return inst;
}

sk::ResidueInstance random_residue_instance(int n, uint64_t p, stats::Rng& rng) {
  sk::ResidueInstance inst;
  inst.n = n;
  inst.p = p;
  inst.J.resize(static_cast<size_t>(n) * (n - 1) / 2);
  inst.B.resize(n);
  inst.C.resize(n);
  for (auto& v : inst.J) v = rng.uniform_below(p);
  for (auto& v : inst.B) v = rng.uniform_below(p);
  for (auto& v : inst.C) v = rng.uniform_below(p);
  return inst;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

sk::SkInstance load_or_sample(const ExperimentConfig& cfg, uint64_t trial) {
  if (!cfg.instance_path.empty()) {
    std::ifstream in(cfg.instance_path);
    if (!in) throw std::runtime_error("cannot read " + cfg.instance_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sk::instance_from_json(text);
  }
  if (cfg.all_ones) return all_ones_instance(cfg.n, cfg.precision);
  return stats::sample_instance(cfg.n, cfg.precision, cfg.beta,
                                stats::substream(cfg.seed, "instance", trial));
}

int run_brute(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  auto inst = load_or_sample(cfg, 0);
  ordered_json res;
  res["n"] = inst.n;
  res["N"] = inst.precision;
  bool pass = true;
  if (inst.n >= 7) {
    auto z = sk::partition_exact(inst, cfg.brute_force_cap);
    auto z_ref = sk::partition_exact_naive(inst, cfg.brute_force_cap);
    pass = pass && z == z_ref;
    res["Z"] = z.get_str();
    res["enumeration_cross_check"] = (z == z_ref);
    if (cfg.p >= 3) {
      ff::Modulus m(cfg.p);
      uint64_t zp = sk::partition_mod_p(sk::reduce_instance(inst, cfg.p), inst.precision,
                                        cfg.brute_force_cap);
      uint64_t zmod = mpz_fdiv_ui(z.get_mpz_t(), cfg.p);
      pass = pass && zp == zmod;
      res["p"] = cfg.p;
      res["Z_mod_p"] = zp;
      res["mod_cross_check"] = (zp == zmod);
    }
  } else {
    res["note"] = "n < 7: integer model undefined, reporting cut form";
    std::vector<ff::Rational> jr, br, cr;
    ff::Rational scale = ff::Rational(1) / ff::Rational(ff::pow2(inst.precision));
    for (auto& v : inst.J) jr.push_back(ff::Rational(v) * scale);
    for (auto& v : inst.B) br.push_back(ff::Rational(v) * scale);
    for (auto& v : inst.C) cr.push_back(ff::Rational(v) * scale);
    auto z = sk::partition_cut_rational(jr, br, cr, inst.n, cfg.brute_force_cap);
    res["Z_cut"] = z.get_str();
  }
  return finish("brute", cfg, res, pass, now_ms() - t0);
}

int run_recursion_check(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  const std::vector<uint64_t> ps = {101, 1009};
  int failures = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    stats::Rng rng(stats::substream(cfg.seed, "recursion", trial));
    int n = 3 + trial % 7;  // 3..9
    uint64_t p = ps[trial % ps.size()];
    auto inst = random_residue_instance(n, p, rng);
    auto split = sk::self_recursion_split(inst, cfg.precision);
    uint64_t lhs = sk::partition_mod_p(inst, cfg.precision, cfg.brute_force_cap);
    uint64_t zp = sk::partition_mod_p(split.plus, cfg.precision, cfg.brute_force_cap);
    uint64_t zm = sk::partition_mod_p(split.minus, cfg.precision, cfg.brute_force_cap);
    uint64_t rhs = ff::add_mod(ff::mul_mod(split.c_weight, zp, p),
                               ff::mul_mod(split.b_weight, zm, p), p);
    if (lhs != rhs) ++failures;
  }
  ordered_json res;
  res["trials"] = cfg.trials;
  res["failures"] = failures;
  return finish("recursion-check", cfg, res, failures == 0, now_ms() - t0);
}

int run_reduce_modp(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  ff::Modulus m(cfg.p);
  const int n = cfg.n;
  reduction::ReductionParams params;
  params.q = cfg.q;
  params.k = derived_k(cfg, n);
  params.base_spins = cfg.base_spins >= 0 ? cfg.base_spins : n - 1;  // single level
  params.retry_budget = cfg.retry_budget;
  params.demo_mode = cfg.demo_mode;
  params.demo_list_size = cfg.demo_list_size;
  params.brute_force_cap = cfg.brute_force_cap;
  auto mode = parse_fault(cfg.fault_mode);

  std::vector<int> ok(cfg.trials, 0);
  std::vector<uint64_t> cand(cfg.trials, 0);
  std::vector<uint64_t> queries(cfg.trials, 0);
  std::vector<int> cap_ok(cfg.trials, 1);
  const uint64_t cap = static_cast<uint64_t>(std::ceil(3.0 / cfg.q));
  parallel_for(cfg.trials, cfg.workers, [&](int trial) {
    stats::Rng rng(stats::substream(cfg.seed, "trial", trial));
    auto inst = random_residue_instance(n, cfg.p, rng);
    uint64_t truth = sk::partition_mod_p(inst, cfg.precision, cfg.brute_force_cap);
    auto oracle = reduction::make_faulty_oracle(
        mode, cfg.q, stats::substream(cfg.seed, "oracle", trial), cfg.precision,
        cfg.brute_force_cap);
    reduction::ReductionReport report;
    auto z = reduction::reduce_level(inst, cfg.precision, oracle, params, rng, &report);
    ok[trial] = (z && *z == truth) ? 1 : 0;
    queries[trial] = oracle.queries();
    for (const auto& lvl : report.levels) {
      cand[trial] = std::max(cand[trial], lvl.candidates);
      if (lvl.faithful_prime && lvl.candidates > cap) cap_ok[trial] = 0;
    }
  });
  int successes = 0;
  uint64_t max_cand = 0;
  bool cap_never_exceeded = true;
  for (int i = 0; i < cfg.trials; ++i) {
    successes += ok[i];
    max_cand = std::max(max_cand, cand[i]);
    cap_never_exceeded = cap_never_exceeded && cap_ok[i];
  }
  double rate = static_cast<double>(successes) / cfg.trials;
  ordered_json res;
  res["n"] = n;
  res["p"] = cfg.p;
  res["q"] = cfg.q;
  res["k"] = params.k;
  res["trials"] = cfg.trials;
  res["successes"] = successes;
  res["success_rate"] = rate;
  res["max_candidates"] = max_cand;
  res["candidate_cap"] = cap;
  res["candidate_cap_respected"] = cap_never_exceeded;
  res["per_trial_success"] = ok;
  res["per_trial_queries"] = queries;
  bool pass = rate >= cfg.min_success && cap_never_exceeded;
  return finish("reduce-modp", cfg, res, pass, now_ms() - t0);
}

int run_reduce_exact(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  reduction::ReductionParams params;
  params.q = cfg.q;
  params.k = derived_k(cfg, cfg.n);
  params.base_spins = cfg.base_spins >= 0 ? cfg.base_spins : std::max(4, cfg.n - 4);
  params.retry_budget = cfg.retry_budget;
  params.demo_mode = cfg.demo_mode;
  params.demo_list_size = cfg.demo_list_size;
  params.brute_force_cap = cfg.brute_force_cap;
  auto mode = parse_fault(cfg.fault_mode);
  uint64_t lo = cfg.prime_lo, hi = cfg.prime_hi;
  if (lo == 0) {
    lo = uint64_t{1} << 25;  // demo default: fast-kernel range, resampled regime
    hi = lo + 60000;
  }
  auto window = ff::prime_window(lo, hi);

  std::vector<int> ok(cfg.trials, 0);
  std::string trace;
  parallel_for(cfg.trials, cfg.workers, [&](int trial) {
    stats::Rng rng(stats::substream(cfg.seed, "meta", trial));
    auto inst = stats::sample_instance(cfg.n, cfg.precision, cfg.beta,
                                       stats::substream(cfg.seed, "instance", trial));
    auto factory = [&](uint64_t p) {
      return reduction::make_faulty_oracle(
          mode, cfg.q, stats::substream(cfg.seed, "oracle", trial * 1000003ull + p),
          cfg.precision, cfg.brute_force_cap);
    };
    auto result = reduction::reduce_exact(inst, factory, params, window, cfg.rounds, rng);
    ok[trial] = (result && result->verified) ? 1 : 0;
    if (trial == 0 && result) trace = result->report.to_json();
  });
  int successes = 0;
  for (int v : ok) successes += v;
  double rate = static_cast<double>(successes) / cfg.trials;
  ordered_json res;
  res["n"] = cfg.n;
  res["N"] = cfg.precision;
  res["q"] = cfg.q;
  res["rounds"] = cfg.rounds;
  res["prime_window"] = {window.lo, window.hi};
  res["primes_available"] = window.primes.size();
  res["meta_trials"] = cfg.trials;
  res["successes"] = successes;
  res["success_rate"] = rate;
  res["per_trial_success"] = ok;
  bool pass = rate >= cfg.min_success;
  return finish("reduce-exact", cfg, res, pass, now_ms() - t0, "reduce-exact_trace.json",
                trace + "\n");
}

int run_real_reduce(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  const int n = cfg.n;
  stats::Rng arng(stats::substream(cfg.seed, "worst-case"));
  realred::RationalVec a;
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  for (size_t i = 0; i < pairs; ++i)
    a.push_back(realred::Rational(1 + arng.uniform_below(8), 1 + arng.uniform_below(4)));

  realred::Rational c_const;
  if (cfg.tv_constant > 0) {
    c_const = realred::Rational(static_cast<long>(std::ceil(cfg.tv_constant * 16)), 16);
  } else {
    // per-pair slope from the TV curve at the largest worst-case entry,
    // rounded up hard; any overestimate only tightens the schedule
    double amax = 1.0;
    for (const auto& v : a) amax = std::max(amax, v.get_d());
    auto curve = stats::tv_lognormal_curve(std::ceil(amax), {0.05, 0.2, 0.5, 0.8});
    double per_pair = 2.0 * curve.sup_ratio + 1.0;
    c_const = realred::Rational(static_cast<long>(std::ceil(per_pair * 16 * pairs)), 16);
  }
  realred::Rational delta_q(static_cast<long>(std::llround(cfg.delta * 10000)), 10000);
  auto sched = realred::Schedule::make(n, delta_q, c_const);
  auto truth = realred::zhat(a, n, cfg.brute_force_cap);
  auto mode = parse_fault(cfg.fault_mode);

  std::vector<int> ok(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.workers, [&](int trial) {
    stats::Rng rng(stats::substream(cfg.seed, "real-trial", trial));
    auto oracle = realred::make_faulty_real_oracle(
        mode, cfg.real_q, stats::substream(cfg.seed, "real-oracle", trial), n,
        cfg.brute_force_cap);
    if (cfg.rounds <= 1) {
      auto v = realred::real_reduce_once(a, oracle, sched, n, cfg.precision_bits, rng);
      ok[trial] = (v && *v == truth) ? 1 : 0;
    } else {
      auto out = realred::real_reduction(a, oracle, delta_q, c_const, n, cfg.rounds,
                                         cfg.precision_bits, rng);
      ok[trial] = (out.value && *out.value == truth) ? 1 : 0;
    }
  });
  int successes = 0;
  for (int v : ok) successes += v;
  double rate = static_cast<double>(successes) / cfg.trials;
  double se = std::sqrt(std::max(rate * (1.0 - rate), 1e-9) / cfg.trials);
  double target = 0.5 + cfg.delta / 2.0;
  bool pass = rate + 1.96 * se >= target;
  ordered_json res;
  res["n"] = n;
  res["delta"] = cfg.delta;
  res["oracle_success"] = cfg.real_q;
  res["schedule_points"] = sched.points;
  res["eps"] = sched.eps.get_str();
  res["tv_constant"] = c_const.get_str();
  res["degree_bound"] = sk::max_cut(n);
  res["rounds"] = cfg.rounds;
  res["trials"] = cfg.trials;
  res["successes"] = successes;
  res["success_rate"] = rate;
  res["target_rate"] = target;
  res["zhat_truth"] = truth.get_str();
  return finish("real-reduce", cfg, res, pass, now_ms() - t0);
}

int run_uniformity(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  auto kind = parse_kind(cfg.entry_kind);
  std::vector<stats::UniformityReport> reports;
  for (int prec : cfg.precision_sweep)
    reports.push_back(stats::residue_uniformity(prec, cfg.p, cfg.samples, kind, cfg.n, cfg.beta,
                                                cfg.seed));
  bool decreasing = true;
  for (size_t i = 1; i < reports.size(); ++i)
    if (!(reports[i].max_deviation < reports[i - 1].max_deviation)) decreasing = false;
  bool final_small = reports.empty() ||
                     reports.back().max_deviation < cfg.uniformity_final_max;
  std::string csv = "N,residue,frequency\n";
  ordered_json table = ordered_json::array();
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    table.push_back({{"N", cfg.precision_sweep[i]},
                     {"max_deviation", r.max_deviation},
                     {"confidence_radius", r.confidence_radius},
                     {"undersampled", r.undersampled}});
    for (size_t res = 0; res < r.freq.size(); ++res)
      csv += std::to_string(cfg.precision_sweep[i]) + "," + std::to_string(res) + "," +
             std::to_string(r.freq[res]) + "\n";
  }
  ordered_json res;
  res["p"] = cfg.p;
  res["samples"] = cfg.samples;
  res["kind"] = cfg.entry_kind;
  res["n"] = cfg.n;
  res["beta"] = cfg.beta;
  res["sweep"] = table;
  res["strictly_decreasing"] = decreasing;
  res["final_below_threshold"] = final_small;
  return finish("uniformity", cfg, res, decreasing && final_small, now_ms() - t0,
                "uniformity.csv", csv);
}

int run_lipschitz(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  auto r1 = stats::lipschitz_ratio_check(cfg.lip_delta, cfg.lip_big_delta, cfg.n, cfg.beta,
                                         cfg.grid, false);
  auto r2 = stats::lipschitz_ratio_check(cfg.lip_delta, cfg.lip_big_delta, cfg.n, cfg.beta,
                                         cfg.grid, true);
  ordered_json res;
  res["delta"] = cfg.lip_delta;
  res["Delta"] = cfg.lip_big_delta;
  res["n"] = cfg.n;
  res["beta"] = cfg.beta;
  res["coupling_density"] = {{"pairs", r1.pairs_checked},
                             {"violations", r1.violations},
                             {"worst_margin", r1.worst_margin}};
  res["field_density"] = {{"pairs", r2.pairs_checked},
                          {"violations", r2.violations},
                          {"worst_margin", r2.worst_margin}};
  bool pass = r1.violations == 0 && r2.violations == 0;
  return finish("lipschitz", cfg, res, pass, now_ms() - t0);
}

int run_tvcurve(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  std::vector<double> lambdas;
  // log-spaced grid over [1e-3, 0.9]
  const double lo = 1e-3, hi = 0.9;
  for (int i = 0; i < cfg.tv_lambda_points; ++i)
    lambdas.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (cfg.tv_lambda_points - 1)));
  std::string csv = "a,lambda,tv,error_bound\n";
  ordered_json curves = ordered_json::array();
  bool pass = true;
  double c_estimate = 0.0;
  for (double a : cfg.tv_a) {
    auto curve = stats::tv_lognormal_curve(a, lambdas);
    bool monotone = true;
    for (size_t i = 1; i < curve.points.size(); ++i)
      if (curve.points[i].tv + 1e-9 < curve.points[i - 1].tv) monotone = false;
    pass = pass && monotone && curve.sup_ratio <= cfg.tv_ratio_max;
    c_estimate = std::max(c_estimate, curve.sup_ratio);
    curves.push_back({{"a", a}, {"sup_tv_over_lambda", curve.sup_ratio}, {"monotone", monotone}});
    for (const auto& pt : curve.points)
      csv += std::to_string(a) + "," + std::to_string(pt.lambda) + "," + std::to_string(pt.tv) +
             "," + std::to_string(pt.error_bound) + "\n";
  }
  ordered_json res;
  res["curves"] = curves;
  res["ratio_bound"] = cfg.tv_ratio_max;
  res["per_pair_constant_estimate"] = c_estimate;
  return finish("tvcurve", cfg, res, pass, now_ms() - t0, "tvcurve.csv", csv);
}

int run_decode_bench(const ExperimentConfig& cfg) {
  double t0 = now_ms();
  if (cfg.bench_p > (uint64_t{1} << 26))
    throw std::invalid_argument("decode-bench: p above the benchable range");
  ordered_json rows = ordered_json::array();
  std::string csv = "stage,trial,wall_ms\n";  // timings are volatile, kept out of the report body
  bool pass = true;
  for (int trial = 0; trial < cfg.bench_trials; ++trial) {
    stats::Rng rng(stats::substream(cfg.seed, "bench", trial));
    const uint64_t p = cfg.bench_p;
    const uint64_t L = cfg.bench_list;
    const int64_t d = cfg.bench_degree;
    poly::PolyZp f{p, {}};
    f.coeff.resize(d + 1);
    for (auto& c : f.coeff) c = rng.uniform_below(p);
    f.normalize();
    // distinct x sample
    std::vector<uint64_t> xs(p);
    for (uint64_t i = 0; i < p; ++i) xs[i] = i;
    for (uint64_t i = 0; i < L; ++i) std::swap(xs[i], xs[i + rng.uniform_below(p - i)]);
    poly::EvalListZp list;
    list.p = p;
    for (uint64_t i = 0; i < L; ++i) {
      uint64_t y = poly::eval(f, xs[i]);
      if (i >= cfg.bench_agreement) {
        uint64_t wrong = rng.uniform_below(p - 1);
        y = wrong >= y ? wrong + 1 : wrong;
      }
      list.points.push_back({xs[i], y, true});
    }
    double td = now_ms();
    auto cands = poly::sudan_list_decode(list, d, cfg.bench_agreement);
    csv += "sudan," + std::to_string(trial) + "," + std::to_string(now_ms() - td) + "\n";
    bool found = false;
    for (const auto& c : cands) found = found || c == f;
    pass = pass && found;
    rows.push_back({{"trial", trial}, {"candidates", cands.size()}, {"planted_found", found}});
  }
  // Berlekamp-Welch side: max correctable errors at a small size
  {
    stats::Rng rng(stats::substream(cfg.seed, "bench-bw"));
    const uint64_t p = 65537;
    const int64_t d = 20;
    const uint64_t L = 200;
    poly::PolyZp f{p, {}};
    f.coeff.resize(d + 1);
    for (auto& c : f.coeff) c = rng.uniform_below(p);
    f.normalize();
    poly::EvalListZp list;
    list.p = p;
    uint64_t errors = (L - d - 1) / 2;
    for (uint64_t i = 0; i < L; ++i) {
      uint64_t y = poly::eval(f, i);
      if (i < errors) y = ff::add_mod(y, 1 + rng.uniform_below(p - 1), p);
      list.points.push_back({i, y, true});
    }
    auto g = poly::berlekamp_welch(list, d);
    bool ok = g && *g == f;
    pass = pass && ok;
    rows.push_back({{"bw_p", p}, {"bw_errors", errors}, {"bw_recovered", ok}});
  }
  ordered_json res;
  res["p"] = cfg.bench_p;
  res["list"] = cfg.bench_list;
  res["degree"] = cfg.bench_degree;
  res["agreement"] = cfg.bench_agreement;
  res["rows"] = rows;
  return finish("decode-bench", cfg, res, pass, now_ms() - t0, "decode-bench_timing.csv", csv);
}

}  // namespace

std::vector<std::string> subcommands() {
  return {"brute",      "recursion-check", "reduce-modp", "reduce-exact", "real-reduce",
          "uniformity", "lipschitz",       "tvcurve",     "decode-bench"};
}

int run(const std::string& subcommand, const ExperimentConfig& cfg) {
  if (subcommand == "brute") return run_brute(cfg);
  if (subcommand == "recursion-check") return run_recursion_check(cfg);
  if (subcommand == "reduce-modp") return run_reduce_modp(cfg);
  if (subcommand == "reduce-exact") return run_reduce_exact(cfg);
  if (subcommand == "real-reduce") return run_real_reduce(cfg);
  if (subcommand == "uniformity") return run_uniformity(cfg);
  if (subcommand == "lipschitz") return run_lipschitz(cfg);
  if (subcommand == "tvcurve") return run_tvcurve(cfg);
  if (subcommand == "decode-bench") return run_decode_bench(cfg);
  throw std::invalid_argument("unknown subcommand: " + subcommand);
}

}  // namespace skred::cli
