#include "skred/reduction.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace skred::reduction {

using ff::add_mod;
using ff::mul_mod;
using ff::sub_mod;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

uint64_t absorb(uint64_t h, uint64_t v) { return mix64(h ^ (v + 0x9E3779B97F4A7C15ull)); }

uint64_t hash_instance(uint64_t seed, const sk::ResidueInstance& inst) {
  uint64_t h = mix64(seed ^ 0x243F6A8885A308D3ull);
  h = absorb(h, inst.p);
  h = absorb(h, static_cast<uint64_t>(inst.n));
  for (uint64_t v : inst.J) h = absorb(h, v);
  for (uint64_t v : inst.B) h = absorb(h, v);
  for (uint64_t v : inst.C) h = absorb(h, v);
  return h;
}

}  // namespace

Curve::Curve(std::vector<uint64_t> v1, std::vector<uint64_t> v2, std::vector<uint64_t> k,
             std::vector<uint64_t> m, uint64_t p)
    : v1_(std::move(v1)), v2_(std::move(v2)), k_(std::move(k)), m_(std::move(m)), p_(p) {
  if (v1_.size() != v2_.size() || v1_.size() != k_.size() || v1_.size() != m_.size())
    throw std::invalid_argument("Curve: dimension mismatch");
  if (eval(1) != v1_ || eval(2) != v2_)
    throw std::logic_error("Curve: endpoint identity failed");
}

std::vector<uint64_t> Curve::eval(uint64_t x) const {
  x %= p_;
  const uint64_t a1 = sub_mod(2 % p_, x, p_);                 // (2 - x)
  const uint64_t a2 = sub_mod(x, 1, p_);                      // (x - 1)
  const uint64_t a3 = mul_mod(a2, sub_mod(x, 2 % p_, p_), p_);  // (x-1)(x-2)
  const uint64_t a4 = mul_mod(a3, x, p_);
  std::vector<uint64_t> out(v1_.size());
  for (size_t i = 0; i < v1_.size(); ++i) {
    uint64_t acc = mul_mod(a1, v1_[i], p_);
    acc = add_mod(acc, mul_mod(a2, v2_[i], p_), p_);
    acc = add_mod(acc, mul_mod(a3, k_[i], p_), p_);
    acc = add_mod(acc, mul_mod(a4, m_[i], p_), p_);
    out[i] = acc;
  }
  return out;
}

std::vector<uint64_t> flatten(const sk::ResidueInstance& inst) {
  std::vector<uint64_t> v;
  v.reserve(inst.J.size() + inst.B.size() + inst.C.size());
  v.insert(v.end(), inst.J.begin(), inst.J.end());
  v.insert(v.end(), inst.B.begin(), inst.B.end());
  v.insert(v.end(), inst.C.begin(), inst.C.end());
  return v;
}

sk::ResidueInstance unflatten(const std::vector<uint64_t>& v, int n, uint64_t p) {
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  if (v.size() != pairs + 2 * static_cast<size_t>(n))
    throw std::invalid_argument("unflatten: wrong length");
  sk::ResidueInstance inst;
  inst.n = n;
  inst.p = p;
  inst.J.assign(v.begin(), v.begin() + static_cast<ptrdiff_t>(pairs));
  inst.B.assign(v.begin() + static_cast<ptrdiff_t>(pairs),
                v.begin() + static_cast<ptrdiff_t>(pairs + n));
  inst.C.assign(v.begin() + static_cast<ptrdiff_t>(pairs + n), v.end());
  return inst;
}

OracleHandle::OracleHandle(Fn fn, double declared_success)
    : fn_(std::move(fn)), q_(declared_success),
      counter_(std::make_shared<std::atomic<uint64_t>>(0)) {
  if (!(q_ > 0.0 && q_ <= 1.0))
    throw std::invalid_argument("OracleHandle: success rate must lie in (0, 1]");
}

uint64_t OracleHandle::query(const sk::ResidueInstance& inst) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return fn_(inst);
}

OracleHandle make_faulty_oracle(FaultMode mode, double q, uint64_t seed, int precision, int cap) {
  if (!(q > 0.0 && q <= 1.0))
    throw std::invalid_argument("make_faulty_oracle: q must lie in (0, 1]");
  auto fn = [mode, q, seed, precision, cap](const sk::ResidueInstance& inst) -> uint64_t {
    uint64_t truth = sk::partition_mod_p(inst, precision, cap);
    uint64_t h = hash_instance(seed, inst);
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (u < q) return truth;
    switch (mode) {
      case FaultMode::UniformError:
        return mix64(h ^ 0xD6E8FEB86659FD93ull) % inst.p;
      case FaultMode::AdversarialConstant:
        return mix64(seed ^ 0xA0761D6478BD642Full) % inst.p;
      case FaultMode::Sticky:
        return add_mod(truth, 1, inst.p);
    }
    return truth;
  };
  return OracleHandle(fn, q);
}

Regime select_regime(int n, double k, uint64_t p) {
  double threshold = 161.0 * std::pow(static_cast<double>(n), 3.0 * k + 2.0);
  return static_cast<double>(p) > threshold ? Regime::Resampled : Regime::FullSweep;
}

bool faithful_prime_floor(int n, double k, uint64_t p) {
  return static_cast<double>(p) >= 9.0 * std::pow(static_cast<double>(n), 2.0 * k + 2.0);
}

poly::EvalListZp build_eval_list(const Curve& curve, const OracleHandle& oracle, int n,
                                 Regime regime, uint64_t list_size, stats::Rng& rng) {
  const uint64_t p = curve.modulus();
  poly::EvalListZp list;
  list.p = p;
  auto query_at = [&](uint64_t x) {
    auto inst = unflatten(curve.eval(x), n - 1, p);
    uint64_t y = oracle.query(inst);
    list.points.push_back({x % p, y % p, true});
  };
  if (regime == Regime::FullSweep) {
    for (uint64_t x = 3; x <= p; ++x) query_at(x);  // x = p lands on residue 0
  } else {
    for (uint64_t i = 0; i < list_size; ++i) query_at(3 + rng.uniform_below(p - 2));
  }
  return list;
}

uint64_t resampled_list_size(int n, int64_t d, const ReductionParams& params) {
  if (!params.demo_mode) {
    double L = 40.0 * std::pow(static_cast<double>(n), 2.0 * params.k + 2.0);
    if (L > 9e18) throw std::invalid_argument("resampled_list_size: overflow");
    return static_cast<uint64_t>(std::ceil(L));
  }
  if (params.demo_list_size != 0) return params.demo_list_size;
  auto feasible_at = [&](uint64_t L) {
    double mean = params.q * static_cast<double>(L);
    double sd = std::sqrt(static_cast<double>(L) * params.q * (1.0 - params.q));
    double lo = mean - params.demo_margin_sigmas * sd;
    if (lo < 1.0) return false;
    auto sp = poly::sudan_parameters(L, d, static_cast<uint64_t>(std::floor(lo)));
    return sp.feasible;
  };
  for (uint64_t L = static_cast<uint64_t>(d) + 2; L < 2000000; ++L) {
    if (!feasible_at(L)) continue;
    // prefer a padded size away from the feasibility boundary
    for (uint64_t L2 = L + L / 20 + 1; L2 < L + L / 4 + 16; ++L2)
      if (feasible_at(L2)) return L2;
    return L;
  }
  throw std::invalid_argument("resampled_list_size: no feasible list size");
}

RecoverOutcome recover_phi(const poly::EvalListZp& list, int64_t d, uint64_t t,
                           const std::function<std::optional<uint64_t>(uint64_t)>& truth_at) {
  RecoverOutcome out;
  auto cands = poly::sudan_list_decode(list, d, t);
  out.candidates = cands.size();
  if (cands.empty()) return out;  // decode-empty: caller retries
  if (cands.size() == 1) {
    out.phi = std::move(cands.front());
    return out;
  }
  const uint64_t p = list.p;
  int64_t v = -1;
  std::vector<uint64_t> vals(cands.size());
  for (uint64_t x = 0; x < p; ++x) {
    bool distinct = true;
    for (size_t i = 0; i < cands.size() && distinct; ++i) {
      vals[i] = poly::eval(cands[i], x);
      for (size_t j = 0; j < i; ++j)
        if (vals[j] == vals[i]) {
          distinct = false;
          break;
        }
    }
    if (distinct) {
      v = static_cast<int64_t>(x);
      break;
    }
  }
  if (v < 0)
    throw std::logic_error("recover_phi: no disagreement point (parameters violate |T| < p)");
  out.disagreement_x = v;
  auto truth = truth_at(static_cast<uint64_t>(v));
  if (!truth) return out;  // sub-reduction failed
  for (auto& f : cands) {
    if (poly::eval(f, static_cast<uint64_t>(v)) == *truth) {
      out.phi = std::move(f);
      return out;
    }
  }
  return out;  // truth matched no candidate: trial failure
}

namespace {

uint64_t level_threshold(Regime regime, uint64_t distinct_points, int64_t d, int n, uint64_t p,
                         const ReductionParams& params) {
  auto sp = poly::sudan_parameters(distinct_points, d, 1);
  uint64_t t = sp.t_min_formal;
  if (regime == Regime::FullSweep) {
    double whp = std::ceil(static_cast<double>(p - 2) * params.q / 2.0);
    t = std::max(t, static_cast<uint64_t>(whp));
  } else if (!params.demo_mode) {
    double whp = std::ceil(9.0 * std::pow(static_cast<double>(n), params.k + 2.0));
    t = std::max(t, static_cast<uint64_t>(whp));
  }
  return t;
}

bool candidate_cap_guaranteed(double q, int64_t d, uint64_t p) {
  double cap = std::ceil(3.0 / q);
  return (3.0 / q) * (cap - 1.0) * static_cast<double>(d) < static_cast<double>(p - 2);
}

}  // namespace

std::optional<uint64_t> reduce_level(const sk::ResidueInstance& inst, int precision,
                                     const OracleHandle& oracle, const ReductionParams& params,
                                     stats::Rng& rng, ReductionReport* report) {
  inst.validate();
  const int n = inst.n;
  const uint64_t p = inst.p;
  if (n <= params.base_spins || n < 2) {
    double t0 = now_ms();
    uint64_t z = sk::partition_mod_p(inst, precision, params.brute_force_cap);
    if (report) {
      LevelRecord rec;
      rec.n = n;
      rec.p = p;
      rec.regime = "brute-force";
      rec.success = true;
      rec.wall_ms = now_ms() - t0;
      report->levels.push_back(rec);
    }
    return z;
  }

  auto split = sk::self_recursion_split(inst, precision);
  auto v1 = flatten(split.plus);
  auto v2 = flatten(split.minus);
  const int64_t d = 3 * (sk::max_cut(n - 1) + (n - 1));
  const Regime regime = select_regime(n, params.k, p);
  const uint64_t list_size =
      regime == Regime::FullSweep ? p - 2 : resampled_list_size(n, d, params);

  for (int attempt = 0; attempt <= params.retry_budget; ++attempt) {
    double t0 = now_ms();
    uint64_t queries0 = oracle.queries();
    std::vector<uint64_t> kvec(v1.size()), mvec(v1.size());
    for (auto& v : kvec) v = rng.uniform_below(p);
    for (auto& v : mvec) v = rng.uniform_below(p);
    Curve curve(v1, v2, kvec, mvec, p);
    auto list = build_eval_list(curve, oracle, n, regime, list_size, rng);
    auto dedup = list.deduplicated();
    const uint64_t t = level_threshold(regime, dedup.size(), d, n, p, params);

    LevelRecord rec;
    rec.n = n;
    rec.p = p;
    rec.regime = regime == Regime::FullSweep ? "full-sweep" : "resampled";
    rec.list_size = list.size();
    rec.distinct_points = dedup.size();
    rec.threshold_t = t;
    rec.degree_bound = d;
    rec.faithful_prime = faithful_prime_floor(n, params.k, p);
    rec.candidate_cap_guaranteed = candidate_cap_guaranteed(params.q, d, p);

    if (!poly::sudan_parameters(dedup.size(), d, t).feasible) {
      if (report) {
        rec.wall_ms = now_ms() - t0;
        rec.oracle_queries = oracle.queries() - queries0;
        report->levels.push_back(rec);
      }
      return std::nullopt;  // deterministic infeasibility: retries cannot help
    }

    auto truth_at = [&](uint64_t x) -> std::optional<uint64_t> {
      auto sub = unflatten(curve.eval(x), n - 1, p);
      if (n - 1 <= params.base_spins)
        return sk::partition_mod_p(sub, precision, params.brute_force_cap);
      return reduce_level(sub, precision, oracle, params, rng, report);
    };
    auto outcome = recover_phi(dedup, d, t, truth_at);
    rec.candidates = outcome.candidates;
    rec.disagreement_x = outcome.disagreement_x;
    rec.oracle_queries = oracle.queries() - queries0;
    rec.success = outcome.phi.has_value();
    rec.wall_ms = now_ms() - t0;
    if (report) report->levels.push_back(rec);
    if (!outcome.phi) continue;  // fresh K, M and retry

    uint64_t phi1 = poly::eval(*outcome.phi, 1);
    uint64_t phi2 = poly::eval(*outcome.phi, 2);
    return add_mod(mul_mod(split.c_weight, phi1, p), mul_mod(split.b_weight, phi2, p), p);
  }
  return std::nullopt;
}

std::optional<uint64_t> strict_majority(const std::vector<std::optional<uint64_t>>& votes) {
  std::map<uint64_t, size_t> counts;
  for (const auto& v : votes)
    if (v) counts[*v]++;
  for (const auto& [value, count] : counts)
    if (2 * count > votes.size()) return value;
  return std::nullopt;
}

std::optional<uint64_t> reduce_with_majority(const sk::ResidueInstance& inst, int precision,
                                             const OracleHandle& oracle,
                                             const ReductionParams& params, int rounds,
                                             stats::Rng& rng, ReductionReport* report) {
  if (rounds < 1 || rounds % 2 == 0)
    throw std::invalid_argument("reduce_with_majority: rounds must be odd");
  std::vector<std::optional<uint64_t>> votes;
  votes.reserve(rounds);
  for (int r = 0; r < rounds; ++r)
    votes.push_back(reduce_level(inst, precision, oracle, params, rng, report));
  return strict_majority(votes);
}

std::optional<ExactReductionResult> reduce_exact(
    const sk::SkInstance& inst, const std::function<OracleHandle(uint64_t)>& oracle_for_prime,
    const ReductionParams& params, const ff::PrimeWindow& window, int rounds, stats::Rng& rng) {
  inst.validate();
  ff::BigInt bound = ff::partition_upper_bound(inst);
  std::vector<uint64_t> primes;
  ff::BigInt prod = 1;
  for (uint64_t p : window.primes) {
    primes.push_back(p);
    prod *= ff::BigInt(static_cast<unsigned long>(p));
    if (prod > bound) break;
  }
  if (prod <= bound)
    throw std::invalid_argument("reduce_exact: prime window too small for the value bound");

  ExactReductionResult result;
  for (uint64_t p : primes) {
    auto oracle = oracle_for_prime(p);
    auto rinst = sk::reduce_instance(inst, p);
    auto z = reduce_with_majority(rinst, inst.precision, oracle, params, rounds, rng,
                                  &result.report);
    if (!z) return std::nullopt;
    result.report.residues.push_back({*z, p});
  }
  ff::BigInt z = ff::crt_reconstruct(result.report.residues);
  result.z = z;
  result.report.crt_value = z.get_str();
  if (inst.n >= 7 && inst.n <= params.brute_force_cap) {
    result.verified = (z == sk::partition_exact(inst, params.brute_force_cap));
    result.report.verified = result.verified;
  }
  return result;
}

std::string ReductionReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& rec : levels) {
    nlohmann::ordered_json lj;
    lj["n"] = rec.n;
    lj["p"] = rec.p;
    lj["regime"] = rec.regime;
    lj["list_size"] = rec.list_size;
    lj["distinct_points"] = rec.distinct_points;
    lj["threshold_t"] = rec.threshold_t;
    lj["degree_bound"] = rec.degree_bound;
    lj["candidates"] = rec.candidates;
    lj["disagreement_x"] = rec.disagreement_x;
    lj["success"] = rec.success;
    lj["oracle_queries"] = rec.oracle_queries;
    lj["wall_ms"] = rec.wall_ms;
    lj["faithful_prime"] = rec.faithful_prime;
    lj["candidate_cap_guaranteed"] = rec.candidate_cap_guaranteed;
    j["levels"].push_back(lj);
  }
  j["residues"] = nlohmann::ordered_json::array();
  for (const auto& [z, p] : residues) j["residues"].push_back({{"z", z}, {"p", p}});
  j["crt_value"] = crt_value;
  j["verified"] = verified;
  return j.dump();
}

}  // namespace skred::reduction
