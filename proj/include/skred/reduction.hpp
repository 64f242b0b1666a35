#pragma once

// The worst-to-average reduction over Z_p: random curve through the two
// recursion branches, oracle querying in the full-sweep or resampled regime,
// Sudan list decoding, disagreement-point disambiguation, recursive descent
// with majority vote, and CRT assembly of the exact partition function.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skred/ff.hpp"
#include "skred/poly.hpp"
#include "skred/sk.hpp"
#include "skred/stats.hpp"

namespace skred::reduction {

// D(x) = (2-x) v1 + (x-1) v2 + (x-1)(x-2)(K + x M), componentwise over Z_p.
// Endpoint identities D(1) = v1, D(2) = v2 are verified at construction.
class Curve {
 public:
  Curve(std::vector<uint64_t> v1, std::vector<uint64_t> v2, std::vector<uint64_t> k,
        std::vector<uint64_t> m, uint64_t p);
  std::vector<uint64_t> eval(uint64_t x) const;
  size_t dim() const { return v1_.size(); }
  uint64_t modulus() const { return p_; }

 private:
  std::vector<uint64_t> v1_, v2_, k_, m_;
  uint64_t p_;
};

std::vector<uint64_t> flatten(const sk::ResidueInstance& inst);
sk::ResidueInstance unflatten(const std::vector<uint64_t>& v, int n, uint64_t p);

// Opaque callable answering residue instances, with a declared success rate
// and a shared monotone query counter.
class OracleHandle {
 public:
  using Fn = std::function<uint64_t(const sk::ResidueInstance&)>;
  OracleHandle(Fn fn, double declared_success);
  uint64_t query(const sk::ResidueInstance& inst) const;
  double declared_success() const { return q_; }
  uint64_t queries() const { return counter_->load(); }

 private:
  Fn fn_;
  double q_;
  std::shared_ptr<std::atomic<uint64_t>> counter_;
};

enum class FaultMode { UniformError, AdversarialConstant, Sticky };

// Simulated average-case solver: answers ground truth (brute force mod p)
// with per-input probability q decided by a pseudorandom hash of the input,
// so repeated queries at the same point cannot resample. Failure modes:
// uniform random residue, a fixed wrong constant, or truth plus one.
OracleHandle make_faulty_oracle(FaultMode mode, double q, uint64_t seed, int precision,
                                int cap = sk::kDefaultBruteForceCap);

enum class Regime { FullSweep, Resampled };

// Full sweep when p <= 161 n^{3k+2}, resampling above.
Regime select_regime(int n, double k, uint64_t p);

// p >= 9 n^{2k+2}: parameter floor under which the candidate-set cap of the
// reduction is guaranteed.
bool faithful_prime_floor(int n, double k, uint64_t p);

struct ReductionParams {
  double q = 1.0;   // declared oracle success probability
  double k = 0.0;   // hardness exponent used in the n^{...} thresholds
  int base_spins = 4;             // H: brute force at or below
  int retry_budget = 3;           // fresh-curve retries per level
  bool demo_mode = false;         // relaxed parameter regime (see docs)
  uint64_t demo_list_size = 0;    // resampled list size; 0 derives minimal feasible
  double demo_margin_sigmas = 4.0;
  int brute_force_cap = sk::kDefaultBruteForceCap;
};

struct LevelRecord {
  int n = 0;
  uint64_t p = 0;
  std::string regime;
  uint64_t list_size = 0;
  uint64_t distinct_points = 0;
  uint64_t threshold_t = 0;
  int64_t degree_bound = 0;
  uint64_t candidates = 0;
  int64_t disagreement_x = -1;  // -1: not needed
  bool success = false;
  uint64_t oracle_queries = 0;
  double wall_ms = 0.0;
  bool faithful_prime = false;       // p >= 9 n^{2k+2}
  bool candidate_cap_guaranteed = false;  // exact-degree double-count check
};

struct ReductionReport {
  std::vector<LevelRecord> levels;
  std::vector<std::pair<uint64_t, uint64_t>> residues;  // (z mod p, p)
  std::string crt_value;  // decimal; empty until assembled
  bool verified = false;
  std::string to_json() const;
};

// Oracle answers along the curve; full sweep walks x = 3..p, resampling
// draws list_size x values uniformly from {3,...,p} with replacement
// (duplicates retained here, deduplicated at decoder entry).
poly::EvalListZp build_eval_list(const Curve& curve, const OracleHandle& oracle, int n,
                                 Regime regime, uint64_t list_size, stats::Rng& rng);

// List size for the resampled regime: the paper's 40 n^{2k+2} in the
// faithful regime, otherwise the smallest L whose expected agreement clears
// the formal decoder bound by demo_margin_sigmas standard deviations.
uint64_t resampled_list_size(int n, int64_t d, const ReductionParams& params);

struct RecoverOutcome {
  std::optional<poly::PolyZp> phi;  // nullopt: decode empty or selection miss
  uint64_t candidates = 0;
  int64_t disagreement_x = -1;  // -1: single candidate, no selection needed
};

// Sudan decode, candidate disambiguation at a point where all candidates
// differ, selection by one ground-truth evaluation (supplied by the caller:
// the next recursion level, or brute force at the base).
RecoverOutcome recover_phi(const poly::EvalListZp& list, int64_t d, uint64_t t,
                           const std::function<std::optional<uint64_t>(uint64_t)>& truth_at);

// Z_n(inst; p) via one level of self-recursion plus recursive descent;
// bottoms out at base_spins with brute force. nullopt: trial failure.
std::optional<uint64_t> reduce_level(const sk::ResidueInstance& inst, int precision,
                                     const OracleHandle& oracle, const ReductionParams& params,
                                     stats::Rng& rng, ReductionReport* report);

// The value filling more than half the slots, if any (failed runs count
// against the majority).
std::optional<uint64_t> strict_majority(const std::vector<std::optional<uint64_t>>& votes);

// Modal value of rounds independent runs; fails without a strict majority.
std::optional<uint64_t> reduce_with_majority(const sk::ResidueInstance& inst, int precision,
                                             const OracleHandle& oracle,
                                             const ReductionParams& params, int rounds,
                                             stats::Rng& rng, ReductionReport* report);

struct ExactReductionResult {
  ff::BigInt z;
  bool verified = false;  // brute-force comparison ran and matched
  ReductionReport report;
};

// Exact Z_n by Chinese remaindering: primes are taken ascending from the
// window until their product exceeds partition_upper_bound(inst); each
// residue is computed by majority vote over the per-prime oracle.
std::optional<ExactReductionResult> reduce_exact(
    const sk::SkInstance& inst, const std::function<OracleHandle(uint64_t)>& oracle_for_prime,
    const ReductionParams& params, const ff::PrimeWindow& window, int rounds, stats::Rng& rng);

}  // namespace skred::reduction
