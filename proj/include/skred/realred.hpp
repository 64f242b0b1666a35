#pragma once

// The real-valued-model reduction over exact rationals: convex curve X(t)
// through a worst-case input, the cut partition function Zhat, Berlekamp-
// Welch recovery of f(t) = Zhat(X(t)) from oracle answers along the
// schedule, and the Markov-bound success analysis.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "skred/ff.hpp"
#include "skred/poly.hpp"
#include "skred/reduction.hpp"
#include "skred/stats.hpp"

namespace skred::realred {

using Rational = ff::Rational;
using RationalVec = std::vector<Rational>;  // n(n-1)/2 positive entries

// delta in (0,1); L = ceil(n^2/delta) raised if needed so delta L exceeds
// the degree bound; eps = delta / (2 C n^2 L), keeping eps L small enough
// that the per-point TV shift stays within delta/4.
struct Schedule {
  Rational delta;
  long points = 0;  // L
  Rational eps;
  Rational tv_constant;  // C

  static Schedule make(int n, const Rational& delta, const Rational& tv_constant);
};

// X(t) = (1-t) X + t a, componentwise.
RationalVec curve_X(const RationalVec& x, const RationalVec& a, const Rational& t);

// Zhat(X) = sum over sigma of prod over cut pairs X_ij.
Rational zhat(const RationalVec& entries, int n, int cap = sk::kDefaultBruteForceCap);

// Symbolic expansion of f(t) = Zhat(X(t)) with exact rational coefficients.
poly::PolyQ zhat_curve_poly(const RationalVec& x, const RationalVec& a, int n);

// P(mean of Bernoullis with means >= q exceeds eps) >= (q - eps)/(1 - eps).
Rational markov_lower_bound(const Rational& q, const Rational& eps);

// Oracle over rational coupling vectors, with shared query counter.
class RealOracle {
 public:
  using Fn = std::function<Rational(const RationalVec&)>;
  RealOracle(Fn fn, double declared_success);
  Rational query(const RationalVec& x) const;
  double declared_success() const { return q_; }
  uint64_t queries() const { return counter_->load(); }

 private:
  Fn fn_;
  double q_;
  std::shared_ptr<std::atomic<uint64_t>> counter_;
};

// Input-consistent faulty oracle: ground truth zhat with per-input
// probability q (pseudorandom hash), else per the failure mode.
RealOracle make_faulty_real_oracle(reduction::FaultMode mode, double q, uint64_t seed, int n,
                                   int cap = sk::kDefaultBruteForceCap);

// Dyadic-rational surrogate of X_ij = e^{2 J_ij}: each entry is the
// precision_bits truncation of a sampled exponential, resampled in the rare
// case the truncation hits zero (entries must stay positive).
RationalVec sample_couplings(int n, int precision_bits, stats::Rng& rng);

struct RealTrialStats {
  uint64_t list_size = 0;
  uint64_t agreements = 0;  // exact count against ground truth f
  bool decoded = false;
};

// One reduction trial: draw X, query the oracle along the schedule, recover
// f by Berlekamp-Welch, return f(1) = Zhat(a). nullopt: trial failure.
std::optional<Rational> real_reduce_once(const RationalVec& a, const RealOracle& oracle,
                                         const Schedule& sched, int n, int precision_bits,
                                         stats::Rng& rng, RealTrialStats* stats = nullptr);

struct RealReductionOutcome {
  std::optional<Rational> value;  // strict-majority vote over rounds
  int rounds = 0;
  int answered = 0;  // trials that produced any value
};

RealReductionOutcome real_reduction(const RationalVec& a, const RealOracle& oracle,
                                    const Rational& delta, const Rational& tv_constant, int n,
                                    int rounds, int precision_bits, stats::Rng& rng);

}  // namespace skred::realred
