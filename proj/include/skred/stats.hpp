#pragma once

// Probabilistic toolkit: seeded sampling, N-bit truncation, residue
// uniformity measurement, log-normal density Lipschitz checks, total
// variation distance (discrete and continuous), and maximal couplings.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "skred/ff.hpp"
#include "skred/sk.hpp"

namespace skred::stats {

// Counter-free deterministic generator (splitmix64 core). The Gaussian draw
// uses the polar method on top of our own uniforms, so streams are identical
// across platforms and compilers given the same seed.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next_u64();
  double next_unit();  // [0, 1)
  uint64_t uniform_below(uint64_t n);  // rejection-sampled, exactly uniform
  double gaussian();

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Named substream derivation so any single trial is replayable in isolation.
uint64_t substream(uint64_t root_seed, std::string_view name, uint64_t index = 0);

struct TruncatedSample {
  double raw = 0.0;
  int precision = 0;
  ff::Rational truncated;   // 2^{-N} floor(2^N raw)
  ff::BigInt integer_form;  // floor(2^N raw)
};

// x^[N] = 2^{-N} floor(2^N x); x must be nonnegative.
TruncatedSample truncate(double x, int precision);

// J~_ij = floor(2^N exp(beta g / sqrt(n))), B~/C~ = floor(2^N exp(g)) with g
// iid standard normal; deterministic given seed. Enforces N <= n^alpha.
sk::SkInstance sample_instance(int n, int precision, double beta, uint64_t seed,
                               double alpha = 2.0);

enum class EntryKind { J, B, C };

struct UniformityReport {
  uint64_t p = 0;
  int precision = 0;
  uint64_t samples = 0;
  std::vector<double> freq;        // empirical residue frequencies
  double max_deviation = 0.0;      // max_l |freq_l - 1/p|
  double confidence_radius = 0.0;  // 3-sigma binomial radius at 1/p
  bool undersampled = false;       // samples/p < 100
};

UniformityReport residue_uniformity(int precision, uint64_t p, uint64_t samples, EntryKind kind,
                                    int n, double beta, uint64_t seed);

struct LipschitzReport {
  size_t pairs_checked = 0;
  size_t violations = 0;
  double worst_margin = 0.0;  // min over pairs of bound - |log ratio|
};

// Checks exp(-K|t~-t|) <= f(t~)/f(t) <= exp(K|t~-t|), K = 2 n ln(Delta) /
// (beta^2 delta), on a grid x grid set of (t, t~) pairs in [delta, Delta].
// field_variant selects the exp(B) density instead of exp(beta J / sqrt n).
LipschitzReport lipschitz_ratio_check(double delta, double big_delta, int n, double beta,
                                      int grid, bool field_variant);

struct DiscreteDist {
  std::vector<double> prob;  // support 0..k-1
  void validate(double tol = 1e-12) const;
};

double tv_distance(const DiscreteDist& P, const DiscreteDist& Q);

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
};

// (1/2) integral of |fp - fq| over [lo, hi] by adaptive Simpson; tail_mass is
// an analytic bound on the excluded probability mass of both densities and
// feeds the reported error bound.
QuadratureResult tv_continuous(const std::function<double(double)>& fp,
                               const std::function<double(double)>& fq, double lo, double hi,
                               double tail_mass, double tol = 1e-9);

struct TvCurvePoint {
  double lambda = 0.0;
  double tv = 0.0;
  double error_bound = 0.0;
};

struct TvCurve {
  double a = 0.0;
  std::vector<TvCurvePoint> points;
  double sup_ratio = 0.0;  // sup over the grid of tv / lambda
};

// d_TV(X(lambda), X(0)) for X(lambda) = (1-lambda) e^J + lambda a, J ~ N(0,4),
// evaluated per lambda by quadrature with analytic lognormal tails.
TvCurve tv_lognormal_curve(double a, const std::vector<double>& lambdas);

// Sampler attaining P(X = Y) = 1 - d_TV(P, Q): with probability 1 - d_TV draw
// from the overlap, otherwise from the normalized residuals.
class MaximalCoupling {
 public:
  MaximalCoupling(DiscreteDist P, DiscreteDist Q, uint64_t seed);
  std::pair<int, int> draw();
  double tv() const { return tv_; }

 private:
  int sample_from(const std::vector<double>& pmf, double total);
  DiscreteDist p_, q_;
  std::vector<double> overlap_, rp_, rq_;
  double tv_ = 0.0;
  Rng rng_;
};

}  // namespace skred::stats
