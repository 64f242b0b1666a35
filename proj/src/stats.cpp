#include "skred/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skred::stats {

namespace {

uint64_t splitmix(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

uint64_t Rng::next_u64() { return splitmix(state_); }

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t Rng::uniform_below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

uint64_t substream(uint64_t root_seed, std::string_view name, uint64_t index) {
  uint64_t s = root_seed ^ fnv1a(name);
  s += index * 0x9E3779B97F4A7C15ull;
  uint64_t st = s;
  return splitmix(st);
}

TruncatedSample truncate(double x, int precision) {
  if (x < 0) throw std::invalid_argument("truncate: negative input");
  if (precision < 0) throw std::invalid_argument("truncate: negative precision");
  TruncatedSample out;
  out.raw = x;
  out.precision = precision;
  double scaled = std::floor(std::ldexp(x, precision));
  if (scaled >= 0x1.0p62) throw std::invalid_argument("truncate: scaled value too large");
  out.integer_form = ff::BigInt(static_cast<unsigned long>(scaled));
  out.truncated = ff::Rational(out.integer_form) / ff::Rational(ff::pow2(precision));
  return out;
}

sk::SkInstance sample_instance(int n, int precision, double beta, uint64_t seed, double alpha) {
  if (n < 1) throw std::invalid_argument("sample_instance: n must be >= 1");
  if (precision < 0 || static_cast<double>(precision) > std::pow(n, alpha))
    throw std::invalid_argument("sample_instance: precision outside [0, n^alpha]");
  Rng rng(substream(seed, "instance"));
  sk::SkInstance inst;
  inst.n = n;
  inst.precision = precision;
  inst.beta = beta;
  inst.seed = seed;
  const double scale = beta / std::sqrt(static_cast<double>(n));
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  inst.J.reserve(pairs);
  for (size_t k = 0; k < pairs; ++k)
    inst.J.push_back(truncate(std::exp(scale * rng.gaussian()), precision).integer_form);
  for (int i = 0; i < n; ++i)
    inst.B.push_back(truncate(std::exp(rng.gaussian()), precision).integer_form);
  for (int i = 0; i < n; ++i)
    inst.C.push_back(truncate(std::exp(rng.gaussian()), precision).integer_form);
  return inst;
}

UniformityReport residue_uniformity(int precision, uint64_t p, uint64_t samples, EntryKind kind,
                                    int n, double beta, uint64_t seed) {
  if (p < 2) throw std::invalid_argument("residue_uniformity: p must be >= 2");
  UniformityReport rep;
  rep.p = p;
  rep.precision = precision;
  rep.samples = samples;
  rep.undersampled = samples < 100 * p;
  Rng rng(substream(seed, "uniformity", (static_cast<uint64_t>(precision) << 32) ^ p));
  const double scale = kind == EntryKind::J ? beta / std::sqrt(static_cast<double>(n)) : 1.0;
  std::vector<uint64_t> counts(p, 0);
  for (uint64_t s = 0; s < samples; ++s) {
    double v = std::floor(std::ldexp(std::exp(scale * rng.gaussian()), precision));
    counts[static_cast<uint64_t>(v) % p]++;
  }
  rep.freq.resize(p);
  const double uniform = 1.0 / static_cast<double>(p);
  for (uint64_t r = 0; r < p; ++r) {
    rep.freq[r] = static_cast<double>(counts[r]) / static_cast<double>(samples);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.freq[r] - uniform));
  }
  rep.confidence_radius =
      3.0 * std::sqrt(uniform * (1.0 - uniform) / static_cast<double>(samples));
  return rep;
}

LipschitzReport lipschitz_ratio_check(double delta, double big_delta, int n, double beta,
                                      int grid, bool field_variant) {
  if (!(delta > 0 && delta < big_delta))
    throw std::invalid_argument("lipschitz_ratio_check: need 0 < delta < Delta");
  if (!(std::log(big_delta) > beta * beta))
    throw std::invalid_argument("lipschitz_ratio_check: need ln(Delta) > beta^2");
  if (!(static_cast<double>(n) > beta * beta))
    throw std::invalid_argument("lipschitz_ratio_check: need n > beta^2");
  if (grid < 2) throw std::invalid_argument("lipschitz_ratio_check: grid too small");
  // log densities up to shared constants (constants cancel in ratios)
  auto logf = [&](double t) {
    double lt = std::log(t);
    if (field_variant) return -lt - 0.5 * lt * lt;
    return -lt - static_cast<double>(n) * lt * lt / (2.0 * beta * beta);
  };
  const double k_const = 2.0 * n * std::log(big_delta) / (beta * beta * delta);
  LipschitzReport rep;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    double t = delta + (big_delta - delta) * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      double tt = delta + (big_delta - delta) * j / (grid - 1);
      double lhs = std::abs(logf(tt) - logf(t));
      double bound = k_const * std::abs(tt - t);
      double margin = bound - lhs;
      rep.worst_margin = std::min(rep.worst_margin, margin);
      if (margin < -1e-9) ++rep.violations;
      ++rep.pairs_checked;
    }
  }
  return rep;
}

void DiscreteDist::validate(double tol) const {
  double s = 0;
  for (double v : prob) {
    if (v < 0) throw std::invalid_argument("DiscreteDist: negative probability");
    s += v;
  }
  if (std::abs(s - 1.0) > tol) throw std::invalid_argument("DiscreteDist: probabilities must sum to 1");
}

double tv_distance(const DiscreteDist& P, const DiscreteDist& Q) {
  if (P.prob.size() != Q.prob.size())
    throw std::invalid_argument("tv_distance: support mismatch");
  double s = 0;
  for (size_t i = 0; i < P.prob.size(); ++i) s += std::abs(P.prob[i] - Q.prob[i]);
  return s / 2.0;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double lognormal_density_sigma2(double t) {
  // density of e^J with J ~ N(0, 4)
  if (t <= 0) return 0.0;
  double lt = std::log(t);
  return std::exp(-lt * lt / 8.0) / (std::sqrt(8.0 * M_PI) * t);
}

double lognormal_upper_tail_sigma2(double t) {
  // P(e^J > t), J ~ N(0,4)
  if (t <= 0) return 1.0;
  return 0.5 * std::erfc(std::log(t) / (2.0 * std::sqrt(2.0)));
}

double lognormal_cdf_sigma2(double t) { return 1.0 - lognormal_upper_tail_sigma2(t); }

}  // namespace

QuadratureResult tv_continuous(const std::function<double(double)>& fp,
                               const std::function<double(double)>& fq, double lo, double hi,
                               double tail_mass, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("tv_continuous: bad interval");
  auto absdiff = [&](double t) { return std::abs(fp(t) - fq(t)); };
  QuadratureResult r;
  r.value = 0.5 * integrate(absdiff, lo, hi, tol);
  r.error_bound = 0.5 * (tol * 16.0 + tail_mass);
  return r;
}

TvCurve tv_lognormal_curve(double a, const std::vector<double>& lambdas) {
  if (a <= 0) throw std::invalid_argument("tv_lognormal_curve: a must be positive");
  TvCurve curve;
  curve.a = a;
  for (double lam : lambdas) {
    if (lam < 0 || lam >= 1) throw std::invalid_argument("tv_lognormal_curve: lambda outside [0,1)");
    TvCurvePoint pt;
    pt.lambda = lam;
    if (lam == 0.0) {
      curve.points.push_back(pt);
      continue;
    }
    auto f0 = [](double t) { return lognormal_density_sigma2(t); };
    auto flam = [&](double t) {
      if (t <= lam * a) return 0.0;
      return lognormal_density_sigma2((t - lam * a) / (1.0 - lam)) / (1.0 - lam);
    };
    // below lam*a only f0 has mass; handled analytically through the CDF
    double head = 0.5 * lognormal_cdf_sigma2(lam * a);
    double cut = std::exp(10.0) * (1.0 + a);  // ~5 sigma of ln scale
    double tail =
        lognormal_upper_tail_sigma2(cut) +
        lognormal_upper_tail_sigma2((cut - lam * a) / (1.0 - lam));
    auto q = tv_continuous(f0, flam, lam * a, cut, tail, 1e-9);
    pt.tv = head + q.value;
    pt.error_bound = q.error_bound;
    curve.points.push_back(pt);
    if (lam > 0) curve.sup_ratio = std::max(curve.sup_ratio, pt.tv / lam);
  }
  return curve;
}

MaximalCoupling::MaximalCoupling(DiscreteDist P, DiscreteDist Q, uint64_t seed)
    : p_(std::move(P)), q_(std::move(Q)), rng_(seed) {
  p_.validate();
  q_.validate();
  if (p_.prob.size() != q_.prob.size())
    throw std::invalid_argument("MaximalCoupling: support mismatch");
  tv_ = tv_distance(p_, q_);
  overlap_.resize(p_.prob.size());
  rp_.resize(p_.prob.size());
  rq_.resize(p_.prob.size());
  for (size_t i = 0; i < p_.prob.size(); ++i) {
    overlap_[i] = std::min(p_.prob[i], q_.prob[i]);
    rp_[i] = p_.prob[i] - overlap_[i];
    rq_[i] = q_.prob[i] - overlap_[i];
  }
}

int MaximalCoupling::sample_from(const std::vector<double>& pmf, double total) {
  double u = rng_.next_unit() * total;
  double acc = 0;
  for (size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(pmf.size()) - 1;
}

std::pair<int, int> MaximalCoupling::draw() {
  if (tv_ == 0.0 || rng_.next_unit() < 1.0 - tv_) {
    int v = sample_from(overlap_, 1.0 - tv_);
    return {v, v};
  }
  int x = sample_from(rp_, tv_);
  int y = sample_from(rq_, tv_);
  return {x, y};
}

}  // namespace skred::stats
