#include "skred/realred.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace skred::realred {

Schedule Schedule::make(int n, const Rational& delta, const Rational& tv_constant) {
  if (n < 2) throw std::invalid_argument("Schedule: n must be >= 2");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("Schedule: delta outside (0,1)");
  if (!(tv_constant > 0)) throw std::invalid_argument("Schedule: C must be positive");
  Schedule s;
  s.delta = delta;
  s.tv_constant = tv_constant;
  const long n2 = static_cast<long>(n) * n;
  Rational ratio = Rational(n2) / delta;
  mpz_class l;
  mpz_cdiv_q(l.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  if (l > 5000000) throw std::invalid_argument("Schedule: list size beyond desk scale");
  s.points = static_cast<long>(l.get_ui());
  // keep delta L strictly above the degree bound so the agreement threshold
  // clears (L+d)/2
  while (s.delta * s.points <= sk::max_cut(n)) ++s.points;
  s.eps = s.delta / (Rational(2) * tv_constant * Rational(n2) * Rational(s.points));
  return s;
}

RationalVec curve_X(const RationalVec& x, const RationalVec& a, const Rational& t) {
  if (x.size() != a.size()) throw std::invalid_argument("curve_X: length mismatch");
  if (t < 0 || t > 1) throw std::invalid_argument("curve_X: t outside [0,1]");
  RationalVec out;
  out.reserve(x.size());
  const Rational omt = Rational(1) - t;
  for (size_t i = 0; i < x.size(); ++i) out.push_back(omt * x[i] + t * a[i]);
  return out;
}

Rational zhat(const RationalVec& entries, int n, int cap) {
  if (n < 1) throw std::invalid_argument("zhat: n must be >= 1");
  if (n > cap) throw std::invalid_argument("zhat: brute-force cap exceeded");
  if (entries.size() != static_cast<size_t>(n) * (n - 1) / 2)
    throw std::invalid_argument("zhat: wrong entry count");
  for (const auto& v : entries)
    if (!(v > 0)) throw std::invalid_argument("zhat: entries must be positive");
  Rational z = 0;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    Rational term = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((m >> i) & 1) != ((m >> j) & 1)) term *= entries[sk::pair_index(i, j, n)];
    z += term;
  }
  return z;
}

poly::PolyQ zhat_curve_poly(const RationalVec& x, const RationalVec& a, int n) {
  if (x.size() != a.size() || x.size() != static_cast<size_t>(n) * (n - 1) / 2)
    throw std::invalid_argument("zhat_curve_poly: length mismatch");
  poly::PolyQ total;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    poly::PolyQ term;
    term.coeff = {Rational(1)};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (((m >> i) & 1) != ((m >> j) & 1)) {
          size_t idx = sk::pair_index(i, j, n);
          poly::PolyQ lin;
          lin.coeff = {x[idx], a[idx] - x[idx]};  // (1-t) X + t a
          lin.normalize();
          term = poly::mul(term, lin);
        }
    total = poly::add(total, term);
  }
  return total;
}

Rational markov_lower_bound(const Rational& q, const Rational& eps) {
  if (!(eps > 0 && eps < q && q < 1))
    throw std::invalid_argument("markov_lower_bound: need 0 < eps < q < 1");
  return (q - eps) / (Rational(1) - eps);
}

RealOracle::RealOracle(Fn fn, double declared_success)
    : fn_(std::move(fn)), q_(declared_success),
      counter_(std::make_shared<std::atomic<uint64_t>>(0)) {
  if (!(q_ > 0.0 && q_ <= 1.0))
    throw std::invalid_argument("RealOracle: success rate must lie in (0, 1]");
}

Rational RealOracle::query(const RationalVec& x) const {
  counter_->fetch_add(1, std::memory_order_relaxed);
  return fn_(x);
}

namespace {

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

uint64_t hash_rationals(uint64_t seed, const RationalVec& v) {
  const uint64_t q = 0x1FFFFFFFFFFFFFFFull;  // 2^61 - 1
  uint64_t h = mix64(seed ^ 0x452821E638D01377ull);
  for (const auto& r : v) {
    h = mix64(h ^ mpz_fdiv_ui(r.get_num_mpz_t(), q));
    h = mix64(h ^ mpz_fdiv_ui(r.get_den_mpz_t(), q));
  }
  return h;
}

}  // namespace

RealOracle make_faulty_real_oracle(reduction::FaultMode mode, double q, uint64_t seed, int n,
                                   int cap) {
  auto fn = [mode, q, seed, n, cap](const RationalVec& x) -> Rational {
    Rational truth = zhat(x, n, cap);
    uint64_t h = hash_rationals(seed, x);
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    if (u < q) return truth;
    switch (mode) {
      case reduction::FaultMode::UniformError: {
        uint64_t h2 = mix64(h ^ 0x13198A2E03707344ull);
        return truth + Rational(1 + (h2 & 0xFFFFF), 1 + ((h2 >> 20) & 0xFFFFF));
      }
      case reduction::FaultMode::AdversarialConstant:
        return Rational(static_cast<long>(mix64(seed) & 0xFFFF) + 1);
      case reduction::FaultMode::Sticky:
        return truth + 1;
    }
    return truth;
  };
  return RealOracle(fn, q);
}

RationalVec sample_couplings(int n, int precision_bits, stats::Rng& rng) {
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  RationalVec out;
  out.reserve(pairs);
  for (size_t i = 0; i < pairs; ++i) {
    Rational v = 0;
    do {
      v = stats::truncate(std::exp(2.0 * rng.gaussian()), precision_bits).truncated;
    } while (!(v > 0));
    out.push_back(v);
  }
  return out;
}

std::optional<Rational> real_reduce_once(const RationalVec& a, const RealOracle& oracle,
                                         const Schedule& sched, int n, int precision_bits,
                                         stats::Rng& rng, RealTrialStats* stats) {
  for (const auto& v : a)
    if (!(v > 0)) throw std::invalid_argument("real_reduce_once: worst-case entries must be positive");
  RationalVec x = sample_couplings(n, precision_bits, rng);
  poly::EvalListQ list;
  list.points.reserve(sched.points);
  for (long k = 1; k <= sched.points; ++k) {
    Rational tk = sched.eps * k;
    list.points.push_back({tk, oracle.query(curve_X(x, a, tk)), true});
  }
  const int64_t d = sk::max_cut(n);
  if (stats) {
    stats->list_size = list.points.size();
    stats->agreements = 0;
    for (const auto& pt : list.points)
      if (zhat(curve_X(x, a, pt.x), n) == pt.y) ++stats->agreements;
  }
  auto f = poly::berlekamp_welch(list, d);
  if (stats) stats->decoded = f.has_value();
  if (!f) return std::nullopt;
  return poly::eval(*f, Rational(1));
}

RealReductionOutcome real_reduction(const RationalVec& a, const RealOracle& oracle,
                                    const Rational& delta, const Rational& tv_constant, int n,
                                    int rounds, int precision_bits, stats::Rng& rng) {
  if (rounds < 1 || rounds % 2 == 0)
    throw std::invalid_argument("real_reduction: rounds must be odd");
  Schedule sched = Schedule::make(n, delta, tv_constant);
  RealReductionOutcome out;
  out.rounds = rounds;
  std::map<Rational, int> votes;
  for (int r = 0; r < rounds; ++r) {
    auto v = real_reduce_once(a, oracle, sched, n, precision_bits, rng);
    if (v) {
      ++out.answered;
      votes[*v]++;
    }
  }
  for (const auto& [value, count] : votes)
    if (2 * count > rounds) {
      out.value = value;
      break;
    }
  return out;
}

}  // namespace skred::realred
