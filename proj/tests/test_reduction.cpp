#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "skred/reduction.hpp"

using namespace skred;

TEST_SUITE_BEGIN("reduction");

namespace {

sk::ResidueInstance random_residue(int n, uint64_t p, stats::Rng& rng) {
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

}  // namespace

TEST_CASE("flatten and unflatten round trip in coupling-B-C order") {
  stats::Rng rng(1);
  auto inst = random_residue(5, 101, rng);
  auto v = reduction::flatten(inst);
  REQUIRE(v.size() == 10 + 5 + 5);
  CHECK(v[0] == inst.J[0]);
  CHECK(v[10] == inst.B[0]);
  CHECK(v[15] == inst.C[0]);
  auto back = reduction::unflatten(v, 5, 101);
  CHECK(back.J == inst.J);
  CHECK(back.B == inst.B);
  CHECK(back.C == inst.C);
}

TEST_CASE("curve endpoints and the cubic form") {
  stats::Rng rng(2);
  const uint64_t p = 1009;
  const size_t dim = 7;
  std::vector<uint64_t> v1(dim), v2(dim), k(dim), m(dim);
  for (auto* vec : {&v1, &v2, &k, &m})
    for (auto& x : *vec) x = rng.uniform_below(p);
  reduction::Curve curve(v1, v2, k, m, p);
  CHECK(curve.eval(1) == v1);
  CHECK(curve.eval(2) == v2);
  // componentwise explicit cubic
  for (uint64_t x : {0ull, 3ull, 17ull, 500ull}) {
    auto d = curve.eval(x);
    for (size_t i = 0; i < dim; ++i) {
      uint64_t want = ff::add_mod(
          ff::mul_mod(ff::sub_mod(2, x % p, p), v1[i], p),
          ff::mul_mod(ff::sub_mod(x % p, 1, p), v2[i], p), p);
      uint64_t quad = ff::mul_mod(ff::sub_mod(x % p, 1, p), ff::sub_mod(x % p, 2, p), p);
      want = ff::add_mod(want, ff::mul_mod(quad, ff::add_mod(k[i], ff::mul_mod(x % p, m[i], p), p), p), p);
      CHECK(d[i] == want);
    }
  }
  // each coordinate interpolates as a cubic in x
  poly::EvalListZp pts{p, {}};
  for (uint64_t x = 0; x < 6; ++x) pts.points.push_back({x, curve.eval(x)[3], false});
  CHECK(poly::interpolate(pts).degree() <= 3);
}

TEST_CASE("pairwise independence of curve values, exhaustive at p=5, dim 1") {
  const uint64_t p = 5;
  for (uint64_t v1 : {0ull, 2ull}) {
    for (uint64_t v2 : {1ull, 4ull}) {
      for (uint64_t x1 = 3; x1 <= p; ++x1) {
        for (uint64_t x2 = 3; x2 <= p; ++x2) {
          if (x1 == x2) continue;
          std::map<std::pair<uint64_t, uint64_t>, int> counts;
          for (uint64_t kv = 0; kv < p; ++kv)
            for (uint64_t mv = 0; mv < p; ++mv) {
              reduction::Curve curve({v1}, {v2}, {kv}, {mv}, p);
              counts[{curve.eval(x1)[0], curve.eval(x2)[0]}]++;
            }
          REQUIRE(counts.size() == p * p);  // every joint value hit
          for (const auto& [pair, c] : counts) CHECK(c == 1);  // exactly uniform
        }
      }
    }
  }
}

TEST_CASE("pairwise joint law chi-square sanity at p=101, dim 3") {
  const uint64_t p = 101;
  stats::Rng rng(3);
  std::vector<uint64_t> v1(3), v2(3);
  for (auto& v : v1) v = rng.uniform_below(p);
  for (auto& v : v2) v = rng.uniform_below(p);
  const int samples = 2000000;
  std::vector<uint32_t> counts(p * p, 0);
  for (int s = 0; s < samples; ++s) {
    std::vector<uint64_t> k(3), m(3);
    for (auto& v : k) v = rng.uniform_below(p);
    for (auto& v : m) v = rng.uniform_below(p);
    reduction::Curve curve(v1, v2, k, m, p);
    counts[curve.eval(7)[1] * p + curve.eval(42)[1]]++;
  }
  double expect = static_cast<double>(samples) / (p * p);
  double chi2 = 0;
  for (uint32_t c : counts) chi2 += (c - expect) * (c - expect) / expect;
  double dof = p * p - 1;
  CHECK(std::abs(chi2 - dof) < 6.0 * std::sqrt(2.0 * dof));
}

TEST_CASE("faulty oracle: perfect mode matches brute force") {
  stats::Rng rng(4);
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 99, 3);
  for (int i = 0; i < 100; ++i) {
    auto inst = random_residue(4, 101, rng);
    CHECK(oracle.query(inst) == sk::partition_mod_p(inst, 3));
  }
  CHECK(oracle.queries() == 100);
}

TEST_CASE("faulty oracle: empirical rate and input consistency") {
  stats::Rng rng(5);
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 0.5, 7, 2);
  int hits = 0;
  const int total = 100000;
  for (int i = 0; i < total; ++i) {
    auto inst = random_residue(3, 101, rng);
    uint64_t a = oracle.query(inst);
    CHECK(oracle.query(inst) == a);  // same input, same answer
    if (a == sk::partition_mod_p(inst, 2)) ++hits;
  }
  double rate = static_cast<double>(hits) / total;
  CHECK(std::abs(rate - 0.5) < 0.01);
}

TEST_CASE("sticky and constant fault modes answer deterministically") {
  stats::Rng rng(6);
  auto inst = random_residue(3, 101, rng);
  uint64_t truth = sk::partition_mod_p(inst, 1);
  auto sticky = reduction::make_faulty_oracle(reduction::FaultMode::Sticky, 1e-9, 5, 1);
  CHECK(sticky.query(inst) == ff::add_mod(truth, 1, 101));
  auto constant =
      reduction::make_faulty_oracle(reduction::FaultMode::AdversarialConstant, 1e-9, 5, 1);
  CHECK(constant.query(inst) == constant.query(inst));
}

TEST_CASE("regime selector thresholds") {
  // 161 * 4^5 = 164864; 9 * 4^4 = 2304
  CHECK(reduction::select_regime(4, 1.0, 2311) == reduction::Regime::FullSweep);
  uint64_t next_prime = ff::prime_window(164864, 164964).primes.front();
  CHECK(reduction::select_regime(4, 1.0, next_prime) == reduction::Regime::Resampled);
  CHECK(reduction::faithful_prime_floor(4, 1.0, 2311));
  CHECK(!reduction::faithful_prime_floor(4, 1.0, 2303));
}

TEST_CASE("eval list: perfect oracle agrees with the curve polynomial everywhere") {
  stats::Rng rng(7);
  const uint64_t p = 101;
  const int n = 4;
  auto inst = random_residue(n, p, rng);
  auto split = sk::self_recursion_split(inst, 2);
  auto v1 = reduction::flatten(split.plus);
  auto v2 = reduction::flatten(split.minus);
  std::vector<uint64_t> k(v1.size()), m(v1.size());
  for (auto& v : k) v = rng.uniform_below(p);
  for (auto& v : m) v = rng.uniform_below(p);
  reduction::Curve curve(v1, v2, k, m, p);
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 1, 2);
  auto list =
      reduction::build_eval_list(curve, oracle, n, reduction::Regime::FullSweep, 0, rng);
  REQUIRE(list.size() == p - 2);
  for (const auto& pt : list.points)
    CHECK(pt.y == sk::partition_mod_p(reduction::unflatten(curve.eval(pt.x), n - 1, p), 2));
  // phi = Z_{n-1}(D(x)) interpolates with degree at most 3(maxcut + n - 1)
  auto phi = poly::interpolate(list);
  CHECK(phi.degree() <= 3 * (sk::max_cut(n - 1) + (n - 1)));
  CHECK(poly::eval(phi, 1) == sk::partition_mod_p(split.plus, 2));
  CHECK(poly::eval(phi, 2) == sk::partition_mod_p(split.minus, 2));
}

TEST_CASE("eval list: faulty oracle clears the whp agreement bound") {
  stats::Rng rng(8);
  const uint64_t p = 101;
  const int n = 4;
  const double q = 0.5;
  int below = 0;
  const int trials = 300;
  for (int trial = 0; trial < trials; ++trial) {
    auto inst = random_residue(n, p, rng);
    auto split = sk::self_recursion_split(inst, 2);
    auto v1 = reduction::flatten(split.plus);
    auto v2 = reduction::flatten(split.minus);
    std::vector<uint64_t> k(v1.size()), m(v1.size());
    for (auto& v : k) v = rng.uniform_below(p);
    for (auto& v : m) v = rng.uniform_below(p);
    reduction::Curve curve(v1, v2, k, m, p);
    auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, q,
                                                stats::substream(8, "o", trial), 2);
    auto list =
        reduction::build_eval_list(curve, oracle, n, reduction::Regime::FullSweep, 0, rng);
    uint64_t agreements = 0;
    for (const auto& pt : list.points)
      if (pt.y == sk::partition_mod_p(reduction::unflatten(curve.eval(pt.x), n - 1, p), 2))
        ++agreements;
    if (agreements < static_cast<uint64_t>((p - 2) * q / 2)) ++below;
  }
  // Lemma-style bound: failure probability at most 1/((p-2) q^2) ~ 4%
  CHECK(static_cast<double>(below) / trials < 0.08);
}

TEST_CASE("resampled lists retain duplicates until decoder entry") {
  stats::Rng rng(9);
  const uint64_t p = 101;  // tiny field forces collisions
  auto inst = random_residue(4, p, rng);
  auto split = sk::self_recursion_split(inst, 1);
  auto v1 = reduction::flatten(split.plus);
  auto v2 = reduction::flatten(split.minus);
  std::vector<uint64_t> k(v1.size(), 1), m(v1.size(), 2);
  reduction::Curve curve(v1, v2, k, m, p);
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 3, 1);
  auto list =
      reduction::build_eval_list(curve, oracle, 4, reduction::Regime::Resampled, 400, rng);
  CHECK(list.size() == 400);
  auto dedup = list.deduplicated();
  CHECK(dedup.size() < list.size());
  CHECK(dedup.distinct_x());
}

TEST_CASE("recover_phi: single candidate returned without selection") {
  stats::Rng rng(10);
  const uint64_t p = 1009;
  poly::PolyZp f{p, {3, 1, 4}};
  poly::EvalListZp list{p, {}};
  for (uint64_t x = 0; x < 60; ++x) list.points.push_back({x, poly::eval(f, x), true});
  int truth_calls = 0;
  auto outcome = reduction::recover_phi(list, 2, 60, [&](uint64_t) -> std::optional<uint64_t> {
    ++truth_calls;
    return 0;
  });
  REQUIRE(outcome.phi.has_value());
  CHECK(*outcome.phi == f);
  CHECK(outcome.candidates == 1);
  CHECK(outcome.disagreement_x == -1);
  CHECK(truth_calls == 0);
}

TEST_CASE("recover_phi: two candidates separated by a ground-truth point") {
  stats::Rng rng(11);
  const uint64_t p = 4099;
  poly::PolyZp f{p, {5, 2, 0, 1}};
  poly::PolyZp g{p, {1, 7, 3}};
  poly::EvalListZp list{p, {}};
  std::set<uint64_t> xs;
  while (xs.size() < 80) xs.insert(rng.uniform_below(p));
  size_t i = 0;
  for (uint64_t x : xs) {
    list.points.push_back({x, poly::eval(i % 2 ? f : g, x), true});
    ++i;
  }
  REQUIRE(poly::sudan_parameters(80, 3, 40).feasible);
  auto outcome = reduction::recover_phi(list, 3, 40, [&](uint64_t v) -> std::optional<uint64_t> {
    return poly::eval(f, v);  // ground truth names f
  });
  REQUIRE(outcome.phi.has_value());
  CHECK(*outcome.phi == f);
  CHECK(outcome.candidates >= 2);
  CHECK(outcome.disagreement_x >= 0);
}

TEST_CASE("reduce_level base case is brute force") {
  stats::Rng rng(12);
  auto inst = random_residue(4, 101, rng);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 1, 3);
  auto z = reduction::reduce_level(inst, 3, oracle, params, rng, nullptr);
  REQUIRE(z.has_value());
  CHECK(*z == sk::partition_mod_p(inst, 3));
  CHECK(oracle.queries() == 0);
}

TEST_CASE("one level above base with a perfect oracle is exact") {
  stats::Rng rng(13);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = random_residue(5, 101, rng);
    auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0,
                                                stats::substream(13, "o", trial), 2);
    reduction::ReductionReport report;
    auto z = reduction::reduce_level(inst, 2, oracle, params, rng, &report);
    REQUIRE(z.has_value());
    CHECK(*z == sk::partition_mod_p(inst, 2));
    // query budget: full sweep is p - 2 oracle calls, plus one selection
    CHECK(oracle.queries() <= 101 - 2 + 1);
  }
}

TEST_CASE("two-level descent with a mildly faulty oracle") {
  stats::Rng rng(14);
  reduction::ReductionParams params;
  params.q = 0.7;
  params.k = std::log(1.0 / 0.7) / std::log(6.0);
  params.base_spins = 4;
  int good = 0;
  const int trials = 5;
  for (int trial = 0; trial < trials; ++trial) {
    auto inst = random_residue(6, 1063, rng);
    auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 0.7,
                                                stats::substream(14, "o", trial), 2);
    reduction::ReductionReport report;
    auto z = reduction::reduce_level(inst, 2, oracle, params, rng, &report);
    if (z && *z == sk::partition_mod_p(inst, 2)) ++good;
  }
  CHECK(good >= 4);
}

TEST_CASE("strict majority logic and the binomial tail") {
  using V = std::vector<std::optional<uint64_t>>;
  CHECK(reduction::strict_majority(V{5, 5, 7}) == 5);
  CHECK(!reduction::strict_majority(V{5, 5, 7, 7}).has_value());
  CHECK(!reduction::strict_majority(V{std::nullopt, std::nullopt, 3}).has_value());
  CHECK(reduction::strict_majority(V{1}) == 1);

  // R = 21 runs at per-run success 0.7: majority correct in at least 96%
  stats::Rng rng(15);
  int correct = 0;
  const int meta = 20000;
  for (int t = 0; t < meta; ++t) {
    V votes;
    for (int r = 0; r < 21; ++r) {
      if (rng.next_unit() < 0.7)
        votes.push_back(uint64_t{42});
      else
        votes.push_back(uint64_t{1000 + rng.uniform_below(1000000)});  // scattered wrongs
    }
    if (reduction::strict_majority(votes) == uint64_t{42}) ++correct;
  }
  CHECK(static_cast<double>(correct) / meta >= 0.96);
}

TEST_CASE("majority wrapper: perfect oracle, any odd R") {
  stats::Rng rng(16);
  auto inst = random_residue(5, 101, rng);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 8, 2);
  for (int rounds : {1, 3}) {
    auto z = reduction::reduce_with_majority(inst, 2, oracle, params, rounds, rng, nullptr);
    REQUIRE(z.has_value());
    CHECK(*z == sk::partition_mod_p(inst, 2));
  }
  CHECK_THROWS_AS(reduction::reduce_with_majority(inst, 2, oracle, params, 2, rng, nullptr),
                  std::invalid_argument);
}

TEST_CASE("reduce_exact degenerates to one residue when a single prime suffices") {
  sk::SkInstance inst;
  inst.n = 7;
  inst.precision = 0;
  inst.J.assign(21, 1);
  inst.B.assign(7, 1);
  inst.C.assign(7, 1);
  // Z = 128; the bound is 2^7 here, so any window starting above it works
  auto bound = ff::partition_upper_bound(inst);
  auto window = ff::prime_window(bound.get_ui(), bound.get_ui() + 50);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  params.demo_mode = true;
  stats::Rng rng(17);
  auto factory = [&](uint64_t) {
    return reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 9, 0);
  };
  auto result = reduction::reduce_exact(inst, factory, params, window, 1, rng);
  REQUIRE(result.has_value());
  CHECK(result->z == 128);
  CHECK(result->verified);
  CHECK(result->report.residues.size() == 1);
}

TEST_CASE("reduce_exact with perfect oracles matches brute force") {
  auto inst = stats::sample_instance(7, 2, 1.0, 4242);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  params.demo_mode = true;
  stats::Rng rng(18);
  auto factory = [&](uint64_t p) {
    return reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, p ^ 55, 2);
  };
  auto window = ff::prime_window(uint64_t{1} << 25, (uint64_t{1} << 25) + 20000);
  auto result = reduction::reduce_exact(inst, factory, params, window, 1, rng);
  REQUIRE(result.has_value());
  CHECK(result->verified);
  CHECK(result->z == sk::partition_exact(inst));
}

TEST_CASE("report serialization carries the per-level schema") {
  stats::Rng rng(19);
  auto inst = random_residue(5, 101, rng);
  reduction::ReductionParams params;
  params.q = 1.0;
  params.base_spins = 4;
  auto oracle = reduction::make_faulty_oracle(reduction::FaultMode::UniformError, 1.0, 2, 1);
  reduction::ReductionReport report;
  auto z = reduction::reduce_level(inst, 1, oracle, params, rng, &report);
  REQUIRE(z.has_value());
  auto text = report.to_json();
  CHECK(text.find("\"schema_version\"") != std::string::npos);
  CHECK(text.find("\"full-sweep\"") != std::string::npos);
  CHECK(text.find("\"degree_bound\"") != std::string::npos);
}

TEST_SUITE_END();
