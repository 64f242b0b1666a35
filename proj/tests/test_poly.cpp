#include <doctest.h>

#include <algorithm>
#include <set>

#include "skred/poly.hpp"
#include "skred/stats.hpp"

using namespace skred;

TEST_SUITE_BEGIN("poly");

namespace {

poly::PolyZp random_poly(uint64_t p, int64_t d, stats::Rng& rng) {
  poly::PolyZp f{p, {}};
  f.coeff.resize(d + 1);
  for (auto& c : f.coeff) c = rng.uniform_below(p);
  f.normalize();
  return f;
}

// list with the first `errors` positions corrupted (y guaranteed wrong)
poly::EvalListZp plant_list(const poly::PolyZp& f, const std::vector<uint64_t>& xs,
                            size_t errors, stats::Rng& rng) {
  poly::EvalListZp list;
  list.p = f.p;
  for (size_t i = 0; i < xs.size(); ++i) {
    uint64_t y = poly::eval(f, xs[i]);
    if (i < errors) {
      uint64_t wrong = rng.uniform_below(f.p - 1);
      y = wrong >= y ? wrong + 1 : wrong;
    }
    list.points.push_back({xs[i], y, true});
  }
  return list;
}

std::vector<uint64_t> sample_distinct(uint64_t p, size_t count, stats::Rng& rng) {
  std::set<uint64_t> seen;
  std::vector<uint64_t> xs;
  while (xs.size() < count) {
    uint64_t x = rng.uniform_below(p);
    if (seen.insert(x).second) xs.push_back(x);
  }
  return xs;
}

// every degree-<=d polynomial over Z_p with agreement >= t: the decoder's
// independent ground truth at exhaustible sizes
std::vector<poly::PolyZp> decode_by_enumeration(const poly::EvalListZp& list, int64_t d,
                                                uint64_t t) {
  std::vector<poly::PolyZp> out;
  uint64_t p = list.p;
  uint64_t total = 1;
  for (int64_t i = 0; i <= d; ++i) total *= p;
  for (uint64_t code = 0; code < total; ++code) {
    poly::PolyZp f{p, {}};
    uint64_t c = code;
    for (int64_t i = 0; i <= d; ++i) {
      f.coeff.push_back(c % p);
      c /= p;
    }
    f.normalize();
    if (poly::count_agreements(f, list) >= t) out.push_back(f);
  }
  std::sort(out.begin(), out.end(),
            [](const poly::PolyZp& a, const poly::PolyZp& b) { return a.coeff < b.coeff; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("eval basics") {
  poly::PolyZp f{7, {1, 0, 1}};  // x^2 + 1
  CHECK(poly::eval(f, 3) == 3);  // 10 mod 7
  poly::PolyZp zero{7, {}};
  CHECK(poly::eval(zero, 5) == 0);
  CHECK(zero.degree() == poly::kNegInfDegree);
}

TEST_CASE("interpolation hand cases and round trip") {
  poly::EvalListZp pts{5, {{0, 1, false}, {1, 2, false}}};
  auto f = poly::interpolate(pts);
  CHECK(f.coeff == std::vector<uint64_t>{1, 1});  // x + 1

  poly::EvalListZp single{5, {{3, 4, false}}};
  CHECK(poly::interpolate(single).coeff == std::vector<uint64_t>{4});

  poly::EvalListZp dup{5, {{1, 1, false}, {1, 2, false}}};
  CHECK_THROWS_AS(poly::interpolate(dup), std::invalid_argument);

  stats::Rng rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    uint64_t p = trial % 2 ? 101 : 65537;
    int64_t d = static_cast<int64_t>(rng.uniform_below(6));
    auto f2 = random_poly(p, d, rng);
    auto xs = sample_distinct(p, static_cast<size_t>(d) + 1, rng);
    poly::EvalListZp sample{p, {}};
    for (uint64_t x : xs) sample.points.push_back({x, poly::eval(f2, x), false});
    CHECK(poly::interpolate(sample) == f2);
  }
}

TEST_CASE("eval-interpolate round trip through all points") {
  stats::Rng rng(6);
  const uint64_t p = 1009;
  auto xs = sample_distinct(p, 12, rng);
  poly::EvalListZp pts{p, {}};
  for (uint64_t x : xs) pts.points.push_back({x, rng.uniform_below(p), false});
  auto f = poly::interpolate(pts);
  for (const auto& pt : pts.points) CHECK(poly::eval(f, pt.x) == pt.y);
}

TEST_CASE("berlekamp-welch recovers planted polynomials at full radius") {
  stats::Rng rng(42);
  for (int trial = 0; trial < 250; ++trial) {
    const uint64_t p = trial % 2 ? 101 : 65537;
    const int64_t d = 1 + static_cast<int64_t>(rng.uniform_below(trial % 2 ? 12 : 40));
    const size_t L = static_cast<size_t>(d) + 3 +
                     rng.uniform_below(std::min<uint64_t>(200, p - 1) - d - 2);
    const size_t e = (L - d - 1) / 2;
    auto f = random_poly(p, d, rng);
    auto xs = sample_distinct(p, L, rng);
    size_t errors = e == 0 ? 0 : rng.uniform_below(e + 1);
    auto list = plant_list(f, xs, errors, rng);
    auto got = poly::berlekamp_welch(list, d);
    REQUIRE(got.has_value());
    CHECK(*got == f);
  }
}

TEST_CASE("berlekamp-welch zero errors equals interpolation") {
  stats::Rng rng(43);
  const uint64_t p = 101;
  auto f = random_poly(p, 4, rng);
  auto xs = sample_distinct(p, 21, rng);
  auto list = plant_list(f, xs, 0, rng);
  auto got = poly::berlekamp_welch(list, 4);
  REQUIRE(got.has_value());
  CHECK(*got == f);
}

TEST_CASE("berlekamp-welch never silently wrong beyond the radius") {
  stats::Rng rng(44);
  int returned = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const uint64_t p = 101;
    const int64_t d = 2 + static_cast<int64_t>(rng.uniform_below(10));
    const size_t L = static_cast<size_t>(d) + 5 + rng.uniform_below(60);
    if (L > p) continue;
    const size_t too_many = (L - d - 1) / 2 + 1;
    auto f = random_poly(p, d, rng);
    auto xs = sample_distinct(p, L, rng);
    auto list = plant_list(f, xs, too_many, rng);
    auto got = poly::berlekamp_welch(list, d);
    if (got) {
      ++returned;
      // any returned polynomial must genuinely clear the agreement bar
      CHECK(2 * poly::count_agreements(*got, list) >= L + d + 1);
    }
  }
  CHECK(returned <= 3);  // random corruption essentially never forms a codeword
}

TEST_CASE("berlekamp-welch over rationals, direct and homomorphic paths") {
  stats::Rng rng(45);
  for (size_t L : {20ul, 90ul}) {  // 90 > 64 exercises the CRT path
    poly::PolyQ f;
    f.coeff = {ff::Rational(3, 7), ff::Rational(-2, 5), ff::Rational(1, 3)};
    poly::EvalListQ list;
    size_t errors = (L - 2 - 1) / 2;
    for (size_t i = 0; i < L; ++i) {
      ff::Rational x(static_cast<long>(i + 1), 97);
      ff::Rational y = poly::eval(f, x);
      if (i < errors) y += ff::Rational(1 + rng.uniform_below(50), 1 + rng.uniform_below(9));
      list.points.push_back({x, y, true});
    }
    auto got = poly::berlekamp_welch(list, 2);
    REQUIRE(got.has_value());
    CHECK(*got == f);
  }
}

TEST_CASE("sudan parameters match the acceptance-scale hand computation") {
  auto sp = poly::sudan_parameters(2000, 25, 340);
  CHECK(sp.t_min_formal == 313);  // 25 * ceil(sqrt(2*2001/25)) - 12
  CHECK(sp.ell == 12);
  CHECK(sp.m == 3);
  CHECK(sp.feasible);
  CHECK(sp.unknowns == 2002);
  CHECK(!poly::sudan_parameters(2000, 25, 300).feasible);
}

TEST_CASE("sudan list decode: planted recovery on a midsize field") {
  stats::Rng rng(46);
  const uint64_t p = 1063;
  const int64_t d = 12;
  const size_t L = 600;
  const uint64_t t = 180;
  REQUIRE(poly::sudan_parameters(L, d, t).feasible);
  auto f = random_poly(p, d, rng);
  auto xs = sample_distinct(p, L, rng);
  auto list = plant_list(f, xs, L - t, rng);  // exactly t agreements
  auto cands = poly::sudan_list_decode(list, d, t);
  bool found = false;
  for (const auto& c : cands) found = found || c == f;
  CHECK(found);
  // distinct outputs agree pairwise on at most d points
  for (size_t i = 0; i < cands.size(); ++i)
    for (size_t j = i + 1; j < cands.size(); ++j) {
      auto diff = poly::sub(cands[i], cands[j]);
      uint64_t shared = 0;
      for (uint64_t x = 0; x < p; ++x)
        if (poly::eval(diff, x) == 0) ++shared;
      CHECK(shared <= static_cast<uint64_t>(d));
    }
}

TEST_CASE("sudan list decode equals exhaustive enumeration at small sizes") {
  stats::Rng rng(47);
  int cases = 0;
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    for (int64_t d : {1ll, 2ll}) {
      for (size_t L = static_cast<size_t>(d) + 1; L <= std::min<size_t>(6, p); ++L) {
        for (int rep = 0; rep < 40; ++rep) {
          auto xs = sample_distinct(p, L, rng);
          poly::EvalListZp list{p, {}};
          for (uint64_t x : xs) list.points.push_back({x, rng.uniform_below(p), true});
          for (uint64_t t = 1; t <= L; ++t) {
            if (!poly::sudan_parameters(L, d, t).feasible) continue;
            auto got = poly::sudan_list_decode(list, d, t);
            auto want = decode_by_enumeration(list, d, t);
            CHECK(got == want);
            ++cases;
          }
        }
      }
    }
  }
  CHECK(cases > 100);  // the parameter condition must leave real work
}

TEST_CASE("sudan accepts the all-on-one-polynomial list") {
  stats::Rng rng(48);
  const uint64_t p = 7;
  poly::PolyZp f{p, {2, 3}};
  poly::EvalListZp list{p, {}};
  for (uint64_t x = 0; x < 6; ++x) list.points.push_back({x, poly::eval(f, x), true});
  auto out = poly::sudan_list_decode(list, 2, 6);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == f);
}

TEST_CASE("sudan returns both planted polynomials") {
  stats::Rng rng(49);
  const uint64_t p = 4099;
  const int64_t d = 3;
  const uint64_t t = 40;
  const size_t L = 80;
  REQUIRE(poly::sudan_parameters(L, d, t).feasible);
  auto f = random_poly(p, d, rng);
  auto g = random_poly(p, d, rng);
  REQUIRE(!(f == g));
  auto xs = sample_distinct(p, L, rng);
  poly::EvalListZp list{p, {}};
  for (size_t i = 0; i < L; ++i)
    list.points.push_back({xs[i], poly::eval(i % 2 ? f : g, xs[i]), true});
  auto cands = poly::sudan_list_decode(list, d, t);
  bool has_f = false, has_g = false;
  for (const auto& c : cands) {
    has_f = has_f || c == f;
    has_g = has_g || c == g;
  }
  CHECK(has_f);
  CHECK(has_g);
}

TEST_CASE("roth-ruckenstein constructed products") {
  // Q = (y - x)(y - 2) = y^2 - (x+2) y + 2x over Z_7
  poly::BivarPolyZp q;
  q.p = 7;
  q.coeff = {{0, 2}, {7 - 2, 7 - 1}, {1}};
  auto roots = poly::roth_ruckenstein_roots(q, 1);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].coeff == std::vector<uint64_t>{2});     // constant 2
  CHECK(roots[1].coeff == std::vector<uint64_t>{0, 1});  // x
}

TEST_CASE("roth-ruckenstein: y^2 + 1 over Z_7 has no roots") {
  poly::BivarPolyZp q;
  q.p = 7;
  q.coeff = {{1}, {}, {1}};
  // exhaust the constants by hand first: squares mod 7 are 0,1,2,4; -1 = 6 is absent
  for (uint64_t c = 0; c < 7; ++c) CHECK(ff::mul_mod(c, c, 7) != 6);
  CHECK(poly::roth_ruckenstein_roots(q, 0).empty());
}

TEST_CASE("roth-ruckenstein finds planted root factors") {
  stats::Rng rng(50);
  for (int trial = 0; trial < 500; ++trial) {
    const uint64_t p = trial % 3 ? 101 : 65537;
    const int64_t d = static_cast<int64_t>(rng.uniform_below(5));
    auto f = random_poly(p, d, rng);
    // Q = (y - f(x)) * R(x, y) with R a random nonzero bivariate
    poly::BivarPolyZp r;
    r.p = p;
    r.coeff.resize(1 + rng.uniform_below(2));
    bool nonzero = false;
    for (auto& row : r.coeff) {
      row.resize(1 + rng.uniform_below(4));
      for (auto& v : row) {
        v = rng.uniform_below(p);
        nonzero = nonzero || v != 0;
      }
    }
    if (!nonzero) r.coeff = {{1}};
    // multiply out (y - f) * r
    poly::BivarPolyZp q;
    q.p = p;
    q.coeff.assign(r.coeff.size() + 1, {});
    auto add_into = [&](std::vector<uint64_t>& dst, const std::vector<uint64_t>& src,
                        uint64_t scale, size_t shift) {
      if (dst.size() < src.size() + shift) dst.resize(src.size() + shift, 0);
      for (size_t i = 0; i < src.size(); ++i)
        dst[i + shift] = ff::add_mod(dst[i + shift], ff::mul_mod(src[i], scale, p), p);
    };
    for (size_t j = 0; j < r.coeff.size(); ++j) {
      add_into(q.coeff[j + 1], r.coeff[j], 1, 0);  // y * y^j r_j
      for (size_t i = 0; i < f.coeff.size(); ++i)
        if (f.coeff[i] != 0)
          add_into(q.coeff[j], r.coeff[j], p - f.coeff[i], i);  // -f(x) y^j r_j
    }
    auto roots = poly::roth_ruckenstein_roots(q, d);
    bool found = false;
    for (const auto& c : roots) found = found || c == f;
    CHECK(found);
    // every returned root vanishes symbolically (checked inside); re-verify one
    if (!roots.empty()) {
      poly::PolyZp acc{p, {}};
      poly::PolyZp fp{p, {1}};
      for (const auto& row : q.coeff) {
        poly::PolyZp qi{p, row};
        qi.normalize();
        acc = poly::add(acc, poly::mul(qi, fp));
        fp = poly::mul(fp, roots[0]);
      }
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("count agreements basics") {
  stats::Rng rng(51);
  const uint64_t p = 101;
  auto f = random_poly(p, 3, rng);
  auto xs = sample_distinct(p, 30, rng);
  auto list = plant_list(f, xs, 0, rng);
  CHECK(poly::count_agreements(f, list) == 30);
  poly::PolyZp zero{p, {}};
  poly::EvalListZp nz{p, {{1, 5, false}, {2, 9, false}}};
  CHECK(poly::count_agreements(zero, nz) == 0);
  auto noisy = plant_list(f, xs, 11, rng);
  CHECK(poly::count_agreements(f, noisy) == 19);
}

TEST_CASE("nullspace vector solves the planted homogeneous system") {
  stats::Rng rng(52);
  const uint64_t p = 1009;
  const size_t rows = 30, cols = 34;
  std::vector<uint64_t> a(rows * cols);
  for (auto& v : a) v = rng.uniform_below(p);
  auto x = poly::nullspace_vector(a, rows, cols, p);
  REQUIRE(!x.empty());
  bool nonzero = false;
  for (uint64_t v : x) nonzero = nonzero || v != 0;
  CHECK(nonzero);
  for (size_t r = 0; r < rows; ++r) {
    uint64_t s = 0;
    for (size_t c = 0; c < cols; ++c) s = ff::add_mod(s, ff::mul_mod(a[r * cols + c], x[c], p), p);
    CHECK(s == 0);
  }
}

TEST_SUITE_END();
