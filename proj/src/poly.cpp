#include "skred/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>

namespace skred::poly {

using ff::add_mod;
using ff::inv_mod;
using ff::mul_mod;
using ff::pow_mod;
using ff::sub_mod;

void PolyZp::normalize() {
  while (!coeff.empty() && coeff.back() % p == 0) coeff.pop_back();
  for (auto& c : coeff) c %= p;
}

void PolyQ::normalize() {
  while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
}

bool EvalListZp::distinct_x() const {
  std::vector<uint64_t> xs;
  xs.reserve(points.size());
  for (const auto& pt : points) xs.push_back(pt.x);
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

EvalListZp EvalListZp::deduplicated() const {
  EvalListZp out;
  out.p = p;
  std::set<uint64_t> seen;
  for (const auto& pt : points)
    if (seen.insert(pt.x).second) out.points.push_back(pt);
  return out;
}

bool EvalListQ::distinct_x() const {
  std::vector<mpq_class> xs;
  xs.reserve(points.size());
  for (const auto& pt : points) xs.push_back(pt.x);
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

uint64_t eval(const PolyZp& f, uint64_t x) {
  uint64_t acc = 0;
  x %= f.p;
  for (auto it = f.coeff.rbegin(); it != f.coeff.rend(); ++it)
    acc = add_mod(mul_mod(acc, x, f.p), *it % f.p, f.p);
  return acc;
}

mpq_class eval(const PolyQ& f, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = f.coeff.rbegin(); it != f.coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolyZp add(const PolyZp& a, const PolyZp& b) {
  if (a.p != b.p) throw std::invalid_argument("poly add: field mismatch");
  PolyZp r{a.p, {}};
  r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (size_t i = 0; i < r.coeff.size(); ++i) {
    uint64_t av = i < a.coeff.size() ? a.coeff[i] : 0;
    uint64_t bv = i < b.coeff.size() ? b.coeff[i] : 0;
    r.coeff[i] = add_mod(av, bv, a.p);
  }
  r.normalize();
  return r;
}

PolyZp sub(const PolyZp& a, const PolyZp& b) {
  if (a.p != b.p) throw std::invalid_argument("poly sub: field mismatch");
  PolyZp r{a.p, {}};
  r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (size_t i = 0; i < r.coeff.size(); ++i) {
    uint64_t av = i < a.coeff.size() ? a.coeff[i] : 0;
    uint64_t bv = i < b.coeff.size() ? b.coeff[i] : 0;
    r.coeff[i] = sub_mod(av, bv, a.p);
  }
  r.normalize();
  return r;
}

PolyZp mul(const PolyZp& a, const PolyZp& b) {
  if (a.p != b.p) throw std::invalid_argument("poly mul: field mismatch");
  if (a.is_zero() || b.is_zero()) return PolyZp{a.p, {}};
  PolyZp r{a.p, std::vector<uint64_t>(a.coeff.size() + b.coeff.size() - 1, 0)};
  for (size_t i = 0; i < a.coeff.size(); ++i) {
    if (a.coeff[i] == 0) continue;
    for (size_t j = 0; j < b.coeff.size(); ++j)
      r.coeff[i + j] = add_mod(r.coeff[i + j], mul_mod(a.coeff[i], b.coeff[j], a.p), a.p);
  }
  r.normalize();
  return r;
}

std::pair<PolyZp, PolyZp> divrem(const PolyZp& a, const PolyZp& b) {
  if (a.p != b.p) throw std::invalid_argument("poly divrem: field mismatch");
  if (b.is_zero()) throw std::invalid_argument("poly divrem: division by zero");
  PolyZp q{a.p, {}};
  PolyZp r = a;
  uint64_t lead_inv = inv_mod(b.coeff.back(), b.p);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    size_t shift = r.coeff.size() - b.coeff.size();
    uint64_t c = mul_mod(r.coeff.back(), lead_inv, a.p);
    if (q.coeff.size() < shift + 1) q.coeff.resize(shift + 1, 0);
    q.coeff[shift] = add_mod(q.coeff[shift], c, a.p);
    for (size_t i = 0; i < b.coeff.size(); ++i)
      r.coeff[shift + i] = sub_mod(r.coeff[shift + i], mul_mod(c, b.coeff[i], a.p), a.p);
    r.normalize();
  }
  q.normalize();
  return {q, r};
}

PolyQ add(const PolyQ& a, const PolyQ& b) {
  PolyQ r;
  r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), mpq_class(0));
  for (size_t i = 0; i < r.coeff.size(); ++i) {
    if (i < a.coeff.size()) r.coeff[i] += a.coeff[i];
    if (i < b.coeff.size()) r.coeff[i] += b.coeff[i];
  }
  r.normalize();
  return r;
}

PolyQ sub(const PolyQ& a, const PolyQ& b) {
  PolyQ r;
  r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()), mpq_class(0));
  for (size_t i = 0; i < r.coeff.size(); ++i) {
    if (i < a.coeff.size()) r.coeff[i] += a.coeff[i];
    if (i < b.coeff.size()) r.coeff[i] -= b.coeff[i];
  }
  r.normalize();
  return r;
}

PolyQ mul(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  PolyQ r;
  r.coeff.assign(a.coeff.size() + b.coeff.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.coeff.size(); ++i) {
    if (a.coeff[i] == 0) continue;
    for (size_t j = 0; j < b.coeff.size(); ++j) r.coeff[i + j] += a.coeff[i] * b.coeff[j];
  }
  r.normalize();
  return r;
}

std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b) {
  if (b.is_zero()) throw std::invalid_argument("poly divrem: division by zero");
  PolyQ q;
  PolyQ r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    size_t shift = r.coeff.size() - b.coeff.size();
    mpq_class c = r.coeff.back() / b.coeff.back();
    if (q.coeff.size() < shift + 1) q.coeff.resize(shift + 1, mpq_class(0));
    q.coeff[shift] += c;
    for (size_t i = 0; i < b.coeff.size(); ++i) r.coeff[shift + i] -= c * b.coeff[i];
    r.normalize();
  }
  q.normalize();
  return {q, r};
}

namespace {

// N = prod (x - x_i); synthetic division peels off one root at a time.
PolyZp master_poly(const EvalListZp& pts) {
  PolyZp n{pts.p, {1}};
  for (const auto& pt : pts.points) {
    PolyZp lin{pts.p, {sub_mod(0, pt.x % pts.p, pts.p), 1}};
    n = mul(n, lin);
  }
  return n;
}

}  // namespace

PolyZp interpolate(const EvalListZp& pts) {
  if (pts.points.empty()) throw std::invalid_argument("interpolate: empty point set");
  if (!pts.distinct_x()) throw std::invalid_argument("interpolate: repeated x");
  const uint64_t p = pts.p;
  PolyZp n = master_poly(pts);
  PolyZp f{p, {}};
  for (const auto& pt : pts.points) {
    // q = n / (x - x_i) by synthetic division
    std::vector<uint64_t> q(n.coeff.size() - 1, 0);
    uint64_t carry = 0;
    for (size_t i = n.coeff.size(); i-- > 1;) {
      carry = add_mod(n.coeff[i], mul_mod(carry, pt.x % p, p), p);
      q[i - 1] = carry;
    }
    PolyZp qi{p, q};
    uint64_t denom = eval(qi, pt.x);
    uint64_t scale = mul_mod(pt.y % p, inv_mod(denom, p), p);
    for (auto& c : qi.coeff) c = mul_mod(c, scale, p);
    qi.normalize();
    f = add(f, qi);
  }
  return f;
}

PolyQ interpolate(const EvalListQ& pts) {
  if (pts.points.empty()) throw std::invalid_argument("interpolate: empty point set");
  if (!pts.distinct_x()) throw std::invalid_argument("interpolate: repeated x");
  PolyQ n;
  n.coeff = {mpq_class(1)};
  for (const auto& pt : pts.points) {
    PolyQ lin;
    lin.coeff = {-pt.x, mpq_class(1)};
    n = mul(n, lin);
  }
  PolyQ f;
  for (const auto& pt : pts.points) {
    std::vector<mpq_class> q(n.coeff.size() - 1, mpq_class(0));
    mpq_class carry = 0;
    for (size_t i = n.coeff.size(); i-- > 1;) {
      carry = n.coeff[i] + carry * pt.x;
      q[i - 1] = carry;
    }
    PolyQ qi;
    qi.coeff = std::move(q);
    mpq_class scale = pt.y / eval(qi, pt.x);
    for (auto& c : qi.coeff) c *= scale;
    qi.normalize();
    f = add(f, qi);
  }
  return f;
}

uint64_t count_agreements(const PolyZp& f, const EvalListZp& pts) {
  uint64_t n = 0;
  for (const auto& pt : pts.points)
    if (eval(f, pt.x) == pt.y % pts.p) ++n;
  return n;
}

uint64_t count_agreements(const PolyQ& f, const EvalListQ& pts) {
  uint64_t n = 0;
  for (const auto& pt : pts.points)
    if (eval(f, pt.x) == pt.y) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// Nullspace over Z_p.
//
// Delayed-reduction elimination: rows are held as raw uint64 accumulators and
// only pivot rows are fully reduced. Each update adds f * piv < 2^52 to an
// entry, so with at most 4000 pivot steps nothing can reach 2^64. The inner
// loop is a u32 x u32 -> u64 multiply-accumulate, which vectorizes.
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t kLazyModulusCap = uint64_t{1} << 26;
constexpr size_t kLazyRowCap = 4000;

std::vector<uint64_t> nullspace_lazy(std::vector<uint64_t>& a, size_t rows, size_t cols,
                                     uint64_t p) {
  std::vector<size_t> pivot_col;
  pivot_col.reserve(std::min(rows, cols));
  std::vector<uint32_t> piv(cols);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i) {
      uint64_t v = a[i * cols + c] % p;
      a[i * cols + c] = v;
      if (v != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(a.begin() + sel * cols, a.begin() + (sel + 1) * cols, a.begin() + r * cols);
    uint64_t* prow = &a[r * cols];
    for (size_t j = c; j < cols; ++j) {
      prow[j] %= p;
      piv[j] = static_cast<uint32_t>(prow[j]);
    }
    uint64_t ipiv = inv_mod(prow[c], p);
    for (size_t i = r + 1; i < rows; ++i) {
      uint64_t* row = &a[i * cols];
      uint64_t lead = row[c] % p;
      if (lead == 0) {
        row[c] = 0;
        continue;
      }
      uint32_t f = static_cast<uint32_t>(p - mul_mod(lead, ipiv, p));
      const uint32_t* pv = piv.data();
      for (size_t j = c; j < cols; ++j) row[j] += static_cast<uint64_t>(f) * pv[j];
      row[c] = 0;
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == cols) return {};
  // first free column in elimination order becomes the basis choice
  std::vector<char> is_pivot(cols, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  size_t cfree = 0;
  while (is_pivot[cfree]) ++cfree;
  std::vector<uint64_t> x(cols, 0);
  x[cfree] = 1;
  for (size_t k = pivot_col.size(); k-- > 0;) {
    size_t c = pivot_col[k];
    const uint64_t* row = &a[k * cols];
    uint64_t s = 0;
    for (size_t j = c + 1; j < cols; ++j)
      if (x[j] != 0) s = add_mod(s, mul_mod(row[j] % p, x[j], p), p);
    x[c] = mul_mod(sub_mod(0, s, p), inv_mod(row[c] % p, p), p);
  }
  return x;
}

std::vector<uint64_t> nullspace_generic(std::vector<uint64_t>& a, size_t rows, size_t cols,
                                        uint64_t p) {
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(a.begin() + sel * cols, a.begin() + (sel + 1) * cols, a.begin() + r * cols);
    uint64_t* prow = &a[r * cols];
    uint64_t ipiv = inv_mod(prow[c], p);
    for (size_t i = r + 1; i < rows; ++i) {
      uint64_t* row = &a[i * cols];
      if (row[c] == 0) continue;
      uint64_t f = p - mul_mod(row[c], ipiv, p);
      for (size_t j = c; j < cols; ++j) row[j] = add_mod(row[j], mul_mod(f, prow[j], p), p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == cols) return {};
  std::vector<char> is_pivot(cols, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  size_t cfree = 0;
  while (is_pivot[cfree]) ++cfree;
  std::vector<uint64_t> x(cols, 0);
  x[cfree] = 1;
  for (size_t k = pivot_col.size(); k-- > 0;) {
    size_t c = pivot_col[k];
    const uint64_t* row = &a[k * cols];
    uint64_t s = 0;
    for (size_t j = c + 1; j < cols; ++j)
      if (x[j] != 0) s = add_mod(s, mul_mod(row[j], x[j], p), p);
    x[c] = mul_mod(sub_mod(0, s, p), inv_mod(row[c], p), p);
  }
  return x;
}

}  // namespace

std::vector<uint64_t> nullspace_vector(std::vector<uint64_t> mat, size_t rows, size_t cols,
                                       uint64_t p) {
  if (mat.size() != rows * cols) throw std::invalid_argument("nullspace_vector: bad dimensions");
  if (p < kLazyModulusCap && rows <= kLazyRowCap) return nullspace_lazy(mat, rows, cols, p);
  for (auto& v : mat) v %= p;
  return nullspace_generic(mat, rows, cols, p);
}

// ---------------------------------------------------------------------------
// Berlekamp-Welch.
// ---------------------------------------------------------------------------

std::optional<PolyZp> berlekamp_welch(const EvalListZp& pts, int64_t d) {
  if (d < 0) throw std::invalid_argument("berlekamp_welch: negative degree bound");
  if (pts.points.empty()) throw std::invalid_argument("berlekamp_welch: empty list");
  if (!pts.distinct_x()) throw std::invalid_argument("berlekamp_welch: repeated x");
  const int64_t L = static_cast<int64_t>(pts.points.size());
  const uint64_t p = pts.p;
  if (d >= L) return std::nullopt;  // no f can clear the (L+d)/2 agreement bar
  const int64_t e = (L - d - 1) / 2;
  const size_t ecols = static_cast<size_t>(e) + 1;
  const size_t ncols = static_cast<size_t>(e + d) + 1;
  const size_t cols = ecols + ncols;
  std::vector<uint64_t> a(static_cast<size_t>(L) * cols);
  for (int64_t i = 0; i < L; ++i) {
    uint64_t x = pts.points[i].x % p;
    uint64_t y = pts.points[i].y % p;
    uint64_t xp = 1;
    uint64_t* row = &a[static_cast<size_t>(i) * cols];
    for (size_t j = 0; j < std::max(ecols, ncols); ++j) {
      if (j < ecols) row[j] = mul_mod(xp, y, p);
      if (j < ncols) row[ecols + j] = (p - xp) % p;
      xp = mul_mod(xp, x, p);
    }
  }
  auto v = nullspace_vector(std::move(a), static_cast<size_t>(L), cols, p);
  if (v.empty()) return std::nullopt;
  PolyZp E{p, std::vector<uint64_t>(v.begin(), v.begin() + ecols)};
  PolyZp N{p, std::vector<uint64_t>(v.begin() + ecols, v.end())};
  E.normalize();
  N.normalize();
  if (E.is_zero()) return std::nullopt;
  auto [f, rem] = divrem(N, E);
  if (!rem.is_zero()) return std::nullopt;
  if (f.degree() > d) return std::nullopt;
  uint64_t t0 = count_agreements(f, pts);
  if (2 * t0 < static_cast<uint64_t>(L + d) + 1) return std::nullopt;
  return f;
}

namespace {

std::optional<PolyQ> berlekamp_welch_direct_q(const EvalListQ& pts, int64_t d) {
  const int64_t L = static_cast<int64_t>(pts.points.size());
  if (d >= L) return std::nullopt;
  const int64_t e = (L - d - 1) / 2;
  const size_t ecols = static_cast<size_t>(e) + 1;
  const size_t ncols = static_cast<size_t>(e + d) + 1;
  const size_t cols = ecols + ncols;
  std::vector<mpq_class> a(static_cast<size_t>(L) * cols, mpq_class(0));
  for (int64_t i = 0; i < L; ++i) {
    const mpq_class& x = pts.points[i].x;
    const mpq_class& y = pts.points[i].y;
    mpq_class xp = 1;
    mpq_class* row = &a[static_cast<size_t>(i) * cols];
    for (size_t j = 0; j < std::max(ecols, ncols); ++j) {
      if (j < ecols) row[j] = xp * y;
      if (j < ncols) row[ecols + j] = -xp;
      xp *= x;
    }
  }
  // plain fraction elimination; intended for modest L only
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < static_cast<size_t>(L); ++c) {
    size_t sel = static_cast<size_t>(L);
    for (size_t i = r; i < static_cast<size_t>(L); ++i)
      if (a[i * cols + c] != 0) {
        sel = i;
        break;
      }
    if (sel == static_cast<size_t>(L)) continue;
    if (sel != r)
      for (size_t j = 0; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    for (size_t i = r + 1; i < static_cast<size_t>(L); ++i) {
      if (a[i * cols + c] == 0) continue;
      mpq_class f = a[i * cols + c] / a[r * cols + c];
      for (size_t j = c; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (pivot_col.size() == cols) return std::nullopt;
  std::vector<char> is_pivot(cols, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  size_t cfree = 0;
  while (is_pivot[cfree]) ++cfree;
  std::vector<mpq_class> v(cols, mpq_class(0));
  v[cfree] = 1;
  for (size_t k = pivot_col.size(); k-- > 0;) {
    size_t c = pivot_col[k];
    mpq_class s = 0;
    for (size_t j = c + 1; j < cols; ++j)
      if (v[j] != 0) s += a[k * cols + j] * v[j];
    v[c] = -s / a[k * cols + c];
  }
  PolyQ E, N;
  E.coeff.assign(v.begin(), v.begin() + ecols);
  N.coeff.assign(v.begin() + ecols, v.end());
  E.normalize();
  N.normalize();
  if (E.is_zero()) return std::nullopt;
  auto [f, rem] = divrem(N, E);
  if (!rem.is_zero()) return std::nullopt;
  if (f.degree() > d) return std::nullopt;
  uint64_t t0 = count_agreements(f, pts);
  if (2 * t0 < static_cast<uint64_t>(L + d) + 1) return std::nullopt;
  return f;
}

// Rational reconstruction: num/den = c (mod m) with |num|, den <= sqrt(m/2).
std::optional<mpq_class> rational_reconstruct(const mpz_class& c, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = ((c % m) + m) % m;
  mpz_class t0 = 0, t1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  mpz_class den = abs(t1);
  if (den > bound) return std::nullopt;
  mpz_class num = t1 < 0 ? mpz_class(-r1) : r1;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1 && !(num == 0 && den == 1)) {
    num /= g;
    den /= g;
  }
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

// Rational Berlekamp-Welch via prime-field homomorphic images: decode mod a
// stream of word-sized primes, CRT-combine the coefficients, rationally
// reconstruct, then verify the agreement bound exactly over Q. Fraction
// elimination is quadratic-blowup territory at schedule scale; the modular
// route is exact because of the final verification.
std::optional<PolyQ> berlekamp_welch_crt_q(const EvalListQ& pts, int64_t d) {
  const int64_t L = static_cast<int64_t>(pts.points.size());
  if (d >= L) return std::nullopt;
  const size_t ncoeff = static_cast<size_t>(d) + 1;
  std::vector<std::vector<std::pair<uint64_t, uint64_t>>> residues(ncoeff);
  int bad_primes = 0, good_primes = 0;
  std::optional<PolyQ> previous;
  // primes just under 2^26 keep the per-prime decode on the fast kernel
  uint64_t candidate = (uint64_t{1} << 26) - 1;
  for (int iter = 0; iter < 512 && good_primes < 64; ++iter) {
    while (!ff::is_prime_u64(candidate)) candidate -= 2;
    uint64_t p = candidate;
    candidate -= 2;
    // reduce the list mod p; skip primes meeting a denominator or collision
    EvalListZp mod_pts;
    mod_pts.p = p;
    bool ok = true;
    for (const auto& pt : pts.points) {
      uint64_t xd = mpz_fdiv_ui(pt.x.get_den_mpz_t(), p);
      uint64_t yd = mpz_fdiv_ui(pt.y.get_den_mpz_t(), p);
      if (xd == 0 || yd == 0) {
        ok = false;
        break;
      }
      uint64_t xn = mpz_fdiv_ui(pt.x.get_num_mpz_t(), p);
      uint64_t yn = mpz_fdiv_ui(pt.y.get_num_mpz_t(), p);
      mod_pts.points.push_back(
          {mul_mod(xn, inv_mod(xd, p), p), mul_mod(yn, inv_mod(yd, p), p), pt.oracle_answered});
    }
    if (ok && !mod_pts.distinct_x()) ok = false;
    if (!ok) continue;
    auto fp = berlekamp_welch(mod_pts, d);
    if (!fp) {
      if (++bad_primes >= 5 && good_primes == 0) return std::nullopt;
      continue;
    }
    for (size_t j = 0; j < ncoeff; ++j) {
      uint64_t cj = j < fp->coeff.size() ? fp->coeff[j] : 0;
      residues[j].push_back({cj, p});
    }
    ++good_primes;
    if (good_primes < 2) continue;
    PolyQ f;
    bool reconstructed = true;
    for (size_t j = 0; j < ncoeff && reconstructed; ++j) {
      mpz_class prod = 1;
      for (auto& [v, q] : residues[j]) prod *= mpz_class(static_cast<unsigned long>(q));
      auto r = rational_reconstruct(ff::crt_reconstruct(residues[j]), prod);
      if (!r)
        reconstructed = false;
      else
        f.coeff.push_back(*r);
    }
    if (!reconstructed) continue;
    f.normalize();
    if (previous && f == *previous) {
      if (f.degree() > d) return std::nullopt;
      uint64_t t0 = count_agreements(f, pts);
      if (2 * t0 < static_cast<uint64_t>(L + d) + 1) return std::nullopt;
      return f;
    }
    previous = f;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PolyQ> berlekamp_welch(const EvalListQ& pts, int64_t d) {
  if (d < 0) throw std::invalid_argument("berlekamp_welch: negative degree bound");
  if (pts.points.empty()) throw std::invalid_argument("berlekamp_welch: empty list");
  if (!pts.distinct_x()) throw std::invalid_argument("berlekamp_welch: repeated x");
  if (pts.points.size() <= 64) return berlekamp_welch_direct_q(pts, d);
  return berlekamp_welch_crt_q(pts, d);
}

// ---------------------------------------------------------------------------
// Sudan list decoding.
// ---------------------------------------------------------------------------

bool BivarPolyZp::is_zero() const {
  for (const auto& row : coeff)
    for (uint64_t v : row)
      if (v % p != 0) return false;
  return true;
}

int64_t BivarPolyZp::ydeg() const {
  for (size_t j = coeff.size(); j-- > 0;)
    for (uint64_t v : coeff[j])
      if (v % p != 0) return static_cast<int64_t>(j);
  return kNegInfDegree;
}

int64_t BivarPolyZp::weighted_degree(int64_t wx, int64_t wy) const {
  int64_t best = kNegInfDegree;
  for (size_t j = 0; j < coeff.size(); ++j)
    for (size_t i = 0; i < coeff[j].size(); ++i)
      if (coeff[j][i] % p != 0)
        best = std::max(best, static_cast<int64_t>(i) * wx + static_cast<int64_t>(j) * wy);
  return best;
}

SudanParams sudan_parameters(size_t L, int64_t d, uint64_t t) {
  SudanParams sp;
  if (L == 0 || d < 1) return sp;
  // s = ceil(sqrt(2(L+1)/d))
  uint64_t s = 1;
  while (s * s * static_cast<uint64_t>(d) < 2 * (L + 1)) ++s;
  if (s < 2) s = 2;  // need y-degree at least 1
  sp.ell = static_cast<int64_t>(s) - 1;
  sp.t_min_formal = static_cast<uint64_t>(d) * s - static_cast<uint64_t>(d / 2);
  sp.t_min_informal = std::sqrt(2.0 * static_cast<double>(L) * static_cast<double>(d));
  int64_t tri = d * sp.ell * (sp.ell + 1) / 2;
  int64_t need = static_cast<int64_t>(L) + 1 - tri;  // want (m+1)(ell+1) >= need
  int64_t m1 = need <= static_cast<int64_t>(s) ? 1 : (need + static_cast<int64_t>(s) - 1) / static_cast<int64_t>(s);
  sp.m = m1 - 1;
  sp.unknowns = static_cast<size_t>(m1) * s + static_cast<size_t>(tri);
  sp.feasible = t >= sp.t_min_formal && sp.m + sp.ell * d < static_cast<int64_t>(t) &&
                sp.unknowns > L;
  return sp;
}

std::vector<uint64_t> poly_roots(const std::vector<uint64_t>& coeff_in, uint64_t p) {
  std::vector<uint64_t> c = coeff_in;
  for (auto& v : c) v %= p;
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw std::invalid_argument("poly_roots: zero polynomial");
  std::vector<uint64_t> roots;
  if (p <= (uint64_t{1} << 16)) {
    PolyZp f{p, c};
    for (uint64_t x = 0; x < p; ++x)
      if (eval(f, x) == 0) roots.push_back(x);
    return roots;
  }
  // gcd with x^p - x isolates the distinct-root part, then split by
  // (x+a)^((p-1)/2) gcds over a fixed shift sequence.
  PolyZp f{p, c};
  auto polymod = [&](const PolyZp& g, const PolyZp& m) { return divrem(g, m).second; };
  auto powmod_poly = [&](PolyZp base, uint64_t e, const PolyZp& m) {
    PolyZp r{p, {1}};
    base = polymod(base, m);
    while (e > 0) {
      if (e & 1) r = polymod(mul(r, base), m);
      base = polymod(mul(base, base), m);
      e >>= 1;
    }
    return r;
  };
  auto polygcd = [&](PolyZp a, PolyZp b) {
    while (!b.is_zero()) {
      PolyZp r = divrem(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      uint64_t inv = inv_mod(a.coeff.back(), p);
      for (auto& v : a.coeff) v = mul_mod(v, inv, p);
    }
    return a;
  };
  PolyZp x{p, {0, 1}};
  PolyZp xp = powmod_poly(x, p, f);
  PolyZp g = polygcd(sub(xp, x), f);
  if (g.degree() <= 0) return roots;
  std::vector<PolyZp> stack{g};
  uint64_t shift = 1;
  size_t guard = 0;
  while (!stack.empty()) {
    if (++guard > 100000) throw std::runtime_error("poly_roots: split did not converge");
    PolyZp h = stack.back();
    stack.pop_back();
    if (h.degree() == 1) {
      roots.push_back(mul_mod(sub_mod(0, h.coeff[0], p), inv_mod(h.coeff[1], p), p));
      continue;
    }
    // root at zero
    if (h.coeff[0] == 0) {
      roots.push_back(0);
      std::vector<uint64_t> shifted(h.coeff.begin() + 1, h.coeff.end());
      PolyZp h2{p, shifted};
      if (h2.degree() >= 1) stack.push_back(h2);
      continue;
    }
    PolyZp base{p, {shift % p, 1}};
    shift++;
    PolyZp w = powmod_poly(base, (p - 1) / 2, h);
    w = sub(w, PolyZp{p, {1}});
    PolyZp h1 = polygcd(w, h);
    if (h1.degree() <= 0 || h1.degree() == h.degree()) {
      stack.push_back(h);  // unlucky shift, try the next one
      continue;
    }
    PolyZp h2 = divrem(h, h1).first;
    stack.push_back(h1);
    stack.push_back(h2);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

// strips the largest power of x dividing every coefficient polynomial
void strip_x_content(BivarPolyZp& q) {
  size_t v = SIZE_MAX;
  for (auto& row : q.coeff) {
    size_t t = 0;
    while (t < row.size() && row[t] % q.p == 0) ++t;
    if (t < row.size()) v = std::min(v, t);
  }
  if (v == SIZE_MAX || v == 0) return;
  for (auto& row : q.coeff) {
    if (row.size() <= v)
      row.clear();
    else
      row.erase(row.begin(), row.begin() + static_cast<ptrdiff_t>(v));
  }
}

// y -> gamma + x*y
BivarPolyZp substitute_shift(const BivarPolyZp& q, uint64_t gamma) {
  const uint64_t p = q.p;
  const size_t jd = q.coeff.size();
  // binomial table mod p
  std::vector<std::vector<uint64_t>> binom(jd, std::vector<uint64_t>(jd, 0));
  for (size_t j = 0; j < jd; ++j) {
    binom[j][0] = 1;
    for (size_t r = 1; r <= j; ++r)
      binom[j][r] = add_mod(r <= j - 1 ? binom[j - 1][r] : 0, binom[j - 1][r - 1], p);
  }
  BivarPolyZp out;
  out.p = p;
  out.coeff.assign(jd, {});
  for (size_t r = 0; r < jd; ++r) {
    std::vector<uint64_t> acc;
    uint64_t gpow = 1;
    for (size_t j = r; j < jd; ++j) {
      uint64_t c = mul_mod(binom[j][r], gpow, p);
      if (c != 0 && !q.coeff[j].empty()) {
        if (acc.size() < q.coeff[j].size()) acc.resize(q.coeff[j].size(), 0);
        for (size_t i = 0; i < q.coeff[j].size(); ++i)
          acc[i] = add_mod(acc[i], mul_mod(c, q.coeff[j][i] % p, p), p);
      }
      gpow = mul_mod(gpow, gamma, p);
    }
    // multiply by x^r
    if (!acc.empty()) acc.insert(acc.begin(), r, 0);
    out.coeff[r] = std::move(acc);
  }
  while (!out.coeff.empty()) {
    bool zero = true;
    for (uint64_t v : out.coeff.back())
      if (v % p != 0) zero = false;
    if (zero)
      out.coeff.pop_back();
    else
      break;
  }
  return out;
}

bool bivar_vanishes_on(const BivarPolyZp& q, const PolyZp& f) {
  PolyZp acc{q.p, {}};
  PolyZp fp{q.p, {1}};
  for (const auto& row : q.coeff) {
    PolyZp qi{q.p, row};
    qi.normalize();
    acc = add(acc, mul(qi, fp));
    fp = mul(fp, f);
  }
  return acc.is_zero();
}

struct RRContext {
  const BivarPolyZp* orig = nullptr;
  int64_t d = 0;
  size_t nodes = 0;
  size_t node_cap = 0;
  std::vector<PolyZp>* out = nullptr;
};

void rr_recurse(BivarPolyZp q, int64_t depth, std::vector<uint64_t>& prefix, RRContext& ctx) {
  if (++ctx.nodes > ctx.node_cap)
    throw std::runtime_error("roth_ruckenstein_roots: branch budget exceeded");
  strip_x_content(q);
  std::vector<uint64_t> ry;
  for (const auto& row : q.coeff) ry.push_back(row.empty() ? 0 : row[0] % q.p);
  while (!ry.empty() && ry.back() == 0) ry.pop_back();
  if (ry.empty()) return;  // cannot happen after content stripping of a nonzero q
  for (uint64_t gamma : poly_roots(ry, q.p)) {
    prefix.push_back(gamma);
    if (depth == ctx.d) {
      PolyZp f{q.p, prefix};
      f.normalize();
      if (bivar_vanishes_on(*ctx.orig, f)) ctx.out->push_back(f);
    } else {
      rr_recurse(substitute_shift(q, gamma), depth + 1, prefix, ctx);
    }
    prefix.pop_back();
  }
}

}  // namespace

std::vector<PolyZp> roth_ruckenstein_roots(const BivarPolyZp& q, int64_t d) {
  if (q.is_zero()) throw std::invalid_argument("roth_ruckenstein_roots: zero polynomial");
  if (d < 0) return {};
  std::vector<PolyZp> out;
  RRContext ctx;
  ctx.orig = &q;
  ctx.d = d;
  ctx.node_cap = 1000000;
  ctx.out = &out;
  std::vector<uint64_t> prefix;
  BivarPolyZp work = q;
  rr_recurse(std::move(work), 0, prefix, ctx);
  std::sort(out.begin(), out.end(),
            [](const PolyZp& a, const PolyZp& b) { return a.coeff < b.coeff; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PolyZp> sudan_list_decode(const EvalListZp& pts, int64_t d, uint64_t t) {
  if (!pts.distinct_x()) throw std::invalid_argument("sudan_list_decode: repeated x");
  const size_t L = pts.points.size();
  const uint64_t p = pts.p;
  if (t == 0 || t > L) throw std::invalid_argument("sudan_list_decode: threshold out of range");
  if (d == 0) {
    // constants: multiplicity count replaces the interpolation machinery
    std::vector<std::pair<uint64_t, uint64_t>> counts;
    for (const auto& pt : pts.points) {
      bool found = false;
      for (auto& [y, n] : counts)
        if (y == pt.y % p) {
          ++n;
          found = true;
          break;
        }
      if (!found) counts.push_back({pt.y % p, 1});
    }
    std::vector<PolyZp> out;
    for (auto& [y, n] : counts)
      if (n >= t) {
        PolyZp f{p, {y}};
        f.normalize();
        out.push_back(f);
      }
    std::sort(out.begin(), out.end(),
              [](const PolyZp& a, const PolyZp& b) { return a.coeff < b.coeff; });
    return out;
  }
  SudanParams sp = sudan_parameters(L, d, t);
  if (!sp.feasible)
    throw std::invalid_argument("sudan_list_decode: parameters infeasible (t below formal bound)");
  // columns: (j, i) with j <= ell, i <= m + (ell - j) d, ordered j asc then i asc
  std::vector<size_t> col_base(static_cast<size_t>(sp.ell) + 1);
  std::vector<size_t> col_width(static_cast<size_t>(sp.ell) + 1);
  size_t cols = 0;
  for (int64_t j = 0; j <= sp.ell; ++j) {
    col_base[static_cast<size_t>(j)] = cols;
    col_width[static_cast<size_t>(j)] = static_cast<size_t>(sp.m + (sp.ell - j) * d) + 1;
    cols += col_width[static_cast<size_t>(j)];
  }
  std::vector<uint64_t> a(L * cols);
  for (size_t i = 0; i < L; ++i) {
    uint64_t x = pts.points[i].x % p;
    uint64_t y = pts.points[i].y % p;
    uint64_t* row = &a[i * cols];
    uint64_t ypow = 1;
    for (int64_t j = 0; j <= sp.ell; ++j) {
      uint64_t v = ypow;
      size_t base = col_base[static_cast<size_t>(j)];
      for (size_t k = 0; k < col_width[static_cast<size_t>(j)]; ++k) {
        row[base + k] = v;
        v = mul_mod(v, x, p);
      }
      ypow = mul_mod(ypow, y, p);
    }
  }
  auto v = nullspace_vector(std::move(a), L, cols, p);
  if (v.empty())
    throw std::runtime_error("sudan_list_decode: empty nullspace with feasible parameters");
  BivarPolyZp q;
  q.p = p;
  q.coeff.resize(static_cast<size_t>(sp.ell) + 1);
  for (int64_t j = 0; j <= sp.ell; ++j) {
    size_t base = col_base[static_cast<size_t>(j)];
    q.coeff[static_cast<size_t>(j)] =
        std::vector<uint64_t>(v.begin() + static_cast<ptrdiff_t>(base),
                              v.begin() + static_cast<ptrdiff_t>(base + col_width[static_cast<size_t>(j)]));
  }
  std::vector<PolyZp> out;
  for (auto& f : roth_ruckenstein_roots(q, d))
    if (count_agreements(f, pts) >= t) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(),
            [](const PolyZp& a, const PolyZp& b) { return a.coeff < b.coeff; });
  return out;
}

}  // namespace skred::poly
