#include "skred/ff.hpp"

#include <algorithm>
#include <stdexcept>

namespace skred::ff {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t s = a + b;  // no overflow: a, b < 2^62
  return s >= p ? s - p : s;
}

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t p) {
  uint64_t r = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) throw std::invalid_argument("inv_mod: zero has no inverse");
  // extended Euclid; signed intermediates stay within +-p < 2^62
  int64_t t = 0, newt = 1;
  uint64_t r = p, newr = a;
  while (newr != 0) {
    uint64_t q = r / newr;
    int64_t tmpt = t - static_cast<int64_t>(q) * newt;
    t = newt;
    newt = tmpt;
    uint64_t tmpr = r - q * newr;
    r = newr;
    newr = tmpr;
  }
  if (r != 1) throw std::invalid_argument("inv_mod: input not invertible");
  return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // witness set proven sufficient for all n < 2^64
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(uint64_t p) : p_(p) {
  if (p >= kModulusCap) throw std::invalid_argument("Modulus: modulus above 2^62 cap");
  if (p < 3 || (p & 1) == 0 || !is_prime_u64(p))
    throw std::invalid_argument("Modulus: modulus must be an odd prime");
}

namespace {
void require_same(const Residue& a, const Residue& b) {
  if (!(a.modulus() == b.modulus()))
    throw std::invalid_argument("Residue: modulus mismatch");
}
}  // namespace

Residue mod_add(const Residue& a, const Residue& b) {
  require_same(a, b);
  return {add_mod(a.value(), b.value(), a.modulus().value()), a.modulus()};
}

Residue mod_sub(const Residue& a, const Residue& b) {
  require_same(a, b);
  return {sub_mod(a.value(), b.value(), a.modulus().value()), a.modulus()};
}

Residue mod_mul(const Residue& a, const Residue& b) {
  require_same(a, b);
  return {mul_mod(a.value(), b.value(), a.modulus().value()), a.modulus()};
}

Residue mod_inv(const Residue& a) {
  return {inv_mod(a.value(), a.modulus().value()), a.modulus()};
}

Residue mod_pow(const Residue& a, uint64_t e) {
  return {pow_mod(a.value(), e, a.modulus().value()), a.modulus()};
}

BigInt crt_reconstruct(const std::vector<std::pair<uint64_t, uint64_t>>& residues) {
  if (residues.empty()) throw std::invalid_argument("crt_reconstruct: empty input");
  BigInt x = 0;
  BigInt prod = 1;
  for (const auto& [a, m] : residues) {
    if (m == 0) throw std::invalid_argument("crt_reconstruct: zero modulus");
    if (mpz_gcd_ui(nullptr, prod.get_mpz_t(), m) != 1)
      throw std::invalid_argument("crt_reconstruct: moduli not pairwise coprime");
    // lift: find x' = x (mod prod), x' = a (mod m)
    BigInt mm = BigInt(static_cast<unsigned long>(m));
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), prod.get_mpz_t(), mm.get_mpz_t()) == 0)
      throw std::invalid_argument("crt_reconstruct: moduli not pairwise coprime");
    BigInt diff = (BigInt(static_cast<unsigned long>(a % m)) - x % mm + mm) % mm;
    x += prod * ((diff * inv) % mm);
    prod *= mm;
  }
  return x % prod;
}

namespace {

// Simple sieve of [2, n]; returns primes ascending.
std::vector<uint64_t> sieve_upto(uint64_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<uint64_t> primes;
  for (uint64_t i = 2; i <= n; ++i) {
    if (!comp[i]) {
      primes.push_back(i);
      for (uint64_t j = i * i; j <= n; j += i) comp[j] = true;
    }
  }
  return primes;
}

}  // namespace

PrimeWindow prime_window(uint64_t lo, uint64_t hi) {
  if (lo < 2 || lo >= hi || hi > kModulusCap)
    throw std::invalid_argument("prime_window: need 2 <= lo < hi <= 2^62");
  PrimeWindow w;
  w.lo = lo;
  w.hi = hi;
  if (hi <= (uint64_t{1} << 32)) {
    uint64_t root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;
    auto base = sieve_upto(std::max<uint64_t>(root, 2));
    // segmented sieve of (lo, hi]
    const uint64_t seg = uint64_t{1} << 20;
    for (uint64_t start = lo + 1; start <= hi; start += seg) {
      uint64_t end = std::min(hi, start + seg - 1);
      std::vector<bool> comp(end - start + 1, false);
      for (uint64_t q : base) {
        if (q * q > end) break;
        uint64_t first = std::max(q * q, (start + q - 1) / q * q);
        for (uint64_t j = first; j <= end; j += q) comp[j - start] = true;
      }
      for (uint64_t v = start; v <= end; ++v)
        if (v >= 2 && !comp[v - start]) w.primes.push_back(v);
    }
  } else {
    for (uint64_t v = lo + 1; v != 0 && v <= hi; ++v)
      if (is_prime_u64(v)) w.primes.push_back(v);
  }
  return w;
}

BigInt pow2(uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace skred::ff
