#pragma once

// Prime-field and big-integer arithmetic: word-sized modular ops with a
// checked prime modulus, extended-Euclid inverses, Chinese remaindering
// into arbitrary precision, and exhaustive prime windows.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace skred::ff {

using BigInt = mpz_class;
using Rational = mpq_class;

// Largest admissible modulus: products of two reduced values must fit the
// double-width machine multiply used throughout.
inline constexpr uint64_t kModulusCap = uint64_t{1} << 62;

bool is_prime_u64(uint64_t n);  // deterministic Miller-Rabin, valid below 2^64

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t p);
uint64_t inv_mod(uint64_t a, uint64_t p);  // throws on a == 0 (mod p)

// An odd prime below 2^62, verified at construction.
class Modulus {
 public:
  explicit Modulus(uint64_t p);
  uint64_t value() const { return p_; }
  friend bool operator==(Modulus a, Modulus b) { return a.p_ == b.p_; }

 private:
  uint64_t p_;
};

// An element of Z_p carrying its modulus; all checked mod-p algebra flows
// through this type. Hot loops use the raw *_mod helpers instead.
class Residue {
 public:
  Residue(uint64_t value, Modulus m) : v_(value % m.value()), m_(m) {}
  uint64_t value() const { return v_; }
  Modulus modulus() const { return m_; }

 private:
  uint64_t v_;
  Modulus m_;
};

Residue mod_add(const Residue& a, const Residue& b);
Residue mod_sub(const Residue& a, const Residue& b);
Residue mod_mul(const Residue& a, const Residue& b);
Residue mod_inv(const Residue& a);
Residue mod_pow(const Residue& a, uint64_t e);

inline Residue operator+(const Residue& a, const Residue& b) { return mod_add(a, b); }
inline Residue operator-(const Residue& a, const Residue& b) { return mod_sub(a, b); }
inline Residue operator*(const Residue& a, const Residue& b) { return mod_mul(a, b); }
inline bool operator==(const Residue& a, const Residue& b) {
  return a.value() == b.value() && a.modulus() == b.modulus();
}

// Unique m in [0, prod p_i) with m = a_i (mod p_i). Moduli must be pairwise
// coprime; throws otherwise.
BigInt crt_reconstruct(const std::vector<std::pair<uint64_t, uint64_t>>& residues);

struct PrimeWindow {
  uint64_t lo = 0;  // exclusive
  uint64_t hi = 0;  // inclusive
  std::vector<uint64_t> primes;  // ascending, exhaustive for (lo, hi]
};

// Exhaustive ascending list of primes in (lo, hi]. Sieved when hi fits 32
// bits, otherwise each candidate is tested individually; wide windows above
// 2^32 are correspondingly slow.
PrimeWindow prime_window(uint64_t lo, uint64_t hi);

BigInt pow2(uint64_t e);

}  // namespace skred::ff
