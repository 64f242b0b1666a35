#pragma once

// SK instances and exact partition functions: the integer-valued model, the
// rational cut form, model equivalences, and the downward self-recursion
// into two (n-1)-spin systems.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "skred/ff.hpp"

namespace skred::sk {

using ff::BigInt;
using ff::Rational;

// Integer-model input: couplings J (upper triangle, row-major: (1,2), (1,3),
// ..., (1,n), (2,3), ...), field components B and C, precision N; entries are
// the N-bit truncations of the exponentiated Gaussians and hence nonnegative.
struct SkInstance {
  int n = 0;
  int precision = 0;  // N
  std::vector<BigInt> J;  // length n(n-1)/2
  std::vector<BigInt> B;  // length n
  std::vector<BigInt> C;  // length n
  double beta = 1.0;
  uint64_t seed = 0;

  void validate() const;  // throws on inconsistent shapes or negative entries
};

struct SpinConfig {
  std::vector<int> sigma;  // entries in {-1, +1}
};

// Same shape as SkInstance with entries reduced mod p.
struct ResidueInstance {
  int n = 0;
  uint64_t p = 0;
  std::vector<uint64_t> J;
  std::vector<uint64_t> B;
  std::vector<uint64_t> C;

  void validate() const;
};

inline size_t pair_index(int i, int j, int n) {
  // 0-based index of (i, j), i < j, in row-major upper-triangle order
  return static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i + 1) / 2 +
         static_cast<size_t>(j - i - 1);
}

// |{(i,j): sigma_i != sigma_j, i < j}|
int64_t cut_size(const SpinConfig& sigma);

// f(n, sigma) = n(n-1)/2 - n - I_n(sigma); nonnegative for n > 6, signed below.
int64_t exponent_f(int n, const SpinConfig& sigma);

inline int64_t max_cut(int n) {
  int64_t best = 0;
  for (int k = 1; k < n; ++k) best = std::max<int64_t>(best, int64_t(k) * (n - k));
  return best;
}

inline constexpr int kDefaultBruteForceCap = 20;

// Exact Z_n by enumeration of all 2^n configurations (Gray-code order with
// incremental cut updates). Requires n >= 7 so the 2^{Nf} weight is integral.
BigInt partition_exact(const SkInstance& inst, int cap = kDefaultBruteForceCap);

// Independent reference: plain per-configuration products, no incremental
// state. Test oracle for partition_exact.
BigInt partition_exact_naive(const SkInstance& inst, int cap = kDefaultBruteForceCap);

// Exact Z_n mod p; negative exponents of 2 handled through g = 2^{-1} mod p,
// so any n >= 1 is admissible.
uint64_t partition_mod_p(const ResidueInstance& inst, int precision,
                         int cap = kDefaultBruteForceCap);

// Cut-form partition function over exact rationals.
Rational partition_cut_rational(const std::vector<Rational>& J, const std::vector<Rational>& B,
                                const std::vector<Rational>& C, int n,
                                int cap = kDefaultBruteForceCap);

// Downward self-recursion: Z_n = C'_n Z_{n-1}(J', B+, C+) + B'_n Z_{n-1}(J', B-, C-)
// with B+_i = 2^{-N} B_i J_in, C+_i = C_i, B-_i = B_i, C-_i = 2^{-N} C_i J_in,
// C'_n = C_n 2^{(n-2)N}, B'_n = B_n 2^{(n-2)N}. Exposed over residue instances
// only: over the integers 2^{-N} B_i J_in is generally non-integral.
struct RecursionSplit {
  uint64_t c_weight = 0;  // C'_n
  ResidueInstance plus;
  uint64_t b_weight = 0;  // B'_n
  ResidueInstance minus;
};
RecursionSplit self_recursion_split(const ResidueInstance& inst, int precision);

// Model equivalence between the single-field Hamiltonian (J, A) and the
// two-field form (J, B, C): forward sets B = (A+G)/2, C = (G-A)/2 with G an
// independent copy of A; inverse recovers A = B - C. All exact rationals.
struct FieldTransform {
  std::vector<Rational> B, C;
};
FieldTransform external_field_transform(const std::vector<Rational>& A,
                                        const std::vector<Rational>& G);
std::vector<Rational> external_field_inverse(const std::vector<Rational>& B,
                                             const std::vector<Rational>& C);

// Hamiltonian exponents -H(sigma) for every configuration, in sigma
// enumeration order: H = sum J_ij sigma_i sigma_j + sum B_i sigma_i - sum
// C_i sigma_i (couplings already carry their scaling). Two models agree iff
// these lists agree entrywise.
std::vector<Rational> hamiltonian_exponents(const std::vector<Rational>& J,
                                            const std::vector<Rational>& B,
                                            const std::vector<Rational>& C, int n);
// Single-field variant: H = sum J_ij sigma_i sigma_j + sum A_i sigma_i.
std::vector<Rational> hamiltonian_exponents_single(const std::vector<Rational>& J,
                                                   const std::vector<Rational>& A, int n);

// JSON round-trip, integers as decimal strings.
std::string to_json(const SkInstance& inst);
SkInstance instance_from_json(const std::string& text);

ResidueInstance reduce_instance(const SkInstance& inst, uint64_t p);

}  // namespace skred::sk

namespace skred::ff {

// Rigorous upper bound U >= Z_n: 2^n * max(entries, 2^N)^{n(n-1)/2 + n} *
// 2^{N n(n-1)/2}. Deliberately loose; only its validity matters (it decides
// how many CRT primes to take).
BigInt partition_upper_bound(const sk::SkInstance& inst);

}  // namespace skred::ff
