#pragma once

// Univariate polynomial algebra over prime fields and exact rationals:
// evaluation, Lagrange interpolation, Berlekamp-Welch decoding, and Sudan's
// list decoder with bivariate y-root extraction (Roth-Ruckenstein).

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "skred/ff.hpp"

namespace skred::poly {

// Degree sentinel of the zero polynomial; strictly below every true degree
// so that difference-of-polynomials degree arguments stay well-defined.
inline constexpr int64_t kNegInfDegree = -1;

// Dense polynomial over Z_p, low degree first, no trailing zero coefficient.
struct PolyZp {
  uint64_t p = 0;
  std::vector<uint64_t> coeff;

  int64_t degree() const {
    return coeff.empty() ? kNegInfDegree : static_cast<int64_t>(coeff.size()) - 1;
  }
  bool is_zero() const { return coeff.empty(); }
  void normalize();
  friend bool operator==(const PolyZp& a, const PolyZp& b) {
    return a.p == b.p && a.coeff == b.coeff;
  }
};

// Dense polynomial over the exact rationals.
struct PolyQ {
  std::vector<mpq_class> coeff;

  int64_t degree() const {
    return coeff.empty() ? kNegInfDegree : static_cast<int64_t>(coeff.size()) - 1;
  }
  bool is_zero() const { return coeff.empty(); }
  void normalize();
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.coeff == b.coeff; }
};

struct EvalPointZp {
  uint64_t x = 0;
  uint64_t y = 0;
  bool oracle_answered = false;  // provenance: oracle answer vs. ground truth
};

struct EvalListZp {
  uint64_t p = 0;
  std::vector<EvalPointZp> points;

  size_t size() const { return points.size(); }
  bool distinct_x() const;
  // Drops repeated x values, keeping the first occurrence of each.
  EvalListZp deduplicated() const;
};

struct EvalPointQ {
  mpq_class x, y;
  bool oracle_answered = false;
};

struct EvalListQ {
  std::vector<EvalPointQ> points;
  size_t size() const { return points.size(); }
  bool distinct_x() const;
};

uint64_t eval(const PolyZp& f, uint64_t x);
mpq_class eval(const PolyQ& f, const mpq_class& x);

PolyZp add(const PolyZp& a, const PolyZp& b);
PolyZp sub(const PolyZp& a, const PolyZp& b);
PolyZp mul(const PolyZp& a, const PolyZp& b);
// Exact division; returns quotient and remainder.
std::pair<PolyZp, PolyZp> divrem(const PolyZp& a, const PolyZp& b);

PolyQ add(const PolyQ& a, const PolyQ& b);
PolyQ sub(const PolyQ& a, const PolyQ& b);
PolyQ mul(const PolyQ& a, const PolyQ& b);
std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b);

// Unique polynomial of degree < |points| through all points (distinct x).
PolyZp interpolate(const EvalListZp& points);
PolyQ interpolate(const EvalListQ& points);

uint64_t count_agreements(const PolyZp& f, const EvalListZp& points);
uint64_t count_agreements(const PolyQ& f, const EvalListQ& points);

// Berlekamp-Welch: the unique f with deg(f) <= d agreeing with more than
// (L+d)/2 of the points, via the error-locator system E(x_i) y_i = N(x_i)
// with deg(E) <= e, deg(N) <= e+d, e = floor((L-d-1)/2), then f = N/E.
// Returns nullopt ("no codeword") when the division leaves a remainder or
// the agreement count of the quotient is insufficient; the agreement bound
// is re-verified on every returned polynomial.
std::optional<PolyZp> berlekamp_welch(const EvalListZp& points, int64_t d);
std::optional<PolyQ> berlekamp_welch(const EvalListQ& points, int64_t d);

// Bivariate polynomial over Z_p; coeff[j] is the x-polynomial multiplying y^j.
struct BivarPolyZp {
  uint64_t p = 0;
  std::vector<std::vector<uint64_t>> coeff;

  bool is_zero() const;
  int64_t ydeg() const;
  // max over nonzero q_ij of i*wx + j*wy
  int64_t weighted_degree(int64_t wx, int64_t wy) const;
};

// Decoder parameters for a given list size, degree bound, and agreement
// threshold. The formal feasibility condition is
//   t >= d * ceil(sqrt(2(L+1)/d)) - floor(d/2);
// t_informal records the cruder sqrt(2Ld) comparison alongside it.
struct SudanParams {
  bool feasible = false;
  uint64_t t_min_formal = 0;
  double t_min_informal = 0.0;  // sqrt(2 L d)
  int64_t ell = 0;              // y-degree bound of Q
  int64_t m = 0;                // minimal x-degree slack
  size_t unknowns = 0;          // interpolation coefficients of Q
};

SudanParams sudan_parameters(size_t L, int64_t d, uint64_t t);

// All f with deg(f) <= d and Q(x, f(x)) identically zero.
std::vector<PolyZp> roth_ruckenstein_roots(const BivarPolyZp& Q, int64_t d);

// Sudan list decoding: exactly the set of degree-<=d polynomials agreeing
// with the list on at least t points. Requires distinct x and the formal
// parameter condition above; throws std::invalid_argument otherwise.
// Nullspace of the interpolation constraints is computed by dense Gaussian
// elimination over Z_p, O(L^3); determinism comes from the fixed monomial
// elimination order with the first free column chosen as basis.
std::vector<PolyZp> sudan_list_decode(const EvalListZp& points, int64_t d, uint64_t t);

// One nonzero nullspace vector of the rows x cols matrix over Z_p (row-major,
// entries reduced), or empty when the matrix has full column rank.
std::vector<uint64_t> nullspace_vector(std::vector<uint64_t> mat, size_t rows, size_t cols,
                                       uint64_t p);

// Roots of a univariate polynomial over Z_p (each distinct root once).
std::vector<uint64_t> poly_roots(const std::vector<uint64_t>& coeff, uint64_t p);

}  // namespace skred::poly
