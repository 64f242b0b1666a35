#include "skred/sk.hpp"

#include <bit>
#include <stdexcept>

#include <json.hpp>

namespace skred::sk {

void SkInstance::validate() const {
  if (n < 1) throw std::invalid_argument("SkInstance: n must be >= 1");
  if (precision < 0) throw std::invalid_argument("SkInstance: negative precision");
  if (J.size() != static_cast<size_t>(n) * (n - 1) / 2 || B.size() != static_cast<size_t>(n) ||
      C.size() != static_cast<size_t>(n))
    throw std::invalid_argument("SkInstance: inconsistent lengths");
  for (const auto& v : J)
    if (v < 0) throw std::invalid_argument("SkInstance: negative coupling");
  for (const auto& v : B)
    if (v < 0) throw std::invalid_argument("SkInstance: negative field entry");
  for (const auto& v : C)
    if (v < 0) throw std::invalid_argument("SkInstance: negative field entry");
}

void ResidueInstance::validate() const {
  if (n < 1) throw std::invalid_argument("ResidueInstance: n must be >= 1");
  if (p < 3) throw std::invalid_argument("ResidueInstance: bad modulus");
  if (J.size() != static_cast<size_t>(n) * (n - 1) / 2 || B.size() != static_cast<size_t>(n) ||
      C.size() != static_cast<size_t>(n))
    throw std::invalid_argument("ResidueInstance: inconsistent lengths");
  for (uint64_t v : J)
    if (v >= p) throw std::invalid_argument("ResidueInstance: entry not reduced");
  for (uint64_t v : B)
    if (v >= p) throw std::invalid_argument("ResidueInstance: entry not reduced");
  for (uint64_t v : C)
    if (v >= p) throw std::invalid_argument("ResidueInstance: entry not reduced");
}

int64_t cut_size(const SpinConfig& sigma) {
  const int n = static_cast<int>(sigma.sigma.size());
  int64_t cut = 0;
  for (int i = 0; i < n; ++i) {
    if (sigma.sigma[i] != 1 && sigma.sigma[i] != -1)
      throw std::invalid_argument("SpinConfig: entries must be +-1");
    for (int j = i + 1; j < n; ++j)
      if (sigma.sigma[i] != sigma.sigma[j]) ++cut;
  }
  return cut;
}

int64_t exponent_f(int n, const SpinConfig& sigma) {
  if (static_cast<int>(sigma.sigma.size()) != n)
    throw std::invalid_argument("exponent_f: length mismatch");
  return static_cast<int64_t>(n) * (n - 1) / 2 - n - cut_size(sigma);
}

namespace {

// Multiset product with explicit zero tracking, so Gray-code ratio updates
// survive zero entries.
struct TrackedProduct {
  BigInt mantissa = 1;
  int zero_count = 0;

  void mul(const BigInt& e) {
    if (e == 0)
      ++zero_count;
    else
      mantissa *= e;
  }
  void div(const BigInt& e) {
    if (e == 0)
      --zero_count;
    else
      mpz_divexact(mantissa.get_mpz_t(), mantissa.get_mpz_t(), e.get_mpz_t());
  }
};

}  // namespace

BigInt partition_exact(const SkInstance& inst, int cap) {
  inst.validate();
  const int n = inst.n;
  if (n < 7) throw std::invalid_argument("partition_exact: needs n >= 7 (integral weights)");
  if (n > cap) throw std::invalid_argument("partition_exact: brute-force cap exceeded");
  const int64_t base_f = static_cast<int64_t>(n) * (n - 1) / 2 - n;
  const uint64_t N = static_cast<uint64_t>(inst.precision);

  std::vector<int> sigma(n, 1);
  TrackedProduct prod;
  for (int i = 0; i < n; ++i) prod.mul(inst.C[i]);  // all-plus start
  int64_t cut = 0;

  BigInt z = 0;
  BigInt term;
  auto accumulate = [&]() {
    if (prod.zero_count > 0) return;
    int64_t f = base_f - cut;
    term = prod.mantissa;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<mp_bitcnt_t>(N * f));
    z += term;
  };
  accumulate();
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t m = 1; m < total; ++m) {
    int i = std::countr_zero(m);
    int old = sigma[i];
    // field factor swap
    if (old == 1) {
      prod.div(inst.C[i]);
      prod.mul(inst.B[i]);
    } else {
      prod.div(inst.B[i]);
      prod.mul(inst.C[i]);
    }
    // coupling toggles against every other spin
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      size_t idx = i < j ? pair_index(i, j, n) : pair_index(j, i, n);
      if (sigma[j] != old) {
        prod.div(inst.J[idx]);  // was discordant, becomes concordant
        --cut;
      } else {
        prod.mul(inst.J[idx]);
        ++cut;
      }
    }
    sigma[i] = -old;
    accumulate();
  }
  return z;
}

BigInt partition_exact_naive(const SkInstance& inst, int cap) {
  inst.validate();
  const int n = inst.n;
  if (n < 7) throw std::invalid_argument("partition_exact_naive: needs n >= 7");
  if (n > cap) throw std::invalid_argument("partition_exact_naive: brute-force cap exceeded");
  const int64_t base_f = static_cast<int64_t>(n) * (n - 1) / 2 - n;
  const uint64_t N = static_cast<uint64_t>(inst.precision);
  BigInt z = 0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t m = 0; m < total; ++m) {
    BigInt term = 1;
    int64_t cut = 0;
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      bool minus_i = (m >> i) & 1;
      const BigInt& field = minus_i ? inst.B[i] : inst.C[i];
      if (field == 0) {
        zero = true;
        break;
      }
      term *= field;
      for (int j = i + 1; j < n; ++j) {
        bool minus_j = (m >> j) & 1;
        if (minus_i != minus_j) {
          ++cut;
          if (inst.J[pair_index(i, j, n)] == 0) {
            zero = true;
            break;
          }
          term *= inst.J[pair_index(i, j, n)];
        }
      }
    }
    if (zero) continue;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<mp_bitcnt_t>(N * (base_f - cut)));
    z += term;
  }
  return z;
}

uint64_t partition_mod_p(const ResidueInstance& inst, int precision, int cap) {
  inst.validate();
  const int n = inst.n;
  const uint64_t p = inst.p;
  if (n > cap) throw std::invalid_argument("partition_mod_p: brute-force cap exceeded");
  const int64_t base_f = static_cast<int64_t>(n) * (n - 1) / 2 - n;
  const uint64_t N = static_cast<uint64_t>(precision);

  // 2^{N f} for the full signed range of f
  const int64_t max_abs_f = static_cast<int64_t>(n) * (n - 1) / 2 + n + 1;
  const uint64_t two_n = ff::pow_mod(2, N, p);
  const uint64_t g_n = ff::inv_mod(two_n, p);  // p odd, so 2^N is invertible
  std::vector<uint64_t> pow_pos(max_abs_f + 1), pow_neg(max_abs_f + 1);
  pow_pos[0] = pow_neg[0] = 1;
  for (int64_t k = 1; k <= max_abs_f; ++k) {
    pow_pos[k] = ff::mul_mod(pow_pos[k - 1], two_n, p);
    pow_neg[k] = ff::mul_mod(pow_neg[k - 1], g_n, p);
  }
  auto weight = [&](int64_t f) { return f >= 0 ? pow_pos[f] : pow_neg[-f]; };

  // precompute inverses of nonzero entries for ratio updates
  auto inv_of = [&](uint64_t v) { return v == 0 ? uint64_t{0} : ff::inv_mod(v, p); };
  std::vector<uint64_t> invJ(inst.J.size()), invB(inst.B.size()), invC(inst.C.size());
  for (size_t i = 0; i < inst.J.size(); ++i) invJ[i] = inv_of(inst.J[i]);
  for (size_t i = 0; i < inst.B.size(); ++i) invB[i] = inv_of(inst.B[i]);
  for (size_t i = 0; i < inst.C.size(); ++i) invC[i] = inv_of(inst.C[i]);

  std::vector<int> sigma(n, 1);
  uint64_t mant = 1;
  int zeros = 0;
  auto mul_entry = [&](uint64_t v) {
    if (v == 0)
      ++zeros;
    else
      mant = ff::mul_mod(mant, v, p);
  };
  auto div_entry = [&](uint64_t v, uint64_t vinv) {
    if (v == 0)
      --zeros;
    else
      mant = ff::mul_mod(mant, vinv, p);
  };
  for (int i = 0; i < n; ++i) mul_entry(inst.C[i]);
  int64_t cut = 0;
  uint64_t z = 0;
  auto accumulate = [&]() {
    if (zeros == 0) z = ff::add_mod(z, ff::mul_mod(mant, weight(base_f - cut), p), p);
  };
  accumulate();
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t m = 1; m < total; ++m) {
    int i = std::countr_zero(m);
    int old = sigma[i];
    if (old == 1) {
      div_entry(inst.C[i], invC[i]);
      mul_entry(inst.B[i]);
    } else {
      div_entry(inst.B[i], invB[i]);
      mul_entry(inst.C[i]);
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      size_t idx = i < j ? pair_index(i, j, n) : pair_index(j, i, n);
      if (sigma[j] != old) {
        div_entry(inst.J[idx], invJ[idx]);
        --cut;
      } else {
        mul_entry(inst.J[idx]);
        ++cut;
      }
    }
    sigma[i] = -old;
    accumulate();
  }
  return z;
}

Rational partition_cut_rational(const std::vector<Rational>& J, const std::vector<Rational>& B,
                                const std::vector<Rational>& C, int n, int cap) {
  if (n < 1) throw std::invalid_argument("partition_cut_rational: n must be >= 1");
  if (n > cap) throw std::invalid_argument("partition_cut_rational: brute-force cap exceeded");
  if (J.size() != static_cast<size_t>(n) * (n - 1) / 2 || B.size() != static_cast<size_t>(n) ||
      C.size() != static_cast<size_t>(n))
    throw std::invalid_argument("partition_cut_rational: inconsistent lengths");
  Rational z = 0;
  const uint64_t total = uint64_t{1} << n;
  for (uint64_t m = 0; m < total; ++m) {
    Rational term = 1;
    for (int i = 0; i < n; ++i) {
      term *= ((m >> i) & 1) ? B[i] : C[i];
      for (int j = i + 1; j < n; ++j)
        if (((m >> i) & 1) != ((m >> j) & 1)) term *= J[pair_index(i, j, n)];
    }
    z += term;
  }
  return z;
}

RecursionSplit self_recursion_split(const ResidueInstance& inst, int precision) {
  inst.validate();
  const int n = inst.n;
  if (n < 2) throw std::invalid_argument("self_recursion_split: needs n >= 2");
  const uint64_t p = inst.p;
  const uint64_t g = ff::inv_mod(2, p);
  const uint64_t g_n = ff::pow_mod(g, static_cast<uint64_t>(precision), p);
  const uint64_t w = ff::pow_mod(2, static_cast<uint64_t>(precision) * (n - 2), p);

  RecursionSplit out;
  out.c_weight = ff::mul_mod(inst.C[n - 1], w, p);
  out.b_weight = ff::mul_mod(inst.B[n - 1], w, p);
  ResidueInstance sub;
  sub.n = n - 1;
  sub.p = p;
  sub.J.resize(static_cast<size_t>(n - 1) * (n - 2) / 2);
  for (int i = 0; i < n - 1; ++i)
    for (int j = i + 1; j < n - 1; ++j)
      sub.J[pair_index(i, j, n - 1)] = inst.J[pair_index(i, j, n)];
  out.plus = sub;
  out.minus = sub;
  out.plus.B.resize(n - 1);
  out.plus.C.resize(n - 1);
  out.minus.B.resize(n - 1);
  out.minus.C.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    uint64_t j_in = inst.J[pair_index(i, n - 1, n)];
    out.plus.B[i] = ff::mul_mod(ff::mul_mod(inst.B[i], j_in, p), g_n, p);
    out.plus.C[i] = inst.C[i];
    out.minus.B[i] = inst.B[i];
    out.minus.C[i] = ff::mul_mod(ff::mul_mod(inst.C[i], j_in, p), g_n, p);
  }
  return out;
}

FieldTransform external_field_transform(const std::vector<Rational>& A,
                                        const std::vector<Rational>& G) {
  if (A.size() != G.size()) throw std::invalid_argument("external_field_transform: dimension mismatch");
  FieldTransform out;
  out.B.reserve(A.size());
  out.C.reserve(A.size());
  for (size_t i = 0; i < A.size(); ++i) {
    out.B.push_back((A[i] + G[i]) / 2);
    out.C.push_back((G[i] - A[i]) / 2);
  }
  return out;
}

std::vector<Rational> external_field_inverse(const std::vector<Rational>& B,
                                             const std::vector<Rational>& C) {
  if (B.size() != C.size()) throw std::invalid_argument("external_field_inverse: dimension mismatch");
  std::vector<Rational> a;
  a.reserve(B.size());
  for (size_t i = 0; i < B.size(); ++i) a.push_back(B[i] - C[i]);
  return a;
}

std::vector<Rational> hamiltonian_exponents(const std::vector<Rational>& J,
                                            const std::vector<Rational>& B,
                                            const std::vector<Rational>& C, int n) {
  std::vector<Rational> out;
  out.reserve(size_t{1} << n);
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    Rational h = 0;
    for (int i = 0; i < n; ++i) {
      int si = ((m >> i) & 1) ? -1 : 1;
      h += Rational(si) * (B[i] - C[i]);
      for (int j = i + 1; j < n; ++j) {
        int sj = ((m >> j) & 1) ? -1 : 1;
        h += Rational(si * sj) * J[pair_index(i, j, n)];
      }
    }
    out.push_back(-h);
  }
  return out;
}

std::vector<Rational> hamiltonian_exponents_single(const std::vector<Rational>& J,
                                                   const std::vector<Rational>& A, int n) {
  std::vector<Rational> out;
  out.reserve(size_t{1} << n);
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
    Rational h = 0;
    for (int i = 0; i < n; ++i) {
      int si = ((m >> i) & 1) ? -1 : 1;
      h += Rational(si) * A[i];
      for (int j = i + 1; j < n; ++j) {
        int sj = ((m >> j) & 1) ? -1 : 1;
        h += Rational(si * sj) * J[pair_index(i, j, n)];
      }
    }
    out.push_back(-h);
  }
  return out;
}

std::string to_json(const SkInstance& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.n;
  j["N"] = inst.precision;
  auto dump = [](const std::vector<BigInt>& v) {
    std::vector<std::string> s;
    s.reserve(v.size());
    for (const auto& x : v) s.push_back(x.get_str());
    return s;
  };
  j["J"] = dump(inst.J);
  j["B"] = dump(inst.B);
  j["C"] = dump(inst.C);
  j["beta"] = inst.beta;
  j["seed"] = inst.seed;
  return j.dump();
}

SkInstance instance_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SkInstance inst;
  inst.n = j.at("n").get<int>();
  inst.precision = j.at("N").get<int>();
  auto load = [](const nlohmann::json& arr) {
    std::vector<BigInt> v;
    for (const auto& s : arr) v.emplace_back(s.get<std::string>());
    return v;
  };
  inst.J = load(j.at("J"));
  inst.B = load(j.at("B"));
  inst.C = load(j.at("C"));
  inst.beta = j.at("beta").get<double>();
  inst.seed = j.at("seed").get<uint64_t>();
  inst.validate();
  return inst;
}

ResidueInstance reduce_instance(const SkInstance& inst, uint64_t p) {
  inst.validate();
  ResidueInstance r;
  r.n = inst.n;
  r.p = p;
  auto red = [&](const std::vector<BigInt>& v) {
    std::vector<uint64_t> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(mpz_fdiv_ui(x.get_mpz_t(), p));
    return out;
  };
  r.J = red(inst.J);
  r.B = red(inst.B);
  r.C = red(inst.C);
  return r;
}

}  // namespace skred::sk

namespace skred::ff {

BigInt partition_upper_bound(const sk::SkInstance& inst) {
  inst.validate();
  const int n = inst.n;
  BigInt m = pow2(static_cast<uint64_t>(inst.precision));
  for (const auto& v : inst.J) m = std::max(m, v);
  for (const auto& v : inst.B) m = std::max(m, v);
  for (const auto& v : inst.C) m = std::max(m, v);
  const uint64_t pairs = static_cast<uint64_t>(n) * (n - 1) / 2;
  BigInt u;
  mpz_pow_ui(u.get_mpz_t(), m.get_mpz_t(), pairs + static_cast<uint64_t>(n));
  u *= pow2(static_cast<uint64_t>(n));
  u *= pow2(static_cast<uint64_t>(inst.precision) * pairs);
  return u;
}

}  // namespace skred::ff
