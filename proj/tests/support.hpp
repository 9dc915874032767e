#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hornopt/modular.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/rng.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt::testing {

struct PolyShape {
  std::size_t vars = 5;
  std::size_t terms = 20;
  Exponent max_exp = 4;
  int max_coeff = 10;
};

inline VarTable letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v_" + std::to_string(i));
  return VarTable(std::move(names));
}

/// Random polynomial drawing up to `terms` monomials; collisions collect.
inline Polynomial random_polynomial(Rng& rng, const PolyShape& shape) {
  std::vector<Term> terms;
  for (std::size_t t = 0; t < shape.terms; ++t) {
    Term term;
    term.exps.resize(shape.vars);
    for (auto& e : term.exps) e = static_cast<Exponent>(rng.below(shape.max_exp + 1));
    long long c = 0;
    while (c == 0) c = static_cast<long long>(rng.below(2 * shape.max_coeff + 1)) - shape.max_coeff;
    term.coeff = BigInt(c);
    terms.push_back(std::move(term));
  }
  return Polynomial(letters(shape.vars), std::move(terms));
}

inline Polynomial random_nonzero(Rng& rng, const PolyShape& shape) {
  for (;;) {
    Polynomial p = random_polynomial(rng, shape);
    if (!p.is_zero()) return p;
  }
}

inline Scheme shuffled(std::size_t n, Rng& rng) {
  std::vector<VarIndex> v(n);
  std::iota(v.begin(), v.end(), VarIndex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return Scheme(std::move(v));
}

inline std::vector<Residue> random_point(std::size_t n, std::uint64_t modulus, Rng& rng) {
  std::vector<Residue> pt(n);
  for (auto& x : pt) x = rng.below(modulus);
  return pt;
}

/// Determinant mod a prime by Gaussian elimination.
inline Residue det_mod(std::vector<std::vector<Residue>> a, const PrimeField& f) {
  const std::size_t n = a.size();
  Residue det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = f.sub(0, det);
    }
    det = f.mul(det, a[c][c]);
    const Residue inv = f.pow(a[c][c], f.modulus() - 2);
    for (std::size_t r = c + 1; r < n; ++r) {
      const Residue k = f.mul(a[r][c], inv);
      for (std::size_t j = c; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(k, a[c][j]));
    }
  }
  return det;
}

/// Sylvester determinant of sum a_i x^i and sum b_i x^i at numeric coefficients.
inline Residue sylvester_mod(const std::vector<Residue>& a, const std::vector<Residue>& b, const PrimeField& f) {
  const std::size_t m = a.size() - 1;
  const std::size_t n = b.size() - 1;
  std::vector<std::vector<Residue>> s(m + n, std::vector<Residue>(m + n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = a[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = b[n - i];
  }
  return det_mod(std::move(s), f);
}

/// Discrete distribution as (value, probability) atoms, ascending.
using Atoms = std::vector<std::pair<double, double>>;

/// E[min of k draws] by enumerating every ordered k-tuple of outcomes.
inline double enumerate_expected_min(const Atoms& atoms, unsigned k) {
  const std::size_t l = atoms.size();
  std::vector<std::size_t> idx(k, 0);
  double total = 0.0;
  for (;;) {
    double p = 1.0;
    double lo = atoms[idx[0]].first;
    for (std::size_t i = 0; i < k; ++i) {
      p *= atoms[idx[i]].second;
      lo = std::min(lo, atoms[idx[i]].first);
    }
    total += p * lo;
    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == l) idx[pos++] = 0;
    if (pos == k) break;
  }
  return total;
}

}  // namespace hornopt::testing
