#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/modular.hpp"

namespace hornopt {

using VarIndex = std::uint32_t;
using Exponent = std::uint32_t;
using Exponents = std::vector<Exponent>;

/// Compares identifiers so that embedded digit runs order numerically
/// ("a_2" < "a_10").
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])) != 0) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])) != 0) ++je;
      std::string_view ra = a.substr(i, ie - i);
      std::string_view rb = b.substr(j, je - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
      i = ie;
      j = je;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j];
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (std::isalpha(head) == 0 && head != '_') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || u == '_';
  });
}

/// Ordered list of distinct variable names with its inverse index.
class VarTable {
 public:
  VarTable() = default;

  explicit VarTable(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i])) throw InvalidArgument("invalid variable name '" + names_[i] + "'");
      if (!index_.emplace(names_[i], static_cast<VarIndex>(i)).second) {
        throw InvalidArgument("duplicate variable name '" + names_[i] + "'");
      }
    }
  }

  /// Table of the given names in natural order, duplicates removed.
  static VarTable sorted(std::vector<std::string> names) {
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return VarTable(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(VarIndex i) const { return names_.at(i); }

  bool contains(std::string_view name) const { return index_.find(std::string(name)) != index_.end(); }

  VarIndex index(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw InvalidArgument("unknown variable '" + std::string(name) + "'");
    return it->second;
  }

  friend bool operator==(const VarTable& a, const VarTable& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarIndex> index_;
};

struct Term {
  BigInt coeff;
  Exponents exps;

  std::uint64_t degree() const noexcept { return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0}); }

  friend bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && a.exps == b.exps; }
};

/// Canonical term order: ascending total degree, ties by descending
/// lexicographic exponent vector (x^2 before x*y before y^2).
inline bool canonical_less(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (Exponent e : a) da += e;
  for (Exponent e : b) db += e;
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
    for (Exponent x : e) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
      h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33U));
  }
};

/// Multiplication/addition tally of an evaluation procedure.
struct OpCount {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;

  std::uint64_t total() const noexcept { return mul + add; }

  friend bool operator==(const OpCount&, const OpCount&) = default;
};

/// Sparse multivariate polynomial with big-integer coefficients, always kept
/// fully collected and in canonical term order. Immutable once built.
class Polynomial {
 public:
  Polynomial() = default;

  /// Collects like terms, drops zero coefficients and sorts canonically.
  Polynomial(VarTable vars, std::vector<Term> terms) : vars_(std::move(vars)) {
    const std::size_t n = vars_.size();
    for (const Term& t : terms) {
      if (t.exps.size() != n) throw InvalidArgument("term exponent vector does not match variable count");
    }
    std::unordered_map<Exponents, std::size_t, ExponentsHash> slot;
    slot.reserve(terms.size());
    std::vector<Term> collected;
    collected.reserve(terms.size());
    for (Term& t : terms) {
      auto [it, fresh] = slot.emplace(t.exps, collected.size());
      if (fresh) {
        collected.push_back(std::move(t));
      } else {
        collected[it->second].coeff += t.coeff;
      }
    }
    std::erase_if(collected, [](const Term& t) { return t.coeff == 0; });
    std::sort(collected.begin(), collected.end(),
              [](const Term& a, const Term& b) { return canonical_less(a.exps, b.exps); });
    terms_ = std::move(collected);
  }

  static Polynomial zero(VarTable vars) { return Polynomial(std::move(vars), {}); }

  static Polynomial constant(VarTable vars, BigInt c) {
    Exponents e(vars.size(), 0);
    return Polynomial(std::move(vars), {Term{std::move(c), std::move(e)}});
  }

  static Polynomial variable(VarTable vars, VarIndex v, Exponent power = 1) {
    if (v >= vars.size()) throw InvalidArgument("variable index out of range");
    Exponents e(vars.size(), 0);
    e[v] = power;
    return Polynomial(std::move(vars), {Term{1, std::move(e)}});
  }

  const VarTable& vars() const noexcept { return vars_; }
  std::size_t var_count() const noexcept { return vars_.size(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    std::vector<Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return Polynomial(a.vars_, std::move(all));
  }

  Polynomial operator-() const {
    std::vector<Term> neg = terms_;
    for (Term& t : neg) t.coeff = -t.coeff;
    return Polynomial(vars_, std::move(neg));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_vars(a, b);
    const std::size_t n = a.var_count();
    std::unordered_map<Exponents, BigInt, ExponentsHash> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    Exponents e(n);
    for (const Term& ta : a.terms_) {
      for (const Term& tb : b.terms_) {
        for (std::size_t v = 0; v < n; ++v) e[v] = ta.exps[v] + tb.exps[v];
        acc[e] += ta.coeff * tb.coeff;
      }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [exps, c] : acc) out.push_back(Term{std::move(c), exps});
    return Polynomial(a.vars_, std::move(out));
  }

 private:
  static void require_same_vars(const Polynomial& a, const Polynomial& b) {
    if (!(a.vars_ == b.vars_)) throw InvalidArgument("polynomials are over different variable tables");
  }

  VarTable vars_;
  std::vector<Term> terms_;
};

/// p^k, fully expanded.
inline Polynomial expand_power(const Polynomial& p, unsigned k) {
  if (k == 0) throw InvalidArgument("power must be positive");
  Polynomial acc = p;
  for (unsigned i = 1; i < k; ++i) acc = acc * p;
  return acc;
}

/// Operation count of the expanded sum-of-monomials form. A power x^d costs
/// d-1 multiplications, a coefficient other than +-1 one more; signs are free.
inline OpCount count_naive_ops(const Polynomial& p) {
  OpCount ops;
  for (const Term& t : p.terms()) {
    const std::uint64_t deg = t.degree();
    const std::uint64_t scaled = (abs(t.coeff) != 1) ? 1 : 0;
    ops.mul += (deg == 0) ? scaled : deg - 1 + scaled;
  }
  ops.add = p.term_count() > 0 ? p.term_count() - 1 : 0;
  return ops;
}

/// Multiplications for x^d by repeated squaring.
inline std::uint64_t binary_power_cost(std::uint64_t d) {
  if (d <= 1) return 0;
  return static_cast<std::uint64_t>(std::bit_width(d) - 1 + std::popcount(d) - 1);
}

/// As count_naive_ops, but each power x^d costs binary_power_cost(d).
inline OpCount count_naive_ops_binary_powers(const Polynomial& p) {
  OpCount ops;
  for (const Term& t : p.terms()) {
    std::uint64_t factors = (abs(t.coeff) != 1) ? 1 : 0;
    for (Exponent e : t.exps) {
      if (e == 0) continue;
      ++factors;
      ops.mul += binary_power_cost(e);
    }
    ops.mul += factors > 0 ? factors - 1 : 0;
  }
  ops.add = p.term_count() > 0 ? p.term_count() - 1 : 0;
  return ops;
}

/// Value of p at `point` modulo a prime.
inline Residue eval_mod(const Polynomial& p, std::span<const Residue> point, std::uint64_t modulus) {
  if (point.size() != p.var_count()) throw InvalidArgument("evaluation point has wrong dimension");
  const PrimeField f(modulus);
  Residue sum = 0;
  for (const Term& t : p.terms()) {
    Residue v = f.reduce(t.coeff);
    for (std::size_t i = 0; i < t.exps.size() && v != 0; ++i) {
      if (t.exps[i] != 0) v = f.mul(v, f.pow(point[i] % modulus, t.exps[i]));
    }
    sum = f.add(sum, v);
  }
  return sum;
}

}  // namespace hornopt
