#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/text.hpp"

namespace hornopt {

inline constexpr unsigned kDefaultResolventCap = 17;

namespace detail {

// Symbolic Sylvester matrix entry: 0 or +variable.
struct SylvesterEntry {
  bool zero = true;
  VarIndex var = 0;
};

inline Polynomial times_signed_var(const Polynomial& p, VarIndex v, bool negate) {
  std::vector<Term> out = p.terms();
  for (Term& t : out) {
    t.exps[v] += 1;
    if (negate) t.coeff = -t.coeff;
  }
  return Polynomial(p.vars(), std::move(out));
}

}  // namespace detail

/// Resultant in x of sum_{i<=m} a_i x^i and sum_{i<=n} b_i x^i, expanded over
/// the m+n+2 coefficient variables a_0..a_m, b_0..b_n.
///
/// The (m+n)x(m+n) Sylvester determinant is expanded along its rows, memoizing
/// minors by the set of still-unused columns.
inline Polynomial gen_resolvent(unsigned m, unsigned n, unsigned cap = kDefaultResolventCap) {
  if (m < 1 || n < 1) throw InvalidArgument("resolvent degrees must be positive");
  if (m + n > cap) {
    throw InvalidArgument("resolvent size m+n=" + std::to_string(m + n) + " exceeds cap " + std::to_string(cap));
  }
  if (m + n > 62) throw InvalidArgument("resolvent too large");

  std::vector<std::string> names;
  for (unsigned i = 0; i <= m; ++i) names.push_back("a_" + std::to_string(i));
  for (unsigned i = 0; i <= n; ++i) names.push_back("b_" + std::to_string(i));
  VarTable vars(names);
  const auto a_var = [](unsigned i) { return static_cast<VarIndex>(i); };
  const auto b_var = [m](unsigned i) { return static_cast<VarIndex>(m + 1 + i); };

  // Rows 0..n-1 carry a_m..a_0 shifted right by the row index, rows n..n+m-1
  // carry b_n..b_0.
  const unsigned dim = m + n;
  std::vector<std::vector<detail::SylvesterEntry>> mat(dim, std::vector<detail::SylvesterEntry>(dim));
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned k = 0; k <= m; ++k) mat[r][r + k] = {false, a_var(m - k)};
  }
  for (unsigned r = 0; r < m; ++r) {
    for (unsigned k = 0; k <= n; ++k) mat[n + r][r + k] = {false, b_var(n - k)};
  }

  std::unordered_map<std::uint64_t, Polynomial> memo;
  const Polynomial one = Polynomial::constant(vars, 1);

  // minor(row, cols): determinant of rows row..dim-1 restricted to `cols`.
  auto minor = [&](auto&& self, unsigned row, std::uint64_t cols) -> Polynomial {
    if (row == dim) return one;
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    std::vector<Term> acc;
    unsigned before = 0;
    for (unsigned c = 0; c < dim; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << c;
      if ((cols & bit) == 0) continue;
      const detail::SylvesterEntry& e = mat[row][c];
      if (!e.zero) {
        Polynomial sub = self(self, row + 1, cols & ~bit);
        if (!sub.is_zero()) {
          Polynomial part = detail::times_signed_var(sub, e.var, (before % 2) == 1);
          acc.insert(acc.end(), part.terms().begin(), part.terms().end());
        }
      }
      ++before;
    }
    Polynomial result(vars, std::move(acc));
    memo.emplace(cols, result);
    return result;
  };

  const std::uint64_t all = (dim == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << dim) - 1);
  return minor(minor, 0, all);
}

/// Base of the flatness test expression; its sixth power is the benchmark.
inline Polynomial power_test_base() {
  return parse_polynomial("4*a + 9*b + 12*c^2 + 2*d + 4*e^3 - 2*f + 8*g^2 - 10*h + i - j + 2*k^2 - 3*j^4 + l - 15*m^2");
}

}  // namespace hornopt
