#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/polynomial.hpp"

namespace hornopt {

/// A Horner scheme: the order in which variables are pulled out of brackets.
/// Always a permutation of 0..n-1 for the polynomial it is applied to.
class Scheme {
 public:
  Scheme() = default;
  explicit Scheme(std::vector<VarIndex> order) : order_(std::move(order)) {}

  static Scheme identity(std::size_t n) {
    std::vector<VarIndex> o(n);
    std::iota(o.begin(), o.end(), VarIndex{0});
    return Scheme(std::move(o));
  }

  /// Scheme listing the named variables of `vars` in the given order.
  static Scheme from_names(const VarTable& vars, const std::vector<std::string>& names) {
    std::vector<VarIndex> o;
    o.reserve(names.size());
    for (const auto& n : names) o.push_back(vars.index(n));
    Scheme s(std::move(o));
    s.require_permutation_of(vars.size());
    return s;
  }

  std::size_t size() const noexcept { return order_.size(); }
  VarIndex operator[](std::size_t i) const { return order_[i]; }
  const std::vector<VarIndex>& order() const noexcept { return order_; }
  std::vector<VarIndex>& order() noexcept { return order_; }

  auto begin() const noexcept { return order_.begin(); }
  auto end() const noexcept { return order_.end(); }

  bool is_permutation_of(std::size_t n) const {
    if (order_.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (VarIndex v : order_) {
      if (v >= n || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }

  void require_permutation_of(std::size_t n) const {
    if (!is_permutation_of(n)) {
      throw InvalidArgument("scheme is not a permutation of the " + std::to_string(n) + " polynomial variables");
    }
  }

  std::vector<std::string> names(const VarTable& vars) const {
    std::vector<std::string> out;
    out.reserve(order_.size());
    for (VarIndex v : order_) out.push_back(vars.name(v));
    return out;
  }

  friend bool operator==(const Scheme&, const Scheme&) = default;
  friend auto operator<=>(const Scheme&, const Scheme&) = default;

 private:
  std::vector<VarIndex> order_;
};

/// Variables sorted by the number of terms they occur in, most frequent first;
/// ties keep ascending variable index.
inline Scheme occurrence_order(const Polynomial& p) {
  const std::size_t n = p.var_count();
  if (n == 0) throw InvalidArgument("occurrence order needs at least one variable");
  std::vector<std::size_t> count(n, 0);
  for (const Term& t : p.terms()) {
    for (std::size_t v = 0; v < n; ++v) count[v] += t.exps[v] > 0 ? 1 : 0;
  }
  std::vector<VarIndex> order(n);
  std::iota(order.begin(), order.end(), VarIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](VarIndex a, VarIndex b) { return count[a] > count[b]; });
  return Scheme(std::move(order));
}

}  // namespace hornopt
