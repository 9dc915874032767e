#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hornopt/dag_builder.hpp"
#include "hornopt/error.hpp"
#include "hornopt/expr_dag.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt {

/// A polynomial prepared for repeated Horner-scheme application: a dense
/// exponent matrix and interned coefficients. Immutable and shareable
/// between threads; every application builds into a private DagBuilder.
class HornerForm {
 public:
  explicit HornerForm(const Polynomial& p) : vars_(p.var_count()), terms_(p.term_count()) {
    if (p.is_zero()) throw InvalidArgument("cannot hornerize the zero polynomial");
    exps_.resize(terms_ * vars_);
    coeff_slot_.resize(terms_);
    std::map<BigInt, std::uint32_t> slot;
    for (std::size_t t = 0; t < terms_; ++t) {
      const Term& term = p.terms()[t];
      std::copy(term.exps.begin(), term.exps.end(), exps_.begin() + static_cast<std::ptrdiff_t>(t * vars_));
      auto [it, fresh] = slot.emplace(term.coeff, static_cast<std::uint32_t>(coeffs_.size()));
      if (fresh) coeffs_.push_back(term.coeff);
      coeff_slot_[t] = it->second;
    }
  }

  std::size_t var_count() const noexcept { return vars_; }
  std::size_t term_count() const noexcept { return terms_; }

  /// Emits the nested form for `scheme` into `b` and returns its root.
  NodeId build(DagBuilder& b, const Scheme& scheme) const {
    scheme.require_permutation_of(vars_);
    std::vector<std::uint32_t> const_node(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) const_node[i] = b.constant(coeffs_[i]);
    Workspace ws{b, scheme, const_node, {}, {}, {}};
    ws.order.resize(terms_);
    for (std::size_t t = 0; t < terms_; ++t) ws.order[t] = static_cast<std::uint32_t>(t);
    ws.keyed.reserve(terms_);
    return build_range(ws, 0, terms_, 0);
  }

  ExprDag apply(const Scheme& scheme, bool share_signs = false) const {
    DagBuilder b(true, share_signs);
    const NodeId root = build(b, scheme);
    return b.finish(root);
  }

 private:
  struct Workspace {
    DagBuilder& b;
    const Scheme& scheme;
    const std::vector<std::uint32_t>& const_node;
    std::vector<std::uint32_t> order;
    std::vector<std::pair<Exponent, std::uint32_t>> keyed;
    std::vector<NodeId> factors;
  };

  Exponent exp(std::uint32_t term, VarIndex v) const { return exps_[term * vars_ + v]; }

  NodeId leaf(Workspace& ws, std::uint32_t term, std::size_t depth) const {
    std::vector<NodeId>& factors = ws.factors;
    factors.clear();
    if (coeffs_[coeff_slot_[term]] != 1) factors.push_back(ws.const_node[coeff_slot_[term]]);
    for (std::size_t d = depth; d < vars_; ++d) {
      const VarIndex v = ws.scheme[d];
      if (Exponent e = exp(term, v); e > 0) factors.push_back(ws.b.varpow(v, e));
    }
    if (factors.empty()) return ws.b.constant(1);
    return ws.b.prod(factors);
  }

  // Terms ws.order[lo..hi) with all variables before `depth` already lifted.
  NodeId build_range(Workspace& ws, std::size_t lo, std::size_t hi, std::size_t depth) const {
    if (hi - lo == 1) return leaf(ws, ws.order[lo], depth);
    for (; depth < vars_; ++depth) {
      const VarIndex v = ws.scheme[depth];
      bool present = false;
      for (std::size_t i = lo; i < hi && !present; ++i) present = exp(ws.order[i], v) > 0;
      if (present) break;
    }
    if (depth == vars_) throw Error("internal: uncollected terms in Horner construction");

    const VarIndex v = ws.scheme[depth];
    ws.keyed.clear();
    for (std::size_t i = lo; i < hi; ++i) ws.keyed.emplace_back(exp(ws.order[i], v), ws.order[i]);
    std::sort(ws.keyed.begin(), ws.keyed.end());
    for (std::size_t i = lo; i < hi; ++i) ws.order[i] = ws.keyed[i - lo].second;

    // Group boundaries by exponent of v, ascending.
    std::vector<std::pair<std::size_t, Exponent>> groups;  // (start, exponent)
    for (std::size_t i = lo; i < hi; ++i) {
      const Exponent e = exp(ws.order[i], v);
      if (groups.empty() || groups.back().second != e) groups.emplace_back(i, e);
    }
    auto group_end = [&](std::size_t g) { return g + 1 < groups.size() ? groups[g + 1].first : hi; };

    std::size_t first_pos = 0;
    NodeId p0 = 0;
    const bool has_p0 = groups.front().second == 0;
    if (has_p0) {
      p0 = build_range(ws, groups[0].first, group_end(0), depth + 1);
      first_pos = 1;
    }

    // Innermost bracket first: Q_k, then Q_i + v^(e_{i+1}-e_i) * (...).
    const std::size_t last = groups.size() - 1;
    NodeId acc = build_range(ws, groups[last].first, group_end(last), depth + 1);
    for (std::size_t g = last; g-- > first_pos;) {
      const NodeId q = build_range(ws, groups[g].first, group_end(g), depth + 1);
      const NodeId step = ws.b.prod({ws.b.varpow(v, groups[g + 1].second - groups[g].second), acc});
      acc = ws.b.sum({q, step});
    }
    NodeId lifted = ws.b.prod({ws.b.varpow(v, groups[first_pos].second), acc});
    if (has_p0) lifted = ws.b.sum({p0, lifted});
    return lifted;
  }

  std::size_t vars_;
  std::size_t terms_;
  std::vector<Exponent> exps_;
  std::vector<std::uint32_t> coeff_slot_;
  std::vector<BigInt> coeffs_;
};

/// Nested Horner form of `p` under `scheme`, hash-consed and flattened.
inline ExprDag apply_scheme(const Polynomial& p, const Scheme& scheme, bool share_signs = false) {
  scheme.require_permutation_of(p.var_count());
  return HornerForm(p).apply(scheme, share_signs);
}

}  // namespace hornopt
