#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hornopt/expr_dag.hpp"

namespace hornopt {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30U;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27U;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31U;
  return x;
}

}  // namespace detail

/// Builds an ExprDag in which structurally identical nodes are stored once.
/// Sum/Prod children are sorted by node id, constants are folded, repeated
/// summands become a constant multiple, and (optionally) nested sums/products
/// of the same kind are flattened.
///
/// With sign sharing (off by default), a negative coefficient c != -1 is stored as the factor
/// pair (-1, |c|), and a sum whose leading term is negative is stored as
/// -1 times its negation, so S and -S share one node. Factors -1 are free.
class DagBuilder {
 public:
  explicit DagBuilder(bool flatten = true, bool share_signs = false) : flatten_(flatten), signs_(share_signs) { slots_.assign(1024, kEmpty); }

  NodeId constant(const BigInt& value) { return constant_slot(dag_.intern_constant(value)); }

  /// Constant node for an already interned table slot.
  NodeId constant_slot(std::uint32_t slot) {
    const std::uint64_t h = leaf_hash(NodeKind::Const, slot, 0);
    if (NodeId hit = find_leaf(h, NodeKind::Const, slot, 0); hit != kEmpty) return hit;
    const NodeId id = dag_.add_const_slot(slot);
    insert(h, id);
    return id;
  }

  std::uint32_t intern_constant(const BigInt& value) { return dag_.intern_constant(value); }

  NodeId varpow(VarIndex var, Exponent e) {
    const std::uint64_t h = leaf_hash(NodeKind::VarPow, var, e);
    if (NodeId hit = find_leaf(h, NodeKind::VarPow, var, e); hit != kEmpty) return hit;
    const NodeId id = dag_.add_varpow(var, e);
    insert(h, id);
    return id;
  }

  NodeId sum(std::span<const NodeId> children) { return make(NodeKind::Sum, children); }
  NodeId prod(std::span<const NodeId> children) { return make(NodeKind::Prod, children); }
  NodeId sum(std::initializer_list<NodeId> c) { return make(NodeKind::Sum, {c.begin(), c.size()}); }
  NodeId prod(std::initializer_list<NodeId> c) { return make(NodeKind::Prod, {c.begin(), c.size()}); }

  NodeId make(NodeKind kind, std::span<const NodeId> input) {
    std::vector<NodeId> children;
    children.swap(scratch_);
    children.clear();
    bool any_const = false;
    for (NodeId c : input) {
      const Node& n = dag_.node(c);
      if (flatten_ && n.kind == kind) {
        for (NodeId g : dag_.children(c)) {
          any_const = any_const || dag_.node(g).kind == NodeKind::Const;
          children.push_back(g);
        }
      } else {
        any_const = any_const || n.kind == NodeKind::Const;
        children.push_back(c);
      }
    }
    const NodeId id = canonical(kind, children, any_const);
    children.swap(scratch_);
    return id;
  }

  const ExprDag& dag() const noexcept { return dag_; }

  /// The sub-DAG reachable from `root`, renumbered densely.
  ExprDag finish(NodeId root) {
    dag_.set_root(root);
    return compact(dag_);
  }

 private:
  static constexpr NodeId kEmpty = 0xffffffffU;

  NodeId canonical(NodeKind kind, std::vector<NodeId>& children, bool any_const) {
    const bool is_sum = kind == NodeKind::Sum;
    NodeId folded_id = kEmpty;
    if (any_const) {
      BigInt folded = is_sum ? BigInt(0) : BigInt(1);
      std::erase_if(children, [&](NodeId c) {
        if (dag_.node(c).kind != NodeKind::Const) return false;
        if (is_sum) {
          folded += dag_.constant(c);
        } else {
          folded *= dag_.constant(c);
        }
        return true;
      });
      if (!is_sum && folded == 0) return constant(0);
      if (children.empty()) return constant(folded);
      if (folded != (is_sum ? 0 : 1)) folded_id = constant(folded);
    }

    std::sort(children.begin(), children.end());
    if (is_sum && std::adjacent_find(children.begin(), children.end()) != children.end()) {
      // x + x -> 2*x
      std::vector<NodeId> runs(children.begin(), children.end());
      children.clear();
      for (std::size_t i = 0; i < runs.size();) {
        std::size_t j = i + 1;
        while (j < runs.size() && runs[j] == runs[i]) ++j;
        children.push_back(j - i == 1 ? runs[i] : scaled(runs[i], j - i));
        i = j;
      }
      std::sort(children.begin(), children.end());
    }
    if (signs_ && !is_sum && folded_id != kEmpty && dag_.constant(folded_id) < -1) {
      const NodeId minus = constant(-1);
      children.insert(std::upper_bound(children.begin(), children.end(), minus), minus);
      folded_id = constant(-dag_.constant(folded_id));
    }
    if (folded_id != kEmpty) children.insert(std::upper_bound(children.begin(), children.end(), folded_id), folded_id);
    if (children.size() == 1) return children.front();

    if (signs_ && is_sum) {
      // The leading term is the one whose unsigned form has the smallest id.
      NodeId lead = kEmpty;
      bool lead_neg = false;
      for (NodeId c : children) {
        auto [a, neg] = split_sign(c);
        if (a < lead) {
          lead = a;
          lead_neg = neg;
        } else if (a == lead) {
          lead_neg = lead_neg && neg;
        }
      }
      if (lead_neg) {
        std::vector<NodeId> flipped;
        for (NodeId c : children) flipped.push_back(negate(c));
        const NodeId inner = make(NodeKind::Sum, flipped);
        const NodeId f[2] = {constant(-1), inner};
        return make(NodeKind::Prod, f);
      }
    }

    const std::uint64_t h = op_hash(kind, children);
    if (NodeId hit = find_op(h, kind, children); hit != kEmpty) return hit;
    const NodeId id = dag_.add_op(kind, children);
    insert(h, id);
    return id;
  }

  NodeId negate(NodeId x) {
    if (x < negated_.size() && negated_[x] != kEmpty) return negated_[x];
    const NodeId y = negate_uncached(x);
    const std::size_t need = std::max(x, y) + 1;
    if (negated_.size() < need) negated_.resize(std::max<std::size_t>(need, 2 * negated_.size()), kEmpty);
    negated_[x] = y;
    negated_[y] = x;
    return y;
  }

  NodeId negate_uncached(NodeId x) {
    const Node& n = dag_.node(x);
    if (n.kind == NodeKind::Const) return constant(-dag_.constant(x));
    if (n.kind == NodeKind::Prod) {
      std::vector<NodeId> ch(dag_.children(x).begin(), dag_.children(x).end());
      ch.push_back(constant(-1));
      return make(NodeKind::Prod, ch);
    }
    const NodeId f[2] = {constant(-1), x};
    return make(NodeKind::Prod, f);
  }

  std::pair<NodeId, bool> split_sign(NodeId x) {
    const Node& n = dag_.node(x);
    if (n.kind == NodeKind::Const) return {dag_.constant(x) < 0 ? constant(-dag_.constant(x)) : x, dag_.constant(x) < 0};
    if (n.kind == NodeKind::Prod) {
      for (NodeId c : dag_.children(x)) {
        if (dag_.node(c).kind == NodeKind::Const && dag_.constant(c) < 0) return {negate(x), true};
      }
    }
    return {x, false};
  }

  NodeId scaled(NodeId x, std::size_t times) {
    const NodeId factor[2] = {constant(BigInt(times)), x};
    return make(NodeKind::Prod, factor);
  }

  static std::uint64_t leaf_hash(NodeKind k, std::uint32_t a, std::uint32_t b) {
    return detail::mix64((static_cast<std::uint64_t>(k) << 60U) ^ (static_cast<std::uint64_t>(a) << 28U) ^ b);
  }

  static std::uint64_t op_hash(NodeKind k, std::span<const NodeId> ch) {
    std::uint64_t h = detail::mix64(static_cast<std::uint64_t>(k) + 0x51ed27);
    for (NodeId c : ch) h = detail::mix64(h ^ (c + 0x9e3779b97f4a7c15ULL));
    return h;
  }

  NodeId find_leaf(std::uint64_t h, NodeKind k, std::uint32_t a, std::uint32_t b) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const NodeId s = slots_[i];
      if (s == kEmpty) return kEmpty;
      const Node& n = dag_.node(s);
      if (n.kind == k && n.payload == a && n.exponent == b && n.child_count == 0) return s;
    }
  }

  NodeId find_op(std::uint64_t h, NodeKind k, std::span<const NodeId> ch) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const NodeId s = slots_[i];
      if (s == kEmpty) return kEmpty;
      const Node& n = dag_.node(s);
      if (n.kind == k && n.child_count == ch.size()) {
        auto have = dag_.children(s);
        if (std::equal(have.begin(), have.end(), ch.begin())) return s;
      }
    }
  }

  void insert(std::uint64_t h, NodeId id) {
    if (2 * (used_ + 1) > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = id;
    ++used_;
  }

  void grow() {
    std::vector<NodeId> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, kEmpty);
    const std::size_t mask = slots_.size() - 1;
    for (NodeId id : old) {
      if (id == kEmpty) continue;
      const Node& n = dag_.node(id);
      const std::uint64_t h = n.child_count == 0 ? leaf_hash(n.kind, n.payload, n.exponent)
                                                 : op_hash(n.kind, dag_.children(id));
      std::size_t i = h & mask;
      while (slots_[i] != kEmpty) i = (i + 1) & mask;
      slots_[i] = id;
    }
  }

  bool flatten_;
  bool signs_;
  ExprDag dag_;
  std::vector<NodeId> slots_;
  std::size_t used_ = 0;
  std::vector<NodeId> scratch_;
  std::vector<NodeId> negated_;
};

}  // namespace hornopt
