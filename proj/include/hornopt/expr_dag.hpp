#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hornopt/error.hpp"
#include "hornopt/modular.hpp"
#include "hornopt/polynomial.hpp"

namespace hornopt {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Const, VarPow, Sum, Prod };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Const: return "const";
    case NodeKind::VarPow: return "pow";
    case NodeKind::Sum: return "sum";
    case NodeKind::Prod: return "prod";
  }
  return "?";
}

/// One pool entry. For Const, `payload` indexes the constant table; for
/// VarPow it is the variable index and `exponent` the power. Sum and Prod
/// reference a contiguous slice of the child pool.
struct Node {
  NodeKind kind = NodeKind::Const;
  std::uint32_t payload = 0;
  std::uint32_t exponent = 0;
  std::uint32_t first_child = 0;
  std::uint32_t child_count = 0;
};

/// Append-only pool of expression nodes; children always precede their
/// parents, so pool order is a topological order.
class ExprDag {
 public:
  NodeId add_const(const BigInt& value) { return add_const_slot(intern_constant(value)); }

  /// Index of `value` in the constant table, adding it if new.
  std::uint32_t intern_constant(const BigInt& value) {
    auto [it, fresh] = const_index_.emplace(value, static_cast<std::uint32_t>(constants_.size()));
    if (fresh) constants_.push_back(value);
    return it->second;
  }

  NodeId add_const_slot(std::uint32_t slot) {
    if (slot >= constants_.size()) throw InvalidArgument("constant slot out of range");
    return push(Node{NodeKind::Const, slot, 0, 0, 0});
  }

  NodeId add_varpow(VarIndex var, Exponent exponent) {
    if (exponent == 0) throw InvalidArgument("variable power must be at least 1");
    return push(Node{NodeKind::VarPow, var, exponent, 0, 0});
  }

  /// Adds a Sum or Prod over existing nodes, as given (no canonicalization).
  NodeId add_op(NodeKind kind, std::span<const NodeId> children) {
    if (kind != NodeKind::Sum && kind != NodeKind::Prod) throw InvalidArgument("add_op needs Sum or Prod");
    if (children.size() < 2) throw InvalidArgument("Sum/Prod needs at least two children");
    for (NodeId c : children) {
      if (c >= nodes_.size()) throw InvalidArgument("child must precede its parent");
    }
    const auto first = static_cast<std::uint32_t>(child_pool_.size());
    child_pool_.insert(child_pool_.end(), children.begin(), children.end());
    return push(Node{kind, 0, 0, first, static_cast<std::uint32_t>(children.size())});
  }

  NodeId add_sum(std::span<const NodeId> children) { return add_op(NodeKind::Sum, children); }
  NodeId add_prod(std::span<const NodeId> children) { return add_op(NodeKind::Prod, children); }
  NodeId add_sum(std::initializer_list<NodeId> c) { return add_op(NodeKind::Sum, {c.begin(), c.size()}); }
  NodeId add_prod(std::initializer_list<NodeId> c) { return add_op(NodeKind::Prod, {c.begin(), c.size()}); }

  void set_root(NodeId r) {
    if (r >= nodes_.size()) throw InvalidArgument("root out of range");
    root_ = r;
  }

  NodeId root() const {
    if (nodes_.empty()) throw InvalidArgument("empty DAG has no root");
    return root_;
  }

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  std::span<const NodeId> children(NodeId id) const {
    const Node& n = nodes_.at(id);
    return {child_pool_.data() + n.first_child, n.child_count};
  }

  const BigInt& constant(NodeId id) const { return constants_.at(nodes_.at(id).payload); }
  const std::vector<BigInt>& constants() const noexcept { return constants_; }

  bool is_unit_const(NodeId id) const {
    const Node& n = nodes_[id];
    return n.kind == NodeKind::Const && abs(constants_[n.payload]) == 1;
  }

  /// Marks the nodes reachable from the root.
  std::vector<bool> reachable() const {
    std::vector<bool> live(nodes_.size(), false);
    if (nodes_.empty()) return live;
    live[root_] = true;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      if (!live[i]) continue;
      for (NodeId c : children(static_cast<NodeId>(i))) live[c] = true;
    }
    return live;
  }

 private:
  NodeId push(const Node& n) {
    nodes_.push_back(n);
    root_ = static_cast<NodeId>(nodes_.size() - 1);
    return root_;
  }

  std::vector<Node> nodes_;
  std::vector<NodeId> child_pool_;
  std::vector<BigInt> constants_;
  std::map<BigInt, std::uint32_t> const_index_;
  NodeId root_ = 0;
};

/// The sub-DAG reachable from the root, renumbered densely in the original
/// relative order.
inline ExprDag compact(const ExprDag& d) {
  ExprDag out;
  if (d.empty()) return out;
  const std::vector<bool> live = d.reachable();
  std::vector<NodeId> remap(d.size(), 0);
  std::vector<NodeId> buf;
  for (NodeId id = 0; id < d.size(); ++id) {
    if (!live[id]) continue;
    const Node& n = d.node(id);
    switch (n.kind) {
      case NodeKind::Const: remap[id] = out.add_const(d.constant(id)); break;
      case NodeKind::VarPow: remap[id] = out.add_varpow(n.payload, n.exponent); break;
      default: {
        buf.clear();
        for (NodeId c : d.children(id)) buf.push_back(remap[c]);
        remap[id] = out.add_op(n.kind, buf);
      }
    }
  }
  out.set_root(remap[d.root()]);
  return out;
}

/// Operation count of the DAG, costing every node reachable from the root
/// once. x^e costs e-1 multiplications, a product of f factors f-1 (factors
/// +-1 are free), a sum of f terms f-1 additions.
inline OpCount count_dag_ops(const ExprDag& d) {
  OpCount ops;
  if (d.empty()) return ops;
  const std::vector<bool> live = d.reachable();
  for (NodeId id = 0; id < d.size(); ++id) {
    if (!live[id]) continue;
    const Node& n = d.node(id);
    switch (n.kind) {
      case NodeKind::Const: break;
      case NodeKind::VarPow: ops.mul += n.exponent - 1; break;
      case NodeKind::Sum: ops.add += n.child_count - 1; break;
      case NodeKind::Prod: {
        std::uint64_t f = 0;
        for (NodeId c : d.children(id)) f += d.is_unit_const(c) ? 0 : 1;
        ops.mul += f > 0 ? f - 1 : 0;
        break;
      }
    }
  }
  return ops;
}

inline Residue dag_eval_mod(const ExprDag& d, std::span<const Residue> point, std::uint64_t modulus) {
  if (d.empty()) throw InvalidArgument("cannot evaluate an empty DAG");
  const PrimeField f(modulus);
  std::vector<Residue> val(d.size(), 0);
  for (NodeId id = 0; id < d.size(); ++id) {
    const Node& n = d.node(id);
    switch (n.kind) {
      case NodeKind::Const: val[id] = f.reduce(d.constant(id)); break;
      case NodeKind::VarPow:
        if (n.payload >= point.size()) throw InvalidArgument("evaluation point does not cover all variables");
        val[id] = f.pow(point[n.payload] % modulus, n.exponent);
        break;
      case NodeKind::Sum: {
        Residue acc = 0;
        for (NodeId c : d.children(id)) acc = f.add(acc, val[c]);
        val[id] = acc;
        break;
      }
      case NodeKind::Prod: {
        Residue acc = 1 % modulus;
        for (NodeId c : d.children(id)) acc = f.mul(acc, val[c]);
        val[id] = acc;
        break;
      }
    }
  }
  return val[d.root()];
}

/// Debug dump: depth-first from the root, one node per line as
/// `#id op [child ids]`, indented by depth. Nodes already printed appear as
/// `#id ^`.
inline std::string dump_dag(const ExprDag& d, const VarTable* vars = nullptr) {
  std::ostringstream out;
  if (d.empty()) return out.str();
  std::vector<bool> printed(d.size(), false);
  auto visit = [&](auto&& self, NodeId id, std::size_t depth) -> void {
    out << std::string(2 * depth, ' ') << '#' << id;
    if (printed[id]) {
      out << " ^\n";
      return;
    }
    printed[id] = true;
    const Node& n = d.node(id);
    out << ' ' << to_string(n.kind);
    if (n.kind == NodeKind::Const) {
      out << ' ' << d.constant(id);
    } else if (n.kind == NodeKind::VarPow) {
      out << ' ';
      if (vars != nullptr && n.payload < vars->size()) {
        out << vars->name(n.payload);
      } else {
        out << 'v' << n.payload;
      }
      out << '^' << n.exponent;
    } else {
      out << " [";
      bool first = true;
      for (NodeId c : d.children(id)) {
        out << (first ? "" : " ") << '#' << c;
        first = false;
      }
      out << ']';
    }
    out << '\n';
    for (NodeId c : d.children(id)) self(self, c, depth + 1);
  };
  visit(visit, d.root(), 0);
  return out.str();
}

}  // namespace hornopt
