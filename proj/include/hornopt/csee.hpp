#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "hornopt/dag_builder.hpp"
#include "hornopt/expr_dag.hpp"
#include "hornopt/hornerize.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt {

/// Rebuilds `d` so that structurally identical subexpressions are stored
/// once; with `share_signs`, also those equal up to an overall sign. Nested
/// sums/products are kept as they are.
inline ExprDag hash_cons(const ExprDag& d, bool share_signs = false) {
  if (d.empty()) return d;
  DagBuilder b(false, share_signs);
  std::vector<NodeId> remap(d.size(), 0);
  const std::vector<bool> live = d.reachable();
  std::vector<NodeId> buf;
  for (NodeId id = 0; id < d.size(); ++id) {
    if (!live[id]) continue;
    const Node& n = d.node(id);
    switch (n.kind) {
      case NodeKind::Const: remap[id] = b.constant(d.constant(id)); break;
      case NodeKind::VarPow: remap[id] = b.varpow(n.payload, n.exponent); break;
      default: {
        buf.clear();
        for (NodeId c : d.children(id)) buf.push_back(remap[c]);
        remap[id] = b.make(n.kind, buf);
      }
    }
  }
  return b.finish(remap[d.root()]);
}

namespace detail {

// uint64 key -> uint32 counter, open addressing, no deletion.
class CountTable {
 public:
  explicit CountTable(std::size_t expected = 1024) {
    std::size_t cap = 1024;
    while (cap < 2 * expected) cap *= 2;
    keys_.assign(cap, kFree);
    vals_.assign(cap, 0);
  }

  std::uint32_t& operator[](std::uint64_t key) {
    std::size_t i = slot(key);
    if (keys_[i] == kFree) {
      if (2 * (used_ + 1) > keys_.size()) {
        grow();
        i = slot(key);
      }
      keys_[i] = key;
      ++used_;
    }
    return vals_[i];
  }

  std::uint32_t get(std::uint64_t key) const {
    const std::size_t i = slot(key);
    return keys_[i] == kFree ? 0 : vals_[i];
  }

 private:
  static constexpr std::uint64_t kFree = ~std::uint64_t{0};

  std::size_t slot(std::uint64_t key) const {
    const std::size_t mask = keys_.size() - 1;
    std::size_t i = mix64(key) & mask;
    while (keys_[i] != kFree && keys_[i] != key) i = (i + 1) & mask;
    return i;
  }

  void grow() {
    std::vector<std::uint64_t> old_keys;
    std::vector<std::uint32_t> old_vals;
    old_keys.swap(keys_);
    old_vals.swap(vals_);
    keys_.assign(old_keys.size() * 2, kFree);
    vals_.assign(old_keys.size() * 2, 0);
    for (std::size_t j = 0; j < old_keys.size(); ++j) {
      if (old_keys[j] == kFree) continue;
      const std::size_t i = slot(old_keys[j]);
      keys_[i] = old_keys[j];
      vals_[i] = old_vals[j];
    }
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> vals_;
  std::size_t used_ = 0;
};

// Greedy extraction of the most shared child pair. Works on a mutable copy
// of the DAG; child lists stay sorted and never grow, so they are edited in
// place inside one pool.
class PairEliminator {
 public:
  explicit PairEliminator(const ExprDag& d) : src_(d), pairs_(4 * d.size()) {
    const std::vector<bool> live = d.reachable();
    std::vector<NodeId> remap(d.size(), 0);
    std::size_t ops = 0;
    for (NodeId id = 0; id < d.size(); ++id) ops += live[id] ? 1 : 0;
    reserve(2 * ops);
    intern_.assign(1024, kNone);
    while (intern_.size() < 4 * ops) intern_.resize(intern_.size() * 2, kNone);
    for (NodeId id = 0; id < d.size(); ++id) {
      if (!live[id]) continue;
      const Node& n = d.node(id);
      const NodeId mine = new_node(n.kind, n.payload, n.exponent, n.child_count);
      remap[id] = mine;
      if (n.child_count > 0) {
        NodeId* ch = pool_.data() + first_[mine];
        std::size_t k = 0;
        for (NodeId c : d.children(id)) ch[k++] = remap[c];
        std::sort(ch, ch + k);
        for (std::size_t j = 0; j < k; ++j) add_user(ch[j], mine);
        intern(mine);
      }
    }
    root_ = remap[d.root()];
    for (NodeId id = 0; id < kind_.size(); ++id) {
      if (is_op(id)) add_pairs(id);
    }
  }

  ExprDag run() {
    while (!heap_.empty()) {
      const HeapEntry top = heap_.top();
      heap_.pop();
      if (top.count < 2 || pairs_.get(top.key) != top.count) continue;
      extract(top.key);
    }
    return emit();
  }

 private:
  struct HeapEntry {
    std::uint32_t count;
    std::uint64_t key;
    bool operator<(const HeapEntry& o) const {
      if (count != o.count) return count < o.count;
      return key > o.key;
    }
  };

  static constexpr NodeId kNone = 0xffffffffU;
  static constexpr NodeId kTomb = 0xfffffffeU;

  static std::uint64_t pair_key(NodeKind k, NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(k == NodeKind::Prod ? 1 : 0) << 63U) | (static_cast<std::uint64_t>(a) << 32U) | b;
  }
  static NodeKind key_kind(std::uint64_t key) { return (key >> 63U) != 0 ? NodeKind::Prod : NodeKind::Sum; }
  static NodeId key_a(std::uint64_t key) { return static_cast<NodeId>((key >> 32U) & 0x7fffffffU); }
  static NodeId key_b(std::uint64_t key) { return static_cast<NodeId>(key & 0xffffffffU); }

  std::span<NodeId> kids(NodeId id) { return {pool_.data() + first_[id], size_[id]}; }
  std::span<const NodeId> kids(NodeId id) const { return {pool_.data() + first_[id], size_[id]}; }

  bool is_op(NodeId id) const {
    return alive_[id] != 0 && (kind_[id] == NodeKind::Sum || kind_[id] == NodeKind::Prod);
  }

  bool is_unit(NodeId id) const { return unit_[id] != 0; }

  void reserve(std::size_t n) {
    kind_.reserve(n);
    payload_.reserve(n);
    exponent_.reserve(n);
    first_.reserve(n);
    size_.reserve(n);
    alive_.reserve(n);
    unit_.reserve(n);
    user_head_.reserve(n);
    user_count_.reserve(n);
  }

  NodeId new_node(NodeKind k, std::uint32_t payload, std::uint32_t exponent, std::uint32_t arity) {
    kind_.push_back(k);
    payload_.push_back(payload);
    exponent_.push_back(exponent);
    first_.push_back(static_cast<std::uint32_t>(pool_.size()));
    size_.push_back(arity);
    pool_.resize(pool_.size() + arity);
    alive_.push_back(1);
    unit_.push_back(k == NodeKind::Const && abs(src_.constants()[payload]) == 1 ? 1 : 0);
    user_head_.push_back(kNone);
    user_count_.push_back(0);
    return static_cast<NodeId>(kind_.size() - 1);
  }

  void add_user(NodeId child, NodeId parent) {
    users_.push_back({parent, user_head_[child]});
    user_head_[child] = static_cast<NodeId>(users_.size() - 1);
    ++user_count_[child];
  }

  static std::uint64_t hash_of(NodeKind k, std::span<const NodeId> ch) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(k) + 0x51ed27);
    for (NodeId c : ch) h = mix64(h ^ (c + 0x9e3779b97f4a7c15ULL));
    return h;
  }

  // Existing live node with the same kind and children, else kNone.
  NodeId lookup(NodeKind k, std::span<const NodeId> ch, NodeId self) const {
    const std::size_t mask = intern_.size() - 1;
    for (std::size_t i = hash_of(k, ch) & mask;; i = (i + 1) & mask) {
      const NodeId cand = intern_[i];
      if (cand == kNone) return kNone;
      if (cand == kTomb || cand == self || kind_[cand] != k) continue;
      auto have = kids(cand);
      if (have.size() == ch.size() && std::equal(have.begin(), have.end(), ch.begin())) return cand;
    }
  }

  void intern(NodeId id) {
    if (2 * (intern_used_ + 1) > intern_.size()) rehash();
    const std::size_t mask = intern_.size() - 1;
    std::size_t i = hash_of(kind_[id], kids(id)) & mask;
    while (intern_[i] != kNone && intern_[i] != kTomb) i = (i + 1) & mask;
    if (intern_[i] == kNone) ++intern_used_;
    intern_[i] = id;
  }

  void unintern(NodeId id) {
    const std::size_t mask = intern_.size() - 1;
    for (std::size_t i = hash_of(kind_[id], kids(id)) & mask; intern_[i] != kNone; i = (i + 1) & mask) {
      if (intern_[i] == id) {
        intern_[i] = kTomb;
        return;
      }
    }
  }

  void rehash() {
    std::vector<NodeId> old;
    old.swap(intern_);
    std::size_t live = 0;
    for (NodeId id : old) live += (id != kNone && id != kTomb) ? 1 : 0;
    std::size_t cap = old.size();
    while (4 * (live + 1) > cap) cap *= 2;
    intern_.assign(cap, kNone);
    intern_used_ = 0;
    for (NodeId id : old) {
      if (id != kNone && id != kTomb) intern(id);
    }
  }

  void distinct_pairs(NodeId id) {
    scratch_.clear();
    const NodeKind k = kind_[id];
    auto ch = kids(id);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (k == NodeKind::Prod && is_unit(ch[i])) continue;
      for (std::size_t j = i + 1; j < ch.size(); ++j) {
        if (k == NodeKind::Prod && is_unit(ch[j])) continue;
        scratch_.push_back(pair_key(k, ch[i], ch[j]));
      }
    }
    std::sort(scratch_.begin(), scratch_.end());
    scratch_.erase(std::unique(scratch_.begin(), scratch_.end()), scratch_.end());
  }

  void add_pairs(NodeId id) {
    distinct_pairs(id);
    for (std::uint64_t key : scratch_) {
      std::uint32_t& count = pairs_[key];
      ++count;
      if (count >= 2) heap_.push({count, key});
    }
  }

  void remove_pairs(NodeId id) {
    distinct_pairs(id);
    for (std::uint64_t key : scratch_) {
      std::uint32_t& count = pairs_[key];
      --count;
      if (count >= 2) heap_.push({count, key});
    }
  }

  bool contains_pair(NodeId id, NodeKind k, NodeId a, NodeId b) const {
    if (alive_[id] == 0 || kind_[id] != k) return false;
    auto ch = kids(id);
    if (a == b) {
      auto it = std::lower_bound(ch.begin(), ch.end(), a);
      return it != ch.end() && it + 1 != ch.end() && *it == a && *(it + 1) == a;
    }
    return std::binary_search(ch.begin(), ch.end(), a) && std::binary_search(ch.begin(), ch.end(), b);
  }

  void extract(std::uint64_t key) {
    const NodeKind k = key_kind(key);
    const NodeId a = key_a(key);
    const NodeId b = key_b(key);

    parents_.clear();
    const NodeId probe = user_count_[a] <= user_count_[b] ? a : b;
    for (NodeId e = user_head_[probe]; e != kNone; e = users_[e].next) {
      if (contains_pair(users_[e].parent, k, a, b)) parents_.push_back(users_[e].parent);
    }
    std::sort(parents_.begin(), parents_.end());
    parents_.erase(std::unique(parents_.begin(), parents_.end()), parents_.end());

    const NodeId pair_children[2] = {a, b};
    NodeId shared = lookup(k, pair_children, kNone);
    if (shared == kNone) {
      shared = new_node(k, 0, 0, 2);
      pool_[first_[shared]] = a;
      pool_[first_[shared] + 1] = b;
      add_user(a, shared);
      if (b != a) add_user(b, shared);
      intern(shared);
      add_pairs(shared);
    }

    for (NodeId p : parents_) {
      if (p == shared || !contains_pair(p, k, a, b)) continue;
      remove_pairs(p);
      unintern(p);
      auto ch = kids(p);
      bool took_a = false;
      bool took_b = false;
      std::uint32_t w = 0;
      for (NodeId c : ch) {
        if (!took_a && c == a) {
          took_a = true;
        } else if (!took_b && c == b) {
          took_b = true;
        } else {
          ch[w++] = c;
        }
      }
      ch[w++] = shared;
      size_[p] = w;
      ch = kids(p);
      std::sort(ch.begin(), ch.end());
      add_user(shared, p);
      settle(p);
    }
  }

  // Re-interns a node whose children changed; a node that now duplicates
  // another is merged into it, which may cascade up through its users.
  void settle(NodeId first) {
    std::vector<NodeId> work{first};
    std::vector<NodeId> users;
    while (!work.empty()) {
      const NodeId p = work.back();
      work.pop_back();
      const NodeId twin = lookup(kind_[p], kids(p), p);
      if (twin == kNone) {
        intern(p);
        add_pairs(p);
        continue;
      }
      alive_[p] = 0;
      if (root_ == p) root_ = twin;
      users.clear();
      for (NodeId e = user_head_[p]; e != kNone; e = users_[e].next) users.push_back(users_[e].parent);
      std::sort(users.begin(), users.end());
      users.erase(std::unique(users.begin(), users.end()), users.end());
      for (NodeId u : users) {
        if (!is_op(u)) continue;
        auto ch = kids(u);
        if (!std::binary_search(ch.begin(), ch.end(), p)) continue;
        remove_pairs(u);
        unintern(u);
        std::replace(ch.begin(), ch.end(), p, twin);
        std::sort(ch.begin(), ch.end());
        add_user(twin, u);
        work.push_back(u);
      }
    }
  }

  ExprDag emit() const {
    ExprDag out;
    std::vector<NodeId> remap(kind_.size(), kNone);
    std::vector<NodeId> buf;
    // Iterative post-order from the root.
    std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      if (remap[id] != kNone) {
        stack.pop_back();
        continue;
      }
      auto ch = kids(id);
      if (next < ch.size()) {
        const NodeId c = ch[next++];
        if (remap[c] == kNone) stack.emplace_back(c, 0);
        continue;
      }
      switch (kind_[id]) {
        case NodeKind::Const: remap[id] = out.add_const(src_.constants()[payload_[id]]); break;
        case NodeKind::VarPow: remap[id] = out.add_varpow(payload_[id], exponent_[id]); break;
        default: {
          buf.clear();
          for (NodeId c : ch) buf.push_back(remap[c]);
          remap[id] = out.add_op(kind_[id], buf);
        }
      }
      stack.pop_back();
    }
    out.set_root(remap[root_]);
    return out;
  }

  struct UserEntry {
    NodeId parent;
    NodeId next;
  };

  const ExprDag& src_;
  std::vector<NodeKind> kind_;
  std::vector<std::uint32_t> payload_;
  std::vector<std::uint32_t> exponent_;
  std::vector<std::uint32_t> first_;
  std::vector<std::uint32_t> size_;
  std::vector<NodeId> pool_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint8_t> unit_;
  std::vector<NodeId> user_head_;
  std::vector<std::uint32_t> user_count_;
  std::vector<UserEntry> users_;  // may hold stale entries
  std::vector<NodeId> intern_;
  std::size_t intern_used_ = 0;
  CountTable pairs_;
  std::priority_queue<HeapEntry> heap_;
  std::vector<std::uint64_t> scratch_;
  std::vector<NodeId> parents_;
  NodeId root_ = 0;
};

}  // namespace detail

/// Repeatedly replaces the child pair shared by the most Sum (or Prod)
/// parents with a single new node, until no pair is shared. Ties go to the
/// smallest (kind, child, child) key. Factors +-1 never form a product pair.
inline ExprDag eliminate_pairs(const ExprDag& d) {
  if (d.empty()) return d;
  return detail::PairEliminator(d).run();
}

/// Operation count after Horner, hash-consing and pair elimination.
inline OpCount cse_ops(const Polynomial& p, const Scheme& s, bool share_signs = false) {
  return count_dag_ops(eliminate_pairs(hash_cons(apply_scheme(p, s, share_signs), share_signs)));
}

/// Reusable objective for search: cse_ops against a fixed polynomial.
/// Thread-safe for concurrent calls.
class Evaluator {
 public:
  explicit Evaluator(const Polynomial& p, bool share_signs = false)
      : form_(p), vars_(p.var_count()), signs_(share_signs) {}

  std::size_t var_count() const noexcept { return vars_; }
  bool share_signs() const noexcept { return signs_; }

  OpCount operator()(const Scheme& s) const {
    DagBuilder b(true, signs_);
    const NodeId root = form_.build(b, s);
    return count_dag_ops(eliminate_pairs(b.finish(root)));
  }

  ExprDag dag(const Scheme& s) const { return eliminate_pairs(hash_cons(form_.apply(s, signs_), signs_)); }

 private:
  HornerForm form_;
  std::size_t vars_;
  bool signs_;
};

}  // namespace hornopt
