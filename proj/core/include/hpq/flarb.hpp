#pragma once

// Flarb: add a new root r above a binary tree (old tree as r's left subtree),
// then rearrange an anchored subtree S plus r into the rightmost path while
// preserving in-order. The result is determined by (T, S, in-order), so the
// path is rebuilt directly and the cost is reported as the number of
// parent/child relationships that differ before and after.

#include <cstdint>
#include <span>
#include <vector>

namespace hpq {

using NodeId = std::uint32_t;
inline constexpr NodeId kNil = 0;

enum class Side : std::uint8_t { Left, Right };

class FlarbTree {
 public:
  bool contains(NodeId v) const { return v != kNil && v < nodes_.size() && nodes_[v].present; }
  NodeId root() const { return root_; }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  NodeId left(NodeId v) const { return nodes_[v].left; }
  NodeId right(NodeId v) const { return nodes_[v].right; }
  NodeId child(NodeId v, Side s) const { return s == Side::Left ? left(v) : right(v); }
  // Number of real nodes in the subtree of v (0 for kNil).
  std::uint32_t subtree_size(NodeId v) const { return v == kNil ? 0 : nodes_[v].size; }
  std::size_t node_count() const { return count_; }
  bool empty() const { return count_ == 0; }

  // Manual construction, used by tests and by loaders. Call finish() after a
  // batch of set_child/set_root calls to refresh subtree sizes.
  void add_node(NodeId v);
  void set_child(NodeId parent, Side s, NodeId child);
  void set_root(NodeId v);
  void finish();

  std::vector<NodeId> inorder() const;
  std::vector<NodeId> right_spine() const;

 private:
  friend struct FlarbAccess;

  struct Node {
    NodeId parent = kNil;
    NodeId left = kNil;
    NodeId right = kNil;
    std::uint32_t size = 0;
    std::uint32_t stamp = 0;
    bool present = false;
  };

  Node& node(NodeId v);

  std::vector<Node> nodes_;
  NodeId root_ = kNil;
  std::size_t count_ = 0;
  std::uint32_t epoch_ = 0;
};

struct PointerChange {
  NodeId parent = kNil;
  Side side = Side::Left;
  NodeId old_child = kNil;
  NodeId new_child = kNil;
};

struct PointerDelta {
  std::vector<PointerChange> changes;

  // Size of the symmetric difference of (parent, side, child) relations.
  std::size_t count() const;
};

struct FlarbResult {
  PointerDelta delta;
  // Phi(after) - Phi(before), evaluated only over the nodes whose subtrees changed.
  long double potential_change = 0;
};

// Applies the flarb in place. Throws ContractViolation if r already exists or
// S is not an anchored subtree (empty, or connected and containing the root).
FlarbResult flarb(FlarbTree& tree, std::span<const NodeId> anchored, NodeId r);

// Relation-set symmetric difference computed from scratch.
std::size_t count_pointer_changes(const FlarbTree& before, const FlarbTree& after);

// Phi(T) = sum over real nodes of lg(w(left) / w(right)), where w counts the
// nodes plus null pointers of a subtree. Evaluated in long double; absolute
// error stays below 2^-30 for trees up to 2^20 nodes.
long double potential(const FlarbTree& tree);

// Calibrated constant for the amortized bound below and for the cumulative
// bound sum of delta.count <= C * n * lg n over insertion sequences.
inline constexpr double kFlarbC = 8.0;

// delta.count + Phi(after) - Phi(before) <= c * lg(2 n_after + 1).
bool amortized_check(const FlarbTree& before, const FlarbTree& after, const PointerDelta& delta,
                     double c);
bool amortized_check(std::size_t delta_count, long double potential_change, std::size_t n_after,
                     double c);

}  // namespace hpq
