#include "hpq/flarb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "hpq/errors.hpp"

namespace hpq {

namespace {

long double phi_term(std::uint32_t left_size, std::uint32_t right_size) {
  return std::log2(static_cast<long double>(2.0L * left_size + 1)) -
         std::log2(static_cast<long double>(2.0L * right_size + 1));
}

}  // namespace

FlarbTree::Node& FlarbTree::node(NodeId v) {
  if (v == kNil) throw ContractViolation("node id 0 is reserved");
  if (v >= nodes_.size()) nodes_.resize(std::max<std::size_t>(v + 1, nodes_.size() * 2));
  return nodes_[v];
}

void FlarbTree::add_node(NodeId v) {
  Node& x = node(v);
  if (x.present) throw ContractViolation("node " + std::to_string(v) + " already present");
  x = Node{};
  x.present = true;
  x.size = 1;
  ++count_;
}

void FlarbTree::set_child(NodeId p, Side s, NodeId c) {
  if (!contains(p) || (c != kNil && !contains(c))) throw ContractViolation("set_child on missing node");
  Node& x = nodes_[p];
  (s == Side::Left ? x.left : x.right) = c;
  if (c != kNil) nodes_[c].parent = p;
}

void FlarbTree::set_root(NodeId v) {
  if (v != kNil && !contains(v)) throw ContractViolation("set_root on missing node");
  root_ = v;
  if (v != kNil) nodes_[v].parent = kNil;
}

void FlarbTree::finish() {
  // Post-order size refresh; also checks that the tree reaches every node.
  std::vector<std::pair<NodeId, bool>> stack;
  std::size_t seen = 0;
  if (root_ != kNil) stack.push_back({root_, false});
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    Node& x = nodes_[v];
    if (done) {
      x.size = 1 + subtree_size(x.left) + subtree_size(x.right);
      continue;
    }
    ++seen;
    stack.push_back({v, true});
    if (x.left != kNil) stack.push_back({x.left, false});
    if (x.right != kNil) stack.push_back({x.right, false});
  }
  if (seen != count_) throw ContractViolation("tree does not reach every node");
}

std::vector<NodeId> FlarbTree::inorder() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  std::vector<NodeId> stack;
  NodeId v = root_;
  while (v != kNil || !stack.empty()) {
    while (v != kNil) {
      stack.push_back(v);
      v = nodes_[v].left;
    }
    v = stack.back();
    stack.pop_back();
    out.push_back(v);
    v = nodes_[v].right;
  }
  return out;
}

std::vector<NodeId> FlarbTree::right_spine() const {
  std::vector<NodeId> out;
  for (NodeId v = root_; v != kNil; v = nodes_[v].right) out.push_back(v);
  return out;
}

std::size_t PointerDelta::count() const {
  std::size_t c = 0;
  for (const auto& ch : changes) c += (ch.old_child != kNil) + (ch.new_child != kNil);
  return c;
}

struct FlarbAccess {
  static FlarbResult run(FlarbTree& t, std::span<const NodeId> s, NodeId r) {
    using Node = FlarbTree::Node;
    if (r == kNil || t.contains(r)) throw ContractViolation("flarb: new root must be a fresh id");
    if (++t.epoch_ == 0) {
      for (auto& x : t.nodes_) x.stamp = 0;
      t.epoch_ = 1;
    }
    const std::uint32_t ep = t.epoch_;
    auto in_s = [&](NodeId v) { return v != kNil && t.nodes_[v].stamp == ep; };

    for (NodeId v : s) {
      if (!t.contains(v)) throw ContractViolation("flarb: anchored node not in tree");
      if (t.nodes_[v].stamp == ep) throw ContractViolation("flarb: duplicate anchored node");
      t.nodes_[v].stamp = ep;
    }
    for (NodeId v : s) {
      NodeId p = t.nodes_[v].parent;
      if (p == kNil ? v != t.root_ : !in_s(p)) {
        throw ContractViolation("flarb: anchored set is not a connected subtree containing the root");
      }
    }

    FlarbResult res;
    for (NodeId v : s) {
      const Node& x = t.nodes_[v];
      res.potential_change -= phi_term(t.subtree_size(x.left), t.subtree_size(x.right));
    }

    // In-order of S with the subtree hanging in each gap: g0 s1 g1 ... sk gk.
    std::vector<NodeId> path;
    std::vector<NodeId> gaps;
    path.reserve(s.size() + 1);
    gaps.reserve(s.size() + 2);
    {
      std::vector<NodeId> stack;
      NodeId v = t.root_;
      if (!in_s(v)) {
        gaps.push_back(v);
      } else {
        while (v != kNil || !stack.empty()) {
          while (v != kNil) {
            stack.push_back(v);
            NodeId l = t.nodes_[v].left;
            if (in_s(l)) {
              v = l;
            } else {
              gaps.push_back(l);
              v = kNil;
            }
          }
          v = stack.back();
          stack.pop_back();
          path.push_back(v);
          NodeId rr = t.nodes_[v].right;
          if (in_s(rr)) {
            v = rr;
          } else {
            gaps.push_back(rr);
            v = kNil;
          }
        }
      }
    }
    // Every S slot not pointing into S yields one gap: 2|S| - (|S| - 1) = |S| + 1,
    // emitted in in-order, so gaps and path nodes alternate.

    t.add_node(r);
    path.push_back(r);
    gaps.push_back(kNil);

    const std::size_t k = path.size();
    if (gaps.size() != k + 1) throw ContractViolation("flarb: internal gap mismatch");

    auto set_slot = [&](NodeId p, Side side, NodeId c) {
      Node& x = t.nodes_[p];
      NodeId& slot = side == Side::Left ? x.left : x.right;
      if (slot != c) res.delta.changes.push_back({p, side, slot, c});
      slot = c;
      if (c != kNil) t.nodes_[c].parent = p;
    };

    for (std::size_t i = 0; i < k; ++i) {
      set_slot(path[i], Side::Left, gaps[i]);
      set_slot(path[i], Side::Right, i + 1 < k ? path[i + 1] : kNil);
    }
    t.root_ = path[0];
    t.nodes_[path[0]].parent = kNil;

    for (std::size_t i = k; i-- > 0;) {
      Node& x = t.nodes_[path[i]];
      x.size = 1 + t.subtree_size(x.left) + t.subtree_size(x.right);
      res.potential_change += phi_term(t.subtree_size(x.left), t.subtree_size(x.right));
    }
    return res;
  }
};

FlarbResult flarb(FlarbTree& tree, std::span<const NodeId> anchored, NodeId r) {
  return FlarbAccess::run(tree, anchored, r);
}

std::size_t count_pointer_changes(const FlarbTree& before, const FlarbTree& after) {
  using Rel = std::tuple<NodeId, int, NodeId>;
  auto relations = [](const FlarbTree& t) {
    std::set<Rel> out;
    for (NodeId v : t.inorder()) {
      if (t.left(v) != kNil) out.insert({v, 0, t.left(v)});
      if (t.right(v) != kNil) out.insert({v, 1, t.right(v)});
    }
    return out;
  };
  const auto a = relations(before), b = relations(after);
  std::size_t diff = 0;
  for (const auto& x : a) diff += !b.count(x);
  for (const auto& x : b) diff += !a.count(x);
  return diff;
}

long double potential(const FlarbTree& t) {
  long double phi = 0;
  for (NodeId v : t.inorder()) phi += phi_term(t.subtree_size(t.left(v)), t.subtree_size(t.right(v)));
  return phi;
}

bool amortized_check(std::size_t delta_count, long double potential_change, std::size_t n_after,
                     double c) {
  const long double bound = c * std::log2(2.0L * static_cast<long double>(n_after) + 1);
  return static_cast<long double>(delta_count) + potential_change <= bound + 0x1p-30L;
}

bool amortized_check(const FlarbTree& before, const FlarbTree& after, const PointerDelta& delta,
                     double c) {
  return amortized_check(delta.count(), potential(after) - potential(before), after.node_count(), c);
}

}  // namespace hpq
