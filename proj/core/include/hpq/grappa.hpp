#pragma once

// Grappa forest: a forest of rooted binary trees with two marks per edge,
// supporting link, cut, right-spine marking and oracle-guided edge search.
//
// Representation: heavy-path decomposition. Each path is a height-balanced
// tree ordered by depth whose nodes are the path's vertices; a vertex stands
// for the edge to its parent. Right marks on a path can be overwritten in bulk
// by lazy tags on path-tree nodes: the effective right mark of an edge is the
// topmost tag among its path-tree ancestors (itself included), else its own
// field. Writes push tags down; reads never write.
//
// The heavy child is a child with the larger subtree (ties keep the current
// choice), so a root-to-leaf path crosses O(log n) light edges and every
// operation costs O(log^2 n) field writes.
//
// Every field is a versioned cell, so any read can target an earlier version.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hpq/flarb.hpp"
#include "hpq/geometry.hpp"
#include "hpq/persistence.hpp"

namespace hpq {

using Mark = SiteId;

struct EdgeView {
  NodeId child = kNil;  // kNil: no such edge
  Mark lm = 0, rm = 0;
  bool exists() const { return child != kNil; }
};

// A probed vertex with its three incident edges.
struct Probe {
  NodeId v = kNil;
  EdgeView up, left, right;
};

enum class Direction { toward_parent, toward_left, toward_right };

struct SearchResult {
  NodeId parent = kNil;
  NodeId child = kNil;
  Mark lm = 0, rm = 0;
  int probes = 0;
};

class InconsistentOracle : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

class GrappaForest {
 public:
  explicit GrappaForest(VersionStore& store) : store_(&store) {}

  void make_tree(NodeId v);
  void link(NodeId v, NodeId w, Side d, Mark lm, Mark rm);
  void cut(NodeId v, NodeId w);
  // Sets the right mark of every edge on the right spine of v's tree.
  void mark_right_spine(NodeId v, Mark m);

  // Descends from the root of v's tree. The oracle must be consistent with
  // one edge e: at every probe it names the component of T - probe.v that
  // contains e. Throws InconsistentOracle otherwise. Performs no writes.
  SearchResult oracle_search(NodeId v, const std::function<Direction(const Probe&)>& oracle,
                             VersionId ver = kLatest) const;

  // Marks of the edge from w to its parent.
  std::pair<Mark, Mark> effective_marks(NodeId w, VersionId ver = kLatest) const;

  bool contains(NodeId v, VersionId ver = kLatest) const;
  NodeId parent(NodeId v, VersionId ver = kLatest) const;
  NodeId child(NodeId v, Side s, VersionId ver = kLatest) const;
  NodeId find_root(NodeId v, VersionId ver = kLatest) const;
  std::size_t subtree_size(NodeId v, VersionId ver = kLatest) const;
  Probe probe(NodeId v, VersionId ver = kLatest) const;

  // Largest number of light edges on a root-to-vertex path (latest version).
  std::size_t max_light_depth() const;
  // Full consistency check of the representation at the latest version;
  // throws ContractViolation describing the first violated invariant.
  void check_invariants() const;

  std::size_t vertex_capacity() const { return verts_.size(); }
  const VersionStore& store() const { return *store_; }

 private:
  struct Vertex {
    VersionedCell<NodeId> tpar, tl, tr, heavy;
    VersionedCell<NodeId> bl, br, bp;
    VersionedCell<Mark> lm, rm, tag;
    VersionedCell<std::uint32_t> light, cnt, sumw, maxpl;
    VersionedCell<std::uint8_t> height, flags;
  };
  static constexpr std::uint8_t kPresent = 1, kIsLeft = 2, kAnyLeft = 4;

  template <class T>
  void set(VersionedCell<T>& c, const T& v) {
    if (c.latest() != v) c.write(*store_, v);
  }
  Vertex& at(NodeId v);
  const Vertex& at(NodeId v) const { return verts_[v]; }
  void require_vertex(NodeId v) const;

  // Path-tree primitives (latest version).
  std::uint32_t cnt(NodeId x) const { return x == kNil ? 0 : at(x).cnt.latest(); }
  std::uint32_t sumw(NodeId x) const { return x == kNil ? 0 : at(x).sumw.latest(); }
  std::uint32_t maxpl(NodeId x) const { return x == kNil ? 0 : at(x).maxpl.latest(); }
  int height(NodeId x) const { return x == kNil ? 0 : at(x).height.latest(); }
  bool anyleft(NodeId x) const { return x != kNil && (at(x).flags.latest() & kAnyLeft); }
  void pull(NodeId x);
  void pull_up(NodeId x);
  void push(NodeId x);
  void push_path_to(NodeId x);
  void set_children(NodeId x, NodeId l, NodeId r);
  NodeId rotate_left(NodeId x);
  NodeId rotate_right(NodeId x);
  NodeId rebalance(NodeId x);
  NodeId join(NodeId l, NodeId k, NodeId r);
  NodeId join2(NodeId l, NodeId r);
  std::pair<NodeId, NodeId> split(NodeId t, std::uint32_t k);
  NodeId path_root(NodeId x) const;
  std::uint32_t position(NodeId x) const;
  NodeId at_position(NodeId root, std::uint32_t k) const;
  NodeId rightmost_violation(NodeId root) const;
  std::uint32_t first_left_from(NodeId x, std::uint32_t offset, std::uint32_t from) const;
  void tag_range(NodeId x, std::uint32_t offset, std::uint32_t lo, std::uint32_t hi, Mark m);
  void set_rm_field(NodeId x, Mark m);
  void set_flag(NodeId x, std::uint8_t bit, bool on);
  void make_heavy(NodeId v, NodeId c);
  void rebalance_from(NodeId v);

  VersionStore* store_;
  std::vector<Vertex> verts_;
};

}  // namespace hpq
