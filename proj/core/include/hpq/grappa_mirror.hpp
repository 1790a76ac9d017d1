#pragma once

// Naive marked forest and a randomized cross-check of GrappaForest against it.

#include <cstdint>
#include <string>
#include <vector>

#include "hpq/grappa.hpp"

namespace hpq {

class NaiveForest {
 public:
  struct Vertex {
    NodeId par = kNil, left = kNil, right = kNil;
    Mark lm = 0, rm = 0;
    bool present = false;
  };

  explicit NaiveForest(std::size_t capacity) : v_(capacity + 1) {}

  void make_tree(NodeId x) { v_[x].present = true; }
  void link(NodeId v, NodeId w, Side d, Mark lm, Mark rm);
  void cut(NodeId v, NodeId w);
  void mark_right_spine(NodeId v, Mark m);

  NodeId root(NodeId x) const;
  std::size_t size(NodeId x) const;
  // Component of T - at holding the edge from target to its parent.
  Direction direction(NodeId at, NodeId target) const;

  const Vertex& operator[](NodeId x) const { return v_[x]; }
  std::size_t capacity() const { return v_.size() - 1; }

 private:
  std::vector<Vertex> v_;
};

// Calibrated constant for writes per mutating operation <= C * log2(n)^2,
// n = number of vertices (at least 2).
inline constexpr double kGrappaWriteC = 24.0;

struct MirrorReport {
  std::size_t operations = 0;
  std::size_t searches = 0;
  std::size_t checks = 0;
  std::uint64_t max_writes = 0;
  double max_write_ratio = 0;  // writes / log2(n)^2 per mutating operation
  int max_probes = 0;
  std::size_t max_light_depth = 0;
  std::size_t query_writes = 0;  // writes issued by queries; must stay 0
  std::string mismatch;          // empty when everything matched
};

// Runs random make_tree/link/cut/mark_right_spine/oracle_search operations on
// a GrappaForest and a NaiveForest side by side, comparing topology, marks,
// search results and historical reads. A fresh forest is started every
// batch operations to bound memory.
MirrorReport run_grappa_mirror(std::size_t operations, std::uint64_t seed, std::size_t vertices,
                               std::size_t batch = 10000);

}  // namespace hpq
