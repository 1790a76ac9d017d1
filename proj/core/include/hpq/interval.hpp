#pragma once

// Halfplane proximity queries on a static convex sequence by divide and
// conquer over prefix and suffix structures. The sites left of a query line
// form one cyclic interval; an interval through p_1 or p_n is a prefix, a
// suffix or both, and any other interval lies strictly inside some recursion
// node [i..j] whose midpoint split it straddles.

#include <cstdint>
#include <span>
#include <vector>

#include "hpq/geometry.hpp"
#include "hpq/prefix.hpp"

namespace hpq {

class IntervalStructure {
 public:
  struct QueryStats {
    int sub_queries = 0;    // prefix/suffix structure queries
    int routing_steps = 0;  // recursion nodes visited
  };

  // Throws InvalidInput unless the sites are strictly convex and ccw.
  IntervalStructure(std::span<const Point> sites, Mode mode);

  QueryOutcome query(const Point& q, const DirectedLine& l, QueryStats* stats = nullptr) const;

  // Extreme site among the cyclic run first..last; first == last % n + 1
  // selects every site. Throws InvalidInput for indices outside [1, n].
  SiteId query_interval(SiteId first, SiteId last, const Point& q, QueryStats* stats = nullptr) const;

  Mode mode() const { return mode_; }
  std::size_t size() const { return sites_.size(); }
  std::span<const Point> sites() const { return sites_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t depth() const { return depth_; }
  // Persistence entries stored across every prefix and suffix structure.
  std::uint64_t stored_entries() const;

 private:
  struct Node {
    SiteId i, m, j;
    SuffixStructure left;    // p_i..p_m
    PrefixStructure right;   // p_{m+1}..p_j
    std::int32_t child[2] = {-1, -1};
  };

  std::int32_t build(SiteId i, SiteId j, std::size_t depth);
  SiteId better(const Point& q, SiteId a, SiteId b) const;

  Mode mode_;
  std::vector<Point> sites_;
  PrefixStructure top_prefix_;
  SuffixStructure top_suffix_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t depth_ = 0;
};

}  // namespace hpq
