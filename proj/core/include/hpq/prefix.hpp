#pragma once

// Farthest- or nearest-site queries on any prefix p_1..p_t of a
// counterclockwise convex insertion sequence. The dual tree is kept as an
// ephemeral scaffold; every flarb is mirrored into a persistent grappa forest
// whose version t holds the dual tree of the first t sites.
//
// Grappa vertex 1 is a sentinel standing above the dual root; the dual node
// with key x is grappa vertex x + 1. The edge above a node carries the node's
// triangle corners (i, k) as marks, the sentinel edge carries (1, t).

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hpq/dual_tree.hpp"
#include "hpq/grappa.hpp"
#include "hpq/persistence.hpp"

namespace hpq {

// Which index wins an exact distance tie.
enum class TieOrder { smaller_index, larger_index };

class PrefixStructure {
 public:
  static constexpr NodeId kSentinel = 1;
  static NodeId vertex_of(NodeId key) { return key + 1; }

  struct PushStats {
    std::size_t delta_count = 0;  // flarb pointer changes
    long double potential_change = 0;
    std::size_t cuts = 0;
    std::size_t links = 0;
    std::uint64_t writes = 0;  // persistence writes for this push
  };

  explicit PrefixStructure(Mode mode, TieOrder ties = TieOrder::smaller_index);

  // Throws InvalidInput or DegenerateInput with the structure unchanged.
  void push(const Point& p);

  // Extreme site among p_1..p_t. Throws InvalidInput unless 1 <= t <= size().
  // When probes is given it receives the number of oracle probes.
  SiteId query_prefix(std::size_t t, const Point& q, int* probes = nullptr) const;

  Mode mode() const { return dual_.mode(); }
  std::size_t size() const { return dual_.site_count(); }
  const ConvexSequence& sites() const { return dual_.sites(); }
  const DualTree& dual() const { return dual_; }
  const GrappaForest& grappa() const { return grappa_; }
  const VersionStore& store() const { return *store_; }
  VersionId version_of_prefix(std::size_t t) const { return t; }
  const std::vector<PushStats>& push_stats() const { return stats_; }
  std::uint64_t stored_entries() const { return store_->history_length(); }

 private:
  bool better(const Point& q, SiteId a, SiteId b) const;

  TieOrder ties_;
  DualTree dual_;
  std::unique_ptr<VersionStore> store_;
  GrappaForest grappa_;
  std::vector<PushStats> stats_;
};

// Queries on suffixes p_s..p_n of a fixed sequence: a prefix structure over
// the sites reflected across the x-axis in reverse order.
class SuffixStructure {
 public:
  SuffixStructure(std::span<const Point> sites, Mode mode);

  // Extreme site among p_s..p_n (1-based within the sequence).
  SiteId query_suffix(std::size_t s, const Point& q, int* probes = nullptr) const;

  std::size_t size() const { return inner_.size(); }
  const PrefixStructure& inner() const { return inner_; }

 private:
  PrefixStructure inner_;
};

}  // namespace hpq
