#pragma once

// Binary-search-tree dual of the farthest- or nearest-point Delaunay
// triangulation of a counterclockwise convex point stream.
//
// Each triangle (i, j, k), i < j < k, is a node keyed by its median j. The
// edge above a node carries marks (i, k): the two sites whose bisector is the
// corresponding Voronoi edge. The root's parent ray carries marks (1, n).
// Inserting p_{n+1} flips every conflicting triangle onto p_{n+1}, which in the
// tree is exactly one flarb with new node key n.

#include <cstdint>
#include <span>
#include <vector>

#include "hpq/flarb.hpp"
#include "hpq/geometry.hpp"

namespace hpq {

struct Triangle {
  SiteId i = 0, j = 0, k = 0;
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

class DualTree {
 public:
  explicit DualTree(Mode mode) : mode_(mode) {}

  struct InsertResult {
    std::vector<NodeId> anchored;  // conflict set, in discovery order
    PointerDelta delta;
    long double potential_change = 0;
  };

  // Throws InvalidInput if p breaks convex ccw order, DegenerateInput if p
  // is cocircular with a tested triangle.
  InsertResult insert_ccw(const Point& p);

  Mode mode() const { return mode_; }
  const ConvexSequence& sites() const { return sites_; }
  std::size_t site_count() const { return sites_.size(); }
  const FlarbTree& topology() const { return tree_; }
  NodeId root() const { return tree_.root(); }
  bool empty() const { return tree_.empty(); }

  Triangle triangle(NodeId key) const { return {lo_[key], key, hi_[key]}; }
  std::pair<SiteId, SiteId> parent_edge_marks(NodeId key) const { return {lo_[key], hi_[key]}; }
  std::vector<Triangle> triangles() const;

  Sector sector_of(NodeId key, const Point& q) const;

  // Farthest (or nearest) site to q; ties resolve to the smaller SiteId.
  SiteId locate(const Point& q) const;

 private:
  Point outward(SiteId s) const;

  Mode mode_;
  ConvexSequence sites_;
  FlarbTree tree_;
  std::vector<SiteId> lo_{0}, hi_{0};
};

// A window of consecutive sites on a cyclic ring of points. Local site s
// (1-based) is ring point (offset + s - 1) mod |ring|; its label, used for
// tie-breaking and reporting, is first_label plus that ring position.
struct SiteRing {
  std::span<const Point> pts;
  SiteId first_label = 1;
};

// Static point-location structure over a finalized DualTree: a centroid
// decomposition of the dual tree, each level resolved by one sector test.
// Stores no coordinates; queries supply the ring the sites live on.
class CentroidLocator {
 public:
  CentroidLocator() = default;
  // The tree's sites must equal ring points offset, offset + 1, ... (cyclic).
  CentroidLocator(const DualTree& tree, std::uint32_t offset);

  // Returns the ring label of the answer.
  SiteId locate(const SiteRing& ring, const Point& q, int* sector_tests = nullptr) const;

  std::size_t depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::uint32_t site_count() const { return len_; }
  std::size_t memory_bytes() const { return sizeof(*this) + nodes_.capacity() * sizeof(Node); }

  // next[s] for s in {parent, left, right}: >= 0 child decomposition node;
  // -1 hull ray (candidates: this triangle); <= -2 the neighbour across that
  // side is the already-tested decomposition node -2 - next[s].
  struct Node {
    std::uint32_t lo = 0, key = 0, hi = 0;
    std::int32_t next[3] = {-1, -1, -1};
  };

  static constexpr std::size_t kBytesPerNode = sizeof(Node);

 private:
  Mode mode_ = Mode::Farthest;
  std::vector<Node> nodes_;
  std::uint32_t offset_ = 0, len_ = 0;
  std::int32_t top_ = -1;
  std::size_t depth_ = 0;
};

}  // namespace hpq
