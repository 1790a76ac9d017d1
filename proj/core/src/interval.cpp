#include "hpq/interval.hpp"

#include <string>

#include "hpq/errors.hpp"

namespace hpq {

namespace {

std::vector<Point> validated(std::span<const Point> sites) {
  std::vector<Point> pts(sites.begin(), sites.end());
  if (pts.empty()) throw InvalidInput("no sites");
  ConvexSequence::from_points(pts);
  return pts;
}

PrefixStructure prefix_of(std::span<const Point> pts, Mode mode) {
  PrefixStructure s(mode);
  for (const Point& p : pts) s.push(p);
  return s;
}

}  // namespace

IntervalStructure::IntervalStructure(std::span<const Point> sites, Mode mode)
    : mode_(mode),
      sites_(validated(sites)),
      top_prefix_(prefix_of(sites_, mode)),
      top_suffix_(sites_, mode) {
  const auto n = static_cast<SiteId>(sites_.size());
  if (n >= 3) root_ = build(1, n, 1);
}

std::int32_t IntervalStructure::build(SiteId i, SiteId j, std::size_t depth) {
  if (j - i < 2) return -1;
  depth_ = std::max(depth_, depth);
  const SiteId m = (i + j) / 2;
  const std::span<const Point> all(sites_);
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{i, m, j, SuffixStructure(all.subspan(i - 1, m - i + 1), mode_),
                        prefix_of(all.subspan(m, j - m), mode_)});
  const std::int32_t l = build(i, m, depth + 1);
  const std::int32_t r = build(m + 1, j, depth + 1);
  nodes_[id].child[0] = l;
  nodes_[id].child[1] = r;
  return id;
}

SiteId IntervalStructure::better(const Point& q, SiteId a, SiteId b) const {
  return better_site(mode_, q, sites_[a - 1], a, sites_[b - 1], b) ? a : b;
}

std::uint64_t IntervalStructure::stored_entries() const {
  std::uint64_t total = top_prefix_.stored_entries() + top_suffix_.inner().stored_entries();
  for (const Node& nd : nodes_) total += nd.left.inner().stored_entries() + nd.right.stored_entries();
  return total;
}

QueryOutcome IntervalStructure::query(const Point& q, const DirectedLine& l, QueryStats* stats) const {
  const LeftInterval li = sites_.size() >= 3 ? left_interval(sites_, l) : left_interval_scan(sites_, l);
  if (li.kind == LeftInterval::Kind::Empty) {
    if (stats) *stats = {};
    return std::nullopt;
  }
  if (li.kind == LeftInterval::Kind::Full) {
    const auto n = static_cast<SiteId>(sites_.size());
    return query_interval(1, n, q, stats);
  }
  return query_interval(li.first, li.last, q, stats);
}

SiteId IntervalStructure::query_interval(SiteId a, SiteId b, const Point& q, QueryStats* stats) const {
  const auto n = static_cast<SiteId>(sites_.size());
  if (a < 1 || a > n || b < 1 || b > n) {
    throw InvalidInput("interval (" + std::to_string(a) + "," + std::to_string(b) + ") outside [1, " +
                       std::to_string(n) + "]");
  }
  QueryStats local;
  QueryStats& st = stats ? *stats : local;
  st = {};

  if (b % n + 1 == a) {
    ++st.sub_queries;
    return top_prefix_.query_prefix(n, q);
  }
  if (a > b) {
    st.sub_queries = 2;
    return better(q, top_suffix_.query_suffix(a, q), top_prefix_.query_prefix(b, q));
  }
  if (a == 1) {
    ++st.sub_queries;
    return top_prefix_.query_prefix(b, q);
  }
  if (b == n) {
    ++st.sub_queries;
    return top_suffix_.query_suffix(a, q);
  }

  std::int32_t cur = root_;
  for (;;) {
    if (cur < 0) throw ContractViolation("interval routing fell off the recursion");
    const Node& nd = nodes_[cur];
    ++st.routing_steps;
    if (!(nd.i < a && b < nd.j)) {
      throw ContractViolation("interval (" + std::to_string(a) + "," + std::to_string(b) +
                              ") reached node [" + std::to_string(nd.i) + ".." + std::to_string(nd.j) + "]");
    }
    const bool has_left = a <= nd.m, has_right = b > nd.m;
    if (has_left && has_right) {
      st.sub_queries = 2;
      const SiteId l = nd.i - 1 + nd.left.query_suffix(a - nd.i + 1, q);
      const SiteId r = nd.m + nd.right.query_prefix(b - nd.m, q);
      return better(q, l, r);
    }
    if (has_left && b == nd.m) {
      st.sub_queries = 1;
      return nd.i - 1 + nd.left.query_suffix(a - nd.i + 1, q);
    }
    if (has_right && a == nd.m + 1) {
      st.sub_queries = 1;
      return nd.m + nd.right.query_prefix(b - nd.m, q);
    }
    cur = nd.child[has_left ? 0 : 1];
  }
}

}  // namespace hpq
