#include "hpq/prefix.hpp"

#include <limits>

#include "hpq/errors.hpp"

namespace hpq {

PrefixStructure::PrefixStructure(Mode mode, TieOrder ties)
    : ties_(ties), dual_(mode), store_(std::make_unique<VersionStore>()), grappa_(*store_) {}

bool PrefixStructure::better(const Point& q, SiteId a, SiteId b) const {
  auto label = [&](SiteId s) {
    return ties_ == TieOrder::smaller_index ? s : std::numeric_limits<SiteId>::max() - s;
  };
  return better_site(mode(), q, sites().site(a), label(a), sites().site(b), label(b));
}

void PrefixStructure::push(const Point& p) {
  const NodeId old_root = dual_.root();
  const std::uint64_t before = store_->write_count();
  DualTree::InsertResult res = dual_.insert_ccw(p);
  const auto t = static_cast<SiteId>(dual_.site_count());
  store_->new_version();

  PushStats st;
  st.delta_count = res.delta.count();
  st.potential_change = res.potential_change;
  if (t == 1) {
    grappa_.make_tree(kSentinel);
  } else if (t >= 3) {
    const NodeId root = dual_.root();
    for (const PointerChange& c : res.delta.changes) {
      if (c.old_child == kNil) continue;
      grappa_.cut(vertex_of(c.parent), vertex_of(c.old_child));
      ++st.cuts;
    }
    if (old_root != kNil && old_root != root) {
      grappa_.cut(kSentinel, vertex_of(old_root));
      ++st.cuts;
    }
    grappa_.make_tree(vertex_of(t - 1));
    for (const PointerChange& c : res.delta.changes) {
      if (c.new_child == kNil) continue;
      const auto [lo, hi] = dual_.parent_edge_marks(c.new_child);
      grappa_.link(vertex_of(c.parent), vertex_of(c.new_child), c.side, lo, hi);
      ++st.links;
    }
    if (old_root != root) {
      grappa_.link(kSentinel, vertex_of(root), Side::Right, 1, t);
      ++st.links;
    }
    grappa_.mark_right_spine(kSentinel, t);
  }
  st.writes = store_->write_count() - before;
  stats_.push_back(st);
}

SiteId PrefixStructure::query_prefix(std::size_t t, const Point& q, int* probes) const {
  if (t < 1 || t > size()) {
    throw InvalidInput("prefix length " + std::to_string(t) + " outside [1, " + std::to_string(size()) + "]");
  }
  if (probes) *probes = 0;
  if (t == 1) return 1;
  if (t == 2) return better(q, 2, 1) ? 2 : 1;

  const Mode m = mode();
  const ConvexSequence& ss = sites();
  const auto n = static_cast<SiteId>(ss.size());
  auto outward = [&](SiteId s) {
    return outward_direction(ss.site(s == 1 ? n : s - 1), ss.site(s), ss.site(s == n ? 1 : s + 1));
  };
  auto oracle = [&](const Probe& p) {
    if (p.v == kSentinel) return Direction::toward_right;
    const SiteId i = p.up.lm, j = p.v - 1, k = p.up.rm;
    const Sector sec =
        m == Mode::Farthest
            ? sector_of(ss.site(i), ss.site(j), ss.site(k), q, m)
            : sector_of(ss.site(i), ss.site(j), ss.site(k), outward(i), outward(j), outward(k), q, m);
    if (sec == Sector::toward_left && p.left.exists()) return Direction::toward_left;
    if (sec == Sector::toward_right && p.right.exists()) return Direction::toward_right;
    return Direction::toward_parent;
  };
  const SearchResult r = grappa_.oracle_search(kSentinel, oracle, version_of_prefix(t));
  if (probes) *probes = r.probes;

  SiteId best = r.lm;
  for (SiteId s : {static_cast<SiteId>(r.child - 1), r.rm}) {
    if (better(q, s, best)) best = s;
  }
  return best;
}

namespace {

std::vector<Point> reflect_reverse(std::span<const Point> sites) {
  std::vector<Point> out(sites.rbegin(), sites.rend());
  for (Point& p : out) p.y = -p.y;
  return out;
}

}  // namespace

SuffixStructure::SuffixStructure(std::span<const Point> sites, Mode mode)
    : inner_(mode, TieOrder::larger_index) {
  for (const Point& p : reflect_reverse(sites)) inner_.push(p);
}

SiteId SuffixStructure::query_suffix(std::size_t s, const Point& q, int* probes) const {
  const std::size_t n = size();
  if (s < 1 || s > n) {
    throw InvalidInput("suffix start " + std::to_string(s) + " outside [1, " + std::to_string(n) + "]");
  }
  const SiteId r = inner_.query_prefix(n + 1 - s, Point{q.x, -q.y}, probes);
  return static_cast<SiteId>(n + 1 - r);
}

}  // namespace hpq
