#include <doctest.h>

#include <cmath>
#include <random>

#include "hpq/errors.hpp"
#include "hpq/prefix.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;

namespace {

const std::vector<Point> kQuad{{0, 0}, {4, 0}, {5, 3}, {1, 4}};

PrefixStructure build(std::span<const Point> pts, Mode mode) {
  PrefixStructure s(mode);
  for (const Point& p : pts) s.push(p);
  return s;
}

// Grappa at version t must hold the dual tree of the first t sites.
void check_snapshot(const PrefixStructure& s, std::size_t t) {
  DualTree ref(s.mode());
  for (SiteId i = 1; i <= t; ++i) ref.insert_ccw(s.sites().site(i));
  const GrappaForest& g = s.grappa();
  const VersionId ver = s.version_of_prefix(t);
  const NodeId root = ref.root();
  REQUIRE(g.child(PrefixStructure::kSentinel, Side::Left, ver) == kNil);
  REQUIRE(g.child(PrefixStructure::kSentinel, Side::Right, ver) == (root == kNil ? kNil : PrefixStructure::vertex_of(root)));
  if (root != kNil) {
    const auto marks = g.effective_marks(PrefixStructure::vertex_of(root), ver);
    REQUIRE(marks.first == 1);
    REQUIRE(marks.second == t);
  }
  for (NodeId key = 2; key + 1 <= t; ++key) {
    const NodeId v = PrefixStructure::vertex_of(key);
    const FlarbTree& topo = ref.topology();
    auto vx = [](NodeId k) { return k == kNil ? kNil : PrefixStructure::vertex_of(k); };
    REQUIRE(g.child(v, Side::Left, ver) == vx(topo.left(key)));
    REQUIRE(g.child(v, Side::Right, ver) == vx(topo.right(key)));
    const auto [lo, hi] = ref.parent_edge_marks(key);
    const auto marks = g.effective_marks(v, ver);
    REQUIRE(marks.first == lo);
    REQUIRE(marks.second == hi);
  }
  REQUIRE(!g.contains(PrefixStructure::vertex_of(static_cast<NodeId>(t)), ver));
}

}  // namespace

TEST_CASE("push mirrors the dual tree example") {
  const PrefixStructure s = build(kQuad, Mode::Farthest);
  CHECK(s.store().current() == 4);
  const GrappaForest& g = s.grappa();
  CHECK(g.child(PrefixStructure::kSentinel, Side::Right, 4) == PrefixStructure::vertex_of(3));
  CHECK(g.child(PrefixStructure::vertex_of(3), Side::Left, 4) == PrefixStructure::vertex_of(2));
  CHECK(g.child(PrefixStructure::kSentinel, Side::Right, 3) == PrefixStructure::vertex_of(2));
  CHECK(g.subtree_size(PrefixStructure::kSentinel, 3) == 2);
  for (std::size_t t = 1; t <= 4; ++t) check_snapshot(s, t);
}

TEST_CASE("push rejects a non-convex site and keeps the structure") {
  PrefixStructure s(Mode::Farthest);
  for (const Point& p : kQuad) s.push(p);
  const auto writes = s.store().write_count();
  CHECK_THROWS_AS(s.push(Point{3, 2}), InvalidInput);
  CHECK(s.size() == 4);
  CHECK(s.store().current() == 4);
  CHECK(s.store().write_count() == writes);
  CHECK(s.query_prefix(4, Point{0, 0}) == 3);
}

TEST_CASE("query examples") {
  const PrefixStructure far = build(kQuad, Mode::Farthest);
  const PrefixStructure near = build(kQuad, Mode::Nearest);
  CHECK(far.query_prefix(4, Point{0, 0}) == 3);
  CHECK(far.query_prefix(3, Point{0, 0}) == 3);
  CHECK(far.query_prefix(2, Point{0, 0}) == 2);
  CHECK(near.query_prefix(2, Point{0, 0}) == 1);
  CHECK(far.query_prefix(1, Point{7, 7}) == 1);
  CHECK_THROWS_AS(far.query_prefix(0, Point{0, 0}), InvalidInput);
  CHECK_THROWS_AS(far.query_prefix(5, Point{0, 0}), InvalidInput);
}

TEST_CASE("every version equals a replayed dual tree") {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Instance inst = gen_convex(40, seed, seed % 2 ? Shape::circle : Shape::ellipse, mode);
      const PrefixStructure s = build(inst.sites.points(), mode);
      for (std::size_t t = 1; t <= s.size(); ++t) check_snapshot(s, t);
      s.grappa().check_invariants();
    }
  }
}

TEST_CASE("prefix queries agree with brute force") {
  const Shape shapes[] = {Shape::circle, Shape::ellipse, Shape::parabola_arc};
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t n = 60 + 30 * k;
      const Instance inst = gen_convex(n, 40 + k, shapes[k], mode);
      const auto pts = inst.sites.points();
      const PrefixStructure s = build(pts, mode);
      const auto queries = gen_queries(pts, 200, 9 + k);
      const auto writes = s.store().write_count();
      std::mt19937 rng(k);
      int worst = 0;
      for (std::size_t t = 1; t <= n; ++t) {
        for (int r = 0; r < 30; ++r) {
          const Point q = queries[rng() % queries.size()].q;
          int probes = 0;
          const SiteId got = s.query_prefix(t, q, &probes);
          worst = std::max(worst, probes);
          const SiteId want = bf_extreme(pts.first(t), q, mode);
          INFO("mode " << std::string(to_string(mode)) << " n " << n << " t " << t << " q " << to_string(q));
          REQUIRE(got == want);
        }
      }
      CHECK(s.store().write_count() == writes);
      const double lg = std::log2(static_cast<double>(n));
      CHECK(worst <= 4 * lg * lg);
    }
  }
}

TEST_CASE("suffix queries agree with brute force") {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    const Instance inst = gen_convex(70, 77, Shape::circle, mode);
    const auto pts = inst.sites.points();
    const SuffixStructure s(pts, mode);
    const auto queries = gen_queries(pts, 300, 5);
    std::mt19937 rng(2);
    for (std::size_t start = 1; start <= pts.size(); ++start) {
      for (int r = 0; r < 30; ++r) {
        const Point q = queries[rng() % queries.size()].q;
        const auto tail = pts.subspan(start - 1);
        const SiteId want = static_cast<SiteId>(start - 1 + bf_extreme(tail, q, mode));
        REQUIRE(s.query_suffix(start, q) == want);
      }
    }
  }
}

TEST_CASE("suffix ties go to the smaller index") {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    const SuffixStructure s(kQuad, mode);
    int ties = 0;
    for (std::int64_t x = -12; x <= 14; ++x) {
      for (std::int64_t y = -12; y <= 14; ++y) {
        const Point q{x, y};
        for (std::size_t start = 1; start <= 4; ++start) {
          const auto tail = std::span<const Point>(kQuad).subspan(start - 1);
          const SiteId want = static_cast<SiteId>(start - 1 + bf_extreme(tail, q, mode));
          for (SiteId o = want + 1; o <= 4; ++o) {
            ties += cmp_dist(q, kQuad[want - 1], kQuad[o - 1]) == 0;
          }
          REQUIRE(s.query_suffix(start, q) == want);
        }
      }
    }
    CHECK(ties > 0);
  }
}

TEST_CASE("pointer-change accounting") {
  const std::size_t n = 512;
  const Instance inst = gen_convex(n, 3, Shape::circle, Mode::Farthest);
  const PrefixStructure s = build(inst.sites.points(), Mode::Farthest);
  std::size_t delta = 0, pairs = 0;
  for (const auto& st : s.push_stats()) {
    delta += st.delta_count;
    pairs += std::max(st.cuts, st.links);
  }
  CHECK(pairs <= 2 * delta + n);
  CHECK(static_cast<double>(delta) <= 8.0 * n * std::log2(n + 1.0));
  MESSAGE("delta total " << delta << ", cut/link pairs " << pairs << ", stored entries " << s.stored_entries());
}
