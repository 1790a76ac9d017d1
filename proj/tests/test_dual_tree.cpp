#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hpq/dual_tree.hpp"
#include "hpq/errors.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;

namespace {

const std::vector<Point> kQuad{{0, 0}, {4, 0}, {5, 3}, {1, 4}};

DualTree build(std::span<const Point> pts, Mode mode) {
  DualTree t(mode);
  for (const auto& p : pts) t.insert_ccw(p);
  return t;
}

std::vector<Triangle> sorted(std::vector<Triangle> v) {
  std::sort(v.begin(), v.end(), [](const Triangle& a, const Triangle& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  return v;
}

void check_structure(const DualTree& t) {
  const std::size_t n = t.site_count();
  const auto order = t.topology().inorder();
  REQUIRE(order.size() == (n >= 3 ? n - 2 : 0));
  for (std::size_t i = 0; i < order.size(); ++i) REQUIRE(order[i] == i + 2);
  for (NodeId v : order) {
    const Triangle tri = t.triangle(v);
    REQUIRE(tri.i < tri.j);
    REQUIRE(tri.j < tri.k);
  }
  if (n < 3) return;
  // Spines: right spine = triangles incident to p_n, left spine = to p_1.
  for (NodeId v : order) {
    bool on_right = false, on_left = false;
    for (NodeId x = t.root(); x != kNil; x = t.topology().right(x)) on_right |= x == v;
    for (NodeId x = t.root(); x != kNil; x = t.topology().left(x)) on_left |= x == v;
    const Triangle tri = t.triangle(v);
    REQUIRE(on_right == (tri.k == n));
    REQUIRE(on_left == (tri.i == 1));
  }
  REQUIRE(t.parent_edge_marks(t.root()) == std::pair<SiteId, SiteId>{1, static_cast<SiteId>(n)});
}

}  // namespace

TEST_CASE("first triangle") {
  DualTree t(Mode::Farthest);
  t.insert_ccw({0, 0});
  t.insert_ccw({4, 0});
  CHECK(t.empty());
  t.insert_ccw({5, 3});
  REQUIRE(t.topology().node_count() == 1);
  CHECK(t.root() == 2);
  CHECK(t.triangle(2) == Triangle{1, 2, 3});
}

TEST_CASE("farthest insertion without conflicts") {
  DualTree t(Mode::Farthest);
  for (int i = 0; i < 3; ++i) t.insert_ccw(kQuad[i]);
  const auto res = t.insert_ccw(kQuad[3]);
  CHECK(res.anchored.empty());
  CHECK(t.root() == 3);
  CHECK(t.triangle(3) == Triangle{1, 3, 4});
  CHECK(t.topology().left(3) == 2);
  CHECK(t.triangle(2) == Triangle{1, 2, 3});
  // One relation is added (3 -left-> 2); node 2's parent changes only as the
  // other end of that same relation.
  CHECK(res.delta.count() == 1);
}

TEST_CASE("nearest insertion flips the first triangle") {
  DualTree t(Mode::Nearest);
  for (int i = 0; i < 3; ++i) t.insert_ccw(kQuad[i]);
  const auto res = t.insert_ccw(kQuad[3]);
  CHECK(res.anchored == std::vector<NodeId>{2});
  CHECK(sorted(t.triangles()) == std::vector<Triangle>{{1, 2, 4}, {2, 3, 4}});
  CHECK(t.topology().right_spine() == std::vector<NodeId>{2, 3});
}

TEST_CASE("insertion rejects bad sites") {
  DualTree t(Mode::Nearest);
  for (const Point& p : std::vector<Point>{{0, 0}, {2, 0}, {2, 2}}) t.insert_ccw(p);
  CHECK_THROWS_AS(t.insert_ccw({0, 2}), DegenerateInput);
  CHECK(t.site_count() == 3);
  CHECK_THROWS_AS(t.insert_ccw({3, 3}), InvalidInput);
  CHECK_NOTHROW(t.insert_ccw({0, 3}));
}

TEST_CASE("locate examples") {
  const DualTree t = build(kQuad, Mode::Farthest);
  CHECK(t.locate({0, 0}) == 3);
  CHECK(t.locate({10, 10}) == 1);
  DualTree one(Mode::Nearest);
  one.insert_ccw({5, 5});
  CHECK(one.locate({-100, 3}) == 1);
}

TEST_CASE("dual tree matches brute-force Delaunay triangulations") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 3 + (seed * 13) % 62;
    const Instance inst = gen_convex(n, seed, static_cast<Shape>(seed % 3));
    const auto pts = inst.sites.points();
    for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
      DualTree t(mode);
      for (std::size_t i = 0; i < n; ++i) {
        t.insert_ccw(pts[i]);
        check_structure(t);
        if (i + 1 >= 3 && (i + 1 == n || i % 5 == 0)) {
          REQUIRE(sorted(t.triangles()) == bf_delaunay(pts.subspan(0, i + 1), mode));
        }
      }
      // Every triangle satisfies the Delaunay condition against every site.
      for (const Triangle& tri : t.triangles()) {
        for (SiteId s = 1; s <= n; ++s) {
          REQUIRE_FALSE(
              incircle_conflict(pts[tri.i - 1], pts[tri.j - 1], pts[tri.k - 1], pts[s - 1], mode));
        }
      }
      // Edge marks are the internal diagonals plus the root ray (1, n).
      std::map<std::pair<SiteId, SiteId>, int> diag;
      for (const Triangle& tri : t.triangles()) {
        for (auto e : {std::pair{tri.i, tri.j}, std::pair{tri.j, tri.k}, std::pair{tri.i, tri.k}}) {
          ++diag[e];
        }
      }
      std::vector<std::pair<SiteId, SiteId>> expected{{1, static_cast<SiteId>(n)}}, got;
      for (const auto& [e, c] : diag) {
        if (c == 2) expected.push_back(e);
      }
      for (NodeId v : t.topology().inorder()) got.push_back(t.parent_edge_marks(v));
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      REQUIRE(got == expected);
    }
  }
}

TEST_CASE("locate and centroid locator agree with brute force") {
  for (std::uint64_t seed = 1; seed <= 24; ++seed) {
    const std::size_t n = seed < 4 ? seed : 3 + (seed * 37) % 300;
    std::vector<Point> pts(kQuad.begin(), kQuad.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(n, 4)));
    if (seed >= 4) {
      const Instance inst = gen_convex(n, seed, static_cast<Shape>(seed % 3));
      pts.assign(inst.sites.points().begin(), inst.sites.points().end());
    }
    for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
      const DualTree t = build(pts, mode);
      const CentroidLocator loc(t, 0);
      const SiteRing ring{pts, 1};
      const auto bound = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 2;
      for (const auto& hq : gen_queries(pts, 2000, seed)) {
        const SiteId want = bf_extreme(pts, hq.q, mode);
        REQUIRE(t.locate(hq.q) == want);
        int tests = 0;
        REQUIRE(loc.locate(ring, hq.q, &tests) == want);
        REQUIRE(tests <= bound);
      }
      // Circumcenters of every triangle are three-way ties.
      for (const Triangle& tri : t.triangles()) {
        const RationalPoint c = circumcenter(pts[tri.i - 1], pts[tri.j - 1], pts[tri.k - 1]);
        if (c.d != 1) continue;
        const Point q{static_cast<std::int64_t>(c.nx), static_cast<std::int64_t>(c.ny)};
        if (!in_bound(q)) continue;
        REQUIRE(t.locate(q) == bf_extreme(pts, q, mode));
        REQUIRE(loc.locate(ring, q) == bf_extreme(pts, q, mode));
      }
    }
  }
}

TEST_CASE("centroid locator on the quad") {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    const DualTree t = build(kQuad, mode);
    const CentroidLocator loc(t, 0);
    const SiteRing ring{kQuad, 1};
    for (std::int64_t x = -64; x <= 64; ++x) {
      for (std::int64_t y = -64; y <= 64; ++y) {
        REQUIRE(loc.locate(ring, {x, y}) == bf_extreme(kQuad, {x, y}, mode));
      }
    }
  }
}

TEST_CASE("centroid depth") {
  const std::vector<Point> tri{{0, 0}, {4, 0}, {5, 3}};
  CHECK(CentroidLocator(build(tri, Mode::Farthest), 0).depth() == 1);

  // Parabola sites in nearest mode never conflict with the newest site's
  // neighbourhood beyond one triangle, so look for a path-shaped tree.
  bool found_path = false;
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    std::vector<Point> pts;
    for (std::int64_t x = 1; x <= 9; ++x) pts.push_back({x, x * x});
    const DualTree t = build(pts, mode);
    bool path = true;
    for (NodeId v : t.topology().inorder()) {
      path &= t.topology().left(v) == kNil || t.topology().right(v) == kNil;
    }
    if (path) {
      found_path = true;
      CHECK(t.topology().node_count() == 7);
      CHECK(CentroidLocator(t, 0).depth() <= 3);
    }
  }
  CHECK(found_path);
}

TEST_CASE("wrapped windows report ring labels") {
  const Instance inst = gen_convex(40, 5, Shape::circle);
  const auto pts = inst.sites.points();
  const std::size_t n = pts.size();
  for (std::uint32_t offset : {0u, 17u, 35u}) {
    for (std::uint32_t len : {1u, 2u, 3u, 9u, 40u}) {
      std::vector<Point> window;
      for (std::uint32_t s = 0; s < len; ++s) window.push_back(pts[(offset + s) % n]);
      for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
        const DualTree t = build(window, mode);
        const CentroidLocator loc(t, offset);
        const SiteRing ring{pts, 1};
        for (const auto& hq : gen_queries(pts, 300, offset + len)) {
          SiteId want = 0;
          for (std::uint32_t s = 0; s < len; ++s) {
            const auto id = static_cast<SiteId>((offset + s) % n + 1);
            if (want == 0 || better_site(mode, hq.q, pts[id - 1], id, pts[want - 1], want)) want = id;
          }
          INFO("offset ", offset, " len ", len, " mode ", std::string(to_string(mode)), " q ", to_string(hq.q));
          REQUIRE(loc.locate(ring, hq.q) == want);
        }
      }
    }
  }
}

TEST_CASE("insertion flarbs respect the amortized bound") {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    const std::size_t n = 1024;
    const Instance inst = gen_convex(n, 1, Shape::circle, mode);
    DualTree t(mode);
    double total = 0;
    for (const Point& p : inst.sites.points()) {
      const auto r = t.insert_ccw(p);
      total += static_cast<double>(r.delta.count());
      REQUIRE(amortized_check(r.delta.count(), r.potential_change, t.topology().node_count(), kFlarbC));
    }
    CHECK(total <= kFlarbC * n * std::log2(n + 1.0));
  }
}
