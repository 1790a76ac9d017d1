#include <doctest.h>

#include <random>

#include "hpq/errors.hpp"
#include "hpq/geometry.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;

TEST_CASE("orientation signs") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orientation({0, 0}, {0, 1}, {1, 1}) == -1);
}

TEST_CASE("side_of_line on a vertical line") {
  const DirectedLine l{{0, -1}, {0, 1}};
  CHECK(side_of_line(l, {-1, 0}) == 1);
  CHECK(side_of_line(l, {0, 5}) == 0);
  CHECK(side_of_line(l, {1, 0}) == -1);
  CHECK(left_of(l, {0, 5}));
}

TEST_CASE("incircle_conflict") {
  const Point a{0, 0}, b{2, 0}, c{0, 2};
  CHECK(incircle_conflict(a, b, c, {1, 1}, Mode::Nearest));
  CHECK_FALSE(incircle_conflict(a, b, c, {1, 1}, Mode::Farthest));
  CHECK_FALSE(incircle_conflict(a, b, c, {2, 2}, Mode::Nearest));
  CHECK_FALSE(incircle_conflict(a, b, c, {2, 2}, Mode::Farthest));
  CHECK(incircle_conflict(a, b, c, {3, 3}, Mode::Farthest));
  CHECK_THROWS_AS(incircle_conflict(a, c, b, {1, 1}, Mode::Nearest), ContractViolation);
}

TEST_CASE("incircle modes are never both violated") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> u(-kCoordBound, kCoordBound);
  int checked = 0;
  while (checked < 20000) {
    Point p[4];
    for (auto& x : p) x = {u(rng), u(rng)};
    if (orientation(p[0], p[1], p[2]) <= 0) std::swap(p[1], p[2]);
    if (orientation(p[0], p[1], p[2]) == 0) continue;
    CHECK_FALSE((incircle_conflict(p[0], p[1], p[2], p[3], Mode::Nearest) &&
                 incircle_conflict(p[0], p[1], p[2], p[3], Mode::Farthest)));
    ++checked;
  }
}

TEST_CASE("incircle is exact at the coordinate bound") {
  const std::int64_t B = kCoordBound;
  // Four corners of the bounding square are cocircular.
  CHECK(incircle_sign({B, -B}, {B, B}, {-B, B}, {-B, -B}) == 0);
  CHECK(incircle_sign({B, -B}, {B, B}, {-B, B}, {-B + 1, -B + 1}) == 1);
  CHECK(incircle_sign({B, -B}, {B, B}, {-B, B + 0}, {-B, -B + 0}) == 0);
}

TEST_CASE("cmp_dist") {
  CHECK(cmp_dist({0, 0}, {1, 1}, {2, 0}) == std::strong_ordering::less);
  CHECK(cmp_dist({0, 0}, {3, 4}, {5, 0}) == std::strong_ordering::equal);
  CHECK(cmp_dist({2, 0}, {-1, 0}, {0, 1}) == std::strong_ordering::greater);
}

TEST_CASE("orientation antisymmetry") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> u(-kCoordBound, kCoordBound);
  for (int t = 0; t < 20000; ++t) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const int o = orientation(a, b, c);
    CHECK(orientation(b, a, c) == -o);
    CHECK(orientation(a, c, b) == -o);
    CHECK(orientation(c, b, a) == -o);
  }
}

TEST_CASE("left_interval on the diamond") {
  const std::vector<Point> hull{{4, 0}, {0, 4}, {-4, 0}, {0, -4}};
  CHECK(left_interval(hull, {{0, -9}, {0, 9}}) == LeftInterval{LeftInterval::Kind::Range, 2, 4});
  CHECK(left_interval(hull, {{5, -5}, {5, 5}}).kind == LeftInterval::Kind::Full);
  // A downward line at x = -5 has the whole diamond on its left; the upward
  // one has none of it.
  CHECK(left_interval(hull, {{-5, 5}, {-5, -5}}).kind == LeftInterval::Kind::Full);
  CHECK(left_interval(hull, {{-5, -5}, {-5, 5}}).kind == LeftInterval::Kind::Empty);
  CHECK(left_interval_scan(hull, {{-5, -5}, {-5, 5}}).kind == LeftInterval::Kind::Empty);
}

TEST_CASE("left_interval agrees with a linear scan") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 3 + seed * 7 % 90;
    const auto shape = static_cast<Shape>(seed % 3);
    const Instance inst = gen_convex(n, seed, shape);
    const auto pts = inst.sites.points();
    for (const auto& hq : gen_queries(pts, 500, seed)) {
      REQUIRE(left_interval(pts, hq.l) == left_interval_scan(pts, hq.l));
    }
    // Every line through two hull vertices, both directions.
    if (n <= 30) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const DirectedLine l{pts[i], pts[j]};
          REQUIRE(left_interval(pts, l) == left_interval_scan(pts, l));
        }
      }
    }
  }
}

TEST_CASE("circumcenter") {
  CHECK(circumcenter({0, 0}, {2, 0}, {0, 2}) == RationalPoint{1, 1, 1});
  CHECK(circumcenter({0, 0}, {4, 0}, {0, 2}) == RationalPoint{2, 1, 1});
  CHECK(circumcenter({0, 0}, {6, 0}, {3, 3}) == RationalPoint{3, 0, 1});
  CHECK_THROWS_AS(circumcenter({0, 0}, {1, 1}, {2, 2}), DegenerateInput);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> u(-kCoordBound, kCoordBound);
  for (int t = 0; t < 5000; ++t) {
    const Point p[3] = {{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    if (orientation(p[0], p[1], p[2]) == 0) continue;
    const RationalPoint c = circumcenter(p[0], p[1], p[2]);
    REQUIRE(c.d > 0);
    // |c - p|^2 d^2 = (nx - px d)^2 + (ny - py d)^2; compare modulo 2^128 is
    // enough here since the exact values agree.
    auto r2 = [&](const Point& q) {
      const i128 dx = c.nx - i128{q.x} * c.d, dy = c.ny - i128{q.y} * c.d;
      return static_cast<unsigned __int128>(dx * dx + dy * dy);
    };
    CHECK(r2(p[0]) == r2(p[1]));
    CHECK(r2(p[1]) == r2(p[2]));
  }
}

TEST_CASE("sector_of examples in nearest mode") {
  // Circumcenter (0,0); q=(2,1) lies between the rays toward (1,0) and (0,1).
  CHECK(sector_of({1, 0}, {0, 1}, {-1, 0}, {2, 1}, Mode::Nearest) == Sector::toward_left);
  CHECK(sector_of({1, 0}, {0, 1}, {-1, 0}, {0, 0}, Mode::Nearest) == Sector::toward_parent);
  CHECK(sector_of({0, 0}, {2, 0}, {0, 2}, {5, 5}, Mode::Nearest) == Sector::toward_right);
  CHECK(sector_of({0, 0}, {2, 0}, {0, 2}, {1, 1}, Mode::Nearest) == Sector::toward_parent);
}

TEST_CASE("sector_of sectors contain the best corner") {
  // Every triangle vertex is equidistant from the circumcenter, so the best
  // of the three for q is the corner whose ray is angularly closest to q;
  // it must be one of the two corners bounding q's sector.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> u(-1000, 1000);
  int checked = 0;
  while (checked < 20000) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    if (orientation(a, b, c) == 0) continue;
    if (orientation(a, b, c) < 0) std::swap(b, c);
    const Point q{u(rng), u(rng)};
    const auto d0 = dist2(q, a), d1 = dist2(q, b), d2 = dist2(q, c);
    if (d0 == d1 || d1 == d2 || d0 == d2) continue;
    ++checked;
    for (Mode mode : {Mode::Nearest, Mode::Farthest}) {
      const Point* s[3] = {&a, &b, &c};
      int best = 0;
      for (int i = 1; i < 3; ++i) {
        if (better_site(mode, q, *s[i], i + 1, *s[best], best + 1)) best = i;
      }
      const Sector sec = sector_of(a, b, c, q, mode);
      // parent: corners k,i; left: i,j; right: j,k.
      const bool ok = sec == Sector::toward_parent ? best != 1
                      : sec == Sector::toward_left ? best != 2
                                                   : best != 0;
      REQUIRE(ok);
    }
  }
}

TEST_CASE("ConvexSequence validation") {
  CHECK_NOTHROW(ConvexSequence::from_points({{0, 0}, {4, 0}, {5, 3}, {1, 4}}));
  CHECK_THROWS_AS(ConvexSequence::from_points({{0, 0}, {1, 4}, {5, 3}, {4, 0}}), InvalidInput);
  CHECK_THROWS_AS(ConvexSequence::from_points({{0, 0}, {1, 0}, {2, 0}}), InvalidInput);
  CHECK_THROWS_AS(ConvexSequence::from_points({{0, 0}, {kCoordBound + 1, 0}, {0, 1}}), InvalidInput);
  // A pentagram winds twice.
  CHECK_THROWS_AS(
      ConvexSequence::from_points({{10, 0}, {-8, 6}, {3, -10}, {3, 10}, {-8, -6}}), InvalidInput);
  ConvexSequence s;
  s.append({0, 0});
  s.append({4, 0});
  s.append({5, 3});
  CHECK_FALSE(s.can_append({6, 6}));
  CHECK(s.can_append({1, 4}));
  CHECK_THROWS_AS(s.append({10, 0}), InvalidInput);
}
