#include "hpq/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "hpq/errors.hpp"

namespace hpq {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

int angle_half(std::int64_t x, std::int64_t y) { return (y < 0 || (y == 0 && x < 0)) ? 1 : 0; }

bool angle_less(const Point& u, const Point& v) {
  const int hu = angle_half(u.x, u.y), hv = angle_half(v.x, v.y);
  if (hu != hv) return hu < hv;
  return u.x * v.y - u.y * v.x > 0;
}

// Lattice polygon with edge vectors drawn from an ellipse with semi-axes
// (ax, ay); the closing edge absorbs the residual sum.
std::vector<Point> lattice_polygon(std::size_t n, double ax, double ay, std::mt19937_64& rng) {
  std::set<std::pair<std::int64_t, std::int64_t>> used;
  std::vector<Point> vecs;
  vecs.reserve(n);
  auto ix = static_cast<std::int64_t>(std::ceil(ax)), iy = static_cast<std::int64_t>(std::ceil(ay));
  std::uniform_int_distribution<std::int64_t> dx(-ix, ix), dy(-iy, iy);
  auto draw = [&]() {
    for (;;) {
      const std::int64_t x = dx(rng), y = dy(rng);
      if (x == 0 && y == 0) continue;
      const double ex = x / ax, ey = y / ay;
      if (ex * ex + ey * ey > 1.0) continue;
      if (gcd64(x, y) != 1 || used.count({x, y})) continue;
      return Point{x, y};
    }
  };
  Point sum{0, 0};
  while (vecs.size() + 1 < n) {
    // Two choices, keep the one that pulls the running sum toward zero.
    const Point a = draw(), b = draw();
    auto norm = [&](const Point& v) {
      const double x = static_cast<double>(sum.x + v.x), y = static_cast<double>(sum.y + v.y);
      return x * x + y * y;
    };
    const Point v = norm(a) <= norm(b) ? a : b;
    used.insert({v.x, v.y});
    vecs.push_back(v);
    sum.x += v.x;
    sum.y += v.y;
  }
  const Point close{-sum.x, -sum.y};
  if (close.x == 0 && close.y == 0) return {};
  const std::int64_t g = gcd64(close.x, close.y);
  if (used.count({close.x / g, close.y / g})) return {};
  vecs.push_back(close);
  std::sort(vecs.begin(), vecs.end(), angle_less);

  std::vector<Point> pts(n);
  Point cur{0, 0};
  std::int64_t minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = cur;
    minx = std::min(minx, cur.x);
    maxx = std::max(maxx, cur.x);
    miny = std::min(miny, cur.y);
    maxy = std::max(maxy, cur.y);
    cur.x += vecs[i].x;
    cur.y += vecs[i].y;
  }
  const std::int64_t cx = (minx + maxx) / 2, cy = (miny + maxy) / 2;
  for (auto& p : pts) {
    p.x -= cx;
    p.y -= cy;
  }
  std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(rng() % n), pts.end());
  return pts;
}

std::vector<Point> parabola_arc(std::size_t n, std::mt19937_64& rng) {
  // Four points of y = x^2 are concyclic only if their abscissae sum to zero,
  // so positive abscissae rule out cocircularity.
  constexpr std::int64_t kMaxX = 4096;
  std::set<std::int64_t> xs;
  std::uniform_int_distribution<std::int64_t> d(1, kMaxX);
  while (xs.size() < n) xs.insert(d(rng));
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::int64_t x : xs) pts.push_back({x - kMaxX / 2, x * x - (kMaxX * kMaxX) / 2});
  return pts;
}

}  // namespace

const char* to_string(Shape s) {
  switch (s) {
    case Shape::circle:
      return "circle";
    case Shape::ellipse:
      return "ellipse";
    case Shape::parabola_arc:
      return "parabola-arc";
  }
  return "?";
}

Shape shape_from_string(const std::string& s) {
  if (s == "circle") return Shape::circle;
  if (s == "ellipse") return Shape::ellipse;
  if (s == "parabola-arc") return Shape::parabola_arc;
  throw InvalidInput("unknown shape '" + s + "' (expected circle|ellipse|parabola-arc)");
}

QueryOutcome bf_query(std::span<const Point> sites, const Point& q, const DirectedLine& l, Mode mode) {
  QueryOutcome best;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!left_of(l, sites[i])) continue;
    const auto id = static_cast<SiteId>(i + 1);
    if (!best || better_site(mode, q, sites[i], id, sites[*best - 1], *best)) best = id;
  }
  return best;
}

SiteId bf_extreme(std::span<const Point> sites, const Point& q, Mode mode) {
  if (sites.empty()) throw ContractViolation("bf_extreme on an empty set");
  SiteId best = 1;
  for (std::size_t i = 1; i < sites.size(); ++i) {
    const auto id = static_cast<SiteId>(i + 1);
    if (better_site(mode, q, sites[i], id, sites[best - 1], best)) best = id;
  }
  return best;
}

std::vector<Triangle> bf_delaunay(std::span<const Point> sites, Mode mode) {
  const std::size_t n = sites.size();
  if (n < 3 || n > 64) throw ContractViolation("bf_delaunay needs 3 <= n <= 64");
  std::vector<Triangle> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        bool ok = true;
        for (std::size_t d = 0; d < n && ok; ++d) {
          if (d == a || d == b || d == c) continue;
          const int s = incircle_sign(sites[a], sites[b], sites[c], sites[d]);
          if (s == 0) throw DegenerateInput("four cocircular sites");
          ok = s * mode_sign(mode) < 0;
        }
        if (ok) {
          out.push_back({static_cast<SiteId>(a + 1), static_cast<SiteId>(b + 1),
                         static_cast<SiteId>(c + 1)});
        }
      }
    }
  }
  if (out.size() != n - 2) {
    throw ContractViolation("bf_delaunay produced " + std::to_string(out.size()) + " triangles for " +
                            std::to_string(n) + " sites");
  }
  return out;
}

bool has_cocircular_quadruple(std::span<const Point> sites, bool exhaustive) {
  const std::size_t n = sites.size();
  if (n < 4) return false;
  if (!exhaustive) {
    for (std::size_t i = 0; i < n; ++i) {
      if (incircle_sign(sites[i], sites[(i + 1) % n], sites[(i + 2) % n], sites[(i + 3) % n]) == 0) {
        return true;
      }
    }
    return false;
  }
  // Circles through a and b are parametrised by the position of their centre
  // on the bisector of ab; c and d share a circle with a, b iff they give the
  // same parameter t(c) = (|c|^2 - b.c) / (2 cross(b, c)), coordinates relative to a.
  struct Val {
    double approx;
    std::int64_t num, den;
  };
  std::vector<Val> vals;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::int64_t bx = sites[b].x - sites[a].x, by = sites[b].y - sites[a].y;
      vals.clear();
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::int64_t cx = sites[c].x - sites[a].x, cy = sites[c].y - sites[a].y;
        std::int64_t num = cx * cx + cy * cy - (bx * cx + by * cy);
        std::int64_t den = 2 * (bx * cy - by * cx);
        if (den < 0) {
          num = -num;
          den = -den;
        }
        vals.push_back({static_cast<double>(num) / static_cast<double>(den), num, den});
      }
      std::sort(vals.begin(), vals.end(), [](const Val& x, const Val& y) { return x.approx < y.approx; });
      for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
          const double tol = 1e-9 * std::max(1.0, std::abs(vals[i].approx));
          if (vals[j].approx - vals[i].approx > tol) break;
          if (i128{vals[i].num} * vals[j].den == i128{vals[j].num} * vals[i].den) return true;
        }
      }
    }
  }
  return false;
}

namespace {

// Both dual trees build without meeting a cocircular tested triangle.
bool builds_cleanly(std::span<const Point> pts) {
  for (Mode mode : {Mode::Farthest, Mode::Nearest}) {
    DualTree t(mode);
    try {
      for (const Point& p : pts) t.insert_ccw(p);
    } catch (const DegenerateInput&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Instance gen_convex(std::size_t n, std::uint64_t seed, Shape shape, Mode mode) {
  if (n < 3) throw InvalidInput("gen_convex needs n >= 3");
  if (shape == Shape::parabola_arc && n > 4096) {
    throw InvalidInput("parabola-arc instances support at most 4096 sites");
  }
  std::mt19937_64 rng(mix(seed ^ mix(n * 3 + static_cast<std::uint64_t>(shape))));

  // Enough primitive lattice vectors to pick from (about 4n), and edge
  // lengths that put the radius near 2^20 when n is small enough.
  const double r_min = 1.5 * std::sqrt(static_cast<double>(n));
  const double r_target = 1.5 * 2 * std::numbers::pi * static_cast<double>(1 << 20) / static_cast<double>(n);
  const double rv = std::max(r_min, r_target);
  const double aspect = shape == Shape::ellipse ? 2.0 : 1.0;

  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Point> pts = shape == Shape::parabola_arc
                                 ? parabola_arc(n, rng)
                                 : lattice_polygon(n, rv * aspect, rv / aspect, rng);
    if (pts.empty()) continue;
    if (!std::all_of(pts.begin(), pts.end(), in_bound)) {
      throw InvalidInput("n = " + std::to_string(n) + " does not fit the coordinate bound");
    }
    ConvexSequence seq;
    try {
      seq = ConvexSequence::from_points(pts);
    } catch (const InvalidInput&) {
      continue;
    }
    if (has_cocircular_quadruple(seq.points(), n <= 512)) continue;
    if (n > 512 && !builds_cleanly(seq.points())) continue;
    return Instance{mode, std::move(seq), seed, shape};
  }
  throw InvalidInput("gen_convex: no valid instance after 64 attempts");
}

std::vector<HalfplaneQuery> gen_queries(std::span<const Point> sites, std::size_t count,
                                        std::uint64_t seed) {
  if (sites.empty()) throw ContractViolation("gen_queries on an empty set");
  std::mt19937_64 rng(mix(seed ^ 0x5eed));
  std::int64_t minx = sites[0].x, maxx = minx, miny = sites[0].y, maxy = miny;
  for (const auto& p : sites) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const std::int64_t padx = std::max<std::int64_t>(4, (maxx - minx) / 2);
  const std::int64_t pady = std::max<std::int64_t>(4, (maxy - miny) / 2);
  auto clamp = [](std::int64_t v) { return std::clamp(v, -kCoordBound, kCoordBound); };
  std::uniform_int_distribution<std::int64_t> ux(clamp(minx - padx), clamp(maxx + padx));
  std::uniform_int_distribution<std::int64_t> uy(clamp(miny - pady), clamp(maxy + pady));
  std::uniform_int_distribution<std::size_t> us(0, sites.size() - 1);
  auto rand_point = [&]() { return Point{ux(rng), uy(rng)}; };

  std::vector<HalfplaneQuery> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto kind = rng() % 20;
    HalfplaneQuery hq{rand_point(), {rand_point(), rand_point()}};
    if (kind < 2) {
      // Line through two sites.
      const std::size_t i = us(rng), j = us(rng);
      if (i != j) hq.l = {sites[i], sites[j]};
    } else if (kind < 4) {
      // Line through one site.
      hq.l.a = sites[us(rng)];
    } else if (kind < 6) {
      hq.q = sites[us(rng)];
    } else if (kind < 8) {
      // Query point on the perpendicular bisector of two sites.
      const Point a = sites[us(rng)], b = sites[us(rng)];
      if ((a.x + b.x) % 2 == 0 && (a.y + b.y) % 2 == 0 && !(a == b)) {
        std::int64_t px = -(b.y - a.y), py = b.x - a.x;
        const std::int64_t g = std::gcd(px, py);
        px /= g;
        py /= g;
        const auto t = static_cast<std::int64_t>(rng() % 64) - 32;
        const Point m{(a.x + b.x) / 2 + t * px, (a.y + b.y) / 2 + t * py};
        if (in_bound(m)) hq.q = m;
      }
    } else if (kind < 9) {
      // Line far from the hull in either orientation.
      const Point a{clamp(minx - padx), clamp(miny - pady)}, b{clamp(maxx + padx), clamp(miny - pady)};
      hq.l = rng() % 2 ? DirectedLine{a, b} : DirectedLine{b, a};
    }
    if (hq.l.a == hq.l.b) continue;
    out.push_back(hq);
  }
  return out;
}

}  // namespace hpq
