#include "hpq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hpq/errors.hpp"

namespace hpq {

namespace {

int sign(std::int64_t v) { return (v > 0) - (v < 0); }
int sign(i128 v) { return (v > 0) - (v < 0); }

std::int64_t cross(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
  return ax * by - ay * bx;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Vec {
  std::int64_t x, y;
};

Vec operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
std::int64_t cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
std::int64_t dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }

// Pseudo-angle half relative to the positive x axis: [0, pi) -> 0, [pi, 2pi) -> 1.
int half(const Vec& v) { return (v.y < 0 || (v.y == 0 && v.x < 0)) ? 1 : 0; }

bool angle_less(const Vec& u, const Vec& v) {
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return cross(u, v) > 0;
}

// Angle of v measured counterclockwise from base, compared without trig.
int half_rel(const Vec& base, const Vec& v) {
  std::int64_t c = cross(base, v);
  return (c > 0 || (c == 0 && dot(base, v) > 0)) ? 0 : 1;
}

bool rel_less(const Vec& base, const Vec& v, const Vec& w) {
  int hv = half_rel(base, v), hw = half_rel(base, w);
  if (hv != hw) return hv < hw;
  return cross(v, w) > 0;
}

Vec edge(std::span<const Point> hull, std::size_t i) {
  const std::size_t n = hull.size();
  return hull[(i + 1) % n] - hull[i];
}

// First edge index (0-based) whose direction is at or after u, sweeping
// counterclockwise from edge 0; wraps to 0 when no such edge exists.
std::size_t first_edge_at_or_after(std::span<const Point> hull, const Vec& u) {
  const Vec base = edge(hull, 0);
  std::size_t lo = 0, hi = hull.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (rel_less(base, edge(hull, mid), u)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo == hull.size() ? 0 : lo;
}

// Circumcenter of (a, b, c) relative to a: center = a + (ux, uy) / den.
struct RelCenter {
  i128 ux, uy;
  std::int64_t den;
};

RelCenter rel_circumcenter(const Point& a, const Point& b, const Point& c) {
  const Vec B = b - a, C = c - a;
  const std::int64_t den = 2 * cross(B, C);
  if (den == 0) throw DegenerateInput("circumcenter of collinear points");
  const i128 b2 = dot(B, B), c2 = dot(C, C);
  return {i128{C.y} * b2 - i128{B.y} * c2, i128{B.x} * c2 - i128{C.x} * b2, den};
}

// sign(cross(p - center, q - center)) with p, q given relative to the same
// origin as the center.
int orient_about(const RelCenter& cc, const Vec& p, const Vec& q) {
  const i128 inner = i128{cc.den} * cross(p, q) - (i128{p.x} * cc.uy - i128{p.y} * cc.ux) +
                     (i128{q.x} * cc.uy - i128{q.y} * cc.ux);
  return sign(inner) * sign(cc.den);
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::Farthest ? "farthest" : "nearest"; }

Mode mode_from_string(const std::string& s) {
  if (s == "farthest") return Mode::Farthest;
  if (s == "nearest") return Mode::Nearest;
  throw InvalidInput("unknown mode '" + s + "' (expected farthest|nearest)");
}

std::string to_string(const QueryOutcome& o) {
  return o ? std::to_string(*o) : std::string("EmptyHalfplane");
}

bool in_bound(const Point& p) {
  return p.x >= -kCoordBound && p.x <= kCoordBound && p.y >= -kCoordBound && p.y <= kCoordBound;
}

void require_in_bound(const Point& p) {
  if (!in_bound(p)) throw InvalidInput("coordinate out of range: " + to_string(p));
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os << '(' << p.x << ',' << p.y << ')';
  return os.str();
}

int orientation(const Point& a, const Point& b, const Point& c) { return sign(cross(b - a, c - a)); }

int side_of_line(const DirectedLine& l, const Point& p) { return orientation(l.a, l.b, p); }

int incircle_sign(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Vec A = a - d, B = b - d, C = c - d;
  const i128 la = dot(A, A), lb = dot(B, B), lc = dot(C, C);
  const i128 det = la * cross(B, C) - lb * cross(A, C) + lc * cross(A, B);
  return sign(det);
}

bool incircle_conflict(const Point& a, const Point& b, const Point& c, const Point& d, Mode mode) {
  if (orientation(a, b, c) <= 0) {
    throw ContractViolation("incircle_conflict: triangle " + to_string(a) + to_string(b) +
                            to_string(c) + " is not counterclockwise");
  }
  return incircle_sign(a, b, c, d) * mode_sign(mode) > 0;
}

std::int64_t dist2(const Point& a, const Point& b) {
  const Vec v = a - b;
  return dot(v, v);
}

std::strong_ordering cmp_dist(const Point& q, const Point& a, const Point& b) {
  return dist2(q, a) <=> dist2(q, b);
}

bool better_site(Mode mode, const Point& q, const Point& a, SiteId ia, const Point& b, SiteId ib) {
  const auto c = cmp_dist(q, a, b);
  if (c == 0) return ia < ib;
  return mode == Mode::Farthest ? c > 0 : c < 0;
}

RationalPoint circumcenter(const Point& a, const Point& b, const Point& c) {
  const RelCenter rc = rel_circumcenter(a, b, c);
  RationalPoint r{i128{a.x} * rc.den + rc.ux, i128{a.y} * rc.den + rc.uy, rc.den};
  if (r.d < 0) {
    r.nx = -r.nx;
    r.ny = -r.ny;
    r.d = -r.d;
  }
  const i128 g = gcd128(gcd128(r.nx, r.ny), r.d);
  if (g > 1) {
    r.nx /= g;
    r.ny /= g;
    r.d /= g;
  }
  return r;
}

Point outward_direction(const Point& prev, const Point& cur, const Point& next) {
  (void)cur;
  return {next.y - prev.y, -(next.x - prev.x)};
}

namespace {

Sector sector_farthest(const Point& pi, const Point& pj, const Point& pk, const Point& q) {
  const RelCenter cc = rel_circumcenter(pi, pj, pk);
  const Vec vi{0, 0}, vj = pj - pi, vk = pk - pi, vq = q - pi;
  if (i128{vq.x} * cc.den == cc.ux && i128{vq.y} * cc.den == cc.uy) return Sector::toward_parent;

  // Rays point from the corners through C and beyond: direction C - corner.
  auto ray_q = [&](const Vec& p) { return -orient_about(cc, p, vq); };  // cross(ray_p, q - C)
  auto q_ray = [&](const Vec& p) { return orient_about(cc, p, vq); };   // cross(q - C, ray_p)
  auto in_sweep = [&](const Vec& from, const Vec& to) {
    const int turn = orient_about(cc, from, to);
    if (turn > 0) return ray_q(from) >= 0 && q_ray(to) >= 0;
    if (turn < 0) return ray_q(from) >= 0 || q_ray(to) >= 0;
    return ray_q(from) >= 0;
  };
  if (in_sweep(vk, vi)) return Sector::toward_parent;
  if (in_sweep(vi, vj)) return Sector::toward_left;
  return Sector::toward_right;
}

// Direction with i128 components; used for C - q scaled by |den|.
struct WideVec {
  i128 x, y;
};

long double signed_angle(i128 cr, i128 dt) {
  return std::atan2(static_cast<long double>(cr), static_cast<long double>(dt));
}

long double angle_between(const Vec& u, const Vec& w) {
  return signed_angle(i128{u.x} * w.y - i128{u.y} * w.x, i128{u.x} * w.x + i128{u.y} * w.y);
}

long double angle_between(const Vec& u, const WideVec& w) {
  return signed_angle(i128{u.x} * w.y - i128{u.y} * w.x, i128{u.x} * w.x + i128{u.y} * w.y);
}

long double angle_between(const WideVec& u, const Vec& w) {
  return signed_angle(u.x * w.y - u.y * w.x, u.x * w.x + u.y * w.y);
}

Sector sector_nearest(const Point& pi, const Point& pj, const Point& pk, const Point& vi_dir,
                      const Point& vj_dir, const Point& vk_dir, const Point& q) {
  const RelCenter cc = rel_circumcenter(pi, pj, pk);
  const Vec P[3] = {{0, 0}, pj - pi, pk - pi};
  const Vec V[3] = {{vi_dir.x, vi_dir.y}, {vj_dir.x, vj_dir.y}, {vk_dir.x, vk_dir.y}};
  const Vec Q = q - pi;
  if (i128{Q.x} * cc.den == cc.ux && i128{Q.y} * cc.den == cc.uy) return Sector::toward_parent;

  // C - q scaled by |den| so that it keeps its direction.
  const i128 sd = cc.den > 0 ? 1 : -1;
  const WideVec cq{sd * (cc.ux - i128{Q.x} * cc.den), sd * (cc.uy - i128{Q.y} * cc.den)};

  auto on_curve = [&](int s) {
    const Vec d{Q.x - P[s].x, Q.y - P[s].y};
    if (cross(V[s], d) == 0 && dot(V[s], d) >= 0) return true;  // on the ray (or q == corner)
    if (orient_about(cc, P[s], Q) != 0) return false;
    // Collinear with C and the corner: check betweenness on one axis.
    const i128 c_x = cc.ux * sd, c_y = cc.uy * sd, dd = i128{cc.den} * sd;
    const i128 qx = i128{Q.x} * dd, px = i128{P[s].x} * dd;
    const i128 qy = i128{Q.y} * dd, py = i128{P[s].y} * dd;
    if (c_x != px) return qx >= std::min(c_x, px) && qx <= std::max(c_x, px);
    return qy <= std::max(c_y, py) && qy >= std::min(c_y, py);
  };
  if (on_curve(0) || on_curve(2)) return Sector::toward_parent;
  if (on_curve(1)) return Sector::toward_left;

  // Winding of the loop: in from infinity along curve b, through C, out along
  // curve a, closed counterclockwise at infinity from v_a to v_b.
  auto inside = [&](int a, int b) {
    const Vec pb{P[b].x - Q.x, P[b].y - Q.y}, pa{P[a].x - Q.x, P[a].y - Q.y};
    long double t = angle_between(V[b], pb) + angle_between(pb, cq) + angle_between(cq, pa) +
                    angle_between(pa, V[a]);
    long double alpha = angle_between(V[a], V[b]);
    if (alpha <= 0) alpha += 2 * std::numbers::pi_v<long double>;
    return t + alpha > std::numbers::pi_v<long double>;
  };
  if (inside(2, 0)) return Sector::toward_parent;
  if (inside(0, 1)) return Sector::toward_left;
  return Sector::toward_right;
}

}  // namespace

Sector sector_of(const Point& pi, const Point& pj, const Point& pk, const Point& vi, const Point& vj,
                 const Point& vk, const Point& q, Mode mode) {
  if (mode == Mode::Farthest) return sector_farthest(pi, pj, pk, q);
  return sector_nearest(pi, pj, pk, vi, vj, vk, q);
}

Sector sector_of(const Point& pi, const Point& pj, const Point& pk, const Point& q, Mode mode) {
  if (mode == Mode::Farthest) return sector_farthest(pi, pj, pk, q);
  return sector_nearest(pi, pj, pk, outward_direction(pk, pi, pj), outward_direction(pi, pj, pk),
                        outward_direction(pj, pk, pi), q);
}

ConvexSequence ConvexSequence::from_points(std::vector<Point> pts) {
  for (const auto& p : pts) require_in_bound(p);
  const std::size_t n = pts.size();
  if (n == 2 && pts[0] == pts[1]) throw InvalidInput("duplicate points");
  if (n >= 3) {
    std::size_t descents = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = pts[i];
      const Point& b = pts[(i + 1) % n];
      const Point& c = pts[(i + 2) % n];
      if (orientation(a, b, c) <= 0) {
        throw InvalidInput("not strictly convex counterclockwise at sites " + std::to_string(i + 1) +
                           ".." + std::to_string((i + 2) % n + 1));
      }
      if (!angle_less(b - a, c - b)) ++descents;
    }
    if (descents != 1) throw InvalidInput("sequence winds more than once (not a convex polygon)");
  }
  ConvexSequence s;
  s.pts_ = std::move(pts);
  return s;
}

bool ConvexSequence::can_append(const Point& p) const {
  if (!in_bound(p)) return false;
  const std::size_t n = pts_.size();
  if (n == 0) return true;
  if (n == 1) return !(p == pts_[0]);
  if (n == 2) return orientation(pts_[0], pts_[1], p) > 0;
  return orientation(pts_[n - 2], pts_[n - 1], p) > 0 && orientation(pts_[n - 1], p, pts_[0]) > 0 &&
         orientation(p, pts_[0], pts_[1]) > 0;
}

void ConvexSequence::append(const Point& p) {
  if (!can_append(p)) {
    throw InvalidInput("appending " + to_string(p) + " breaks strict convex counterclockwise order");
  }
  pts_.push_back(p);
}

LeftInterval left_interval(std::span<const Point> hull, const DirectedLine& l) {
  const std::size_t n = hull.size();
  if (n < 3) throw ContractViolation("left_interval needs at least 3 points");
  if (l.a == l.b) throw ContractViolation("degenerate query line");
  const Vec d = l.b - l.a;
  auto f = [&](std::size_t i) { return cross(d, hull[i] - l.a); };

  const std::size_t imax = first_edge_at_or_after(hull, Vec{-d.x, -d.y});
  const std::size_t imin = first_edge_at_or_after(hull, d);
  if (f(imax) < 0) return {LeftInterval::Kind::Empty, 0, 0};
  if (f(imin) >= 0) return {LeftInterval::Kind::Full, 0, 0};

  // Ascending chain imin -> imax: first vertex with f >= 0.
  const std::size_t up = (imax + n - imin) % n;
  std::size_t lo = 0, hi = up;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (f((imin + mid) % n) >= 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t first = (imin + lo) % n;

  // Descending chain imax -> imin: last vertex with f >= 0.
  const std::size_t down = (imin + n - imax) % n;
  lo = 0;
  hi = down;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (f((imax + mid) % n) >= 0) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  const std::size_t last = (imax + lo) % n;
  return {LeftInterval::Kind::Range, static_cast<SiteId>(first + 1), static_cast<SiteId>(last + 1)};
}

LeftInterval left_interval_scan(std::span<const Point> hull, const DirectedLine& l) {
  const std::size_t n = hull.size();
  std::vector<char> in(n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    in[i] = side_of_line(l, hull[i]) >= 0;
    count += in[i];
  }
  if (count == 0) return {LeftInterval::Kind::Empty, 0, 0};
  if (count == n) return {LeftInterval::Kind::Full, 0, 0};
  LeftInterval r{LeftInterval::Kind::Range, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i] && !in[(i + n - 1) % n]) r.first = static_cast<SiteId>(i + 1);
    if (in[i] && !in[(i + 1) % n]) r.last = static_cast<SiteId>(i + 1);
  }
  return r;
}

}  // namespace hpq
