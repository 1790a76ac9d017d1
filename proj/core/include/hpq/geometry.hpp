#pragma once

// Exact integer predicates for points in convex position.
//
// All coordinates are bounded by |x|, |y| <= 2^24. Under that bound every
// predicate below is evaluated exactly: orientation and squared distances fit
// in 64 bits, the incircle determinant and the sector tests fit in 128 bits.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hpq {

using i128 = __int128;

inline constexpr std::int64_t kCoordBound = std::int64_t{1} << 24;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct DirectedLine {
  Point a;  // tail
  Point b;  // head
};

enum class Mode { Farthest, Nearest };

constexpr int mode_sign(Mode m) { return m == Mode::Farthest ? -1 : 1; }
const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);

// 1-based site index; 0 is never a valid site.
using SiteId = std::uint32_t;

// Answer to a halfplane query: a site, or nullopt when no site lies on the
// closed left side of the line (EmptyHalfplane).
using QueryOutcome = std::optional<SiteId>;
std::string to_string(const QueryOutcome& o);

struct RationalPoint {
  i128 nx = 0;
  i128 ny = 0;
  i128 d = 1;  // > 0

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.nx * b.d == b.nx * a.d && a.ny * b.d == b.ny * a.d;
  }
};

bool in_bound(const Point& p);
void require_in_bound(const Point& p);
std::string to_string(const Point& p);

int orientation(const Point& a, const Point& b, const Point& c);
int side_of_line(const DirectedLine& l, const Point& p);
inline bool left_of(const DirectedLine& l, const Point& p) { return side_of_line(l, p) >= 0; }

// Sign of the standard incircle determinant: +1 when d is strictly inside the
// circle through the counterclockwise triangle (a, b, c), -1 strictly outside.
int incircle_sign(const Point& a, const Point& b, const Point& c, const Point& d);

// d violates the Delaunay condition of the mode for (a, b, c). Throws
// ContractViolation unless (a, b, c) is counterclockwise.
bool incircle_conflict(const Point& a, const Point& b, const Point& c, const Point& d, Mode mode);

std::int64_t dist2(const Point& a, const Point& b);
std::strong_ordering cmp_dist(const Point& q, const Point& a, const Point& b);

// Whether site a (index ia) beats site b (index ib) for query q. Equal
// distances resolve toward the smaller index.
bool better_site(Mode mode, const Point& q, const Point& a, SiteId ia, const Point& b, SiteId ib);

RationalPoint circumcenter(const Point& a, const Point& b, const Point& c);

// Which of the three regions around the Voronoi vertex C of the
// counterclockwise triangle (pi, pj, pk) contains q. The regions are cut out
// by three curves, one inside the Voronoi cell of each corner:
//  - Farthest mode: the ray from C pointing away from the corner.
//  - Nearest mode: the segment from C to the corner, continued by the ray from
//    the corner along its outward direction v (see outward_direction).
// The region between the curves of pi and pj maps to toward_left, pj/pk to
// toward_right, pk/pi to toward_parent. q on a curve, or q == C, resolves
// toward_parent first, then toward_left.
enum class Sector { toward_parent, toward_left, toward_right };

// Outward direction at cur of a counterclockwise convex polygon in which cur
// has neighbours prev and next: the outward normal of the chord prev-next. It
// lies strictly inside cur's normal cone, so the ray from cur along it stays
// in cur's nearest-point cell for any subset of the polygon containing cur.
Point outward_direction(const Point& prev, const Point& cur, const Point& next);

// Nearest mode uses the triangle's own outward directions.
Sector sector_of(const Point& pi, const Point& pj, const Point& pk, const Point& q, Mode mode);

// Outward directions vi, vj, vk must come from a convex polygon whose vertex
// set contains every site of the structure; ignored in Farthest mode.
Sector sector_of(const Point& pi, const Point& pj, const Point& pk, const Point& vi, const Point& vj,
                 const Point& vk, const Point& q, Mode mode);

// Strictly convex, counterclockwise, duplicate free, within the coordinate
// bound. Sequences of one or two distinct points are accepted.
class ConvexSequence {
 public:
  ConvexSequence() = default;

  // Throws InvalidInput naming the violated invariant.
  static ConvexSequence from_points(std::vector<Point> pts);

  // Whether appending p keeps the sequence strictly convex and ccw.
  bool can_append(const Point& p) const;
  void append(const Point& p);

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const Point& site(SiteId i) const { return pts_[i - 1]; }
  std::span<const Point> points() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

// Empty: no point is left of the line; Full: all points are; otherwise the
// maximal cyclic run first..last (1-based, counterclockwise) of points with
// side_of_line >= 0.
struct LeftInterval {
  enum class Kind { Empty, Full, Range };
  Kind kind = Kind::Empty;
  SiteId first = 0;
  SiteId last = 0;

  friend bool operator==(const LeftInterval&, const LeftInterval&) = default;
};

// O(log n) via extreme-vertex searches over edge directions. Requires n >= 3.
LeftInterval left_interval(std::span<const Point> hull, const DirectedLine& l);

// Linear scan with identical semantics, used as the reference.
LeftInterval left_interval_scan(std::span<const Point> hull, const DirectedLine& l);

// Cyclic length of first..last over n sites.
inline std::size_t cyclic_length(SiteId first, SiteId last, std::size_t n) {
  return last >= first ? last - first + 1 : n - first + last + 1;
}

}  // namespace hpq
