#pragma once

// Brute-force oracles, instance generation and random query workloads.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpq/dual_tree.hpp"
#include "hpq/geometry.hpp"

namespace hpq {

enum class Shape { circle, ellipse, parabola_arc };

const char* to_string(Shape s);
Shape shape_from_string(const std::string& s);

struct Instance {
  Mode mode = Mode::Farthest;
  ConvexSequence sites;
  std::uint64_t seed = 0;
  Shape shape = Shape::circle;
};

// Linear scan over the closed left halfplane; ties go to the smaller index.
QueryOutcome bf_query(std::span<const Point> sites, const Point& q, const DirectedLine& l, Mode mode);

// Extreme site over the whole set.
SiteId bf_extreme(std::span<const Point> sites, const Point& q, Mode mode);

// Every triple whose circle no site violates, sorted. Requires 3 <= n <= 64.
// Throws DegenerateInput on a zero incircle determinant.
std::vector<Triangle> bf_delaunay(std::span<const Point> sites, Mode mode);

// Whether four sites lie on a common circle. Exhaustive over all quadruples
// when exhaustive is set, otherwise cyclically consecutive quadruples only.
bool has_cocircular_quadruple(std::span<const Point> sites, bool exhaustive);

// Deterministic per (n, seed, shape). Circle and ellipse instances are
// lattice polygons built from random primitive edge vectors sorted by angle,
// scaled to a radius near 2^20 where n allows it; parabola-arc instances are
// (x, x^2) for distinct |x| <= 4096. Above 512 sites, where only consecutive
// quadruples are checked for cocircularity, the instance must also build
// dual trees in both modes without a degenerate incircle test.
// Throws InvalidInput if n cannot fit.
Instance gen_convex(std::size_t n, std::uint64_t seed, Shape shape, Mode mode = Mode::Farthest);

struct HalfplaneQuery {
  Point q;
  DirectedLine l;
};

// Mix of uniform queries and tie-heavy ones: lines through sites, query
// points on sites and on perpendicular bisectors, lines missing the hull.
std::vector<HalfplaneQuery> gen_queries(std::span<const Point> sites, std::size_t count,
                                        std::uint64_t seed);

}  // namespace hpq
