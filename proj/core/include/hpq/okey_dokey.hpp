#pragma once

// Okey-Dokey^(k-1): halfplane proximity queries with a space/query trade-off.
//
// k = 1 (Okey) stores a Voronoi locator for every cyclic interval of the
// sites. Each further level (Dokey) cuts its sites into runs of length m at
// breakpoints p_1, p_{m+1}, p_{2m+1}, ..., builds the level below on every
// run, and stores locators for the power-of-two windows starting (forward)
// and ending (backward) at each breakpoint. A query interval meeting a
// breakpoint is covered by the run before its first breakpoint, the run
// starting at its last breakpoint and two power-of-two windows in between.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hpq/dual_tree.hpp"
#include "hpq/geometry.hpp"

namespace hpq {

// Elementary point locations performed by one query.
struct LocateBudget {
  int locates = 0;
};

// k = ceil(1/2 + 1/eps). Throws InvalidInput unless eps > 0.
int okey_dokey_k(double eps);

// Run length of a Dokey level with n sites and depth k >= 2:
// min(n, max(2, ceil(n^((2k-3)/(2k-1))))).
std::size_t dokey_run_length(std::size_t n, int k);

// Exact storage of a structure, computed without building it.
struct OkeyDokeyPlan {
  std::uint64_t cells = 0;     // Voronoi cells (sites) over all locators
  std::uint64_t locators = 0;  // stored locators, trivial ones included
  std::uint64_t nodes = 0;     // centroid-decomposition nodes
  std::uint64_t bytes = 0;     // estimated resident size of the locators
};

OkeyDokeyPlan plan_okey_dokey(std::size_t n, int k);

class OkeyDokey {
 public:
  static constexpr std::uint64_t kDefaultMemoryLimit = 3ull << 30;

  // Throws InvalidInput for bad sites or k < 1, DegenerateInput for
  // cocircular sites, ResourceLimit if the plan exceeds memory_limit bytes.
  OkeyDokey(std::span<const Point> sites, Mode mode, int k, std::uint64_t memory_limit = kDefaultMemoryLimit);

  QueryOutcome query(const Point& q, const DirectedLine& l, LocateBudget* budget = nullptr) const;

  // Extreme site among the cyclic run first..last (first == last % n + 1
  // selects every site). Throws InvalidInput for indices outside [1, n].
  SiteId query_interval(SiteId first, SiteId last, const Point& q, LocateBudget* budget = nullptr) const;

  Mode mode() const { return mode_; }
  int k() const { return k_; }
  std::size_t size() const { return sites_.size(); }
  const OkeyDokeyPlan& plan() const { return plan_; }
  // Storage actually built; equals plan() field by field.
  OkeyDokeyPlan stored() const;

  ~OkeyDokey();
  OkeyDokey(OkeyDokey&&) noexcept;
  OkeyDokey& operator=(OkeyDokey&&) noexcept;

 private:
  struct Level;

  Mode mode_;
  int k_;
  std::vector<Point> sites_;
  OkeyDokeyPlan plan_;
  std::unique_ptr<Level> top_;
};

}  // namespace hpq
