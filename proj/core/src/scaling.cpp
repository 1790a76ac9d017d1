#include "hpq/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "hpq/interval.hpp"
#include "hpq/okey_dokey.hpp"
#include "hpq/prefix.hpp"
#include "hpq/testkit.hpp"

namespace hpq {

SpaceFit fit_constant(std::span<const SpaceRow> rows) {
  SpaceFit f;
  if (rows.empty()) return f;
  double sum = 0;
  for (const SpaceRow& r : rows) sum += std::log(static_cast<double>(r.count) / r.model);
  f.constant = std::exp(sum / static_cast<double>(rows.size()));
  for (const SpaceRow& r : rows) {
    const double ratio = static_cast<double>(r.count) / r.model / f.constant;
    f.spread = std::max({f.spread, ratio, 1 / ratio});
  }
  return f;
}

std::vector<SpaceRow> okey_dokey_space(std::span<const std::size_t> ns, int k) {
  std::vector<SpaceRow> rows;
  const double e = static_cast<double>(2 * k + 1) / static_cast<double>(2 * k - 1);
  for (std::size_t n : ns) {
    rows.push_back({n, plan_okey_dokey(n, k).cells, std::pow(static_cast<double>(n), e)});
  }
  return rows;
}

std::vector<SpaceRow> persistence_space(std::span<const std::size_t> ns, std::uint64_t seed) {
  std::vector<SpaceRow> rows;
  for (std::size_t n : ns) {
    const Instance inst = gen_convex(n, seed, Shape::circle);
    PrefixStructure s(Mode::Farthest);
    for (const Point& p : inst.sites.points()) s.push(p);
    const double lg = std::log2(static_cast<double>(n));
    rows.push_back({n, s.stored_entries(), static_cast<double>(n) * lg * lg});
  }
  return rows;
}

std::vector<SpaceRow> interval_space(std::span<const std::size_t> ns, std::uint64_t seed) {
  std::vector<SpaceRow> rows;
  for (std::size_t n : ns) {
    const Instance inst = gen_convex(n, seed, Shape::circle);
    const IntervalStructure s(inst.sites.points(), Mode::Farthest);
    const double lg = std::log2(static_cast<double>(n));
    rows.push_back({n, s.stored_entries(), static_cast<double>(n) * lg * lg * lg});
  }
  return rows;
}

}  // namespace hpq
