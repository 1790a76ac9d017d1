#pragma once

// Storage measurements against asymptotic models, with best-fit constants.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hpq {

struct SpaceRow {
  std::size_t n = 0;
  std::uint64_t count = 0;  // measured or exactly planned storage
  double model = 0;         // model value without its constant
};

struct SpaceFit {
  double constant = 0;  // geometric mean of count / model
  double spread = 0;    // largest factor between any row's ratio and the constant
};

SpaceFit fit_constant(std::span<const SpaceRow> rows);

// Planned Voronoi cells of Okey-Dokey^(k-1); model n^((2k+1)/(2k-1)).
std::vector<SpaceRow> okey_dokey_space(std::span<const std::size_t> ns, int k);

// Persistence history length of a prefix structure over a circle instance;
// model n log2(n)^2.
std::vector<SpaceRow> persistence_space(std::span<const std::size_t> ns, std::uint64_t seed);

// Persistence entries of the interval structure; model n log2(n)^3.
std::vector<SpaceRow> interval_space(std::span<const std::size_t> ns, std::uint64_t seed);

}  // namespace hpq
