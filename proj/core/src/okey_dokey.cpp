#include "hpq/okey_dokey.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "hpq/errors.hpp"

namespace hpq {

int okey_dokey_k(double eps) {
  if (!(eps > 0)) throw InvalidInput("eps must be positive");
  return static_cast<int>(std::ceil(0.5 + 1.0 / eps));
}

std::size_t dokey_run_length(std::size_t n, int k) {
  const double e = static_cast<double>(2 * k - 3) / static_cast<double>(2 * k - 1);
  auto m = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), e) - 1e-9));
  return std::min(n, std::max<std::size_t>(2, m));
}

namespace {

// Largest j with 2^j <= n.
int floor_log2(std::size_t n) { return std::bit_width(n) - 1; }

void add_locator(OkeyDokeyPlan& p, std::uint64_t len) {
  ++p.locators;
  p.cells += len;
  const std::uint64_t nodes = len >= 3 ? len - 2 : 0;
  p.nodes += nodes;
  p.bytes += sizeof(CentroidLocator) + nodes * CentroidLocator::kBytesPerNode;
}

void accumulate(OkeyDokeyPlan& into, const OkeyDokeyPlan& p) {
  into.cells += p.cells;
  into.locators += p.locators;
  into.nodes += p.nodes;
  into.bytes += p.bytes;
}

OkeyDokeyPlan plan_level(std::size_t n, int k, std::map<std::pair<std::size_t, int>, OkeyDokeyPlan>& memo) {
  if (auto it = memo.find({n, k}); it != memo.end()) return it->second;
  OkeyDokeyPlan p;
  if (k == 1) {
    for (std::size_t len = 1; len <= n; ++len) {
      for (std::size_t s = 0; s < n; ++s) add_locator(p, len);
    }
  } else {
    const std::size_t m = dokey_run_length(n, k);
    const std::size_t runs = (n + m - 1) / m;
    for (std::size_t r = 0; r < runs; ++r) {
      accumulate(p, plan_level(std::min(n, (r + 1) * m) - r * m, k - 1, memo));
      for (int j = 0; j <= floor_log2(n); ++j) {
        add_locator(p, std::uint64_t{1} << j);
        add_locator(p, std::uint64_t{1} << j);
      }
    }
  }
  memo[{n, k}] = p;
  return p;
}

}  // namespace

OkeyDokeyPlan plan_okey_dokey(std::size_t n, int k) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  std::map<std::pair<std::size_t, int>, OkeyDokeyPlan> memo;
  return plan_level(n, k, memo);
}

// Sites g0+1 .. g0+size of the global sequence, indexed 1..size cyclically.
struct OkeyDokey::Level {
  std::uint32_t g0 = 0, size = 0;
  int k = 1;
  // k == 1: locator for (start, len) at (start - 1) * size + len - 1.
  std::vector<CentroidLocator> intervals;
  // k >= 2
  std::uint32_t m = 0;
  int windows = 0;  // power-of-two lengths per breakpoint
  std::vector<Level> runs;
  std::vector<CentroidLocator> fwd, bwd;  // [breakpoint * windows + j]

  std::uint32_t dist(std::uint32_t from, std::uint32_t to) const { return (to + size - from) % size; }
  std::uint32_t wrap(std::int64_t s) const {
    return static_cast<std::uint32_t>(((s - 1) % size + size) % size + 1);
  }

  void build(std::span<const Point> all, Mode mode) {
    const std::span<const Point> ring = all.subspan(g0, size);
    // Locator over ring positions start, start+1, ... (len sites), with a
    // snapshot after each length listed in want (ascending).
    auto sweep = [&](std::uint32_t start, const std::vector<std::uint32_t>& want, auto&& emit) {
      DualTree t(mode);
      std::size_t w = 0;
      for (std::uint32_t len = 1; w < want.size(); ++len) {
        t.insert_ccw(ring[(start - 1 + len - 1) % size]);
        if (len == want[w]) {
          emit(len, CentroidLocator(t, start - 1));
          ++w;
        }
      }
    };
    if (k == 1) {
      intervals.resize(static_cast<std::size_t>(size) * size);
      std::vector<std::uint32_t> all_lengths(size);
      for (std::uint32_t l = 0; l < size; ++l) all_lengths[l] = l + 1;
      for (std::uint32_t s = 1; s <= size; ++s) {
        sweep(s, all_lengths, [&](std::uint32_t len, CentroidLocator&& loc) {
          intervals[static_cast<std::size_t>(s - 1) * size + len - 1] = std::move(loc);
        });
      }
      return;
    }
    m = static_cast<std::uint32_t>(dokey_run_length(size, k));
    windows = floor_log2(size) + 1;
    const std::uint32_t nruns = (size + m - 1) / m;
    runs.resize(nruns);
    fwd.resize(static_cast<std::size_t>(nruns) * windows);
    bwd.resize(static_cast<std::size_t>(nruns) * windows);
    std::vector<std::uint32_t> pow2(windows);
    for (int j = 0; j < windows; ++j) pow2[j] = 1u << j;
    for (std::uint32_t r = 0; r < nruns; ++r) {
      Level& sub = runs[r];
      sub.g0 = g0 + r * m;
      sub.size = std::min(size, (r + 1) * m) - r * m;
      sub.k = k - 1;
      sub.build(all, mode);
      const std::uint32_t b = r * m + 1;
      sweep(b, pow2, [&](std::uint32_t len, CentroidLocator&& loc) {
        fwd[static_cast<std::size_t>(r) * windows + std::countr_zero(len)] = std::move(loc);
      });
      for (int j = 0; j < windows; ++j) {
        const std::uint32_t len = pow2[j];
        sweep(wrap(std::int64_t{b} - len + 1), {len}, [&](std::uint32_t, CentroidLocator&& loc) {
          bwd[static_cast<std::size_t>(r) * windows + j] = std::move(loc);
        });
      }
    }
  }

  void tally(OkeyDokeyPlan& p) const {
    auto add = [&](const CentroidLocator& loc) { add_locator(p, loc.site_count()); };
    for (const auto& loc : intervals) add(loc);
    for (const auto& loc : fwd) add(loc);
    for (const auto& loc : bwd) add(loc);
    for (const auto& r : runs) r.tally(p);
  }

  SiteId locate(std::span<const Point> all, const CentroidLocator& loc, const Point& q, LocateBudget& budget) const {
    ++budget.locates;
    return loc.locate(SiteRing{all.subspan(g0, size), g0 + 1}, q);
  }

  // Interval a..b in local indices; returns a global label.
  SiteId query(std::span<const Point> all, Mode mode, std::uint32_t a, std::uint32_t b, const Point& q,
               LocateBudget& budget) const {
    const std::uint32_t len = dist(a, b) + 1;
    if (k == 1) return locate(all, intervals[static_cast<std::size_t>(a - 1) * size + len - 1], q, budget);

    // First breakpoint at or after a, last one at or before b.
    const std::uint32_t up = (a - 1) % m == 0 ? a : ((a - 1) / m + 1) * m + 1;
    const std::uint32_t first = up > size ? 1 : up;
    const std::uint32_t last = (b - 1) / m * m + 1;
    if (dist(a, first) >= len) {
      const Level& run = runs[(a - 1) / m];
      const std::uint32_t base = run.g0 - g0;
      return run.query(all, mode, a - base, b - base, q, budget);
    }
    SiteId best = 0;
    auto consider = [&](SiteId s) {
      if (best == 0 || better_site(mode, q, all[s - 1], s, all[best - 1], best)) best = s;
    };
    if (a != first) {
      const std::uint32_t before = wrap(std::int64_t{first} - 1);
      const Level& run = runs[(before - 1) / m];
      const std::uint32_t base = run.g0 - g0;
      consider(run.query(all, mode, a - base, before - base, q, budget));
    }
    {
      const Level& run = runs[(last - 1) / m];
      const std::uint32_t base = run.g0 - g0;
      consider(run.query(all, mode, last - base, b - base, q, budget));
    }
    const std::uint32_t gap = dist(first, last);
    if (gap > 0) {
      const int j = floor_log2(gap);
      consider(locate(all, fwd[static_cast<std::size_t>((first - 1) / m) * windows + j], q, budget));
      consider(locate(all, bwd[static_cast<std::size_t>((last - 1) / m) * windows + j], q, budget));
    }
    return best;
  }
};

OkeyDokey::OkeyDokey(std::span<const Point> sites, Mode mode, int k, std::uint64_t memory_limit)
    : mode_(mode), k_(k), sites_(sites.begin(), sites.end()) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (sites_.empty()) throw InvalidInput("no sites");
  ConvexSequence::from_points(sites_);
  plan_ = plan_okey_dokey(sites_.size(), k);
  if (plan_.bytes > memory_limit) {
    throw ResourceLimit("okey-dokey with n=" + std::to_string(sites_.size()) + ", k=" + std::to_string(k) +
                        " needs about " + std::to_string(plan_.bytes >> 20) + " MiB of locators, limit " +
                        std::to_string(memory_limit >> 20) + " MiB");
  }
  top_ = std::make_unique<Level>();
  top_->size = static_cast<std::uint32_t>(sites_.size());
  top_->k = k;
  top_->build(sites_, mode);
}

OkeyDokey::~OkeyDokey() = default;
OkeyDokey::OkeyDokey(OkeyDokey&&) noexcept = default;
OkeyDokey& OkeyDokey::operator=(OkeyDokey&&) noexcept = default;

OkeyDokeyPlan OkeyDokey::stored() const {
  OkeyDokeyPlan p;
  top_->tally(p);
  return p;
}

QueryOutcome OkeyDokey::query(const Point& q, const DirectedLine& l, LocateBudget* budget) const {
  const LeftInterval li = sites_.size() >= 3 ? left_interval(sites_, l) : left_interval_scan(sites_, l);
  if (li.kind == LeftInterval::Kind::Empty) {
    if (budget) *budget = {};
    return std::nullopt;
  }
  if (li.kind == LeftInterval::Kind::Full) return query_interval(1, static_cast<SiteId>(sites_.size()), q, budget);
  return query_interval(li.first, li.last, q, budget);
}

SiteId OkeyDokey::query_interval(SiteId first, SiteId last, const Point& q, LocateBudget* budget) const {
  const auto n = static_cast<SiteId>(sites_.size());
  if (first < 1 || first > n || last < 1 || last > n) {
    throw InvalidInput("interval (" + std::to_string(first) + "," + std::to_string(last) + ") outside [1, " +
                       std::to_string(n) + "]");
  }
  LocateBudget local;
  LocateBudget& b = budget ? *budget : local;
  b = {};
  // A full interval is the run of n sites starting at 1.
  if (last % n + 1 == first) {
    first = 1;
    last = n;
  }
  return top_->query(sites_, mode_, first, last, q, b);
}

}  // namespace hpq
