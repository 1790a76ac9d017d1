// Acceptance gate: one PASS/FAIL line per criterion.
// Usage: acceptance [--criterion N]...   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "hpq/dual_tree.hpp"
#include "hpq/errors.hpp"
#include "hpq/flarb.hpp"
#include "hpq/grappa_mirror.hpp"
#include "hpq/interval.hpp"
#include "hpq/okey_dokey.hpp"
#include "hpq/prefix.hpp"
#include "hpq/scaling.hpp"
#include "hpq/testkit.hpp"

using namespace hpq;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

constexpr Mode kModes[] = {Mode::Farthest, Mode::Nearest};
constexpr std::size_t kSweepNs[] = {8, 64, 256, 1024};
constexpr std::size_t kSweepQueries = 10000;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict oracle_equivalence() {
  Verdict v;
  std::size_t queries = 0, empty = 0;
  for (std::size_t n : kSweepNs) {
    for (Mode mode : kModes) {
      const Instance inst = gen_convex(n, 1000 + n, Shape::circle, mode);
      const auto pts = inst.sites.points();
      const IntervalStructure s(pts, mode);
      for (const auto& h : gen_queries(pts, kSweepQueries, n * 7 + 1)) {
        const QueryOutcome want = bf_query(pts, h.q, h.l, mode);
        const QueryOutcome got = s.query(h.q, h.l);
        ++queries;
        empty += !want.has_value();
        if (got != want) {
          v.fail(fmt("n=%zu %s q=%s: got %s want %s", n, to_string(mode), to_string(h.q).c_str(),
                     to_string(got).c_str(), to_string(want).c_str()));
        }
      }
    }
  }
  if (v.pass) v.detail = fmt("%zu queries match brute force (%zu empty halfplanes)", queries, empty);
  return v;
}

Verdict okey_dokey_equivalence() {
  Verdict v;
  std::size_t queries = 0, sweeps = 0;
  int worst[4] = {0, 0, 0, 0};
  std::vector<std::string> infeasible;
  for (int k = 1; k <= 3; ++k) {
    for (std::size_t n : kSweepNs) {
      for (Mode mode : kModes) {
        const Instance inst = gen_convex(n, 2000 + n, Shape::circle, mode);
        const auto pts = inst.sites.points();
        std::unique_ptr<OkeyDokey> s;
        try {
          s = std::make_unique<OkeyDokey>(pts, mode, k);
        } catch (const ResourceLimit& e) {
          infeasible.push_back(fmt("k=%d n=%zu %s", k, n, to_string(mode)));
          v.fail(std::string("resource limit: ") + e.what());
          continue;
        }
        ++sweeps;
        for (const auto& h : gen_queries(pts, kSweepQueries, n * 11 + k)) {
          LocateBudget b;
          const QueryOutcome got = s->query(h.q, h.l, &b);
          const QueryOutcome want = bf_query(pts, h.q, h.l, mode);
          ++queries;
          worst[k] = std::max(worst[k], b.locates);
          if (got != want) {
            v.fail(fmt("k=%d n=%zu %s: got %s want %s", k, n, to_string(mode), to_string(got).c_str(),
                       to_string(want).c_str()));
          }
          if (b.locates > (1 << (k + 1))) v.fail(fmt("k=%d n=%zu: %d locates exceed budget", k, n, b.locates));
        }
      }
    }
  }
  const std::string summary = fmt("%zu sweeps, %zu queries, max locates k1=%d k2=%d k3=%d", sweeps, queries,
                                  worst[1], worst[2], worst[3]);
  if (v.pass) {
    v.detail = summary;
  } else if (!infeasible.empty()) {
    std::string list;
    for (const auto& s : infeasible) list += (list.empty() ? "" : ", ") + s;
    v.detail += "; not built: " + list + "; " + summary;
  }
  return v;
}

Verdict flarb_bound() {
  Verdict v;
  double worst_fit = 0, worst_step = 0;
  for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 12, std::size_t{1} << 14, std::size_t{1} << 16}) {
    for (Mode mode : kModes) {
      const Instance inst = gen_convex(n, 3000 + n, Shape::circle, mode);
      DualTree t(mode);
      std::size_t total = 0;
      for (const Point& p : inst.sites.points()) {
        const auto r = t.insert_ccw(p);
        total += r.delta.count();
        const std::size_t nodes = t.topology().node_count();
        if (!amortized_check(r.delta.count(), r.potential_change, nodes, kFlarbC)) {
          v.fail(fmt("n=%zu %s: step %zu violates the amortized inequality", n, to_string(mode), t.site_count()));
        }
        if (nodes > 0) {
          worst_step = std::max(worst_step, static_cast<double>(r.delta.count() + r.potential_change) /
                                                std::log2(2.0 * static_cast<double>(nodes) + 1));
        }
      }
      const double fit = static_cast<double>(total) / (static_cast<double>(n) * std::log2(static_cast<double>(n)));
      worst_fit = std::max(worst_fit, fit);
      if (fit > kFlarbC) v.fail(fmt("n=%zu %s: total %zu exceeds C n lg n", n, to_string(mode), total));
    }
  }
  if (v.pass) {
    v.detail = fmt("C=%.1f, worst total/(n lg n)=%.3f, worst step ratio=%.3f", kFlarbC, worst_fit, worst_step);
  }
  return v;
}

std::vector<Triangle> sorted(std::vector<Triangle> v) {
  std::sort(v.begin(), v.end(),
            [](const Triangle& a, const Triangle& b) { return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k); });
  return v;
}

Verdict delaunay_correctness() {
  Verdict v;
  std::size_t instances = 0;
  for (std::size_t n = 3; n <= 64; ++n) {
    for (Shape shape : {Shape::circle, Shape::ellipse, Shape::parabola_arc}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        for (Mode mode : kModes) {
          const Instance inst = gen_convex(n, seed * 97 + n, shape, mode);
          const auto pts = inst.sites.points();
          DualTree t(mode);
          for (std::size_t i = 0; i < pts.size(); ++i) {
            t.insert_ccw(pts[i]);
            if (i + 1 >= 3 && sorted(t.triangles()) != bf_delaunay(pts.first(i + 1), mode)) {
              v.fail(fmt("n=%zu %s %s seed=%llu: prefix %zu differs", n, to_string(shape), to_string(mode),
                         static_cast<unsigned long long>(seed), i + 1));
            }
          }
          ++instances;
        }
      }
    }
  }
  if (v.pass) v.detail = fmt("%zu instances, every prefix triangulation matches", instances);
  return v;
}

Verdict persistence_snapshots() {
  Verdict v;
  constexpr std::size_t n = 256;
  std::size_t queries = 0;
  for (Mode mode : kModes) {
    const Instance inst = gen_convex(n, 4000, Shape::circle, mode);
    const auto pts = inst.sites.points();
    PrefixStructure s(mode);
    for (const Point& p : pts) s.push(p);
    const std::uint64_t writes = s.store().write_count();
    const auto qs = gen_queries(pts, 100 * n, 4001);
    for (std::size_t t = 1; t <= n; ++t) {
      for (std::size_t j = 0; j < 100; ++j) {
        const Point& q = qs[(t - 1) * 100 + j].q;
        const SiteId got = s.query_prefix(t, q);
        const SiteId want = bf_extreme(pts.first(t), q, mode);
        ++queries;
        if (got != want) v.fail(fmt("%s t=%zu q=%s: got %u want %u", to_string(mode), t, to_string(q).c_str(),
                                    static_cast<unsigned>(got), static_cast<unsigned>(want)));
      }
    }
    if (s.store().write_count() != writes) v.fail("queries changed the persistence write counter");
  }
  if (v.pass) v.detail = fmt("%zu prefix queries match, no query writes", queries);
  return v;
}

Verdict grappa_mirror() {
  Verdict v;
  const MirrorReport r = run_grappa_mirror(100000, 5000, 4096);
  if (!r.mismatch.empty()) v.fail(r.mismatch);
  if (r.query_writes != 0) v.fail(fmt("%zu writes issued by searches", r.query_writes));
  if (r.max_write_ratio > kGrappaWriteC) {
    v.fail(fmt("writes/lg^2 n reached %.2f, bound %.1f", r.max_write_ratio, kGrappaWriteC));
  }
  const std::string summary =
      fmt("%zu ops, %zu searches, %zu full checks, max writes/lg^2 n=%.2f (C=%.0f), max probes=%d, light depth=%zu",
          r.operations, r.searches, r.checks, r.max_write_ratio, kGrappaWriteC, r.max_probes, r.max_light_depth);
  if (v.pass) v.detail = summary;
  return v;
}

Verdict space_scaling() {
  Verdict v;
  std::vector<std::size_t> ns;
  for (std::size_t n = 64; n <= 4096; n *= 2) ns.push_back(n);
  std::string summary;
  auto check = [&](const std::string& name, const SpaceFit& fit) {
    summary += fmt("%s%s c=%.3g spread=%.2f", summary.empty() ? "" : ", ", name.c_str(), fit.constant, fit.spread);
    if (fit.spread > 4.0) v.fail(fmt("%s spread %.2f exceeds 4", name.c_str(), fit.spread));
  };
  for (int k = 1; k <= 3; ++k) check(fmt("okey k=%d", k), fit_constant(okey_dokey_space(ns, k)));
  check("persistence", fit_constant(persistence_space(ns, 1)));
  v.detail = summary + (v.pass ? "" : "; " + v.detail);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "interval structure equals brute force", oracle_equivalence},
      {2, "okey-dokey equals brute force within locate budget", okey_dokey_equivalence},
      {3, "flarb pointer changes within C n lg n", flarb_bound},
      {4, "dual tree triangles equal brute-force Delaunay", delaunay_correctness},
      {5, "persistent prefix snapshots equal brute force", persistence_snapshots},
      {6, "grappa forest mirrors the naive forest", grappa_mirror},
      {7, "space counts fit their models within 4x", space_scaling},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }
  bool ok = true;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d [%s] %s (%.1fs): %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL", secs,
                v.detail.c_str());
    std::fflush(stdout);
    ok &= v.pass;
  }
  return ok ? 0 : 1;
}
