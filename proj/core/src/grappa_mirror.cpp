#include "hpq/grappa_mirror.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hpq {

void NaiveForest::link(NodeId v, NodeId w, Side d, Mark lm, Mark rm) {
  (d == Side::Left ? v_[v].left : v_[v].right) = w;
  v_[w].par = v;
  v_[w].lm = lm;
  v_[w].rm = rm;
}

void NaiveForest::cut(NodeId v, NodeId w) {
  (v_[v].left == w ? v_[v].left : v_[v].right) = kNil;
  v_[w].par = kNil;
}

void NaiveForest::mark_right_spine(NodeId v, Mark m) {
  for (NodeId x = v_[root(v)].right; x != kNil; x = v_[x].right) v_[x].rm = m;
}

NodeId NaiveForest::root(NodeId x) const {
  while (v_[x].par != kNil) x = v_[x].par;
  return x;
}

std::size_t NaiveForest::size(NodeId x) const {
  if (x == kNil) return 0;
  return 1 + size(v_[x].left) + size(v_[x].right);
}

Direction NaiveForest::direction(NodeId at, NodeId target) const {
  if (at == target) return Direction::toward_parent;
  for (NodeId c = target, p = v_[c].par; p != kNil; c = p, p = v_[c].par) {
    if (p == at) return v_[p].left == c ? Direction::toward_left : Direction::toward_right;
  }
  return Direction::toward_parent;
}

namespace {

struct Snapshot {
  VersionId version;
  NaiveForest forest;
};

std::string describe(const char* what, NodeId v, std::uint64_t a, std::uint64_t b) {
  return std::string(what) + " of vertex " + std::to_string(v) + ": grappa " + std::to_string(a) +
         ", naive " + std::to_string(b);
}

// Compares every vertex of g at version ver against f. Returns "" on match.
std::string compare(const GrappaForest& g, const NaiveForest& f, VersionId ver) {
  for (NodeId x = 1; x <= f.capacity(); ++x) {
    const auto& n = f[x];
    if (g.contains(x, ver) != n.present) return describe("presence", x, g.contains(x, ver), n.present);
    if (!n.present) continue;
    if (g.parent(x, ver) != n.par) return describe("parent", x, g.parent(x, ver), n.par);
    if (g.child(x, Side::Left, ver) != n.left) return describe("left child", x, g.child(x, Side::Left, ver), n.left);
    if (g.child(x, Side::Right, ver) != n.right) {
      return describe("right child", x, g.child(x, Side::Right, ver), n.right);
    }
    if (g.find_root(x, ver) != f.root(x)) return describe("root", x, g.find_root(x, ver), f.root(x));
    if (g.subtree_size(x, ver) != f.size(x)) return describe("size", x, g.subtree_size(x, ver), f.size(x));
    if (n.par != kNil) {
      const auto [lm, rm] = g.effective_marks(x, ver);
      if (lm != n.lm) return describe("left mark", x, lm, n.lm);
      if (rm != n.rm) return describe("right mark", x, rm, n.rm);
    }
  }
  return {};
}

}  // namespace

MirrorReport run_grappa_mirror(std::size_t operations, std::uint64_t seed, std::size_t vertices,
                               std::size_t batch) {
  MirrorReport rep;
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto mark = [&] { return static_cast<Mark>(1 + pick(1000)); };

  while (rep.operations < operations && rep.mismatch.empty()) {
    VersionStore store;
    GrappaForest g(store);
    NaiveForest f(vertices);
    std::vector<NodeId> present;
    std::vector<Snapshot> snaps;
    NodeId next_id = 1;
    const std::size_t end = std::min(operations, rep.operations + batch);

    auto fail = [&](const std::string& msg) {
      rep.mismatch = "operation " + std::to_string(rep.operations) + ": " + msg;
    };

    for (; rep.operations < end && rep.mismatch.empty(); ++rep.operations) {
      const std::size_t r = pick(100);
      const std::uint64_t before = store.write_count();
      bool mutated = true;

      if (present.size() < 2 || (r < 10 && next_id <= vertices)) {
        if (next_id > vertices) {
          mutated = false;
        } else {
          store.new_version();
          g.make_tree(next_id);
          f.make_tree(next_id);
          present.push_back(next_id++);
        }
      } else if (r < 50) {
        // link a random root under a free slot of another tree
        std::vector<NodeId> roots;
        for (NodeId x : present) {
          if (f[x].par == kNil) roots.push_back(x);
        }
        const NodeId w = roots[pick(roots.size())];
        NodeId v = kNil;
        Side d = Side::Left;
        for (int t = 0; t < 32 && v == kNil; ++t) {
          const NodeId c = present[pick(present.size())];
          d = pick(2) ? Side::Left : Side::Right;
          if ((d == Side::Left ? f[c].left : f[c].right) == kNil && f.root(c) != w) v = c;
        }
        if (v == kNil) {
          mutated = false;
        } else {
          const Mark lm = mark(), rm = mark();
          store.new_version();
          g.link(v, w, d, lm, rm);
          f.link(v, w, d, lm, rm);
        }
      } else if (r < 60) {
        const NodeId w = present[pick(present.size())];
        if (f[w].par == kNil) {
          mutated = false;
        } else {
          store.new_version();
          const NodeId v = f[w].par;
          g.cut(v, w);
          f.cut(v, w);
        }
      } else if (r < 77) {
        const NodeId v = present[pick(present.size())];
        const Mark m = mark();
        store.new_version();
        g.mark_right_spine(v, m);
        f.mark_right_spine(v, m);
      } else {
        mutated = false;
        const NodeId target = present[pick(present.size())];
        if (f[target].par != kNil) {
          // start from a random vertex of the same tree
          NodeId from = target;
          for (std::size_t k = pick(8); k > 0 && f[from].par != kNil; --k) from = f[from].par;
          const SearchResult res = g.oracle_search(
              from, [&](const Probe& p) { return f.direction(p.v, target); });
          ++rep.searches;
          rep.max_probes = std::max(rep.max_probes, res.probes);
          if (res.child != target || res.parent != f[target].par) {
            fail(describe("search result", target, res.child, target));
          } else if (res.lm != f[target].lm || res.rm != f[target].rm) {
            fail(describe("search right mark", target, res.rm, f[target].rm));
          }
        }
        for (int k = 0; k < 4; ++k) {
          const NodeId x = present[pick(present.size())];
          if (f[x].par == kNil) continue;
          const auto [lm, rm] = g.effective_marks(x);
          if (lm != f[x].lm || rm != f[x].rm) fail(describe("right mark", x, rm, f[x].rm));
        }
        rep.query_writes += store.write_count() - before;
      }

      if (mutated) {
        const std::uint64_t w = store.write_count() - before;
        const double lg = std::log2(std::max<double>(2.0, static_cast<double>(present.size())));
        rep.max_writes = std::max(rep.max_writes, w);
        rep.max_write_ratio = std::max(rep.max_write_ratio, static_cast<double>(w) / (lg * lg));
      }
      if (rep.operations % 97 == 0) {
        ++rep.checks;
        try {
          g.check_invariants();
        } catch (const ContractViolation& e) {
          fail(e.what());
        }
        if (rep.mismatch.empty()) {
          if (auto m = compare(g, f, kLatest); !m.empty()) fail(m);
        }
        rep.max_light_depth = std::max(rep.max_light_depth, g.max_light_depth());
      }
      if (rep.operations % 499 == 0 && store.current() != 0) snaps.push_back({store.current(), f});
    }
    if (rep.mismatch.empty()) {
      if (auto m = compare(g, f, kLatest); !m.empty()) fail(m);
    }
    // Historical reads: every snapshot must still be visible at its version.
    for (const auto& s : snaps) {
      if (!rep.mismatch.empty()) break;
      if (auto m = compare(g, s.forest, s.version); !m.empty()) {
        fail("at version " + std::to_string(s.version) + ": " + m);
      }
    }
  }
  return rep;
}

}  // namespace hpq
