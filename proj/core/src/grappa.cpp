#include "hpq/grappa.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>
#include <string>

namespace hpq {

namespace {

std::string vname(NodeId v) { return std::to_string(v); }

}  // namespace

GrappaForest::Vertex& GrappaForest::at(NodeId v) { return verts_[v]; }

void GrappaForest::require_vertex(NodeId v) const {
  if (!contains(v)) throw ContractViolation("grappa: unknown vertex " + vname(v));
}

bool GrappaForest::contains(NodeId v, VersionId ver) const {
  return v != kNil && v < verts_.size() && (verts_[v].flags.read(ver) & kPresent);
}

// ---------------------------------------------------------------------------
// Path trees (latest version only)

void GrappaForest::pull(NodeId x) {
  Vertex& X = at(x);
  const NodeId l = X.bl.latest(), r = X.br.latest();
  const std::uint32_t light = X.light.latest();
  const std::uint32_t w = 1 + light;
  set(X.cnt, cnt(l) + 1 + cnt(r));
  set(X.sumw, sumw(l) + w + sumw(r));
  set(X.maxpl, std::max({maxpl(l), sumw(l) + w + light, r == kNil ? 0u : sumw(l) + w + maxpl(r)}));
  set(X.height, static_cast<std::uint8_t>(1 + std::max(height(l), height(r))));
  const std::uint8_t f = X.flags.latest();
  const bool any = (f & kIsLeft) || anyleft(l) || anyleft(r);
  set(X.flags, static_cast<std::uint8_t>(any ? (f | kAnyLeft) : (f & ~kAnyLeft)));
}

void GrappaForest::pull_up(NodeId x) {
  for (; x != kNil; x = at(x).bp.latest()) pull(x);
}

void GrappaForest::push(NodeId x) {
  Vertex& X = at(x);
  const Mark t = X.tag.latest();
  if (t == 0) return;
  set(X.rm, t);
  for (NodeId c : {X.bl.latest(), X.br.latest()}) {
    if (c != kNil) set(at(c).tag, t);
  }
  set(X.tag, Mark{0});
}

void GrappaForest::push_path_to(NodeId x) {
  std::vector<NodeId> chain;
  for (NodeId y = x; y != kNil; y = at(y).bp.latest()) chain.push_back(y);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) push(*it);
}

void GrappaForest::set_children(NodeId x, NodeId l, NodeId r) {
  Vertex& X = at(x);
  set(X.bl, l);
  set(X.br, r);
  if (l != kNil) set(at(l).bp, x);
  if (r != kNil) set(at(r).bp, x);
  pull(x);
}

NodeId GrappaForest::rotate_left(NodeId x) {
  const NodeId y = at(x).br.latest();
  push(x);
  push(y);
  set_children(x, at(x).bl.latest(), at(y).bl.latest());
  set_children(y, x, at(y).br.latest());
  return y;
}

NodeId GrappaForest::rotate_right(NodeId x) {
  const NodeId y = at(x).bl.latest();
  push(x);
  push(y);
  set_children(x, at(y).br.latest(), at(x).br.latest());
  set_children(y, at(y).bl.latest(), x);
  return y;
}

NodeId GrappaForest::rebalance(NodeId x) {
  const NodeId l = at(x).bl.latest(), r = at(x).br.latest();
  const int bf = height(l) - height(r);
  if (bf > 1) {
    push(x);
    if (height(at(l).bl.latest()) < height(at(l).br.latest())) {
      set_children(x, rotate_left(l), r);
    }
    return rotate_right(x);
  }
  if (bf < -1) {
    push(x);
    if (height(at(r).br.latest()) < height(at(r).bl.latest())) {
      set_children(x, l, rotate_right(r));
    }
    return rotate_left(x);
  }
  return x;
}

// k is a detached single node with no pending tag.
NodeId GrappaForest::join(NodeId l, NodeId k, NodeId r) {
  if (height(l) > height(r) + 1) {
    push(l);
    const NodeId nr = join(at(l).br.latest(), k, r);
    set_children(l, at(l).bl.latest(), nr);
    return rebalance(l);
  }
  if (height(r) > height(l) + 1) {
    push(r);
    const NodeId nl = join(l, k, at(r).bl.latest());
    set_children(r, nl, at(r).br.latest());
    return rebalance(r);
  }
  set_children(k, l, r);
  return k;
}

NodeId GrappaForest::join2(NodeId l, NodeId r) {
  if (l == kNil) return r;
  if (r == kNil) return l;
  auto [rest, last] = split(l, cnt(l) - 1);
  const NodeId t = join(rest, last, r);
  set(at(t).bp, kNil);
  return t;
}

// First k positions go left. Both results have no path-tree parent.
std::pair<NodeId, NodeId> GrappaForest::split(NodeId t, std::uint32_t k) {
  if (t == kNil) return {kNil, kNil};
  push(t);
  Vertex& T = at(t);
  const NodeId l = T.bl.latest(), r = T.br.latest();
  if (l != kNil) set(at(l).bp, kNil);
  if (r != kNil) set(at(r).bp, kNil);
  set(T.bl, kNil);
  set(T.br, kNil);
  set(T.bp, kNil);
  std::pair<NodeId, NodeId> out;
  if (k <= cnt(l)) {
    auto [a, b] = split(l, k);
    out = {a, join(b, t, r)};
  } else {
    auto [a, b] = split(r, k - cnt(l) - 1);
    out = {join(l, t, a), b};
  }
  if (out.first != kNil) set(at(out.first).bp, kNil);
  if (out.second != kNil) set(at(out.second).bp, kNil);
  return out;
}

NodeId GrappaForest::path_root(NodeId x) const {
  for (NodeId p = at(x).bp.latest(); p != kNil; p = at(x).bp.latest()) x = p;
  return x;
}

std::uint32_t GrappaForest::position(NodeId x) const {
  std::uint32_t pos = cnt(at(x).bl.latest()) + 1;
  for (NodeId p = at(x).bp.latest(); p != kNil; x = p, p = at(x).bp.latest()) {
    if (at(p).br.latest() == x) pos += cnt(at(p).bl.latest()) + 1;
  }
  return pos;
}

NodeId GrappaForest::at_position(NodeId x, std::uint32_t k) const {
  while (x != kNil) {
    const std::uint32_t lc = cnt(at(x).bl.latest());
    if (k <= lc) {
      x = at(x).bl.latest();
    } else if (k == lc + 1) {
      return x;
    } else {
      k -= lc + 1;
      x = at(x).br.latest();
    }
  }
  return kNil;
}

// Position a violates the heavy rule when its light child is strictly larger
// than its heavy subtree: P_a + light_a > W, with P_a the prefix weight.
NodeId GrappaForest::rightmost_violation(NodeId root) const {
  const std::uint32_t total = sumw(root);
  std::uint32_t offset = 0;
  NodeId x = root;
  while (x != kNil) {
    const Vertex& X = at(x);
    const NodeId l = X.bl.latest(), r = X.br.latest();
    const std::uint32_t light = X.light.latest();
    const std::uint32_t here = offset + sumw(l) + 1 + light;
    if (r != kNil && here + maxpl(r) > total) {
      offset = here;
      x = r;
    } else if (here + light > total) {
      return x;
    } else if (l != kNil && offset + maxpl(l) > total) {
      x = l;
    } else {
      return kNil;
    }
  }
  return kNil;
}

std::uint32_t GrappaForest::first_left_from(NodeId x, std::uint32_t offset, std::uint32_t from) const {
  if (x == kNil || !anyleft(x) || offset + cnt(x) < from) return 0;
  const NodeId l = at(x).bl.latest();
  if (std::uint32_t res = first_left_from(l, offset, from)) return res;
  const std::uint32_t p = offset + cnt(l) + 1;
  if (p >= from && (at(x).flags.latest() & kIsLeft)) return p;
  return first_left_from(at(x).br.latest(), p, from);
}

void GrappaForest::tag_range(NodeId x, std::uint32_t offset, std::uint32_t lo, std::uint32_t hi, Mark m) {
  if (x == kNil) return;
  const std::uint32_t s = offset + 1, e = offset + cnt(x);
  if (e < lo || s > hi) return;
  if (lo <= s && e <= hi) {
    set(at(x).tag, m);
    return;
  }
  push(x);
  const NodeId l = at(x).bl.latest();
  const std::uint32_t p = offset + cnt(l) + 1;
  tag_range(l, offset, lo, hi, m);
  if (lo <= p && p <= hi) set(at(x).rm, m);
  tag_range(at(x).br.latest(), p, lo, hi, m);
}

void GrappaForest::set_rm_field(NodeId x, Mark m) {
  push_path_to(x);
  set(at(x).rm, m);
}

void GrappaForest::set_flag(NodeId x, std::uint8_t bit, bool on) {
  const std::uint8_t f = at(x).flags.latest();
  set(at(x).flags, static_cast<std::uint8_t>(on ? (f | bit) : (f & ~bit)));
  pull_up(x);
}

// c, currently a light child of v, becomes v's heavy child; v's old heavy
// child (if any) starts a separate path.
void GrappaForest::make_heavy(NodeId v, NodeId c) {
  const NodeId root = path_root(v);
  const NodeId rest = split(root, position(v)).second;
  set(at(v).light, sumw(rest));
  set(at(v).heavy, c);
  pull_up(v);
  const NodeId joined = join2(path_root(v), path_root(c));
  set(at(joined).bp, kNil);
}

// Sizes changed below v: restore the heavy rule on every path from v to the
// root and refresh light sizes on the light edges crossed.
void GrappaForest::rebalance_from(NodeId v) {
  NodeId x = v;
  for (;;) {
    for (;;) {
      const NodeId bad = rightmost_violation(path_root(x));
      if (bad == kNil) break;
      const Vertex& B = at(bad);
      const NodeId h = B.heavy.latest();
      const NodeId c = B.tl.latest() != kNil && B.tl.latest() != h ? B.tl.latest() : B.tr.latest();
      make_heavy(bad, c);
      x = bad;
    }
    const NodeId top = at_position(path_root(x), 1);
    const NodeId u = at(top).tpar.latest();
    if (u == kNil) return;
    set(at(u).light, sumw(path_root(top)));
    pull_up(u);
    x = u;
  }
}

// ---------------------------------------------------------------------------
// Public operations

void GrappaForest::make_tree(NodeId v) {
  if (v == kNil) throw ContractViolation("grappa: vertex id 0 is reserved");
  if (v >= verts_.size()) verts_.resize(std::max<std::size_t>(v + 1, verts_.size() * 2));
  if (at(v).flags.latest() & kPresent) throw ContractViolation("grappa: vertex " + vname(v) + " reused");
  store_->require_open();
  set(at(v).flags, kPresent);
  pull(v);
}

void GrappaForest::link(NodeId v, NodeId w, Side d, Mark lm, Mark rm) {
  require_vertex(v);
  require_vertex(w);
  if (at(w).tpar.latest() != kNil) throw ContractViolation("grappa: link target " + vname(w) + " is not a root");
  VersionedCell<NodeId>& slot = d == Side::Left ? at(v).tl : at(v).tr;
  if (slot.latest() != kNil) throw ContractViolation("grappa: slot of " + vname(v) + " is occupied");
  if (find_root(v) == w) throw ContractViolation("grappa: link within one tree");

  set(slot, w);
  set(at(w).tpar, v);
  set_flag(w, kIsLeft, d == Side::Left);
  set(at(w).lm, lm);
  set_rm_field(w, rm);
  set(at(v).light, sumw(path_root(w)));
  pull_up(v);
  rebalance_from(v);
}

void GrappaForest::cut(NodeId v, NodeId w) {
  require_vertex(v);
  require_vertex(w);
  if (at(w).tpar.latest() != v) {
    throw ContractViolation("grappa: no edge (" + vname(v) + "," + vname(w) + ")");
  }
  if (at(v).heavy.latest() == w) {
    split(path_root(v), position(v));
    set(at(v).heavy, kNil);
  } else {
    set(at(v).light, 0u);
  }
  if (at(v).tl.latest() == w) {
    set(at(v).tl, kNil);
  } else {
    set(at(v).tr, kNil);
  }
  set(at(w).tpar, kNil);
  set_flag(w, kIsLeft, false);
  pull_up(v);
  rebalance_from(v);
}

void GrappaForest::mark_right_spine(NodeId v, Mark m) {
  require_vertex(v);
  NodeId x = find_root(v);
  for (;;) {
    const NodeId r = path_root(x);
    const std::uint32_t len = cnt(r);
    std::uint32_t t = first_left_from(r, 0, 2);
    if (t == 0) t = len + 1;
    if (t - 1 >= 2) tag_range(r, 0, 2, t - 1, m);
    const NodeId u = at_position(r, t - 1);
    const NodeId c = at(u).tr.latest();
    if (c == kNil) return;
    set_rm_field(c, m);
    x = c;
  }
}

// ---------------------------------------------------------------------------
// Versioned reads

NodeId GrappaForest::parent(NodeId v, VersionId ver) const { return verts_[v].tpar.read(ver); }

NodeId GrappaForest::child(NodeId v, Side s, VersionId ver) const {
  return s == Side::Left ? verts_[v].tl.read(ver) : verts_[v].tr.read(ver);
}

NodeId GrappaForest::find_root(NodeId v, VersionId ver) const {
  for (;;) {
    NodeId r = v;
    for (NodeId p = verts_[r].bp.read(ver); p != kNil; p = verts_[r].bp.read(ver)) r = p;
    for (NodeId l = verts_[r].bl.read(ver); l != kNil; l = verts_[r].bl.read(ver)) r = l;
    const NodeId up = verts_[r].tpar.read(ver);
    if (up == kNil) return r;
    v = up;
  }
}

std::size_t GrappaForest::subtree_size(NodeId v, VersionId ver) const {
  auto sw = [&](NodeId x) -> std::uint32_t { return x == kNil ? 0 : verts_[x].sumw.read(ver); };
  std::uint32_t prefix = sw(verts_[v].bl.read(ver));
  NodeId x = v;
  for (NodeId p = verts_[x].bp.read(ver); p != kNil; x = p, p = verts_[x].bp.read(ver)) {
    if (verts_[p].br.read(ver) == x) prefix += sw(verts_[p].bl.read(ver)) + 1 + verts_[p].light.read(ver);
  }
  return sw(x) - prefix;
}

std::pair<Mark, Mark> GrappaForest::effective_marks(NodeId w, VersionId ver) const {
  const Vertex& W = verts_[w];
  Mark rm = W.rm.read(ver);
  for (NodeId x = w; x != kNil; x = verts_[x].bp.read(ver)) {
    const Mark t = verts_[x].tag.read(ver);
    if (t != 0) rm = t;
  }
  return {W.lm.read(ver), rm};
}

Probe GrappaForest::probe(NodeId v, VersionId ver) const {
  Probe p;
  p.v = v;
  auto edge = [&](NodeId c) {
    EdgeView e;
    if (c == kNil) return e;
    e.child = c;
    std::tie(e.lm, e.rm) = effective_marks(c, ver);
    return e;
  };
  if (verts_[v].tpar.read(ver) != kNil) p.up = edge(v);
  p.left = edge(verts_[v].tl.read(ver));
  p.right = edge(verts_[v].tr.read(ver));
  return p;
}

SearchResult GrappaForest::oracle_search(NodeId v, const std::function<Direction(const Probe&)>& oracle,
                                         VersionId ver) const {
  if (!contains(v, ver)) throw ContractViolation("grappa: unknown vertex " + vname(v));
  const NodeId root = find_root(v, ver);
  NodeId x = root;
  for (NodeId p = verts_[x].bp.read(ver); p != kNil; p = verts_[x].bp.read(ver)) x = p;

  SearchResult res;
  auto finish = [&](NodeId c) {
    res.child = c;
    res.parent = verts_[c].tpar.read(ver);
    std::tie(res.lm, res.rm) = effective_marks(c, ver);
    return res;
  };
  NodeId succ = kNil;
  for (;;) {
    const Probe pr = probe(x, ver);
    ++res.probes;
    const Direction dir = oracle(pr);
    if (dir == Direction::toward_parent) {
      if (!pr.up.exists()) throw InconsistentOracle("oracle points above the root");
      const NodeId l = verts_[x].bl.read(ver);
      if (l == kNil) return finish(x);
      succ = x;
      x = l;
      continue;
    }
    const NodeId c = dir == Direction::toward_left ? pr.left.child : pr.right.child;
    if (c == kNil) throw InconsistentOracle("oracle points to a missing child of " + vname(x));
    if (c == verts_[x].heavy.read(ver)) {
      const NodeId r = verts_[x].br.read(ver);
      if (r != kNil) {
        x = r;
      } else if (succ != kNil) {
        return finish(succ);
      } else {
        throw InconsistentOracle("oracle search ran past the end of a path");
      }
    } else {
      x = c;
      for (NodeId p = verts_[x].bp.read(ver); p != kNil; p = verts_[x].bp.read(ver)) x = p;
      succ = kNil;
    }
  }
}

// ---------------------------------------------------------------------------
// Inspection

std::size_t GrappaForest::max_light_depth() const {
  std::size_t best = 0;
  for (NodeId v = 1; v < verts_.size(); ++v) {
    if (!contains(v)) continue;
    std::size_t light = 0;
    for (NodeId x = v, p = parent(x); p != kNil; x = p, p = parent(x)) {
      light += at(p).heavy.latest() != x;
    }
    best = std::max(best, light);
  }
  return best;
}

void GrappaForest::check_invariants() const {
  auto fail = [](const std::string& msg) { throw ContractViolation("grappa invariant: " + msg); };
  const std::size_t cap = verts_.size();
  std::vector<std::uint32_t> size(cap, 0);
  // Subtree sizes by repeated relaxation over a post-order of each tree.
  std::vector<NodeId> order;
  for (NodeId v = 1; v < cap; ++v) {
    if (!contains(v) || parent(v) != kNil) continue;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      order.push_back(x);
      for (NodeId c : {child(x, Side::Left), child(x, Side::Right)}) {
        if (c == kNil) continue;
        if (parent(c) != x) fail("child " + vname(c) + " does not point back to " + vname(x));
        const bool isleft = at(c).flags.latest() & kIsLeft;
        if (isleft != (child(x, Side::Left) == c)) fail("side flag of " + vname(c));
        stack.push_back(c);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId x = *it;
    size[x] = 1;
    for (NodeId c : {child(x, Side::Left), child(x, Side::Right)}) {
      if (c != kNil) size[x] += size[c];
    }
  }
  for (NodeId x : order) {
    const Vertex& X = at(x);
    const NodeId h = X.heavy.latest();
    const NodeId l = child(x, Side::Left), r = child(x, Side::Right);
    if ((l != kNil || r != kNil) && h == kNil) fail(vname(x) + " has children but no heavy child");
    if (h != kNil && h != l && h != r) fail("heavy child of " + vname(x) + " is not a child");
    const NodeId lc = h == l ? r : l;
    const std::uint32_t light = lc == kNil ? 0 : size[lc];
    if (X.light.latest() != light) fail("light size of " + vname(x));
    if (h != kNil && size[h] < light) fail("heavy child of " + vname(x) + " is smaller than its light child");
  }
  // Path trees: in-order equals the heavy chain from the top; aggregates.
  for (NodeId x : order) {
    if (at(x).bp.latest() != kNil) continue;
    std::vector<NodeId> seq;
    std::vector<NodeId> stack;
    NodeId y = x;
    while (y != kNil || !stack.empty()) {
      while (y != kNil) {
        stack.push_back(y);
        y = at(y).bl.latest();
      }
      y = stack.back();
      stack.pop_back();
      seq.push_back(y);
      y = at(y).br.latest();
    }
    const NodeId top = seq.front();
    if (parent(top) != kNil && at(parent(top)).heavy.latest() == top) fail("path top " + vname(top) + " is heavy");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      if (at(seq[i]).heavy.latest() != seq[i + 1]) fail("path order broken at " + vname(seq[i]));
    }
    if (at(seq.back()).heavy.latest() != kNil) fail("path ends before its heavy chain");
  }
  for (NodeId x : order) {
    const Vertex& X = at(x);
    const NodeId l = X.bl.latest(), r = X.br.latest();
    for (NodeId c : {l, r}) {
      if (c != kNil && at(c).bp.latest() != x) fail("path-tree parent of " + vname(c));
    }
    const std::uint32_t light = X.light.latest(), w = 1 + light;
    if (X.cnt.latest() != cnt(l) + 1 + cnt(r)) fail("cnt at " + vname(x));
    if (X.sumw.latest() != sumw(l) + w + sumw(r)) fail("sumw at " + vname(x));
    const std::uint32_t mp =
        std::max({maxpl(l), sumw(l) + w + light, r == kNil ? 0u : sumw(l) + w + maxpl(r)});
    if (X.maxpl.latest() != mp) fail("maxpl at " + vname(x));
    if (height(x) != 1 + std::max(height(l), height(r))) fail("height at " + vname(x));
    if (std::abs(height(l) - height(r)) > 1) fail("unbalanced at " + vname(x));
    const bool any = (X.flags.latest() & kIsLeft) || anyleft(l) || anyleft(r);
    if (anyleft(x) != any) fail("anyleft at " + vname(x));
  }
}

}  // namespace hpq
