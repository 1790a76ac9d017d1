#include "hpq/dual_tree.hpp"

#include <algorithm>

#include "hpq/errors.hpp"

namespace hpq {

DualTree::InsertResult DualTree::insert_ccw(const Point& p) {
  if (!sites_.can_append(p)) {
    throw InvalidInput("appending " + to_string(p) + " breaks strict convex counterclockwise order");
  }
  const std::size_t n = sites_.size();
  InsertResult res;
  if (n < 2) {
    sites_.append(p);
    return res;
  }

  if (n >= 3) {
    std::vector<NodeId> stack{tree_.root()};
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      const int s = incircle_sign(sites_.site(lo_[x]), sites_.site(x), sites_.site(hi_[x]), p);
      if (s == 0) {
        throw DegenerateInput("site " + to_string(p) + " is cocircular with triangle (" +
                              std::to_string(lo_[x]) + "," + std::to_string(x) + "," +
                              std::to_string(hi_[x]) + ")");
      }
      if (s * mode_sign(mode_) > 0) {
        res.anchored.push_back(x);
        if (tree_.left(x) != kNil) stack.push_back(tree_.left(x));
        if (tree_.right(x) != kNil) stack.push_back(tree_.right(x));
      }
    }
  }

  sites_.append(p);
  const auto m = static_cast<SiteId>(n + 1);
  lo_.resize(m, 0);
  hi_.resize(m, 0);
  FlarbResult f = flarb(tree_, res.anchored, static_cast<NodeId>(n));
  res.delta = std::move(f.delta);
  res.potential_change = f.potential_change;

  SiteId prev = 1;
  for (NodeId x = tree_.root(); x != kNil; x = tree_.right(x)) {
    lo_[x] = prev;
    hi_[x] = m;
    prev = x;
  }
  return res;
}

std::vector<Triangle> DualTree::triangles() const {
  std::vector<Triangle> out;
  for (NodeId x : tree_.inorder()) out.push_back(triangle(x));
  return out;
}

Point DualTree::outward(SiteId s) const {
  const auto n = static_cast<SiteId>(sites_.size());
  return outward_direction(sites_.site(s == 1 ? n : s - 1), sites_.site(s), sites_.site(s == n ? 1 : s + 1));
}

Sector DualTree::sector_of(NodeId key, const Point& q) const {
  const SiteId i = lo_[key], k = hi_[key];
  if (mode_ == Mode::Farthest) {
    return hpq::sector_of(sites_.site(i), sites_.site(key), sites_.site(k), q, mode_);
  }
  return hpq::sector_of(sites_.site(i), sites_.site(key), sites_.site(k), outward(i), outward(key),
                        outward(k), q, mode_);
}

SiteId DualTree::locate(const Point& q) const {
  const std::size_t n = sites_.size();
  if (n == 0) throw ContractViolation("locate on an empty tree");
  if (n == 1) return 1;
  auto best = [&](std::initializer_list<SiteId> ids) {
    SiteId b = 0;
    for (SiteId s : ids) {
      if (b == 0 || better_site(mode_, q, sites_.site(s), s, sites_.site(b), b)) b = s;
    }
    return b;
  };
  if (n == 2) return best({1, 2});

  NodeId x = tree_.root();
  for (;;) {
    const Sector s = sector_of(x, q);
    if (s == Sector::toward_parent) break;
    const NodeId c = s == Sector::toward_left ? tree_.left(x) : tree_.right(x);
    if (c == kNil) break;
    x = c;
  }
  return best({lo_[x], x, hi_[x]});
}

CentroidLocator::CentroidLocator(const DualTree& tree, std::uint32_t offset)
    : mode_(tree.mode()), offset_(offset), len_(static_cast<std::uint32_t>(tree.site_count())) {
  if (tree.empty()) return;
  const FlarbTree& t = tree.topology();
  auto neighbour = [&](NodeId v, int side) {
    return side == 0 ? t.parent(v) : side == 1 ? t.left(v) : t.right(v);
  };

  std::vector<std::int32_t> idx(len_ + 1, -1);
  std::vector<std::uint32_t> sub(len_ + 1, 0);
  std::vector<NodeId> bfs_parent(len_ + 1, kNil);
  std::vector<NodeId> order;
  nodes_.reserve(t.node_count());

  struct Task {
    NodeId entry;
    std::int32_t owner;
    int side;
    std::size_t depth;
  };
  std::vector<Task> tasks{{t.root(), -1, 0, 1}};
  while (!tasks.empty()) {
    const Task task = tasks.back();
    tasks.pop_back();

    order.clear();
    order.push_back(task.entry);
    bfs_parent[task.entry] = kNil;
    for (std::size_t h = 0; h < order.size(); ++h) {
      const NodeId v = order[h];
      for (int s = 0; s < 3; ++s) {
        const NodeId w = neighbour(v, s);
        if (w == kNil || idx[w] >= 0 || w == bfs_parent[v]) continue;
        bfs_parent[w] = v;
        order.push_back(w);
      }
    }
    for (std::size_t h = order.size(); h-- > 0;) {
      const NodeId v = order[h];
      sub[v] = 1;
      for (int s = 0; s < 3; ++s) {
        const NodeId w = neighbour(v, s);
        if (w != kNil && idx[w] < 0 && bfs_parent[w] == v && w != bfs_parent[v]) sub[v] += sub[w];
      }
    }
    const std::uint32_t total = sub[task.entry];
    NodeId c = task.entry;
    for (bool moved = true; moved;) {
      moved = false;
      for (int s = 0; s < 3; ++s) {
        const NodeId w = neighbour(c, s);
        if (w == kNil || idx[w] >= 0 || bfs_parent[w] != c) continue;
        if (2 * sub[w] > total) {
          c = w;
          moved = true;
          break;
        }
      }
    }

    const auto id = static_cast<std::int32_t>(nodes_.size());
    idx[c] = id;
    const Triangle tri = tree.triangle(c);
    Node node;
    node.lo = tri.i;
    node.key = tri.j;
    node.hi = tri.k;
    nodes_.push_back(node);
    if (task.owner < 0) {
      top_ = id;
    } else {
      nodes_[task.owner].next[task.side] = id;
    }
    depth_ = std::max(depth_, task.depth);
    for (int s = 0; s < 3; ++s) {
      const NodeId w = neighbour(c, s);
      if (w == kNil) continue;
      if (idx[w] >= 0) {
        nodes_[id].next[s] = -2 - idx[w];
      } else {
        tasks.push_back({w, id, s, task.depth + 1});
      }
    }
  }
}

SiteId CentroidLocator::locate(const SiteRing& ring, const Point& q, int* sector_tests) const {
  if (len_ == 0) throw ContractViolation("locate on an empty locator");
  const std::size_t rn = ring.pts.size();
  auto pos = [&](SiteId s) { return (offset_ + s - 1) % rn; };
  auto pt = [&](SiteId s) -> const Point& { return ring.pts[pos(s)]; };
  auto label = [&](SiteId s) { return static_cast<SiteId>(ring.first_label + pos(s)); };
  auto outward = [&](SiteId s) {
    const std::size_t p = pos(s);
    return outward_direction(ring.pts[(p + rn - 1) % rn], ring.pts[p], ring.pts[(p + 1) % rn]);
  };

  SiteId best = 0;
  auto consider = [&](SiteId s) {
    if (best == 0 || better_site(mode_, q, pt(s), label(s), pt(best), label(best))) best = s;
  };
  if (top_ < 0) {
    for (SiteId s = 1; s <= len_; ++s) consider(s);
    return label(best);
  }

  int tests = 0;
  std::int32_t cur = top_;
  for (;;) {
    const Node& c = nodes_[cur];
    const Sector sec =
        mode_ == Mode::Farthest
            ? hpq::sector_of(pt(c.lo), pt(c.key), pt(c.hi), q, mode_)
            : hpq::sector_of(pt(c.lo), pt(c.key), pt(c.hi), outward(c.lo), outward(c.key),
                             outward(c.hi), q, mode_);
    ++tests;
    const std::int32_t link = c.next[static_cast<int>(sec)];
    if (link >= 0) {
      cur = link;
      continue;
    }
    consider(c.lo);
    consider(c.key);
    consider(c.hi);
    if (link <= -2) {
      const Node& nb = nodes_[-2 - link];
      consider(nb.lo);
      consider(nb.key);
      consider(nb.hi);
    }
    break;
  }
  if (sector_tests) *sector_tests = tests;
  return label(best);
}

}  // namespace hpq
