#include "polyframe/reduction.hpp"

#include "polyframe/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <deque>
#include <map>

namespace polyframe {

void PlaneTree::validate() const {
  if (tree.empty()) throw InvariantError("plane tree is empty");
  auto root = tree.root();
  if (!root) throw InvariantError("plane tree is not rooted");
  for (ElementId x = 0; x < tree.size(); ++x) {
    if (x != *root && tree.lower_covers(x).size() != 1) {
      throw InvariantError("element " + tree.name(x) + " has more than one immediate predecessor");
    }
  }
  auto tops = tree.tops();
  for (auto t : tops) {
    if (tree.height_of(t) != tree.height_of(tops.front())) throw InvariantError("tops have different heights");
  }
  auto sorted = tops_order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != tops) throw InvariantError("plane order is not an enumeration of the tops");
  std::vector<std::size_t> position(tree.size());
  for (std::size_t i = 0; i < tops_order.size(); ++i) position[tops_order[i]] = i;
  for (ElementId x = 0; x < tree.size(); ++x) {
    std::vector<std::size_t> idx;
    for (auto t : tops) {
      if (tree.leq(x, t)) idx.push_back(position[t]);
    }
    std::sort(idx.begin(), idx.end());
    if (!idx.empty() && idx.back() - idx.front() + 1 != idx.size()) {
      throw InvariantError("tops above " + tree.name(x) + " do not form an interval of the plane order");
    }
  }
}

SawedTree::SawedTree(Poset frame, std::vector<ElementId> tops_order, std::vector<ElementId> saw_nodes)
    : frame_(std::move(frame)), tops_order_(std::move(tops_order)), saw_nodes_(std::move(saw_nodes)) {
  const std::size_t k = tops_order_.size();
  if (k < 2) throw InvariantError("sawed tree needs at least two tree tops");
  if (saw_nodes_.size() != k - 1) throw InvariantError("sawed tree needs exactly one saw between adjacent tops");
  tree_part_ = frame_.full_set();
  for (auto s : saw_nodes_) {
    if (s >= frame_.size() || !tree_part_.test(s)) throw InvariantError("invalid or repeated saw node");
    tree_part_.reset(s);
  }
  for (std::size_t i = 0; i + 1 < k; ++i) {
    auto s = saw_nodes_[i];
    auto a = tops_order_[i];
    auto b = tops_order_[i + 1];
    if (a >= frame_.size() || b >= frame_.size() || !tree_part_.test(a) || !tree_part_.test(b)) {
      throw InvariantError("plane order lists a non-tree element");
    }
    if (frame_.strict_up(s).any()) throw InvariantError("saw node " + frame_.name(s) + " is not maximal");
    std::vector<ElementId> below = frame_.lower_covers(s);
    std::vector<ElementId> expected{std::min(a, b), std::max(a, b)};
    if (below != expected) {
      throw InvariantError("saw node " + frame_.name(s) + " must cover exactly " + frame_.name(a) + " and " +
                           frame_.name(b));
    }
  }
  base().validate();
  for (auto t : frame_.tops()) {
    if (tree_part_.test(t)) throw InvariantError("tree element " + frame_.name(t) + " is maximal in the sawed tree");
  }
}

PlaneTree SawedTree::base() const {
  std::vector<ElementId> ids;
  Poset tree = frame_.restrict(tree_part_, &ids);
  std::vector<ElementId> order;
  for (auto t : tops_order_) {
    auto it = std::lower_bound(ids.begin(), ids.end(), t);
    if (it == ids.end() || *it != t) throw InvariantError("plane order lists a saw node");
    order.push_back(static_cast<ElementId>(it - ids.begin()));
  }
  return PlaneTree{std::move(tree), std::move(order)};
}

SawedTree build_sawed_tree(const PlaneTree& pt, const std::string& prefix) {
  pt.validate();
  const std::size_t k = pt.tops_order.size();
  if (k < 2) throw PreconditionError("a sawed tree needs at least two tops");
  if (pt.tree.height() == 0) throw PreconditionError("a sawed tree needs a tree of height at least 1");
  std::vector<std::string> names = pt.tree.names();
  std::vector<std::pair<std::string, std::string>> order;
  for (auto [a, b] : pt.tree.covers()) order.emplace_back(pt.tree.name(a), pt.tree.name(b));
  std::vector<std::string> saw_names;
  for (std::size_t i = 1; i < k; ++i) {
    std::string name = prefix + std::to_string(i);
    if (pt.tree.find(name)) throw PreconditionError("saw name " + name + " collides with a tree element");
    saw_names.push_back(name);
    names.push_back(name);
    order.emplace_back(pt.tree.name(pt.tops_order[i - 1]), name);
    order.emplace_back(pt.tree.name(pt.tops_order[i]), name);
  }
  Poset frame = Poset::from_relations(names, order);
  std::vector<ElementId> tops, saws;
  for (auto t : pt.tops_order) tops.push_back(frame.at(pt.tree.name(t)));
  for (const auto& s : saw_names) saws.push_back(frame.at(s));
  return SawedTree(std::move(frame), std::move(tops), std::move(saws));
}

namespace {

int orientation(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by, const Rational& cx,
                const Rational& cy) {
  Rational v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return v > 0 ? 1 : v < 0 ? -1 : 0;
}

bool on_segment(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by, const Rational& px,
                const Rational& py) {
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py && py <= std::max(ay, by);
}

}  // namespace

bool segments_intersect(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                        const Rational& cx, const Rational& cy, const Rational& dx, const Rational& dy) {
  int d1 = orientation(cx, cy, dx, dy, ax, ay);
  int d2 = orientation(cx, cy, dx, dy, bx, by);
  int d3 = orientation(ax, ay, bx, by, cx, cy);
  int d4 = orientation(ax, ay, bx, by, dx, dy);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(cx, cy, dx, dy, ax, ay)) return true;
  if (d2 == 0 && on_segment(cx, cy, dx, dy, bx, by)) return true;
  if (d3 == 0 && on_segment(ax, ay, bx, by, cx, cy)) return true;
  if (d4 == 0 && on_segment(ax, ay, bx, by, dx, dy)) return true;
  return false;
}

DrawingCheck check_plane_drawing(const Poset& p, const PlaneDrawing& d, const std::vector<ElementId>& tops_order) {
  auto fail = [](std::string reason) { return DrawingCheck{false, std::move(reason)}; };
  if (d.x.size() != p.size() || d.y.size() != p.size()) return fail("drawing does not cover every element");
  for (ElementId v = 0; v < p.size(); ++v) {
    if (d.y[v] != p.height_of(v)) return fail("y-coordinate of " + p.name(v) + " differs from its height");
  }
  std::map<std::pair<Rational, int>, ElementId> seen;
  for (ElementId v = 0; v < p.size(); ++v) {
    if (!seen.emplace(std::pair(d.x[v], d.y[v]), v).second) return fail("drawing is not injective at " + p.name(v));
  }
  for (std::size_t i = 1; i < tops_order.size(); ++i) {
    if (!(d.x[tops_order[i - 1]] < d.x[tops_order[i]])) {
      return fail("tops " + p.name(tops_order[i - 1]) + ", " + p.name(tops_order[i]) + " are out of order");
    }
  }
  const auto& edges = p.covers();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      auto [a, b] = edges[i];
      auto [c, e] = edges[j];
      std::vector<ElementId> shared;
      for (auto u : {a, b}) {
        if (u == c || u == e) shared.push_back(u);
      }
      if (shared.empty()) {
        if (segments_intersect(d.x[a], d.y[a], d.x[b], d.y[b], d.x[c], d.y[c], d.x[e], d.y[e])) {
          return fail(fmt::format("edges {}-{} and {}-{} cross", p.name(a), p.name(b), p.name(c), p.name(e)));
        }
        continue;
      }
      ElementId m = shared.front();
      ElementId u = m == a ? b : a;
      ElementId v = m == c ? e : c;
      Rational ux = d.x[u] - d.x[m], uy = d.y[u] - d.y[m];
      Rational vx = d.x[v] - d.x[m], vy = d.y[v] - d.y[m];
      if (ux * vy - uy * vx == 0 && ux * vx + uy * vy > 0) {
        return fail(fmt::format("edges {}-{} and {}-{} overlap", p.name(a), p.name(b), p.name(c), p.name(e)));
      }
    }
  }
  return {};
}

PlaneDrawing plane_drawing(const PlaneTree& pt) {
  pt.validate();
  const Poset& t = pt.tree;
  PlaneDrawing d;
  d.x.assign(t.size(), Rational(0));
  d.y.assign(t.size(), 0);
  for (std::size_t i = 0; i < pt.tops_order.size(); ++i) d.x[pt.tops_order[i]] = static_cast<long>(i);
  const auto& order = t.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& children = t.upper_covers(*it);
    if (children.empty()) continue;
    Rational lo = d.x[children.front()], hi = lo;
    for (auto c : children) {
      lo = std::min(lo, d.x[c]);
      hi = std::max(hi, d.x[c]);
    }
    d.x[*it] = (lo + hi) / 2;
  }
  for (ElementId v = 0; v < t.size(); ++v) d.y[v] = t.height_of(v);
  auto check = check_plane_drawing(t, d, pt.tops_order);
  if (!check.pass) throw InvariantError("plane drawing: " + check.reason);
  return d;
}

PlaneDrawing plane_drawing(const SawedTree& st) {
  std::vector<ElementId> ids;
  const Poset& f = st.frame();
  f.restrict(st.tree_part(), &ids);
  PlaneDrawing base = plane_drawing(st.base());
  PlaneDrawing d;
  d.x.assign(f.size(), Rational(0));
  d.y.assign(f.size(), 0);
  for (std::size_t i = 0; i < ids.size(); ++i) d.x[ids[i]] = base.x[i];
  const auto& tops = st.tops_order();
  for (std::size_t i = 0; i < st.saw_nodes().size(); ++i) {
    d.x[st.saw_nodes()[i]] = (d.x[tops[i]] + d.x[tops[i + 1]]) / 2;
  }
  for (ElementId v = 0; v < f.size(); ++v) d.y[v] = f.height_of(v);
  auto check = check_plane_drawing(f, d, tops);
  if (!check.pass) throw InvariantError("plane drawing: " + check.reason);
  return d;
}

namespace {

void require_zigzag_frame(const Poset& frame) {
  if (!frame.is_rooted()) throw PreconditionError("zigzag paths need a rooted frame");
  if (frame.height() < 2) throw PreconditionError("zigzag paths need height at least 2");
  auto pl = satisfies_pl(frame);
  if (!pl.pass()) throw PreconditionError("zigzag paths need a PL frame: " + describe(frame, pl));
}

}  // namespace

std::vector<ElementId> zigzag_path(const Poset& frame, ElementId s, ElementId t) {
  require_zigzag_frame(frame);
  if (frame.strict_up(s).any() || frame.strict_up(t).any()) throw PreconditionError("zigzag endpoints must be tops");
  // Valleys: depth-1 points whose strict upset is a pair of tops.
  std::vector<std::vector<std::pair<ElementId, ElementId>>> next(frame.size());
  for (ElementId x = 0; x < frame.size(); ++x) {
    if (frame.depth_of(x) != 1) continue;
    auto above = members(frame.strict_up(x));
    if (above.size() != 2) continue;
    next[above[0]].emplace_back(x, above[1]);
    next[above[1]].emplace_back(x, above[0]);
  }
  std::vector<std::optional<std::pair<ElementId, ElementId>>> parent(frame.size());
  std::vector<bool> visited(frame.size(), false);
  std::deque<ElementId> queue{s};
  visited[s] = true;
  while (!queue.empty() && !visited[t]) {
    auto u = queue.front();
    queue.pop_front();
    for (auto [valley, v] : next[u]) {
      if (visited[v]) continue;
      visited[v] = true;
      parent[v] = std::pair(valley, u);
      queue.push_back(v);
    }
  }
  if (!visited[t]) {
    throw InvariantError("no zigzag path from " + frame.name(s) + " to " + frame.name(t));
  }
  std::vector<ElementId> path{t};
  for (ElementId v = t; v != s;) {
    auto [valley, u] = *parent[v];
    path.push_back(valley);
    path.push_back(u);
    v = u;
  }
  std::reverse(path.begin(), path.end());
  auto problem = check_zigzag(frame, path);
  if (!problem.empty()) throw InvariantError("zigzag path: " + problem);
  return path;
}

std::string check_zigzag(const Poset& frame, const std::vector<ElementId>& path) {
  if (path.empty() || path.size() % 2 == 0) return "path must have odd length";
  auto root = frame.root();
  if (!root) return "frame is not rooted";
  for (std::size_t i = 0; i < path.size(); ++i) {
    ElementId a = path[i];
    if (a >= frame.size() || !frame.less(*root, a)) return fmt::format("a_{} is not above the root", i);
    ElementSet above = frame.strict_up(a);
    if (i % 2 == 0) {
      if (above.any()) return fmt::format("a_{} = {} is not a top", i, frame.name(a));
    } else {
      ElementSet expected = frame.set_of({path[i - 1], path[i + 1]});
      if (above != expected) {
        return fmt::format("strict upset of a_{} = {} is not {{a_{}, a_{}}}", i, frame.name(a), i - 1, i + 1);
      }
    }
  }
  return {};
}

namespace {

// Sawed tree under construction: node indices, covers and the map into the
// frame being reduced.
struct Draft {
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::vector<std::size_t> tops;
  std::vector<std::size_t> saws;
  std::vector<ElementId> image;
  std::size_t root = 0;

  std::size_t add(ElementId target) {
    image.push_back(target);
    return image.size() - 1;
  }

  void lift(int levels) {
    for (int i = 0; i < levels; ++i) {
      auto r = add(image[root]);
      covers.emplace_back(r, root);
      root = r;
    }
  }

  // Appends `other`, mapping its images through `ids`; returns the index offset.
  std::size_t absorb(const Draft& other, const std::vector<ElementId>& ids) {
    std::size_t offset = image.size();
    for (auto y : other.image) image.push_back(ids[y]);
    for (auto [a, b] : other.covers) covers.emplace_back(a + offset, b + offset);
    return offset;
  }
};

std::vector<ElementId> concatenated_path(const Poset& g, const std::vector<ElementId>& tops) {
  std::vector<ElementId> path{tops.front()};
  for (std::size_t i = 1; i < tops.size(); ++i) {
    auto piece = zigzag_path(g, tops[i - 1], tops[i]);
    path.insert(path.end(), piece.begin() + 1, piece.end());
  }
  return path;
}

Draft reduce_draft(const Poset& g, int n) {
  const int h = g.height();
  const ElementId bottom = *g.root();
  Draft d;
  if (h == 0) {
    d.root = d.add(bottom);
    auto t1 = d.add(bottom);
    auto t2 = d.add(bottom);
    auto s = d.add(bottom);
    d.covers = {{d.root, t1}, {d.root, t2}, {t1, s}, {t2, s}};
    d.tops = {t1, t2};
    d.saws = {s};
    d.lift(n - 2);
    return d;
  }
  if (h == 1) {
    auto tops = g.tops();
    d.root = d.add(bottom);
    if (tops.size() == 1) {
      auto c1 = d.add(tops[0]);
      auto c2 = d.add(tops[0]);
      auto s = d.add(tops[0]);
      d.covers = {{d.root, c1}, {d.root, c2}, {c1, s}, {c2, s}};
      d.tops = {c1, c2};
      d.saws = {s};
    } else if (tops.size() == 2) {
      auto c1 = d.add(tops[0]);
      auto c2 = d.add(bottom);
      auto c3 = d.add(tops[1]);
      auto s1 = d.add(tops[0]);
      auto s2 = d.add(tops[1]);
      d.covers = {{d.root, c1}, {d.root, c2}, {d.root, c3}, {c1, s1}, {c2, s1}, {c2, s2}, {c3, s2}};
      d.tops = {c1, c2, c3};
      d.saws = {s1, s2};
    } else {
      throw PreconditionError("height-1 frame with more than two tops is not PL");
    }
    d.lift(n - 2);
    return d;
  }
  if (h == 2) {
    auto path = concatenated_path(g, g.tops());
    std::vector<bool> on_path(g.size(), false);
    for (auto a : path) on_path[a] = true;
    for (ElementId x = 0; x < g.size(); ++x) {
      if (g.depth_of(x) != 1 || on_path[x]) continue;
      auto above = members(g.strict_up(x));
      ElementId s = above.front();
      ElementId t = above.back();
      auto at = std::find(path.begin(), path.end(), s);
      path.insert(at + 1, {x, t, x, s});
      on_path[x] = true;
    }
    const std::size_t m = path.size() - 1;
    d.root = d.add(bottom);
    // w_{-1}, w_0, ..., w_m, w_{m+1}
    std::vector<std::size_t> w;
    w.push_back(d.add(path.front()));
    for (auto a : path) w.push_back(d.add(a));
    w.push_back(d.add(path.back()));
    auto at = [&](long i) { return w[static_cast<std::size_t>(i + 1)]; };
    for (long i = -1; i <= static_cast<long>(m) + 1; i += 2) {
      d.covers.emplace_back(d.root, at(i));
      d.tops.push_back(at(i));
    }
    for (long i = 0; i <= static_cast<long>(m); i += 2) {
      d.covers.emplace_back(at(i - 1), at(i));
      d.covers.emplace_back(at(i + 1), at(i));
      d.saws.push_back(at(i));
    }
    d.lift(n - 2);
    return d;
  }

  const auto& z = g.upper_covers(bottom);
  std::vector<Draft> parts;
  std::vector<std::vector<ElementId>> part_ids;
  for (auto zi : z) {
    std::vector<ElementId> ids;
    Poset sub = g.restrict(g.up(zi), &ids);
    parts.push_back(reduce_draft(sub, n - 1));
    part_ids.push_back(std::move(ids));
  }
  d.root = d.add(bottom);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Draft& part = parts[i];
    const auto& ids = part_ids[i];
    if (i > 0) {
      const Draft& prev = parts[i - 1];
      ElementId from = part_ids[i - 1][prev.image[prev.saws.back()]];
      ElementId to = ids[part.image[part.saws.front()]];
      auto path = zigzag_path(g, from, to);
      std::size_t left = d.tops.back();
      // Gap nodes are created before the next part is absorbed, so its
      // first tree top is only known afterwards.
      std::vector<std::size_t> gap_tops;
      std::vector<std::size_t> gap_saws;
      for (std::size_t j = 0; j < path.size(); ++j) {
        if (j % 2 == 0) {
          gap_saws.push_back(d.add(path[j]));
          continue;
        }
        std::size_t below = d.root;
        for (int level = 0; level < n - 2; ++level) {
          auto rung = d.add(path[j]);
          d.covers.emplace_back(below, rung);
          below = rung;
        }
        auto top = d.add(path[j]);
        d.covers.emplace_back(below, top);
        gap_tops.push_back(top);
      }
      std::size_t offset = d.absorb(part, ids);
      std::size_t right = part.tops.front() + offset;
      std::vector<std::size_t> row{left};
      row.insert(row.end(), gap_tops.begin(), gap_tops.end());
      row.push_back(right);
      for (std::size_t j = 0; j < gap_saws.size(); ++j) {
        d.covers.emplace_back(row[j], gap_saws[j]);
        d.covers.emplace_back(row[j + 1], gap_saws[j]);
        d.saws.push_back(gap_saws[j]);
      }
      d.tops.insert(d.tops.end(), gap_tops.begin(), gap_tops.end());
      d.covers.emplace_back(d.root, part.root + offset);
      for (auto t : part.tops) d.tops.push_back(t + offset);
      for (auto s : part.saws) d.saws.push_back(s + offset);
    } else {
      std::size_t offset = d.absorb(part, ids);
      d.covers.emplace_back(d.root, part.root + offset);
      for (auto t : part.tops) d.tops.push_back(t + offset);
      for (auto s : part.saws) d.saws.push_back(s + offset);
    }
  }
  return d;
}

}  // namespace

Reduction reduce_to_sawed_tree(const Poset& frame) {
  if (!frame.is_rooted()) throw PreconditionError("reduction needs a rooted frame");
  const int n = frame.height();
  if (n < 2) throw PreconditionError("reduction needs height at least 2");
  auto pl = satisfies_pl(frame, n);
  if (!pl.pass()) throw PreconditionError("reduction needs a PL frame: " + describe(frame, pl));
  Draft d = reduce_draft(frame, n);

  const std::size_t count = d.image.size();
  const std::size_t width = std::to_string(count - 1).size();
  std::vector<std::string> names(count);
  for (std::size_t i = 0; i < count; ++i) names[i] = fmt::format("w{:0>{}}", i, width);
  Poset tree = Poset::from_index_relations(names, d.covers);
  // zero-padded names keep ids equal to draft indices
  SawedTree sawed(std::move(tree), d.tops, d.saws);
  PosetMap map{sawed.frame(), frame, d.image};
  auto check = is_p_morphism(map);
  if (!check.ok()) throw InvariantError("reduction map: " + describe(map, check));
  if (!is_surjective(map)) throw InvariantError("reduction map is not surjective");
  if (sawed.height() != n) throw InvariantError("reduction changed the height");
  return Reduction{std::move(sawed), std::move(map)};
}

}  // namespace polyframe
