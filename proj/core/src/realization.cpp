#include "polyframe/realization.hpp"

#include "polyframe/error.hpp"
#include "polyframe/linalg.hpp"
#include "polyframe/lp.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

namespace polyframe {

std::vector<ElementId> ConvexRealization::vertex_elements() const {
  std::vector<ElementId> out(complex.vertices().size());
  for (std::size_t v = 0; v < out.size(); ++v) {
    auto idx = complex.find({v});
    if (!idx) throw InvariantError(fmt::format("vertex {} has no 0-simplex", v));
    out[v] = simplex_labels.at(*idx);
  }
  return out;
}

Poset ConvexRealization::chain_poset(std::vector<ElementId>* ids) const {
  auto elems = vertex_elements();
  return frame.restrict(frame.set_of(elems), ids);
}

namespace {

ElementId chain_max(const Poset& p, const std::vector<ElementId>& chain) {
  ElementId top = chain.front();
  for (auto x : chain) {
    if (p.leq(top, x)) top = x;
  }
  return top;
}

}  // namespace

ConvexRealization realize_nerve(const Poset& frame) {
  ConvexRealization r;
  r.frame = frame;
  r.n = frame.empty() ? -1 : frame.height();
  r.complex = nabla(frame);
  for (const auto& s : r.complex.simplices()) r.simplex_labels.push_back(chain_max(frame, s));
  return r;
}

namespace {

void require_checks(const VerificationReport& report, std::size_t count) {
  for (std::size_t i = 0; i < count && i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    if (!c.pass) throw InvariantError("convex realisation failed check '" + c.name + "': " + c.detail);
  }
}

VerificationReport run_checks(const ConvexRealization& r, const VerifyOptions& opts, std::size_t count);

}  // namespace

ConvexRealization realize_sawed_tree(const SawedTree& tree) {
  const Poset& f = tree.frame();
  const int n = f.height();
  if (n < 2) throw PreconditionError("convex realisation needs height at least 2");
  PlaneDrawing d = plane_drawing(tree);
  auto tree_ids = members(tree.tree_part());
  std::vector<std::size_t> vertex_of(f.size(), f.size());
  std::vector<Point> alpha;
  for (std::size_t i = 0; i < tree_ids.size(); ++i) {
    ElementId x = tree_ids[i];
    vertex_of[x] = i;
    Point p = basis_vector(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(f.height_of(x)));
    p[static_cast<std::size_t>(n)] += d.x[x];
    alpha.push_back(std::move(p));
  }
  std::vector<ElementId> sub_ids;
  Poset t = f.restrict(tree.tree_part(), &sub_ids);
  std::vector<VertexSet> simplices;
  for (const auto& chain : t.chains()) {
    VertexSet vs;
    for (auto c : chain) vs.push_back(vertex_of[sub_ids[c]]);
    std::sort(vs.begin(), vs.end());
    simplices.push_back(std::move(vs));
  }
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });

  ConvexRealization r;
  r.frame = f;
  r.n = n;
  r.complex = SimplicialComplex(std::move(alpha), std::move(simplices));
  for (const auto& s : r.complex.simplices()) {
    std::vector<ElementId> chain;
    for (auto v : s) chain.push_back(tree_ids[v]);
    r.simplex_labels.push_back(chain_max(f, chain));
  }
  auto down_vertices = [&](ElementId top) {
    VertexSet vs;
    for (auto x : members(f.down(top))) vs.push_back(vertex_of[x]);
    std::sort(vs.begin(), vs.end());
    return vs;
  };
  const auto& tops = tree.tops_order();
  for (std::size_t i = 0; i < tree.saw_nodes().size(); ++i) {
    SawCell cell;
    cell.removed_facets = {down_vertices(tops[i]), down_vertices(tops[i + 1])};
    std::set_union(cell.removed_facets[0].begin(), cell.removed_facets[0].end(), cell.removed_facets[1].begin(),
                   cell.removed_facets[1].end(), std::back_inserter(cell.vertices));
    cell.label = tree.saw_nodes()[i];
    r.saw_cells.push_back(std::move(cell));
  }
  require_checks(run_checks(r, VerifyOptions{}, 4), 4);
  return r;
}

namespace {

VertexSet vertices_by_height(const ConvexRealization& r, VertexSet vs) {
  auto elems = r.vertex_elements();
  std::sort(vs.begin(), vs.end(), [&](std::size_t a, std::size_t b) {
    return r.frame.height_of(elems[a]) < r.frame.height_of(elems[b]);
  });
  return vs;
}

// Staircase triangulation of Conv(L ∪ R) for the two chains L, R of a saw cell:
// {L_0..L_q} ∪ {R_q..R_{n-1}} for every level q at which the chains differ.
std::vector<VertexSet> staircase(const ConvexRealization& r, const SawCell& cell) {
  VertexSet left = vertices_by_height(r, cell.removed_facets[0]);
  VertexSet right = vertices_by_height(r, cell.removed_facets[1]);
  if (left.size() != right.size()) throw InvariantError("saw cell facets have different sizes");
  std::size_t c = 0;
  while (c < left.size() && left[c] == right[c]) ++c;
  std::vector<VertexSet> out;
  for (std::size_t q = c; q < left.size(); ++q) {
    std::set<std::size_t> vs(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(q) + 1);
    vs.insert(right.begin() + static_cast<std::ptrdiff_t>(q), right.end());
    out.emplace_back(vs.begin(), vs.end());
  }
  return out;
}

// Normal (inside the affine hull of `hull`) of the hyperplane spanned by `face`,
// or nullopt when the face does not have codimension one there.
std::optional<Point> face_normal(const std::vector<Point>& hull, const std::vector<Point>& face) {
  Matrix dirs;
  for (std::size_t i = 1; i < hull.size(); ++i) dirs.push_back(hull[i] - hull[0]);
  auto basis_idx = independent_rows(dirs);
  std::vector<Point> basis;
  for (auto i : basis_idx) basis.push_back(dirs[i]);
  std::vector<Point> face_dirs;
  for (std::size_t i = 1; i < face.size(); ++i) face_dirs.push_back(face[i] - face[0]);
  const std::size_t k = basis.size();
  auto dot = [](const Point& a, const Point& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (std::size_t fixed = 0; fixed < k; ++fixed) {
    Matrix a;
    std::vector<Rational> rhs;
    for (const auto& g : face_dirs) {
      std::vector<Rational> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = dot(basis[j], g);
      rhs.push_back(-row[fixed]);
      row[fixed] = 0;
      a.push_back(std::move(row));
    }
    std::vector<Rational> unit(k);
    unit[fixed] = 1;
    a.push_back(unit);
    rhs.push_back(0);
    auto sol = solve(a, rhs);
    if (!sol) continue;
    (*sol)[fixed] = 1;
    Point u(hull.front().size());
    for (std::size_t j = 0; j < k; ++j) u = u + (*sol)[j] * basis[j];
    return u;
  }
  return std::nullopt;
}

// The n-simplices `tri` (with vertices in `table`) cover Conv(hull_ids) exactly:
// every codimension-one face lies in one or two of them, and faces in only one
// lie on a supporting hyperplane of the hull. Returns an empty string on success.
std::string covers_hull(const std::vector<Point>& table, const VertexSet& hull_ids, const std::vector<VertexSet>& tri) {
  std::vector<Point> hull;
  for (auto v : hull_ids) hull.push_back(table[v]);
  std::map<VertexSet, std::size_t> facet_count;
  for (const auto& s : tri) {
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      VertexSet f = s;
      f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
      ++facet_count[f];
    }
  }
  for (const auto& [facet, count] : facet_count) {
    if (count > 2) return "face " + simplex_key(facet) + " lies in more than two simplices";
    if (count == 2) continue;
    std::vector<Point> face;
    for (auto v : facet) face.push_back(table[v]);
    auto u = face_normal(hull, face);
    if (!u) return "face " + simplex_key(facet) + " has the wrong dimension";
    int sign = 0;
    for (const auto& p : hull) {
      Point diff = p - face.front();
      Rational s = 0;
      for (std::size_t i = 0; i < diff.size(); ++i) s += (*u)[i] * diff[i];
      int sg = s > 0 ? 1 : s < 0 ? -1 : 0;
      if (sg == 0) continue;
      if (sign != 0 && sg != sign) return "boundary face " + simplex_key(facet) + " cuts through the hull";
      sign = sg;
    }
  }
  return {};
}

bool is_subset(const VertexSet& a, const VertexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Maximises s subject to a point lying in both open cells; each cell is a
// vertex set plus facets whose outside weight must reach s.
Rational open_overlap(const std::vector<Point>& table, const VertexSet& a, const std::vector<VertexSet>& a_facets,
                      bool a_relint, const VertexSet& b, const std::vector<VertexSet>& b_facets, bool b_relint) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t s = na + nb;
  const std::size_t d = table.front().size();
  LinearProgram lp(s + 1);
  std::vector<Rational> sum_a(s + 1), sum_b(s + 1);
  for (std::size_t i = 0; i < na; ++i) sum_a[i] = 1;
  for (std::size_t j = 0; j < nb; ++j) sum_b[na + j] = 1;
  lp.add_constraint(sum_a, Relation::Equal, 1);
  lp.add_constraint(sum_b, Relation::Equal, 1);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> row(s + 1);
    for (std::size_t i = 0; i < na; ++i) row[i] = table[a[i]][k];
    for (std::size_t j = 0; j < nb; ++j) row[na + j] = -table[b[j]][k];
    lp.add_constraint(std::move(row), Relation::Equal, 0);
  }
  auto strict = [&](const VertexSet& cell, std::size_t offset, const std::vector<VertexSet>& facets, bool relint) {
    if (relint) {
      for (std::size_t i = 0; i < cell.size(); ++i) {
        std::vector<Rational> row(s + 1);
        row[offset + i] = 1;
        row[s] = -1;
        lp.add_constraint(std::move(row), Relation::GreaterEqual, 0);
      }
    }
    for (const auto& facet : facets) {
      std::vector<Rational> row(s + 1);
      for (std::size_t i = 0; i < cell.size(); ++i) {
        if (!std::binary_search(facet.begin(), facet.end(), cell[i])) row[offset + i] = 1;
      }
      row[s] = -1;
      lp.add_constraint(std::move(row), Relation::GreaterEqual, 0);
    }
  };
  strict(a, 0, a_facets, a_relint);
  strict(b, na, b_facets, b_relint);
  std::vector<Rational> objective(s + 1);
  objective[s] = 1;
  lp.set_objective(objective);
  auto sol = lp.maximize();
  if (sol.status != LpStatus::Optimal) return 0;
  return sol.objective;
}

std::vector<Point> points(const std::vector<Point>& table, const VertexSet& vs) {
  std::vector<Point> out;
  for (auto v : vs) out.push_back(table[v]);
  return out;
}

bool in_open_cell(const ConvexRealization& r, const SawCell& cell, const Point& x) {
  const auto& table = r.complex.vertices();
  if (!convex_membership(points(table, cell.vertices), x).inside) return false;
  for (const auto& facet : cell.removed_facets) {
    if (facet.empty()) continue;
    try {
      if (barycentric_coords(Simplex(points(table, facet)), x).in_simplex) return false;
    } catch (const NotInAffineHull&) {
    }
  }
  return true;
}

// Number of cells (relative interiors of simplices and open saw cells) holding x.
std::size_t cells_containing(const ConvexRealization& r, const Point& x) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    try {
      if (barycentric_coords(r.complex.simplex(i), x).in_relint) ++count;
    } catch (const NotInAffineHull&) {
    }
  }
  for (const auto& cell : r.saw_cells) {
    if (in_open_cell(r, cell, x)) ++count;
  }
  return count;
}

CheckEntry check_complex_entry(const ConvexRealization& r) {
  CheckEntry e{"complex", true, ""};
  auto cc = check_complex(r.complex);
  if (!cc.pass()) {
    e.pass = false;
    e.detail = fmt::format("simplices {} and {} violate the complex conditions", simplex_key(r.complex.simplices()[cc.first]),
                           simplex_key(r.complex.simplices()[cc.second]));
    return e;
  }
  if (r.simplex_labels.size() != r.complex.size()) {
    e.pass = false;
    e.detail = "label count differs from simplex count";
    return e;
  }
  std::vector<ElementId> ids;
  Poset cp = r.chain_poset(&ids);
  auto elems = r.vertex_elements();
  std::map<ElementId, std::size_t> vertex_of;
  for (std::size_t v = 0; v < elems.size(); ++v) {
    if (!vertex_of.emplace(elems[v], v).second) {
      e.pass = false;
      e.detail = "two vertices realise " + r.frame.name(elems[v]);
      return e;
    }
  }
  std::vector<Point> alpha(cp.size());
  for (std::size_t i = 0; i < cp.size(); ++i) alpha[i] = r.complex.vertices()[vertex_of[ids[i]]];
  auto chains = cp.chains();
  if (chains.size() != r.complex.size()) {
    e.pass = false;
    e.detail = fmt::format("{} chains but {} simplices", chains.size(), r.complex.size());
    return e;
  }
  for (const auto& chain : chains) {
    VertexSet vs;
    std::vector<ElementId> orig;
    for (auto c : chain) {
      vs.push_back(vertex_of[ids[c]]);
      orig.push_back(ids[c]);
    }
    auto idx = r.complex.find(vs);
    if (!idx) {
      e.pass = false;
      e.detail = "chain without simplex: " + simplex_key(vs);
      return e;
    }
    if (r.simplex_labels[*idx] != chain_max(r.frame, orig)) {
      e.pass = false;
      e.detail = "simplex " + simplex_key(vs) + " is not labelled by the maximum of its chain";
      return e;
    }
  }
  try {
    auto hull = chain_hull_disjointness(cp, alpha);
    if (!hull.pass) {
      e.pass = false;
      e.detail = "hulls of disjoint chains meet at " + format_point(*hull.witness);
    }
  } catch (const GeometryError& err) {
    e.pass = false;
    e.detail = err.what();
  }
  return e;
}

CheckEntry check_dimension_entry(const ConvexRealization& r) {
  CheckEntry e{"dimension", true, ""};
  int dim = r.complex.dimension();
  if (!r.saw_cells.empty()) {
    dim = affine_rank(r.complex.vertices());
    for (const auto& cell : r.saw_cells) {
      if (affine_rank(points(r.complex.vertices(), cell.vertices)) != r.n) {
        e.pass = false;
        e.detail = "saw cell " + simplex_key(cell.vertices) + " is not full-dimensional";
        return e;
      }
    }
  }
  if (dim != r.n) {
    e.pass = false;
    e.detail = fmt::format("dimension {} differs from height {}", dim, r.n);
  } else {
    e.detail = fmt::format("dimension {}", dim);
  }
  return e;
}

CheckEntry check_saw_cells_entry(const ConvexRealization& r) {
  CheckEntry e{"saw-cells", true, ""};
  if (r.saw_cells.empty()) {
    e.detail = "no saw cells";
    return e;
  }
  const auto& table = r.complex.vertices();
  auto fail = [&](std::string why) {
    e.pass = false;
    e.detail = std::move(why);
    return e;
  };
  for (std::size_t i = 0; i < r.saw_cells.size(); ++i) {
    const auto& cell = r.saw_cells[i];
    for (const auto& facet : cell.removed_facets) {
      if (!is_subset(facet, cell.vertices)) return fail(fmt::format("removed facet of cell {} is not a face", i));
      if (!r.complex.find(facet)) return fail(fmt::format("removed facet of cell {} is not a simplex of the complex", i));
    }
    if (i + 1 < r.saw_cells.size()) {
      const auto& next = r.saw_cells[i + 1];
      VertexSet shared;
      std::set_intersection(cell.vertices.begin(), cell.vertices.end(), next.vertices.begin(), next.vertices.end(),
                            std::back_inserter(shared));
      if (shared != cell.removed_facets[1] || shared != next.removed_facets[0]) {
        return fail(fmt::format("cells {} and {} do not share exactly their common facet", i, i + 1));
      }
    }
  }
  // Triangulate every cell; a simplicial complex containing Σ and triangulations
  // that cover each cell exactly certifies ξ_i ∩ ξ_j = Conv(V_i ∩ V_j).
  std::vector<VertexSet> all = r.complex.simplices();
  for (std::size_t i = 0; i < r.saw_cells.size(); ++i) {
    auto tri = staircase(r, r.saw_cells[i]);
    auto problem = covers_hull(table, r.saw_cells[i].vertices, tri);
    if (!problem.empty()) return fail(fmt::format("triangulation of cell {}: {}", i, problem));
    all.insert(all.end(), tri.begin(), tri.end());
  }
  auto combined = SimplicialComplex::closure(table, all);
  auto cc = check_complex(combined);
  if (!cc.pass()) {
    return fail("cells overlap outside their common faces: " + simplex_key(combined.simplices()[cc.first]) + " vs " +
                simplex_key(combined.simplices()[cc.second]));
  }
  e.detail = fmt::format("{} cells, intersections certified", r.saw_cells.size());
  return e;
}

CheckEntry check_hull_entry(const ConvexRealization& r, const VerifyOptions& opts) {
  CheckEntry e{"hull", true, ""};
  if (r.saw_cells.empty()) {
    e.detail = "no saw cells";
    return e;
  }
  const auto& table = r.complex.vertices();
  for (std::size_t v = 0; v < table.size(); ++v) {
    bool found = std::any_of(r.saw_cells.begin(), r.saw_cells.end(), [&](const SawCell& c) {
      return std::binary_search(c.vertices.begin(), c.vertices.end(), v);
    });
    if (!found) {
      e.pass = false;
      e.detail = fmt::format("vertex {} lies in no saw cell", v);
      return e;
    }
  }
  std::vector<VertexSet> tri;
  for (const auto& cell : r.saw_cells) {
    auto part = staircase(r, cell);
    tri.insert(tri.end(), part.begin(), part.end());
  }
  VertexSet every(table.size());
  for (std::size_t v = 0; v < every.size(); ++v) every[v] = v;
  auto problem = covers_hull(table, every, tri);
  if (!problem.empty()) {
    e.pass = false;
    e.detail = "union of cells is not the hull: " + problem;
    return e;
  }
  std::mt19937_64 rng(opts.seed);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Point x = combine(table, random_convex_weights(table.size(), rng));
    bool inside = std::any_of(r.saw_cells.begin(), r.saw_cells.end(), [&](const SawCell& c) {
      return convex_membership(points(table, c.vertices), x).inside;
    });
    if (!inside) {
      e.pass = false;
      e.detail = "sampled hull point " + format_point(x) + " lies in no saw cell";
      return e;
    }
  }
  e.detail = fmt::format("exact cover plus {} samples", opts.samples);
  return e;
}

CheckEntry check_cell_map_entry(const ConvexRealization& r) {
  CheckEntry e{"cell-map", true, ""};
  auto cm = induced_cell_map(r);
  auto pm = is_p_morphism(cm.labels);
  if (!pm.ok()) {
    e.pass = false;
    e.detail = describe(cm.labels, pm);
    return e;
  }
  if (!is_surjective(cm.labels)) {
    e.pass = false;
    e.detail = "label map is not surjective";
    return e;
  }
  e.detail = fmt::format("{} cells onto {} elements", cm.cells.size(), r.frame.size());
  return e;
}

CheckEntry check_partition_entry(const ConvexRealization& r, const VerifyOptions& opts) {
  CheckEntry e{"partition", true, ""};
  const auto& table = r.complex.vertices();
  const auto& ss = r.complex.simplices();
  std::vector<VertexSet> none;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = i + 1; j < ss.size(); ++j) {
      if (open_overlap(table, ss[i], none, true, ss[j], none, true) > 0) {
        e.pass = false;
        e.detail = "relative interiors of " + simplex_key(ss[i]) + " and " + simplex_key(ss[j]) + " meet";
        return e;
      }
    }
  }
  for (std::size_t c = 0; c < r.saw_cells.size(); ++c) {
    const auto& cell = r.saw_cells[c];
    std::vector<VertexSet> facets(cell.removed_facets.begin(), cell.removed_facets.end());
    for (const auto& s : ss) {
      if (open_overlap(table, s, none, true, cell.vertices, facets, false) > 0) {
        e.pass = false;
        e.detail = fmt::format("simplex {} meets open saw cell {}", simplex_key(s), c);
        return e;
      }
    }
    for (std::size_t d = c + 1; d < r.saw_cells.size(); ++d) {
      const auto& other = r.saw_cells[d];
      std::vector<VertexSet> other_facets(other.removed_facets.begin(), other.removed_facets.end());
      if (open_overlap(table, cell.vertices, facets, false, other.vertices, other_facets, false) > 0) {
        e.pass = false;
        e.detail = fmt::format("open saw cells {} and {} meet", c, d);
        return e;
      }
    }
  }
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Point x = combine(table, random_convex_weights(table.size(), rng));
    if (r.saw_cells.empty()) {
      // no saw cells: sample inside a random simplex of the complex instead
      std::uniform_int_distribution<std::size_t> pick(0, ss.size() - 1);
      const auto& s = ss[pick(rng)];
      x = combine(points(table, s), random_convex_weights(s.size(), rng));
    }
    auto count = cells_containing(r, x);
    if (count != 1) {
      e.pass = false;
      e.detail = fmt::format("sample {} lies in {} cells", format_point(x), count);
      return e;
    }
  }
  e.detail = fmt::format("exact pairwise disjointness plus {} samples", opts.samples);
  return e;
}

VerificationReport run_checks(const ConvexRealization& r, const VerifyOptions& opts, std::size_t count) {
  VerificationReport report;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      report.checks.push_back(fn());
    } catch (const Error& err) {
      report.checks.push_back(CheckEntry{name, false, err.what()});
    }
  };
  guarded("complex", [&] { return check_complex_entry(r); });
  if (count > 1) guarded("dimension", [&] { return check_dimension_entry(r); });
  if (count > 2) guarded("saw-cells", [&] { return check_saw_cells_entry(r); });
  if (count > 3) guarded("hull", [&] { return check_hull_entry(r, opts); });
  if (count > 4) guarded("cell-map", [&] { return check_cell_map_entry(r); });
  if (count > 5) guarded("partition", [&] { return check_partition_entry(r, opts); });
  return report;
}

}  // namespace

CellMap induced_cell_map(const ConvexRealization& r) {
  const auto& ss = r.complex.simplices();
  const std::size_t total = ss.size() + r.saw_cells.size();
  const std::size_t width = std::to_string(total).size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < ss.size(); ++i) names.push_back(fmt::format("sigma{:0>{}}", i, width));
  for (std::size_t i = 0; i < r.saw_cells.size(); ++i) names.push_back(fmt::format("xi{:0>{}}", i, width));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      if (ss[i].size() < ss[j].size() && is_subset(ss[i], ss[j])) order.emplace_back(i, j);
    }
  }
  const auto& table = r.complex.vertices();
  for (std::size_t c = 0; c < r.saw_cells.size(); ++c) {
    const auto& cell = r.saw_cells[c];
    auto cell_points = points(table, cell.vertices);
    for (std::size_t i = 0; i < ss.size(); ++i) {
      if (!is_subset(ss[i], cell.vertices)) continue;
      bool in_facet = std::any_of(cell.removed_facets.begin(), cell.removed_facets.end(),
                                  [&](const VertexSet& f) { return !f.empty() && is_subset(ss[i], f); });
      if (!in_facet) continue;
      auto m = convex_membership(cell_points, r.complex.simplex(i).barycentre());
      if (!m.inside) throw InvariantError("simplex on a removed facet lies outside its saw cell");
      order.emplace_back(i, ss.size() + c);
    }
  }
  CellMap out;
  out.cells = Poset::from_index_relations(names, order);
  out.simplex_count = ss.size();
  std::vector<ElementId> image(total);
  for (std::size_t i = 0; i < ss.size(); ++i) image[i] = r.simplex_labels.at(i);
  for (std::size_t c = 0; c < r.saw_cells.size(); ++c) image[ss.size() + c] = r.saw_cells[c].label;
  out.labels = PosetMap{out.cells, r.frame, std::move(image)};
  return out;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

std::string VerificationReport::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    out += fmt::format("({}) {:<10} {}  {}\n", i + 1, checks[i].name, checks[i].pass ? "PASS" : "FAIL", checks[i].detail);
  }
  return out;
}

VerificationReport verify_realization(const ConvexRealization& r, const VerifyOptions& opts) {
  return run_checks(r, opts, 6);
}

ElementId eval_point(const ConvexRealization& r, const Point& x) {
  const auto& table = r.complex.vertices();
  if (!convex_membership(table, x).inside) throw GeometryError("point " + format_point(x) + " is outside the polyhedron");
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    try {
      if (barycentric_coords(r.complex.simplex(i), x).in_relint) return r.simplex_labels[i];
    } catch (const NotInAffineHull&) {
    }
  }
  std::optional<ElementId> label;
  for (const auto& cell : r.saw_cells) {
    if (!in_open_cell(r, cell, x)) continue;
    if (label) throw GeometryError("point " + format_point(x) + " lies in two saw cells");
    label = cell.label;
  }
  if (!label) throw GeometryError("point " + format_point(x) + " lies in no cell");
  return *label;
}

SimplicialComplex triangulate_saw_cells(const ConvexRealization& r) {
  std::vector<VertexSet> all;
  for (const auto& cell : r.saw_cells) {
    auto part = staircase(r, cell);
    all.insert(all.end(), part.begin(), part.end());
  }
  return SimplicialComplex::closure(r.complex.vertices(), all);
}

bool Interval::contains(const Rational& t) const {
  bool above = lo_closed ? t >= lo : t > lo;
  bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

bool Interval::empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

std::string to_string(const Interval& i) {
  if (i.lo == i.hi && i.lo_closed && i.hi_closed) return "{" + format_rational(i.lo) + "}";
  return fmt::format("{}{}, {}{}", i.lo_closed ? '[' : '(', format_rational(i.lo), format_rational(i.hi),
                     i.hi_closed ? ']' : ')');
}

CellMap IntervalRealization::cell_map() const {
  const std::size_t width = std::to_string(cells.size()).size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < cells.size(); ++i) names.push_back(fmt::format("cell{:0>{}}", i, width));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = 0; b < cells.size(); ++b) {
      if (a == b) continue;
      Interval closure = Interval::closed(cells[b].span.lo, cells[b].span.hi);
      const auto& s = cells[a].span;
      // a meets the closure of b
      Rational lo = std::max(s.lo, closure.lo);
      Rational hi = std::min(s.hi, closure.hi);
      bool meets = lo < hi || (lo == hi && s.contains(lo) && closure.contains(lo));
      if (meets) order.emplace_back(a, b);
    }
  }
  CellMap out;
  out.cells = Poset::from_index_relations(names, order);
  out.simplex_count = cells.size();
  std::vector<ElementId> image;
  for (const auto& c : cells) image.push_back(c.label);
  out.labels = PosetMap{out.cells, frame, std::move(image)};
  return out;
}

ElementId IntervalRealization::label_at(const Rational& t) const {
  for (const auto& c : cells) {
    if (c.span.contains(t)) return c.label;
  }
  throw GeometryError("point " + format_rational(t) + " lies in no cell");
}

bool IntervalRealization::verify(std::string* reason) const {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return false;
  };
  if (cells.empty()) return fail("no cells");
  std::vector<Rational> ends;
  for (const auto& c : cells) {
    if (c.span.empty()) return fail("empty cell " + to_string(c.span));
    ends.push_back(c.span.lo);
    ends.push_back(c.span.hi);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<Rational> probes = ends;
  for (std::size_t i = 1; i < ends.size(); ++i) probes.push_back((ends[i - 1] + ends[i]) / 2);
  for (const auto& t : probes) {
    auto count = std::count_if(cells.begin(), cells.end(), [&](const IntervalCell& c) { return c.span.contains(t); });
    if (count != 1) return fail(fmt::format("point {} lies in {} cells", format_rational(t), count));
  }
  try {
    auto cm = cell_map();
    auto pm = is_p_morphism(cm.labels);
    if (!pm.ok()) return fail(describe(cm.labels, pm));
    if (!is_surjective(cm.labels)) return fail("label map is not surjective");
  } catch (const Error& err) {
    return fail(err.what());
  }
  return true;
}

IntervalRealization realize_low_height(const Poset& frame) {
  auto root = frame.root();
  if (!root || frame.height() > 1) throw PreconditionError("low-height realisation needs a rooted frame of height <= 1");
  auto tops = frame.tops();
  IntervalRealization r{frame, {}};
  if (frame.size() == 1) {
    r.cells.push_back({Interval::closed(0, 0), *root});
  } else if (tops.size() == 1) {
    r.cells.push_back({Interval::closed(0, 0), *root});
    r.cells.push_back({Interval{0, 1, false, true}, tops[0]});
  } else if (tops.size() == 2) {
    Rational half(1, 2);
    r.cells.push_back({Interval{0, half, true, false}, tops[0]});
    r.cells.push_back({Interval::closed(half, half), *root});
    r.cells.push_back({Interval{half, 1, false, true}, tops[1]});
  } else {
    throw PreconditionError("a rooted frame of height 1 with more than two tops is not PL_1");
  }
  std::string why;
  if (!r.verify(&why)) throw InvariantError("low-height realisation: " + why);
  return r;
}

PiecewiseAffineIntervalMap::PiecewiseAffineIntervalMap(Rational a_outer, Rational x, Rational a, Rational b,
                                                       Rational y, Rational b_outer) {
  if (!(a_outer < x && x < a && a < b && b < y && y < b_outer)) {
    throw PreconditionError("interval surjection needs a' < x < a < b < y < b'");
  }
  breaks_ = {a_outer, x, a, b, y, b_outer};
  values_ = {a, x, a, b, y, b};
}

Rational PiecewiseAffineIntervalMap::operator()(const Rational& t) const {
  if (t < breaks_.front() || t > breaks_.back()) throw PreconditionError("point outside the domain");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (t <= breaks_[i]) {
      const auto& t0 = breaks_[i - 1];
      const auto& t1 = breaks_[i];
      return values_[i - 1] + (values_[i] - values_[i - 1]) * (t - t0) / (t1 - t0);
    }
  }
  return values_.back();
}

Interval PiecewiseAffineIntervalMap::image(const Interval& i) const {
  if (i.empty()) throw PreconditionError("image of an empty interval");
  if (i.lo < breaks_.front() || i.hi > breaks_.back()) throw PreconditionError("interval outside the domain");
  std::vector<Rational> cand{i.lo};
  for (const auto& t : breaks_) {
    if (t > i.lo && t < i.hi) cand.push_back(t);
  }
  if (i.hi > i.lo) cand.push_back(i.hi);
  std::vector<Rational> val;
  for (const auto& t : cand) val.push_back((*this)(t));
  Rational lo = *std::min_element(val.begin(), val.end());
  Rational hi = *std::max_element(val.begin(), val.end());
  auto attained = [&](const Rational& v) {
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (val[k] == v && i.contains(cand[k])) return true;
      // a flat piece at level v has interior points inside i
      if (k + 1 < cand.size() && val[k] == v && val[k + 1] == v) return true;
    }
    return false;
  };
  return Interval{lo, hi, attained(lo), attained(hi)};
}

PiecewiseAffineIntervalMap build_interval_surjection(Rational a_outer, Rational x, Rational a, Rational b, Rational y,
                                                     Rational b_outer) {
  return PiecewiseAffineIntervalMap(std::move(a_outer), std::move(x), std::move(a), std::move(b), std::move(y),
                                    std::move(b_outer));
}

}  // namespace polyframe
