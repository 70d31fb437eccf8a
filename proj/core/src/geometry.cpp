#include "polyframe/geometry.hpp"

#include "polyframe/error.hpp"
#include "polyframe/linalg.hpp"
#include "polyframe/lp.hpp"

#include <algorithm>
#include <set>

namespace polyframe {

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw GeometryError("simplex needs at least one vertex");
  for (const auto& v : vertices_) {
    if (v.size() != vertices_.front().size()) throw GeometryError("simplex vertices of different dimensions");
  }
  if (!affinely_independent(vertices_)) throw GeometryError("simplex vertices are affinely dependent");
  std::sort(vertices_.begin(), vertices_.end(), lex_less);
}

Point Simplex::barycentre() const {
  std::vector<Rational> w(vertices_.size(), Rational(1, static_cast<long>(vertices_.size())));
  return combine(vertices_, w);
}

bool Simplex::has_face(const Simplex& other) const {
  return std::includes(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                       lex_less);
}

Simplex standard_simplex(int n) {
  if (n < 0) throw GeometryError("standard simplex needs n >= 0");
  std::vector<Point> vs;
  for (int i = 0; i <= n; ++i) vs.push_back(basis_vector(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(i)));
  return Simplex(std::move(vs));
}

Barycentric barycentric_coords(const Simplex& s, const Point& x) {
  if (x.size() != s.ambient_dim()) throw GeometryError("point and simplex have different dimensions");
  const auto& vs = s.vertices();
  Matrix a(x.size() + 1, std::vector<Rational>(vs.size()));
  std::vector<Rational> b(x.size() + 1);
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) a[i][j] = vs[j][i];
    a[x.size()][j] = 1;
  }
  for (std::size_t i = 0; i < x.size(); ++i) b[i] = x[i];
  b[x.size()] = 1;
  auto sol = solve(std::move(a), std::move(b));
  if (!sol) throw NotInAffineHull("point " + format_point(x) + " is not in the affine hull of the simplex");
  Barycentric out;
  out.coords = std::move(*sol);
  out.in_simplex = std::all_of(out.coords.begin(), out.coords.end(), [](const Rational& r) { return r >= 0; });
  out.in_relint = std::all_of(out.coords.begin(), out.coords.end(), [](const Rational& r) { return r > 0; });
  return out;
}

Membership convex_membership(const std::vector<Point>& vertices, const Point& x) {
  if (vertices.empty()) throw GeometryError("convex hull of no points");
  const std::size_t d = x.size();
  for (const auto& v : vertices) {
    if (v.size() != d) throw GeometryError("point dimensions differ");
  }
  const std::size_t m = vertices.size();
  LinearProgram lp(m);
  lp.add_constraint(std::vector<Rational>(m, Rational(1)), Relation::Equal, 1);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = vertices[j][i];
    lp.add_constraint(std::move(row), Relation::Equal, x[i]);
  }
  Membership out;
  auto sol = lp.maximize();
  if (sol.status == LpStatus::Optimal) {
    out.inside = true;
    out.weights = std::move(sol.values);
    return out;
  }
  // Separator: variables a+ (d), a- (d), c+, c-; a·v - c <= 0 and a·x - c >= 1.
  LinearProgram sep(2 * d + 2);
  auto row_for = [&](const Point& p) {
    std::vector<Rational> row(2 * d + 2);
    for (std::size_t i = 0; i < d; ++i) {
      row[i] = p[i];
      row[d + i] = -p[i];
    }
    row[2 * d] = -1;
    row[2 * d + 1] = 1;
    return row;
  };
  for (const auto& v : vertices) sep.add_constraint(row_for(v), Relation::LessEqual, 0);
  sep.add_constraint(row_for(x), Relation::GreaterEqual, 1);
  auto s = sep.maximize();
  if (s.status != LpStatus::Optimal) throw InvariantError("no separator for a point outside a convex hull");
  out.separator.normal.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.separator.normal[i] = s.values[i] - s.values[d + i];
  out.separator.offset = s.values[2 * d] - s.values[2 * d + 1];
  return out;
}

bool check_membership_certificate(const std::vector<Point>& vertices, const Point& x, const Membership& m) {
  if (m.inside) {
    if (m.weights.size() != vertices.size()) return false;
    Rational total = 0;
    for (const auto& w : m.weights) {
      if (w < 0) return false;
      total += w;
    }
    return total == 1 && combine(vertices, m.weights) == x;
  }
  const auto& a = m.separator.normal;
  if (a.size() != x.size()) return false;
  auto dot = [&](const Point& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += a[i] * p[i];
    return s;
  };
  for (const auto& v : vertices) {
    if (dot(v) > m.separator.offset) return false;
  }
  return dot(x) > m.separator.offset;
}

SimplicialComplex::SimplicialComplex(std::vector<Point> vertices, std::vector<VertexSet> simplices)
    : vertices_(std::move(vertices)) {
  for (const auto& v : vertices_) {
    if (v.size() != vertices_.front().size()) throw GeometryError("complex vertices of different dimensions");
  }
  for (auto& s : simplices) {
    if (s.empty()) throw GeometryError("empty simplex in complex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw GeometryError("repeated vertex in simplex");
    if (s.back() >= vertices_.size()) throw GeometryError("simplex refers to an unknown vertex");
    if (index_.emplace(s, simplices_.size()).second) simplices_.push_back(std::move(s));
  }
}

SimplicialComplex SimplicialComplex::closure(std::vector<Point> vertices, const std::vector<VertexSet>& simplices) {
  std::set<VertexSet> faces;
  for (auto s : simplices) {
    std::sort(s.begin(), s.end());
    if (s.size() > 24) throw GeometryError("simplex too large for face enumeration");
    for (unsigned long mask = 1; mask < (1UL << s.size()); ++mask) {
      VertexSet f;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1UL << i)) f.push_back(s[i]);
      }
      faces.insert(std::move(f));
    }
  }
  std::vector<VertexSet> ordered(faces.begin(), faces.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
  return SimplicialComplex(std::move(vertices), std::move(ordered));
}

std::optional<std::size_t> SimplicialComplex::find(const VertexSet& vs) const {
  VertexSet key = vs;
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Point> SimplicialComplex::points_of(const VertexSet& vs) const {
  std::vector<Point> out;
  out.reserve(vs.size());
  for (auto v : vs) out.push_back(vertices_.at(v));
  return out;
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::string simplex_key(const VertexSet& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
  return out + "}";
}

int dimension(const SimplicialComplex& c) { return c.dimension(); }

namespace {

bool boxes_disjoint(const std::vector<Point>& table, const VertexSet& a, const VertexSet& b) {
  const std::size_t d = table.at(a.front()).size();
  for (std::size_t i = 0; i < d; ++i) {
    Rational amin = table[a[0]][i], amax = amin, bmin = table[b[0]][i], bmax = bmin;
    for (auto v : a) {
      amin = std::min(amin, table[v][i]);
      amax = std::max(amax, table[v][i]);
    }
    for (auto v : b) {
      bmin = std::min(bmin, table[v][i]);
      bmax = std::max(bmax, table[v][i]);
    }
    if (amax < bmin || bmax < amin) return true;
  }
  return false;
}

}  // namespace

std::optional<Point> illegal_overlap(const std::vector<Point>& table, const VertexSet& a, const VertexSet& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t d = table.at(a.front()).size();
  LinearProgram lp(na + nb);
  std::vector<Rational> sum_a(na + nb), sum_b(na + nb), objective(na + nb);
  for (std::size_t i = 0; i < na; ++i) sum_a[i] = 1;
  for (std::size_t j = 0; j < nb; ++j) sum_b[na + j] = 1;
  lp.add_constraint(sum_a, Relation::Equal, 1);
  lp.add_constraint(sum_b, Relation::Equal, 1);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> row(na + nb);
    for (std::size_t i = 0; i < na; ++i) row[i] = table.at(a[i])[k];
    for (std::size_t j = 0; j < nb; ++j) row[na + j] = -table.at(b[j])[k];
    lp.add_constraint(std::move(row), Relation::Equal, 0);
  }
  // Weight carried by vertices outside the common face; zero exactly when the
  // intersection lies in Conv(a ∩ b).
  for (std::size_t i = 0; i < na; ++i) {
    if (!std::binary_search(b.begin(), b.end(), a[i])) objective[i] = 1;
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (!std::binary_search(a.begin(), a.end(), b[j])) objective[na + j] = 1;
  }
  lp.set_objective(objective);
  auto sol = lp.maximize();
  if (sol.status != LpStatus::Optimal || sol.objective == 0) return std::nullopt;
  std::vector<Point> pts;
  std::vector<Rational> w(sol.values.begin(), sol.values.begin() + static_cast<std::ptrdiff_t>(na));
  for (auto v : a) pts.push_back(table[v]);
  return combine(pts, w);
}

ComplexCheck check_complex(const SimplicialComplex& c) {
  ComplexCheck out;
  const auto& ss = c.simplices();
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (!affinely_independent(c.points_of(ss[i]))) {
      out.failure = ComplexCheck::Failure::DependentVertices;
      out.first = i;
      return out;
    }
  }
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (ss[i].size() < 2) continue;
    for (std::size_t drop = 0; drop < ss[i].size(); ++drop) {
      VertexSet facet = ss[i];
      facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!c.find(facet)) {
        out.failure = ComplexCheck::Failure::NotFaceClosed;
        out.first = i;
        return out;
      }
    }
  }
  const auto& table = c.vertices();
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = i + 1; j < ss.size(); ++j) {
      const auto& a = ss[i];
      const auto& b = ss[j];
      if (std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
          std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        continue;
      }
      if (boxes_disjoint(table, a, b)) continue;
      if (auto w = illegal_overlap(table, a, b)) {
        out.failure = ComplexCheck::Failure::BadIntersection;
        out.first = i;
        out.second = j;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

std::size_t carrier(const SimplicialComplex& c, const Point& x) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Barycentric b;
    try {
      b = barycentric_coords(c.simplex(i), x);
    } catch (const NotInAffineHull&) {
      continue;
    }
    if (!b.in_relint) continue;
    if (found) throw GeometryError("point " + format_point(x) + " lies in two relative interiors");
    found = i;
  }
  if (!found) throw GeometryError("point " + format_point(x) + " is outside the complex");
  return *found;
}

std::vector<std::size_t> open_star(const SimplicialComplex& c, std::size_t sigma) {
  if (sigma >= c.size()) throw GeometryError("simplex is not in the complex");
  const auto& s = c.simplices()[sigma];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& t = c.simplices()[i];
    if (std::includes(t.begin(), t.end(), s.begin(), s.end())) out.push_back(i);
  }
  return out;
}

Poset face_poset(const SimplicialComplex& c) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  const auto& ss = c.simplices();
  for (const auto& s : ss) names.push_back(simplex_key(s));
  for (std::size_t i = 0; i < ss.size(); ++i) {
    for (std::size_t j = 0; j < ss.size(); ++j) {
      if (ss[i].size() < ss[j].size() && std::includes(ss[j].begin(), ss[j].end(), ss[i].begin(), ss[i].end())) {
        order.emplace_back(i, j);
      }
    }
  }
  return Poset::from_index_relations(std::move(names), order);
}

Nerve nerve(const Poset& p) {
  auto chains = p.chains();
  std::vector<std::string> names;
  for (auto& ch : chains) {
    std::string name = "{";
    for (std::size_t i = 0; i < ch.size(); ++i) name += (i ? "," : "") + p.name(ch[i]);
    names.push_back(name + "}");
  }
  std::vector<ElementSet> sets;
  for (const auto& ch : chains) sets.push_back(p.set_of(ch));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (std::size_t j = 0; j < chains.size(); ++j) {
      if (i != j && sets[i].is_proper_subset_of(sets[j])) order.emplace_back(i, j);
    }
  }
  Nerve n;
  n.poset = Poset::from_index_relations(names, order);
  n.chains.resize(chains.size());
  std::vector<ElementId> image(chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    auto id = n.poset.at(names[i]);
    n.chains[id] = chains[i];
    image[id] = chains[i].back();
  }
  n.max_map = PosetMap{n.poset, p, std::move(image)};
  return n;
}

SimplicialComplex nabla(const Poset& p) {
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < p.size(); ++i) vertices.push_back(basis_vector(p.size(), i));
  std::vector<VertexSet> simplices;
  for (auto ch : p.chains()) {
    std::sort(ch.begin(), ch.end());
    simplices.push_back(std::move(ch));
  }
  std::stable_sort(simplices.begin(), simplices.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
  return SimplicialComplex(std::move(vertices), std::move(simplices));
}

ChainHullCheck chain_hull_disjointness(const Poset& p, const std::vector<Point>& alpha) {
  if (alpha.size() != p.size()) throw GeometryError("vertex assignment does not cover the poset");
  auto chains = p.chains();
  for (auto& ch : chains) {
    std::sort(ch.begin(), ch.end());
    std::vector<Point> pts;
    for (auto x : ch) pts.push_back(alpha[x]);
    if (!affinely_independent(pts)) throw GeometryError("vertices of a chain are affinely dependent");
  }
  ChainHullCheck out;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (std::size_t j = i + 1; j < chains.size(); ++j) {
      const auto& a = chains[i];
      const auto& b = chains[j];
      bool disjoint = std::none_of(a.begin(), a.end(), [&](ElementId x) { return std::binary_search(b.begin(), b.end(), x); });
      if (!disjoint || boxes_disjoint(alpha, a, b)) continue;
      if (auto w = illegal_overlap(alpha, a, b)) {
        out.pass = false;
        out.first = a;
        out.second = b;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

FacetCheck facet_incidence_check(const SimplicialComplex& c) {
  FacetCheck out;
  const int n = c.dimension();
  if (n < 1) return out;
  const auto& ss = c.simplices();
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (static_cast<int>(ss[i].size()) != n) continue;
    std::size_t count = 0;
    for (const auto& t : ss) {
      if (static_cast<int>(t.size()) == n + 1 && std::includes(t.begin(), t.end(), ss[i].begin(), ss[i].end())) {
        ++count;
      }
    }
    if (count < 1 || count > 2) {
      out.pass = false;
      out.facet = i;
      out.cofaces = count;
      return out;
    }
  }
  return out;
}

std::vector<Rational> random_convex_weights(std::size_t count, std::mt19937_64& rng, int resolution) {
  if (count == 0) throw GeometryError("convex weights for no points");
  std::uniform_int_distribution<int> draw(0, resolution);
  std::vector<long> raw(count);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& r : raw) {
      r = draw(rng);
      total += r;
    }
  }
  std::vector<Rational> w(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = Rational(raw[i], total);
  return w;
}

}  // namespace polyframe
