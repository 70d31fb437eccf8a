#include "polyframe/io.hpp"

#include "polyframe/error.hpp"
#include "polyframe/linalg.hpp"

#include <fmt/format.h>

#include <fstream>
#include <map>
#include <sstream>

namespace polyframe::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::size_t as_index(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw FormatError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::vector<std::string> names_of(const Poset& p, const std::vector<ElementId>& ids) {
  std::vector<std::string> out;
  for (auto x : ids) out.push_back(p.name(x));
  return out;
}

std::vector<ElementId> ids_of(const Poset& p, const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  std::vector<ElementId> out;
  for (const auto& e : j) {
    auto name = as_string(e, what);
    auto id = p.find(name);
    if (!id) throw FormatError(std::string(what) + " names unknown element '" + name + "'");
    out.push_back(*id);
  }
  return out;
}

VertexSet vertex_set(const json& j) {
  if (!j.is_array()) throw FormatError("vertex set must be an array");
  VertexSet vs;
  for (const auto& v : j) vs.push_back(as_index(v, "vertex index"));
  return vs;
}

}  // namespace

json frame_to_json(const Poset& p) {
  json covers = json::array();
  for (auto [a, b] : p.covers()) covers.push_back({p.name(a), p.name(b)});
  return {{"elements", p.names()}, {"covers", covers}};
}

Poset frame_from_json(const json& j) {
  const auto& elements = field(j, "elements");
  const auto& covers = field(j, "covers");
  if (!elements.is_array()) throw FormatError("'elements' must be an array");
  if (!covers.is_array()) throw FormatError("'covers' must be an array");
  std::vector<std::string> names;
  for (const auto& e : elements) names.push_back(as_string(e, "element name"));
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& c : covers) {
    if (!c.is_array() || c.size() != 2) throw FormatError("each cover must be a pair of element names");
    order.emplace_back(as_string(c[0], "cover element"), as_string(c[1], "cover element"));
  }
  return Poset::from_relations(std::move(names), order);
}

json sawed_tree_to_json(const SawedTree& t) {
  json j = frame_to_json(t.frame());
  j["tops_order"] = names_of(t.frame(), t.tops_order());
  j["saw_nodes"] = names_of(t.frame(), t.saw_nodes());
  return j;
}

SawedTree sawed_tree_from_json(const json& j) {
  Poset p = frame_from_json(j);
  auto tops = ids_of(p, field(j, "tops_order"), "tops_order");
  auto saws = ids_of(p, field(j, "saw_nodes"), "saw_nodes");
  return SawedTree(std::move(p), std::move(tops), std::move(saws));
}

bool looks_like_sawed_tree(const json& j) {
  return j.is_object() && j.contains("tops_order") && j.contains("saw_nodes");
}

json poset_map_to_json(const PosetMap& f) {
  json map = json::object();
  for (ElementId x = 0; x < f.source.size(); ++x) map[f.source.name(x)] = f.target.name(f.image.at(x));
  return {{"source", frame_to_json(f.source)}, {"target", frame_to_json(f.target)}, {"map", map}};
}

PosetMap poset_map_from_json(const json& j) {
  PosetMap f{frame_from_json(field(j, "source")), frame_from_json(field(j, "target")), {}};
  const auto& map = field(j, "map");
  if (!map.is_object()) throw FormatError("'map' must be an object");
  f.image.assign(f.source.size(), f.target.size());
  for (const auto& [key, value] : map.items()) {
    auto x = f.source.find(key);
    auto y = f.target.find(as_string(value, "map value"));
    if (!x || !y) throw FormatError("map refers to an unknown element");
    f.image[*x] = *y;
  }
  for (auto y : f.image) {
    if (y == f.target.size()) throw FormatError("map is not total");
  }
  return f;
}

json drawing_to_json(const Poset& p, const PlaneDrawing& d) {
  json j = json::object();
  for (ElementId x = 0; x < p.size(); ++x) j[p.name(x)] = {format_rational(d.x[x]), d.y[x]};
  return j;
}

json point_to_json(const Point& p) {
  json j = json::array();
  for (const auto& c : p) j.push_back(format_rational(c));
  return j;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("point must be an array");
  Point p;
  for (const auto& c : j) {
    if (c.is_string()) {
      p.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      p.push_back(Rational(c.get<long long>()));
    } else {
      throw FormatError("coordinates must be rational strings");
    }
  }
  return p;
}

json complex_to_json(const SimplicialComplex& c) {
  json vertices = json::array();
  for (const auto& v : c.vertices()) vertices.push_back(point_to_json(v));
  return {{"vertices", vertices}, {"simplices", c.simplices()}};
}

SimplicialComplex complex_from_json(const json& j) {
  const auto& vs = field(j, "vertices");
  const auto& ss = field(j, "simplices");
  if (!vs.is_array() || !ss.is_array()) throw FormatError("'vertices' and 'simplices' must be arrays");
  std::vector<Point> vertices;
  for (const auto& v : vs) vertices.push_back(point_from_json(v));
  std::vector<VertexSet> simplices;
  for (const auto& s : ss) simplices.push_back(vertex_set(s));
  try {
    return SimplicialComplex::closure(std::move(vertices), simplices);
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
}

json realization_to_json(const ConvexRealization& r) {
  json j = complex_to_json(r.complex);
  j["frame"] = frame_to_json(r.frame);
  j["n"] = r.n;
  json cells = json::array();
  for (const auto& c : r.saw_cells) {
    cells.push_back({{"vertices", c.vertices},
                     {"removed_facets", {c.removed_facets[0], c.removed_facets[1]}},
                     {"label", r.frame.name(c.label)}});
  }
  j["saw_cells"] = cells;
  json labels = json::object();
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    labels[simplex_key(r.complex.simplices()[i])] = r.frame.name(r.simplex_labels[i]);
  }
  j["labels"] = labels;
  return j;
}

ConvexRealization realization_from_json(const json& j) {
  ConvexRealization r;
  r.frame = frame_from_json(field(j, "frame"));
  const auto& n = field(j, "n");
  if (!n.is_number_integer()) throw FormatError("'n' must be an integer");
  r.n = n.get<int>();
  std::vector<Point> vertices;
  const auto& vs = field(j, "vertices");
  if (!vs.is_array()) throw FormatError("'vertices' must be an array");
  for (const auto& v : vs) vertices.push_back(point_from_json(v));
  std::vector<VertexSet> simplices;
  const auto& ss = field(j, "simplices");
  if (!ss.is_array()) throw FormatError("'simplices' must be an array");
  for (const auto& s : ss) simplices.push_back(vertex_set(s));
  try {
    r.complex = SimplicialComplex(std::move(vertices), std::move(simplices));
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
  const auto& labels = field(j, "labels");
  if (!labels.is_object()) throw FormatError("'labels' must be an object");
  for (const auto& s : r.complex.simplices()) {
    auto it = labels.find(simplex_key(s));
    if (it == labels.end()) throw FormatError("no label for simplex " + simplex_key(s));
    auto id = r.frame.find(as_string(*it, "label"));
    if (!id) throw FormatError("label names an unknown element");
    r.simplex_labels.push_back(*id);
  }
  const auto& cells = field(j, "saw_cells");
  if (!cells.is_array()) throw FormatError("'saw_cells' must be an array");
  for (const auto& c : cells) {
    SawCell cell;
    cell.vertices = vertex_set(field(c, "vertices"));
    std::sort(cell.vertices.begin(), cell.vertices.end());
    const auto& facets = field(c, "removed_facets");
    if (!facets.is_array() || facets.size() != 2) throw FormatError("a saw cell needs two removed facets");
    for (std::size_t k = 0; k < 2; ++k) {
      cell.removed_facets[k] = vertex_set(facets[k]);
      std::sort(cell.removed_facets[k].begin(), cell.removed_facets[k].end());
    }
    for (auto v : cell.vertices) {
      if (v >= r.complex.vertices().size()) throw FormatError("saw cell refers to an unknown vertex");
    }
    auto id = r.frame.find(as_string(field(c, "label"), "label"));
    if (!id) throw FormatError("saw cell label names an unknown element");
    cell.label = *id;
    r.saw_cells.push_back(std::move(cell));
  }
  return r;
}

std::string hasse_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph frame {\n  rankdir=BT;\n  node [shape=circle];\n";
  std::map<int, std::vector<ElementId>> ranks;
  for (ElementId x = 0; x < p.size(); ++x) ranks[p.height_of(x)].push_back(x);
  for (const auto& [h, xs] : ranks) {
    out << "  { rank=same;";
    for (auto x : xs) out << " \"" << p.name(x) << "\";";
    out << " }\n";
  }
  for (auto [a, b] : p.covers()) out << "  \"" << p.name(a) << "\" -> \"" << p.name(b) << "\";\n";
  out << "}\n";
  return out.str();
}

std::string drawing_dot(const Poset& p, const PlaneDrawing& d) {
  std::ostringstream out;
  out << "digraph drawing {\n  node [shape=circle];\n";
  for (ElementId x = 0; x < p.size(); ++x) {
    out << fmt::format("  \"{}\" [pos=\"{},{}!\"];\n", p.name(x), format_decimal(d.x[x], 4), d.y[x]);
  }
  for (auto [a, b] : p.covers()) out << "  \"" << p.name(a) << "\" -> \"" << p.name(b) << "\";\n";
  out << "}\n";
  return out.str();
}

namespace {

// Exact coordinates of every vertex in an affine basis of the hull.
std::vector<std::vector<Rational>> project(const ConvexRealization& r) {
  const auto& vs = r.complex.vertices();
  if (vs.empty()) throw PreconditionError("nothing to project");
  Matrix dirs;
  for (std::size_t i = 1; i < vs.size(); ++i) dirs.push_back(vs[i] - vs[0]);
  std::vector<Point> basis;
  for (auto i : independent_rows(dirs)) basis.push_back(dirs[i]);
  std::vector<std::vector<Rational>> out;
  for (const auto& v : vs) {
    Point diff = v - vs[0];
    Matrix a(diff.size(), std::vector<Rational>(basis.size()));
    for (std::size_t i = 0; i < diff.size(); ++i) {
      for (std::size_t k = 0; k < basis.size(); ++k) a[i][k] = basis[k][i];
    }
    auto sol = solve(std::move(a), diff);
    if (!sol) throw InvariantError("vertex outside its own affine hull");
    out.push_back(std::move(*sol));
  }
  return out;
}

}  // namespace

std::string realization_off(const ConvexRealization& r, int digits) {
  if (r.saw_cells.empty()) throw PreconditionError("OFF export needs a convex realisation with saw cells");
  if (r.n > 3) throw PreconditionError("OFF export supports dimension at most 3");
  auto coords = project(r);
  auto tri = triangulate_saw_cells(r);
  std::vector<VertexSet> faces;
  if (r.n == 2) {
    for (const auto& s : tri.simplices()) {
      if (s.size() == 3) faces.push_back(s);
    }
  } else {
    std::map<VertexSet, int> count;
    for (const auto& s : tri.simplices()) {
      if (s.size() != 4) continue;
      for (std::size_t drop = 0; drop < 4; ++drop) {
        VertexSet f = s;
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        ++count[f];
      }
    }
    for (const auto& [f, c] : count) {
      if (c == 1) faces.push_back(f);
    }
  }
  std::ostringstream out;
  out << "OFF\n# approximate decimal projection for display; exact data lives in the realization JSON\n";
  out << coords.size() << ' ' << faces.size() << " 0\n";
  for (const auto& c : coords) {
    for (std::size_t k = 0; k < 3; ++k) {
      out << (k ? " " : "") << (k < c.size() ? format_decimal(c[k], digits) : std::string("0"));
    }
    out << '\n';
  }
  for (const auto& f : faces) {
    out << f.size();
    for (auto v : f) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

json projected_json(const ConvexRealization& r, int digits) {
  auto coords = project(r);
  auto elems = r.vertex_elements();
  json vertices = json::array();
  for (const auto& c : coords) {
    json row = json::array();
    for (const auto& v : c) row.push_back(std::stod(format_decimal(v, digits)));
    vertices.push_back(row);
  }
  json cells = json::array();
  for (const auto& c : r.saw_cells) cells.push_back({{"vertices", c.vertices}, {"label", r.frame.name(c.label)}});
  return {{"approximate", true},
          {"dimension", r.n},
          {"elements", names_of(r.frame, elems)},
          {"vertices", vertices},
          {"simplices", r.complex.simplices()},
          {"saw_cells", cells}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace polyframe::io
