#pragma once

#include "polyframe/geometry.hpp"
#include "polyframe/poset.hpp"
#include "polyframe/realization.hpp"
#include "polyframe/reduction.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace polyframe::io {

using nlohmann::json;

// Frame: {"elements": [...], "covers": [["a","b"], ...]}
json frame_to_json(const Poset& p);
/// Throws FormatError for malformed JSON, PosetError for cycles or unknown names.
Poset frame_from_json(const json& j);

// Sawed tree: the frame fields plus "tops_order" and "saw_nodes".
json sawed_tree_to_json(const SawedTree& t);
SawedTree sawed_tree_from_json(const json& j);
bool looks_like_sawed_tree(const json& j);

// {"source": frame, "target": frame, "map": {element: element}}
json poset_map_to_json(const PosetMap& f);
PosetMap poset_map_from_json(const json& j);

// {element: ["num/den", y]}
json drawing_to_json(const Poset& p, const PlaneDrawing& d);

json point_to_json(const Point& p);
Point point_from_json(const json& j);

// {"vertices": [[...]], "simplices": [[indices]]}; faces are closed on load.
json complex_to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(const json& j);

// {frame, n, vertices, simplices, saw_cells: [{vertices, removed_facets, label}], labels}
json realization_to_json(const ConvexRealization& r);
ConvexRealization realization_from_json(const json& j);

std::string hasse_dot(const Poset& p);
std::string drawing_dot(const Poset& p, const PlaneDrawing& d);

/// OFF mesh of P for n <= 3 with vertices projected onto an affine basis of
/// the hull; decimals are approximate and only for display.
std::string realization_off(const ConvexRealization& r, int digits = 6);
/// Projected coordinates as JSON (approximate, display only).
json projected_json(const ConvexRealization& r, int digits = 6);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace polyframe::io
