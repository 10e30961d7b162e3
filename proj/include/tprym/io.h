#pragma once

#include <string>

#include "json.hpp"
#include "tprym/cone.h"
#include "tprym/graph.h"
#include "tprym/morphism.h"
#include "tprym/polynomial.h"
#include "tprym/trigonal.h"

namespace tprym {

using Json = nlohmann::ordered_json;

// Errors are std::invalid_argument carrying the offending field path, e.g.
// "edges[2].sign: expected 1, -1 or \"dilated\"".
Graph graph_from_json(const Json& j);
Json graph_to_json(const Graph& g);

DoubleCover cover_from_json(const Json& j);
Json cover_to_json(const DoubleCover& c);

// {"cover": ..., "tree": ..., "vertex_map": {id: {"to", "degree"}},
//  "edge_map": {id: {"to", "reversed", "degree"}}}. Parsing runs check_tower.
Json tower_to_json(const Tower& t);
// Same maps with the source graph under "graph".
Json morphism_to_json(const HarmonicMorphism& f);
Tower tower_from_json(const Json& j);

// Term list: [{"coeff": "3/2", "monomial": {"x": 2, "y": 1}}, ...].
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
Json piecewise_to_json(const PiecewisePolynomial& pp);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace tprym
