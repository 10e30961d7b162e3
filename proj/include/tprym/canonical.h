#pragma once

#include <string>

#include "tprym/graph.h"

namespace tprym {

// Isomorphism invariant of the weighted graph: equal codes iff isomorphic
// (vertex genera respected). With with_lengths, edge lengths become labels,
// so equal codes iff isomorphic as metric graphs with these forms.
std::string canonical_code(const Graph& g, bool with_lengths = false);

// Center-rooted AHU encoding; requires g to be a tree.
std::string tree_code(const Graph& g);

}  // namespace tprym
