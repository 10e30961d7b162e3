#pragma once

#include <random>
#include <string>
#include <vector>

#include "tprym/graph.h"
#include "tprym/linear_form.h"
#include "tprym/morphism.h"
#include "tprym/rational.h"

namespace tprym {

// Connected graph with the given first Betti number on the given number of
// vertices (>= 1): a random spanning tree plus random extra edges (loops
// allowed). Edge lengths are variables named prefix + index.
Graph random_graph(int genus, int vertices, std::mt19937_64& rng,
                   const std::string& prefix = "x");

// Uniformly chosen nontrivial free cover class. Throws if b1 = 0.
DoubleCover random_free_cover(const Graph& g, std::mt19937_64& rng);

// Random positive rationals num/den with num in 1..max_num, den in 1..max_den.
std::map<Var, Rational> random_point(const std::vector<Var>& vars,
                                     std::mt19937_64& rng, int max_num = 20,
                                     int max_den = 6);

// Variables of all edge lengths of g.
std::vector<Var> length_variables(const Graph& g);

}  // namespace tprym
