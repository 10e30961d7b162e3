#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tprym/graph.h"
#include "tprym/morphism.h"
#include "tprym/trigonal.h"

namespace tprym {

// Trees with n edges and maximum valence 3, one per isomorphism class, in
// the order of the Wright-Richmond-Odlyzko-McKay generator. Vertices are
// "0".."n" in level-sequence order; edges are listed by (min, max) endpoint
// label, sourced at the smaller label, with length variable "t<index>".
std::vector<Graph> trivalent_trees(int n_edges);

// Types I, II, III are 1, 2, 3.
struct TypedTree {
  Graph tree;
  std::vector<int> edge_type;
  std::vector<int> vertex_type;
};

// Markings whose local type combinations all appear in the allowed table.
std::vector<TypedTree> type_markings(const Graph& tree);

using Perm = std::array<int, 3>;  // images of 1, 2, 3

struct MonodromyTree {
  TypedTree typed;
  std::vector<Perm> sigma;  // per tree edge
};

// Representative labels per edge up to relabelings that give the same local
// gluing; one incident edge of each all-III vertex fixed to the identity.
std::vector<MonodromyTree> monodromy_assignments(const TypedTree& tt);

// Glues the source graph from the lift classes. Returns nullopt when it is
// disconnected.
std::optional<HarmonicMorphism> realize_trigonal(const MonodromyTree& mt);

// |E(G^st)| = 3g - 3 and the tree lengths map onto the stabilized lengths
// with rank 3g - 3, for g = b1(G) = genus.
bool genericity_filter(const HarmonicMorphism& f, int genus);

struct StageCounts {
  std::int64_t trees = 0;
  std::int64_t typed = 0;
  std::int64_t monodromy = 0;
  std::int64_t connected = 0;
  std::int64_t generic = 0;
  std::int64_t covers = 0;
};

// Tree edges for a given genus: 2g + 1.
int tree_edges_for_genus(int genus);

// Generic trigonal structures for the genus, in enumeration order.
std::vector<HarmonicMorphism> generic_structures(int genus,
                                                 StageCounts* counts);

// All towers over the generic structures: the 2^g - 1 free covers of each.
std::vector<Tower> towers(int genus, StageCounts* counts);

struct TowerOutcome {
  int index = 0;
  int genus_pi = 0;
  bool w0_match = false;
  bool i2_match[2] = {false, false};
  std::string q_case;
  bool q_zero = false;  // selected q piece is the zero polynomial
  std::string error;  // nonempty if the construction or selection threw
};

struct VerificationReport {
  int genus = 0;
  StageCounts counts;
  std::vector<TowerOutcome> outcomes;
  // Number of towers passing (g(Pi), w0 and I2) per coefficient 1 / 2.
  std::int64_t passed[2] = {0, 0};
  std::int64_t w0_passed = 0;
  std::int64_t genus_passed = 0;
  std::int64_t errors = 0;
  std::vector<std::string> q_cases;  // distinct case names, sorted
  int winning_coefficient = 0;       // 0 if not exactly one passes all
  double seconds = 0;
};

struct VerificationOptions {
  int jobs = 1;
  std::function<void(std::int64_t, std::int64_t)> progress;
};

VerificationReport run_verification(int genus,
                                    const VerificationOptions& options = {});

}  // namespace tprym
