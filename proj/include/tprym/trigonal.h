#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tprym/graph.h"
#include "tprym/morphism.h"
#include "tprym/polynomial.h"

namespace tprym {

// Free double cover of G together with a degree-3 harmonic morphism G -> tree.
// trig.source must coincide with cover.base() (same vertices, edges, lengths).
struct Tower {
  DoubleCover cover;
  HarmonicMorphism trig;
};

// Throws std::invalid_argument("invalid tower: ...").
void check_tower(const Tower& t);

// Point of a fiber of the cover pulled back over one vertex or edge of the
// tree. preimages lists the source vertices (or edges) over the base object
// in index order; split[i] is the coefficient on the + lift of preimages[i],
// the - lift receiving degree[i] - split[i].
struct Section {
  bool over_edge = false;
  int base = 0;
  std::vector<int> preimages;
  std::vector<int> split;
  int local_degree = 1;
};

// All sections over a tree vertex (over_edge false) or tree edge, in
// lexicographic order of splits. Throws "invalid tower" unless the fiber
// degrees sum to 3.
std::vector<Section> fiber_sections(const Tower& t, bool over_edge, int x);

struct PiConstruction {
  Graph pi_tilde;
  // Per vertex of pi_tilde: component index (0 or 1).
  std::vector<int> component;
  // Involution on vertices and edges of pi_tilde.
  std::vector<int> vertex_involution;
  std::vector<int> edge_involution;
  Graph pi;             // component 0: contains the least vertex-section
  int genus_pi = 0;
};

// Throws std::logic_error("construction violated: ...") if an internal
// consistency check fails.
PiConstruction build_pi(const Tower& t);

struct TowerReport {
  int genus_pi = 0;
  bool w0_match = false;
  // p(Pi) = p + q on the tower cone, with the third-term coefficient 1 / 2.
  bool i2_match[2] = {false, false};
  std::string q_case;
  Polynomial w0_pi, w0_cover, p_pi, q_selected;
  Polynomial p_cover[2];
};

// Stabilizes G and Pi, computes both sides in the tree variables and
// compares them. q is selected on the tree's orthant; a branch inequality of
// indefinite sign raises std::runtime_error("cone not branch-pure: ...").
TowerReport verify_tower(const Tower& t);

// Stabilization of the free cover of G, with signs multiplied along merged
// paths.
DoubleCover stabilized_cover(const DoubleCover& c);

}  // namespace tprym
