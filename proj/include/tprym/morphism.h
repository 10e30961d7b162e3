#pragma once

#include <array>
#include <string>
#include <vector>

#include "tprym/graph.h"

namespace tprym {

// Map of graphs sending vertices to vertices and half-edges to half-edges,
// with local degrees. Edges are never contracted.
struct HarmonicMorphism {
  Graph source;
  Graph target;
  std::vector<int> vertex_map;     // source vertex -> target vertex
  std::vector<int> half_edge_map;  // source half-edge -> target half-edge
  std::vector<int> vertex_degree;  // d_f on source vertices
  std::vector<int> edge_degree;    // d_f on source edges (both half-edges)

  int half_edge_degree(int h) const { return edge_degree[Graph::edge_of(h)]; }
};

// Throws std::invalid_argument("not harmonic: ...") if a structural or local
// balancing condition fails (roots, involutions, per-vertex sums).
void check_harmonic(const HarmonicMorphism& f);
// Common fiber sum over target vertices and edges; throws "not harmonic".
int global_degree(const HarmonicMorphism& f);
// d_f(v) chi(f(v)) - chi(v).
int ramification(const HarmonicMorphism& f, int v);

// Contracts target edges F and their preimages; collapsed source components
// get the degree of the restricted map.
HarmonicMorphism contract_morphism(const HarmonicMorphism& f,
                                   const std::vector<int>& F);

enum class Marking { kPlus, kMinus, kDilated };

// Double cover stored on the base: per-edge sign or dilation, plus vertices
// declared dilated without dilated edges.
class DoubleCover {
 public:
  DoubleCover() = default;
  // Throws std::invalid_argument("invalid dilation") when a dilated vertex
  // has odd dilated valence, or dilated valence 0 and genus 0.
  DoubleCover(Graph base, std::vector<Marking> marking,
              std::vector<bool> declared_dilated = {});
  // Free cover from signs in {+1,-1}.
  static DoubleCover free_cover(Graph base, const std::vector<int>& signs);

  const Graph& base() const { return base_; }
  Graph& mutable_base() { return base_; }
  Marking marking(int e) const { return marking_[e]; }
  const std::vector<Marking>& markings() const { return marking_; }
  bool edge_dilated(int e) const { return marking_[e] == Marking::kDilated; }
  bool vertex_dilated(int v) const { return vertex_dilated_[v]; }
  bool declared_dilated(int v) const { return declared_[v]; }
  // Number of dilated half-edges at v.
  int dilated_valence(int v) const;
  bool is_free() const;
  bool is_edge_free() const;
  std::vector<int> undilated_edges() const;
  std::vector<int> undilated_vertices() const;
  // +1/-1 for undilated edges, 0 for dilated ones.
  int sign(int e) const;

 private:
  Graph base_;
  std::vector<Marking> marking_;
  std::vector<bool> declared_;
  std::vector<bool> vertex_dilated_;
};

struct ExpandedCover {
  HarmonicMorphism map;
  // Lifts of base vertices/edges: [0] is the + lift, [1] the - lift; both
  // equal for dilated ones.
  std::vector<std::array<int, 2>> vertex_lift;
  std::vector<std::array<int, 2>> edge_lift;
  std::vector<int> vertex_involution;
  std::vector<int> edge_involution;
};

// Two lifts per undilated vertex/edge and one per dilated one. Edge e+ starts
// at s(e)+, and ends at t(e)+ if the sign is +1, at t(e)- if it is -1.
// Dilated edge lifts have half the length.
ExpandedCover expand(const DoubleCover& c);

bool is_connected_cover(const DoubleCover& c);
// b1(total) - b1(base). Throws if the total space is disconnected.
int torus_rank(const DoubleCover& c);

// Spanning tree of the base: first edges in index order (Kruskal).
std::vector<int> first_spanning_tree(const Graph& g);
// All 2^b1 - 1 nontrivial classes, signs +1 on first_spanning_tree.
std::vector<DoubleCover> enumerate_free_covers(const Graph& g);
// Signs gauge-fixed to +1 on first_spanning_tree (free covers only).
std::vector<int> normalized_signs(const DoubleCover& c);
bool same_cover_class(const DoubleCover& a, const DoubleCover& b);

struct CoverContraction {
  DoubleCover cover;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;  // -1 for contracted edges
};
// Contracts base edges F; a collapsed component becomes dilated exactly when
// its preimage is connected. Signs are re-gauged across collapsed components.
CoverContraction contract_cover(const DoubleCover& c, const std::vector<int>& F);

// Restriction to the subgraph spanned by the given edges.
DoubleCover restrict_cover(const DoubleCover& c, const std::vector<int>& edges);

}  // namespace tprym
