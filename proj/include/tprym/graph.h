#pragma once

#include <string>
#include <vector>

#include "tprym/linear_form.h"

namespace tprym {

// Half-edge multigraph with vertex genera and linear-form edge lengths.
// Edge e owns half-edges 2e and 2e+1; the involution is h -> h ^ 1. The
// source of e is the root of 2e, the target the root of 2e+1. A loop has
// both half-edges at one vertex and contributes 2 to the valence.
class Graph {
 public:
  int add_vertex(const std::string& id, int genus = 0);
  int add_vertex(int genus = 0);
  int add_edge(int u, int v, const LinearForm& length, const std::string& id);
  // Edge with a fresh variable length named after the edge id.
  int add_edge(int u, int v, const std::string& id);

  int num_vertices() const { return static_cast<int>(genus_.size()); }
  int num_edges() const { return static_cast<int>(length_.size()); }
  int num_half_edges() const { return 2 * num_edges(); }

  int root(int h) const { return root_[h]; }
  static int partner(int h) { return h ^ 1; }
  static int edge_of(int h) { return h >> 1; }
  int source(int e) const { return root_[2 * e]; }
  int target(int e) const { return root_[2 * e + 1]; }
  int other_end(int e, int v) const {
    return source(e) == v ? target(e) : source(e);
  }
  bool is_loop(int e) const { return source(e) == target(e); }

  int vertex_genus(int v) const { return genus_[v]; }
  void set_vertex_genus(int v, int g) { genus_[v] = g; }
  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& edge_id(int e) const { return edge_ids_[e]; }
  const LinearForm& length(int e) const { return length_[e]; }
  void set_length(int e, const LinearForm& f) { length_[e] = f; }
  const std::vector<LinearForm>& lengths() const { return length_; }

  int valence(int v) const;
  std::vector<int> half_edges_at(int v) const;
  // Incident edges; a loop is listed once.
  std::vector<int> edges_at(int v) const;
  int find_vertex(const std::string& id) const;  // -1 if absent
  int find_edge(const std::string& id) const;    // -1 if absent

  // Same combinatorics; every edge length replaced by its id as a variable.
  Graph with_variable_lengths() const;

 private:
  std::vector<int> genus_;
  std::vector<std::string> vertex_ids_;
  std::vector<int> root_;
  std::vector<std::string> edge_ids_;
  std::vector<LinearForm> length_;
};

// b1 + sum of vertex genera. Throws std::invalid_argument("disconnected").
int genus(const Graph& g);
// First Betti number |E| - |V| + (number of components).
int betti1(const Graph& g);
int euler_char(const Graph& g, int v);
bool is_connected(const Graph& g);

// Component label per vertex of the spanning subgraph with edges where
// keep[e] is true; returns the number of components.
int components(const Graph& g, const std::vector<bool>& keep,
               std::vector<int>* label);
// Same, over all edges.
int components(const Graph& g, std::vector<int>* label);

struct ContractResult {
  Graph graph;
  std::vector<int> vertex_map;  // old vertex -> new vertex
  std::vector<int> edge_map;    // old edge -> new edge, -1 if contracted
};

// Collapses every component of the subgraph spanned by F to one vertex whose
// genus is that component's genus.
ContractResult contract(const Graph& g, const std::vector<int>& F);

struct StabilizeResult {
  Graph graph;
  // Original edges forming each new edge (series merges), in path order.
  std::vector<std::vector<int>> edge_paths;
  std::vector<int> vertex_origin;  // new vertex -> old vertex
};

// Removes genus-0 leaves iteratively, then merges series edges at genus-0
// valence-2 vertices (lengths add). Throws if genus < 2.
StabilizeResult stabilize_with_map(const Graph& g);
Graph stabilize(const Graph& g);
// Same reduction without the genus check (genus 1 reduces to one loop).
StabilizeResult reduce_with_map(const Graph& g);

// Subgraph on the given edges and their endpoints (plus isolated vertices
// listed in extra_vertices). Vertex genera are kept.
struct SubgraphResult {
  Graph graph;
  std::vector<int> vertex_origin;
  std::vector<int> edge_origin;
};
SubgraphResult subgraph(const Graph& g, const std::vector<int>& edges,
                        const std::vector<int>& extra_vertices = {});

}  // namespace tprym
