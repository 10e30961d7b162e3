#pragma once

#include <cstdint>
#include <vector>

#include "tprym/graph.h"
#include "tprym/morphism.h"
#include "tprym/polynomial.h"

namespace tprym {

using EdgeSet = std::vector<int>;  // sorted edge indices

// Spanning trees (bases of the graphic matroid).
std::vector<EdgeSet> spanning_trees(const Graph& g);
// Acyclic edge sets of size k; throws std::out_of_range if k > rank.
std::vector<EdgeSet> independent_sets_k(const Graph& g, int k);
// Kirchhoff's matrix-tree count (exact determinant).
Rational kirchhoff_count(const Graph& g);

struct SignedBasis {
  EdgeSet edges;
  int components = 0;  // c(F) for cographic bases
  int index = 1;       // 4^(c(F)-1)
};

// Signed graphic and cographic matroids of a double cover on the undilated
// edges. Cographic independence: every component of the base minus F has
// connected preimage, decided by component counts on the expansion.
class SignedMatroid {
 public:
  explicit SignedMatroid(const DoubleCover& c);

  const DoubleCover& cover() const { return cover_; }
  const std::vector<int>& ground() const { return ground_; }
  int cographic_rank() const { return cographic_rank_; }
  int graphic_rank() const { return static_cast<int>(ground_.size()) - cographic_rank_; }

  const std::vector<SignedBasis>& cographic_bases() const { return cographic_; }
  // Complements of cographic bases, carrying the same index.
  const std::vector<SignedBasis>& graphic_bases() const { return graphic_; }

  bool cographic_independent(const EdgeSet& F) const;
  bool is_graphic_basis(const EdgeSet& F) const;
  int graphic_basis_index(const EdgeSet& F) const;  // 0 if not a basis

  // 4 if e is a bridge with both sides unbalanced, else 1. Throws for
  // dilated edges.
  int edge_index(int e) const;
  // Definition through cographic bases, kept as a cross-check.
  int edge_index_by_bases(int e) const;

  // Graphic independent sets of size graphic_rank - 1.
  std::vector<EdgeSet> corank_one_independent_sets() const;
  // Index min over the cut set of i(F + e) i(e). Throws for wrong size or a
  // dependent F.
  int independent_index(const EdgeSet& F) const;
  // Product of lengths over undilated edges outside F.
  Polynomial weight(const EdgeSet& F) const;

 private:
  std::uint64_t mask(const EdgeSet& F) const;
  int base_components_without(std::uint64_t removed) const;
  int total_components_without(std::uint64_t removed) const;

  DoubleCover cover_;
  ExpandedCover expanded_;
  std::vector<int> ground_;
  std::vector<int> ground_pos_;  // base edge -> position in ground, or -1
  int cographic_rank_ = 0;
  std::vector<SignedBasis> cographic_;
  std::vector<SignedBasis> graphic_;
};

// Connected subgraph (edges plus extra vertices) with connected preimage.
// Throws std::invalid_argument("disconnected subgraph").
bool is_unbalanced(const DoubleCover& c, const std::vector<int>& edges,
                   const std::vector<int>& extra_vertices = {});

// FS_n-sets: n undilated edges whose removal leaves exactly two components,
// both unbalanced, while removing any proper subset leaves the base connected.
std::vector<EdgeSet> fs_sets(const DoubleCover& c, int n);

}  // namespace tprym
