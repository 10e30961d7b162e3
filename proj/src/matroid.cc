#include "tprym/matroid.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tprym {
namespace {

struct UnionFind {
  std::vector<int> parent;
  int count;
  explicit UnionFind(int n) : parent(n), count(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    --count;
    return true;
  }
};

void acyclic_sets(const Graph& g, int k, int start, UnionFind uf,
                  EdgeSet& cur, std::vector<EdgeSet>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  int need = k - static_cast<int>(cur.size());
  for (int e = start; e + need <= g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    UnionFind next = uf;
    if (!next.unite(g.source(e), g.target(e))) continue;
    cur.push_back(e);
    acyclic_sets(g, k, e + 1, std::move(next), cur, out);
    cur.pop_back();
  }
}

// All k-subsets of {0..n-1} as bitmasks, increasing.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (x < limit) {
    f(x);
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

int pow4(int k) {
  int r = 1;
  for (int i = 0; i < k; ++i) r *= 4;
  return r;
}

}  // namespace

std::vector<EdgeSet> independent_sets_k(const Graph& g, int k) {
  std::vector<int> label;
  int rank = g.num_vertices() - components(g, &label);
  if (k < 0 || k > rank) throw std::out_of_range("size exceeds graphic rank");
  std::vector<EdgeSet> out;
  EdgeSet cur;
  acyclic_sets(g, k, 0, UnionFind(g.num_vertices()), cur, out);
  return out;
}

std::vector<EdgeSet> spanning_trees(const Graph& g) {
  if (!is_connected(g)) return {};
  return independent_sets_k(g, g.num_vertices() - 1);
}

Rational kirchhoff_count(const Graph& g) {
  int n = g.num_vertices();
  if (n == 0) return 0;
  if (!is_connected(g)) return 0;
  int m = n - 1;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, 0));
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.is_loop(e)) continue;
    int u = g.source(e), v = g.target(e);
    if (u < m) a[u][u] += 1;
    if (v < m) a[v][v] += 1;
    if (u < m && v < m) {
      a[u][v] -= 1;
      a[v][u] -= 1;
    }
  }
  Rational det = 1;
  for (int c = 0; c < m; ++c) {
    int p = c;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < m; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (int j = c; j < m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

SignedMatroid::SignedMatroid(const DoubleCover& c)
    : cover_(c), expanded_(expand(c)) {
  const Graph& g = cover_.base();
  if (!is_connected(g)) throw std::invalid_argument("disconnected");
  if (!is_connected_cover(cover_)) {
    throw std::invalid_argument("disconnected cover");
  }
  ground_ = cover_.undilated_edges();
  if (ground_.size() > 63) throw std::invalid_argument("too many edges");
  ground_pos_.assign(g.num_edges(), -1);
  for (std::size_t i = 0; i < ground_.size(); ++i) ground_pos_[ground_[i]] = i;
  cographic_rank_ = torus_rank(cover_);
  const int n = static_cast<int>(ground_.size());
  for_each_subset(n, cographic_rank_, [&](std::uint64_t m) {
    int cb = base_components_without(m);
    if (cb != total_components_without(m)) return;
    SignedBasis b, t;
    for (int i = 0; i < n; ++i) {
      if (m >> i & 1) b.edges.push_back(ground_[i]);
      else t.edges.push_back(ground_[i]);
    }
    b.components = t.components = cb;
    b.index = t.index = pow4(cb - 1);
    cographic_.push_back(std::move(b));
    graphic_.push_back(std::move(t));
  });
  if (cographic_.empty()) throw std::logic_error("no cographic basis");
}

std::uint64_t SignedMatroid::mask(const EdgeSet& F) const {
  std::uint64_t m = 0;
  for (int e : F) {
    if (e < 0 || e >= static_cast<int>(ground_pos_.size()) ||
        ground_pos_[e] < 0) {
      throw std::invalid_argument("edge not in ground set");
    }
    m |= std::uint64_t{1} << ground_pos_[e];
  }
  return m;
}

int SignedMatroid::base_components_without(std::uint64_t removed) const {
  const Graph& g = cover_.base();
  UnionFind uf(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e) {
    int p = ground_pos_[e];
    if (p >= 0 && (removed >> p & 1)) continue;
    uf.unite(g.source(e), g.target(e));
  }
  return uf.count;
}

int SignedMatroid::total_components_without(std::uint64_t removed) const {
  const Graph& t = expanded_.map.source;
  const Graph& g = cover_.base();
  std::vector<bool> skip(t.num_edges(), false);
  for (int e = 0; e < g.num_edges(); ++e) {
    int p = ground_pos_[e];
    if (p >= 0 && (removed >> p & 1)) {
      skip[expanded_.edge_lift[e][0]] = true;
      skip[expanded_.edge_lift[e][1]] = true;
    }
  }
  UnionFind uf(t.num_vertices());
  for (int e = 0; e < t.num_edges(); ++e)
    if (!skip[e]) uf.unite(t.source(e), t.target(e));
  return uf.count;
}

bool SignedMatroid::cographic_independent(const EdgeSet& F) const {
  std::uint64_t m = mask(F);
  return base_components_without(m) == total_components_without(m);
}

int SignedMatroid::graphic_basis_index(const EdgeSet& F) const {
  std::uint64_t m = mask(F);
  if (popcount(m) != graphic_rank()) return 0;
  const std::uint64_t comp =
      ((std::uint64_t{1} << ground_.size()) - 1) & ~m;
  int cb = base_components_without(comp);
  if (cb != total_components_without(comp)) return 0;
  return pow4(cb - 1);
}

bool SignedMatroid::is_graphic_basis(const EdgeSet& F) const {
  return graphic_basis_index(F) != 0;
}

int SignedMatroid::edge_index(int e) const {
  if (cover_.edge_dilated(e)) throw std::invalid_argument("dilated edge");
  std::uint64_t m = mask({e});
  int cb = base_components_without(m);
  if (cb == 2 && total_components_without(m) == 2) return 4;
  return 1;
}

int SignedMatroid::edge_index_by_bases(int e) const {
  bool found = false;
  int best = 0;
  for (const SignedBasis& b : cographic_) {
    if (!std::binary_search(b.edges.begin(), b.edges.end(), e)) continue;
    best = found ? std::min(best, b.index) : b.index;
    found = true;
  }
  return found && best >= 4 ? 4 : 1;
}

std::vector<EdgeSet> SignedMatroid::corank_one_independent_sets() const {
  std::set<EdgeSet> seen;
  for (const SignedBasis& t : graphic_) {
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      EdgeSet f = t.edges;
      f.erase(f.begin() + i);
      seen.insert(std::move(f));
    }
  }
  return {seen.begin(), seen.end()};
}

int SignedMatroid::independent_index(const EdgeSet& F) const {
  if (static_cast<int>(F.size()) != graphic_rank() - 1) {
    throw std::invalid_argument("wrong size for corank-one set");
  }
  std::uint64_t m = mask(F);
  int best = 0;
  for (std::size_t i = 0; i < ground_.size(); ++i) {
    if (m >> i & 1) continue;
    EdgeSet g = F;
    g.insert(std::upper_bound(g.begin(), g.end(), ground_[i]), ground_[i]);
    int idx = graphic_basis_index(g);
    if (idx == 0) continue;
    int v = idx * edge_index(ground_[i]);
    best = best == 0 ? v : std::min(best, v);
  }
  if (best == 0) throw std::invalid_argument("dependent set");
  return best;
}

Polynomial SignedMatroid::weight(const EdgeSet& F) const {
  std::uint64_t m = mask(F);
  std::vector<LinearForm> factors;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (!(m >> i & 1)) factors.push_back(cover_.base().length(ground_[i]));
  return product(factors);
}

bool is_unbalanced(const DoubleCover& c, const std::vector<int>& edges,
                   const std::vector<int>& extra_vertices) {
  const Graph& g = c.base();
  std::vector<bool> in_v(g.num_vertices(), false);
  UnionFind uf(g.num_vertices());
  int nv = 0;
  for (int v : extra_vertices) {
    if (!in_v[v]) ++nv;
    in_v[v] = true;
  }
  for (int e : edges) {
    for (int v : {g.source(e), g.target(e)}) {
      if (!in_v[v]) ++nv;
      in_v[v] = true;
    }
  }
  int merges = 0;
  for (int e : edges)
    if (uf.unite(g.source(e), g.target(e))) ++merges;
  if (nv == 0 || merges != nv - 1) {
    throw std::invalid_argument("disconnected subgraph");
  }
  ExpandedCover x = expand(c);
  const Graph& t = x.map.source;
  UnionFind tu(t.num_vertices());
  std::set<int> verts;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!in_v[v]) continue;
    verts.insert(x.vertex_lift[v][0]);
    verts.insert(x.vertex_lift[v][1]);
  }
  for (int e : edges) {
    for (int k = 0; k < 2; ++k) {
      int le = x.edge_lift[e][k];
      tu.unite(t.source(le), t.target(le));
    }
  }
  std::set<int> roots;
  for (int v : verts) roots.insert(tu.find(v));
  return roots.size() == 1;
}

std::vector<EdgeSet> fs_sets(const DoubleCover& c, int n) {
  SignedMatroid sm(c);
  const std::vector<int>& ground = sm.ground();
  const int m = static_cast<int>(ground.size());
  std::vector<EdgeSet> out;
  for_each_subset(m, n, [&](std::uint64_t mask) {
    EdgeSet s;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(ground[i]);
    const Graph& g = c.base();
    auto comps = [&](const EdgeSet& removed) {
      std::vector<bool> keep(g.num_edges(), true);
      for (int e : removed) keep[e] = false;
      std::vector<int> label;
      return components(g, keep, &label);
    };
    if (comps(s) != 2) return;
    for (int i = 0; i < n; ++i) {
      EdgeSet sub = s;
      sub.erase(sub.begin() + i);
      if (comps(sub) != 1) return;
    }
    if (!sm.cographic_independent(s)) return;
    out.push_back(std::move(s));
  });
  return out;
}

}  // namespace tprym
