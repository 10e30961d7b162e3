#include "tprym/morphism.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tprym {

void check_harmonic(const HarmonicMorphism& f) {
  const Graph& s = f.source;
  const Graph& t = f.target;
  if (static_cast<int>(f.vertex_map.size()) != s.num_vertices() ||
      static_cast<int>(f.half_edge_map.size()) != s.num_half_edges() ||
      static_cast<int>(f.vertex_degree.size()) != s.num_vertices() ||
      static_cast<int>(f.edge_degree.size()) != s.num_edges()) {
    throw std::invalid_argument("not harmonic: size mismatch");
  }
  for (int h = 0; h < s.num_half_edges(); ++h) {
    int th = f.half_edge_map[h];
    if (th < 0 || th >= t.num_half_edges()) {
      throw std::invalid_argument("not harmonic: half-edge out of range");
    }
    if (f.half_edge_map[Graph::partner(h)] != Graph::partner(th)) {
      throw std::invalid_argument("not harmonic: involution not preserved");
    }
    if (t.root(th) != f.vertex_map[s.root(h)]) {
      throw std::invalid_argument("not harmonic: root map not preserved");
    }
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    if (f.vertex_degree[v] <= 0) {
      throw std::invalid_argument("not harmonic: nonpositive degree");
    }
    int w = f.vertex_map[v];
    for (int th : t.half_edges_at(w)) {
      int sum = 0;
      for (int h : s.half_edges_at(v))
        if (f.half_edge_map[h] == th) sum += f.half_edge_degree(h);
      if (sum != f.vertex_degree[v]) {
        throw std::invalid_argument("not harmonic: balancing fails at vertex " +
                                    s.vertex_id(v));
      }
    }
  }
}

int global_degree(const HarmonicMorphism& f) {
  const Graph& t = f.target;
  std::vector<int> vsum(t.num_vertices(), 0), esum(t.num_edges(), 0);
  for (int v = 0; v < f.source.num_vertices(); ++v)
    vsum[f.vertex_map[v]] += f.vertex_degree[v];
  for (int e = 0; e < f.source.num_edges(); ++e)
    esum[Graph::edge_of(f.half_edge_map[2 * e])] += f.edge_degree[e];
  int d = -1;
  for (int x : vsum) {
    if (d < 0) d = x;
    if (x != d) throw std::invalid_argument("not harmonic: fiber sums differ");
  }
  for (int x : esum)
    if (x != d) throw std::invalid_argument("not harmonic: fiber sums differ");
  if (d <= 0) throw std::invalid_argument("not harmonic: empty fiber");
  return d;
}

int ramification(const HarmonicMorphism& f, int v) {
  return f.vertex_degree[v] * euler_char(f.target, f.vertex_map[v]) -
         euler_char(f.source, v);
}

HarmonicMorphism contract_morphism(const HarmonicMorphism& f,
                                   const std::vector<int>& F) {
  std::vector<bool> in_f(f.target.num_edges(), false);
  for (int e : F) in_f[e] = true;
  std::vector<int> sF;
  for (int e = 0; e < f.source.num_edges(); ++e)
    if (in_f[Graph::edge_of(f.half_edge_map[2 * e])]) sF.push_back(e);
  ContractResult tc = contract(f.target, F);
  ContractResult sc = contract(f.source, sF);
  HarmonicMorphism r;
  r.source = sc.graph;
  r.target = tc.graph;
  r.vertex_map.assign(r.source.num_vertices(), -1);
  r.vertex_degree.assign(r.source.num_vertices(), 0);
  // Degree of a collapsed source component: fiber sum over one target
  // vertex of the collapsed target component.
  std::vector<int> rep(r.target.num_vertices(), -1);
  for (int w = 0; w < f.target.num_vertices(); ++w)
    if (rep[tc.vertex_map[w]] < 0) rep[tc.vertex_map[w]] = w;
  for (int v = 0; v < f.source.num_vertices(); ++v) {
    int nv = sc.vertex_map[v];
    int nw = tc.vertex_map[f.vertex_map[v]];
    r.vertex_map[nv] = nw;
    if (f.vertex_map[v] == rep[nw]) r.vertex_degree[nv] += f.vertex_degree[v];
  }
  r.half_edge_map.assign(r.source.num_half_edges(), -1);
  r.edge_degree.assign(r.source.num_edges(), 0);
  for (int e = 0; e < f.source.num_edges(); ++e) {
    int ne = sc.edge_map[e];
    if (ne < 0) continue;
    for (int side = 0; side < 2; ++side) {
      int th = f.half_edge_map[2 * e + side];
      int nte = tc.edge_map[Graph::edge_of(th)];
      r.half_edge_map[2 * ne + side] = 2 * nte + (th & 1);
    }
    r.edge_degree[ne] = f.edge_degree[e];
  }
  return r;
}

DoubleCover::DoubleCover(Graph base, std::vector<Marking> marking,
                         std::vector<bool> declared_dilated)
    : base_(std::move(base)), marking_(std::move(marking)) {
  if (static_cast<int>(marking_.size()) != base_.num_edges()) {
    throw std::invalid_argument("marking size mismatch");
  }
  declared_ = declared_dilated;
  declared_.resize(base_.num_vertices(), false);
  vertex_dilated_ = declared_;
  for (int e = 0; e < base_.num_edges(); ++e) {
    if (marking_[e] == Marking::kDilated) {
      vertex_dilated_[base_.source(e)] = true;
      vertex_dilated_[base_.target(e)] = true;
    }
  }
  for (int v = 0; v < base_.num_vertices(); ++v) {
    if (!vertex_dilated_[v]) continue;
    int dval = dilated_valence(v);
    if (dval % 2 != 0 || (dval == 0 && base_.vertex_genus(v) < 1)) {
      throw std::invalid_argument("invalid dilation at vertex " +
                                  base_.vertex_id(v));
    }
  }
}

DoubleCover DoubleCover::free_cover(Graph base, const std::vector<int>& signs) {
  std::vector<Marking> m;
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("invalid sign");
    m.push_back(s == 1 ? Marking::kPlus : Marking::kMinus);
  }
  return DoubleCover(std::move(base), std::move(m));
}

int DoubleCover::dilated_valence(int v) const {
  int k = 0;
  for (int e = 0; e < base_.num_edges(); ++e) {
    if (marking_[e] != Marking::kDilated) continue;
    k += (base_.source(e) == v) + (base_.target(e) == v);
  }
  return k;
}

bool DoubleCover::is_free() const {
  for (bool d : vertex_dilated_)
    if (d) return false;
  return true;
}

bool DoubleCover::is_edge_free() const {
  for (auto m : marking_)
    if (m == Marking::kDilated) return false;
  return true;
}

std::vector<int> DoubleCover::undilated_edges() const {
  std::vector<int> r;
  for (int e = 0; e < base_.num_edges(); ++e)
    if (marking_[e] != Marking::kDilated) r.push_back(e);
  return r;
}

std::vector<int> DoubleCover::undilated_vertices() const {
  std::vector<int> r;
  for (int v = 0; v < base_.num_vertices(); ++v)
    if (!vertex_dilated_[v]) r.push_back(v);
  return r;
}

int DoubleCover::sign(int e) const {
  switch (marking_[e]) {
    case Marking::kPlus:
      return 1;
    case Marking::kMinus:
      return -1;
    case Marking::kDilated:
      return 0;
  }
  return 0;
}

ExpandedCover expand(const DoubleCover& c) {
  const Graph& b = c.base();
  ExpandedCover x;
  HarmonicMorphism& f = x.map;
  f.target = b;
  x.vertex_lift.resize(b.num_vertices());
  for (int v = 0; v < b.num_vertices(); ++v) {
    if (c.vertex_dilated(v)) {
      int g = 2 * b.vertex_genus(v) - 1 + c.dilated_valence(v) / 2;
      int w = f.source.add_vertex(b.vertex_id(v), g);
      x.vertex_lift[v] = {w, w};
      f.vertex_map.push_back(v);
      f.vertex_degree.push_back(2);
    } else {
      for (int s = 0; s < 2; ++s) {
        int w = f.source.add_vertex(b.vertex_id(v) + (s == 0 ? "+" : "-"),
                                    b.vertex_genus(v));
        x.vertex_lift[v][s] = w;
        f.vertex_map.push_back(v);
        f.vertex_degree.push_back(1);
      }
    }
  }
  x.edge_lift.resize(b.num_edges());
  for (int e = 0; e < b.num_edges(); ++e) {
    int s = b.source(e), t = b.target(e);
    if (c.edge_dilated(e)) {
      int ne = f.source.add_edge(x.vertex_lift[s][0], x.vertex_lift[t][0],
                                 b.length(e) * Rational(1, 2), b.edge_id(e));
      x.edge_lift[e] = {ne, ne};
      f.half_edge_map.push_back(2 * e);
      f.half_edge_map.push_back(2 * e + 1);
      f.edge_degree.push_back(2);
      continue;
    }
    bool flip = c.sign(e) < 0;
    for (int k = 0; k < 2; ++k) {
      int tk = flip ? 1 - k : k;
      int ne = f.source.add_edge(x.vertex_lift[s][k], x.vertex_lift[t][tk],
                                 b.length(e),
                                 b.edge_id(e) + (k == 0 ? "+" : "-"));
      x.edge_lift[e][k] = ne;
      f.half_edge_map.push_back(2 * e);
      f.half_edge_map.push_back(2 * e + 1);
      f.edge_degree.push_back(1);
    }
  }
  x.vertex_involution.resize(f.source.num_vertices());
  for (int v = 0; v < b.num_vertices(); ++v) {
    x.vertex_involution[x.vertex_lift[v][0]] = x.vertex_lift[v][1];
    x.vertex_involution[x.vertex_lift[v][1]] = x.vertex_lift[v][0];
  }
  x.edge_involution.resize(f.source.num_edges());
  for (int e = 0; e < b.num_edges(); ++e) {
    x.edge_involution[x.edge_lift[e][0]] = x.edge_lift[e][1];
    x.edge_involution[x.edge_lift[e][1]] = x.edge_lift[e][0];
  }
  return x;
}

bool is_connected_cover(const DoubleCover& c) {
  return is_connected(expand(c).map.source);
}

int torus_rank(const DoubleCover& c) {
  ExpandedCover x = expand(c);
  if (!is_connected(x.map.source)) {
    throw std::invalid_argument("disconnected total space");
  }
  return betti1(x.map.source) - betti1(c.base());
}

std::vector<int> first_spanning_tree(const Graph& g) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> tree;
  for (int e = 0; e < g.num_edges(); ++e) {
    int a = find(g.source(e)), b = find(g.target(e));
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    tree.push_back(e);
  }
  return tree;
}

std::vector<DoubleCover> enumerate_free_covers(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("disconnected");
  std::vector<int> tree = first_spanning_tree(g);
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : tree) in_tree[e] = true;
  std::vector<int> rest;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in_tree[e]) rest.push_back(e);
  if (rest.size() >= 30) throw std::invalid_argument("too many cycles");
  std::vector<DoubleCover> out;
  for (unsigned mask = 1; mask < (1u << rest.size()); ++mask) {
    std::vector<int> signs(g.num_edges(), 1);
    for (size_t i = 0; i < rest.size(); ++i)
      if (mask & (1u << i)) signs[rest[i]] = -1;
    out.push_back(DoubleCover::free_cover(g, signs));
  }
  return out;
}

std::vector<int> normalized_signs(const DoubleCover& c) {
  if (!c.is_free()) throw std::invalid_argument("cover is not free");
  const Graph& g = c.base();
  std::vector<int> tree = first_spanning_tree(g);
  std::vector<int> flip(g.num_vertices(), 0);  // 0 unknown, else +-1
  flip[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e : tree) {
      int a = g.source(e), b = g.target(e);
      if (flip[a] != 0 && flip[b] == 0) {
        flip[b] = flip[a] * c.sign(e);
        changed = true;
      } else if (flip[b] != 0 && flip[a] == 0) {
        flip[a] = flip[b] * c.sign(e);
        changed = true;
      }
    }
  }
  std::vector<int> out(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e)
    out[e] = c.sign(e) * flip[g.source(e)] * flip[g.target(e)];
  return out;
}

bool same_cover_class(const DoubleCover& a, const DoubleCover& b) {
  return normalized_signs(a) == normalized_signs(b);
}

CoverContraction contract_cover(const DoubleCover& c,
                                const std::vector<int>& F) {
  const Graph& b = c.base();
  std::vector<bool> in_f(b.num_edges(), false);
  for (int e : F) in_f[e] = true;
  ContractResult cr = contract(b, F);
  // Preimage components of the contracted pieces, on the expanded cover.
  ExpandedCover x = expand(c);
  const Graph& tot = x.map.source;
  std::vector<bool> keep(tot.num_edges(), false);
  for (int e = 0; e < b.num_edges(); ++e)
    if (in_f[e]) keep[x.edge_lift[e][0]] = keep[x.edge_lift[e][1]] = true;
  std::vector<int> lab;
  components(tot, keep, &lab);
  const int n = cr.graph.num_vertices();
  std::vector<int> rep(n, -1);
  for (int v = 0; v < b.num_vertices(); ++v)
    if (rep[cr.vertex_map[v]] < 0) rep[cr.vertex_map[v]] = v;
  std::vector<bool> dilated(n, false);
  for (int v = 0; v < b.num_vertices(); ++v) {
    int r = rep[cr.vertex_map[v]];
    if (lab[x.vertex_lift[r][0]] == lab[x.vertex_lift[r][1]]) {
      dilated[cr.vertex_map[v]] = true;
    }
  }
  // parity[v] = +1 if v+ lies in the sheet of the representative's + lift.
  std::vector<int> parity(b.num_vertices(), 1);
  for (int v = 0; v < b.num_vertices(); ++v) {
    int nv = cr.vertex_map[v];
    if (dilated[nv]) continue;
    int r = rep[nv];
    parity[v] = lab[x.vertex_lift[v][0]] == lab[x.vertex_lift[r][0]] ? 1 : -1;
  }
  std::vector<Marking> marking;
  for (int e = 0; e < b.num_edges(); ++e) {
    if (in_f[e]) continue;
    if (c.edge_dilated(e)) {
      marking.push_back(Marking::kDilated);
      continue;
    }
    int s = c.sign(e) * parity[b.source(e)] * parity[b.target(e)];
    marking.push_back(s > 0 ? Marking::kPlus : Marking::kMinus);
  }
  CoverContraction out;
  out.cover = DoubleCover(cr.graph, marking, dilated);
  out.vertex_map = cr.vertex_map;
  out.edge_map = cr.edge_map;
  return out;
}

DoubleCover restrict_cover(const DoubleCover& c, const std::vector<int>& edges) {
  SubgraphResult s = subgraph(c.base(), edges);
  std::vector<Marking> m;
  for (int e : s.edge_origin) m.push_back(c.marking(e));
  std::vector<bool> declared;
  for (int v : s.vertex_origin) declared.push_back(c.vertex_dilated(v));
  return DoubleCover(s.graph, m, declared);
}

}  // namespace tprym
