#include "tprym/graph.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tprym {

int Graph::add_vertex(const std::string& id, int genus) {
  if (genus < 0) throw std::invalid_argument("negative vertex genus");
  genus_.push_back(genus);
  vertex_ids_.push_back(id);
  return num_vertices() - 1;
}

int Graph::add_vertex(int genus) {
  return add_vertex("v" + std::to_string(num_vertices()), genus);
}

int Graph::add_edge(int u, int v, const LinearForm& length,
                    const std::string& id) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) {
    throw std::out_of_range("edge endpoint is not a vertex");
  }
  root_.push_back(u);
  root_.push_back(v);
  edge_ids_.push_back(id.empty() ? "e" + std::to_string(num_edges()) : id);
  length_.push_back(length);
  return num_edges() - 1;
}

int Graph::add_edge(int u, int v, const std::string& id) {
  return add_edge(u, v, LinearForm::variable(id), id);
}

int Graph::valence(int v) const {
  return static_cast<int>(std::count(root_.begin(), root_.end(), v));
}

std::vector<int> Graph::half_edges_at(int v) const {
  std::vector<int> hs;
  for (int h = 0; h < num_half_edges(); ++h)
    if (root_[h] == v) hs.push_back(h);
  return hs;
}

std::vector<int> Graph::edges_at(int v) const {
  std::vector<int> es;
  for (int e = 0; e < num_edges(); ++e)
    if (source(e) == v || target(e) == v) es.push_back(e);
  return es;
}

int Graph::find_vertex(const std::string& id) const {
  auto it = std::find(vertex_ids_.begin(), vertex_ids_.end(), id);
  return it == vertex_ids_.end() ? -1
                                 : static_cast<int>(it - vertex_ids_.begin());
}

int Graph::find_edge(const std::string& id) const {
  auto it = std::find(edge_ids_.begin(), edge_ids_.end(), id);
  return it == edge_ids_.end() ? -1 : static_cast<int>(it - edge_ids_.begin());
}

Graph Graph::with_variable_lengths() const {
  Graph r = *this;
  for (int e = 0; e < num_edges(); ++e)
    r.length_[e] = LinearForm::variable(edge_ids_[e]);
  return r;
}

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) {
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
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

int components(const Graph& g, const std::vector<bool>& keep,
               std::vector<int>* label) {
  UnionFind uf(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e)
    if (keep[e]) uf.unite(g.source(e), g.target(e));
  std::vector<int> id(g.num_vertices(), -1);
  int count = 0;
  std::vector<int> lab(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    int r = uf.find(v);
    if (id[r] < 0) id[r] = count++;
    lab[v] = id[r];
  }
  if (label) *label = std::move(lab);
  return count;
}

int components(const Graph& g, std::vector<int>* label) {
  return components(g, std::vector<bool>(g.num_edges(), true), label);
}

bool is_connected(const Graph& g) {
  return g.num_vertices() > 0 && components(g, nullptr) == 1;
}

int betti1(const Graph& g) {
  return g.num_edges() - g.num_vertices() + components(g, nullptr);
}

int genus(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("disconnected");
  int total = g.num_edges() - g.num_vertices() + 1;
  for (int v = 0; v < g.num_vertices(); ++v) total += g.vertex_genus(v);
  return total;
}

int euler_char(const Graph& g, int v) {
  if (v < 0 || v >= g.num_vertices()) {
    throw std::out_of_range("unknown vertex");
  }
  return 2 - 2 * g.vertex_genus(v) - g.valence(v);
}

ContractResult contract(const Graph& g, const std::vector<int>& F) {
  std::vector<bool> in_f(g.num_edges(), false);
  for (int e : F) {
    if (e < 0 || e >= g.num_edges()) throw std::out_of_range("unknown edge");
    in_f[e] = true;
  }
  std::vector<int> label;
  int n = components(g, in_f, &label);
  // Genus of each collapsed component: edges - vertices + 1 + vertex genera.
  std::vector<int> comp_genus(n, 1), first_vertex(n, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    comp_genus[label[v]] += g.vertex_genus(v) - 1;
    if (first_vertex[label[v]] < 0) first_vertex[label[v]] = v;
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (in_f[e]) comp_genus[label[g.source(e)]] += 1;
  ContractResult r;
  for (int c = 0; c < n; ++c)
    r.graph.add_vertex(g.vertex_id(first_vertex[c]), comp_genus[c]);
  r.vertex_map = label;
  r.edge_map.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_f[e]) continue;
    r.edge_map[e] = r.graph.add_edge(label[g.source(e)], label[g.target(e)],
                                     g.length(e), g.edge_id(e));
  }
  return r;
}

StabilizeResult stabilize_with_map(const Graph& g) {
  if (genus(g) < 2) throw std::invalid_argument("genus < 2");
  return reduce_with_map(g);
}

StabilizeResult reduce_with_map(const Graph& g) {
  const int nv = g.num_vertices();
  struct E {
    int a, b;
    LinearForm len;
    std::vector<int> path;
    bool alive = true;
  };
  std::vector<E> es;
  for (int e = 0; e < g.num_edges(); ++e)
    es.push_back({g.source(e), g.target(e), g.length(e), {e}});
  std::vector<bool> alive_v(nv, true);
  auto val = [&](int v) {
    int k = 0;
    for (const auto& e : es) {
      if (!e.alive) continue;
      k += (e.a == v) + (e.b == v);
    }
    return k;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < nv; ++v) {
      if (!alive_v[v] || g.vertex_genus(v) != 0 || val(v) > 1) continue;
      for (auto& e : es)
        if (e.alive && (e.a == v || e.b == v)) e.alive = false;
      alive_v[v] = false;
      changed = true;
    }
  }
  changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < nv; ++v) {
      if (!alive_v[v] || g.vertex_genus(v) != 0 || val(v) != 2) continue;
      std::vector<int> inc;
      for (int i = 0; i < static_cast<int>(es.size()); ++i)
        if (es[i].alive && (es[i].a == v || es[i].b == v)) inc.push_back(i);
      if (inc.size() != 2) continue;  // a loop: isolated cycle, keep
      E& x = es[inc[0]];
      E& y = es[inc[1]];
      // Orient x to end at v and y to start at v.
      if (x.a == v) {
        std::swap(x.a, x.b);
        std::reverse(x.path.begin(), x.path.end());
      }
      if (y.b == v) {
        std::swap(y.a, y.b);
        std::reverse(y.path.begin(), y.path.end());
      }
      E merged{x.a, y.b, x.len + y.len, x.path};
      merged.path.insert(merged.path.end(), y.path.begin(), y.path.end());
      x.alive = false;
      y.alive = false;
      es.push_back(std::move(merged));
      alive_v[v] = false;
      changed = true;
    }
  }
  StabilizeResult r;
  std::vector<int> new_id(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (!alive_v[v]) continue;
    new_id[v] = r.graph.add_vertex(g.vertex_id(v), g.vertex_genus(v));
    r.vertex_origin.push_back(v);
  }
  for (const auto& e : es) {
    if (!e.alive) continue;
    std::string id = g.edge_id(e.path.front());
    for (size_t i = 1; i < e.path.size(); ++i) id += "_" + g.edge_id(e.path[i]);
    r.graph.add_edge(new_id[e.a], new_id[e.b], e.len, id);
    r.edge_paths.push_back(e.path);
  }
  return r;
}

Graph stabilize(const Graph& g) { return stabilize_with_map(g).graph; }

SubgraphResult subgraph(const Graph& g, const std::vector<int>& edges,
                        const std::vector<int>& extra_vertices) {
  SubgraphResult r;
  std::vector<int> id(g.num_vertices(), -1);
  auto touch = [&](int v) {
    if (id[v] < 0) {
      id[v] = r.graph.add_vertex(g.vertex_id(v), g.vertex_genus(v));
      r.vertex_origin.push_back(v);
    }
  };
  std::vector<int> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> verts = extra_vertices;
  for (int e : sorted) {
    verts.push_back(g.source(e));
    verts.push_back(g.target(e));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (int v : verts) touch(v);
  for (int e : sorted) {
    r.graph.add_edge(id[g.source(e)], id[g.target(e)], g.length(e),
                     g.edge_id(e));
    r.edge_origin.push_back(e);
  }
  return r;
}

}  // namespace tprym
