#include "tprym/trigonal.h"

#include <map>
#include <stdexcept>
#include <string>

#include "tprym/cone.h"
#include "tprym/moments.h"

namespace tprym {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw std::invalid_argument("invalid tower: " + what);
}

[[noreturn]] void violated(const std::string& what) {
  throw std::logic_error("construction violated: " + what);
}

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string split_label(const std::vector<int>& split) {
  std::string s;
  for (int a : split) s += std::to_string(a);
  return s;
}

struct Fiber {
  std::vector<int> preimages;
  std::vector<int> degrees;
};

Fiber fiber(const Tower& t, bool over_edge, int x) {
  const HarmonicMorphism& f = t.trig;
  Fiber out;
  if (over_edge) {
    for (int e = 0; e < f.source.num_edges(); ++e)
      if (Graph::edge_of(f.half_edge_map[2 * e]) == x) {
        out.preimages.push_back(e);
        out.degrees.push_back(f.edge_degree[e]);
      }
  } else {
    for (int v = 0; v < f.source.num_vertices(); ++v)
      if (f.vertex_map[v] == x) {
        out.preimages.push_back(v);
        out.degrees.push_back(f.vertex_degree[v]);
      }
  }
  int sum = 0;
  for (int d : out.degrees) sum += d;
  if (sum != 3)
    invalid(std::string(over_edge ? "edge " : "vertex ") + std::to_string(x) +
            " has fiber degree " + std::to_string(sum));
  return out;
}

}  // namespace

void check_tower(const Tower& t) {
  const Graph& g = t.cover.base();
  const HarmonicMorphism& f = t.trig;
  if (!t.cover.is_free()) invalid("cover is not free");
  if (g.num_vertices() != f.source.num_vertices() ||
      g.num_edges() != f.source.num_edges())
    invalid("morphism source differs from the cover base");
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.source(e) != f.source.source(e) ||
        g.target(e) != f.source.target(e) ||
        g.length(e) != f.source.length(e))
      invalid("morphism source differs from the cover base at edge " +
              g.edge_id(e));
  try {
    check_harmonic(f);
  } catch (const std::invalid_argument& ex) {
    invalid(ex.what());
  }
  if (!is_connected(f.target) || betti1(f.target) != 0)
    invalid("target is not a tree");
  if (global_degree(f) != 3) invalid("degree is not 3");
  for (int e = 0; e < g.num_edges(); ++e) {
    LinearForm expect = f.target.length(Graph::edge_of(f.half_edge_map[2 * e])) *
                        Rational(1, f.edge_degree[e]);
    if (g.length(e) != expect)
      invalid("edge " + g.edge_id(e) + " length is not the dilated tree length");
  }
  if (!is_connected_cover(t.cover)) invalid("total space is disconnected");
}

std::vector<Section> fiber_sections(const Tower& t, bool over_edge, int x) {
  Fiber fb = fiber(t, over_edge, x);
  std::vector<Section> out;
  std::vector<int> split(fb.degrees.size(), 0);
  while (true) {
    Section s;
    s.over_edge = over_edge;
    s.base = x;
    s.preimages = fb.preimages;
    s.split = split;
    for (size_t i = 0; i < split.size(); ++i)
      s.local_degree *= binomial(fb.degrees[i], split[i]);
    out.push_back(std::move(s));
    int i = static_cast<int>(split.size()) - 1;
    while (i >= 0 && split[i] == fb.degrees[i]) split[i--] = 0;
    if (i < 0) break;
    ++split[i];
  }
  int total = 0;
  for (const auto& s : out) total += s.local_degree;
  if (total != 8) violated("section degrees sum to " + std::to_string(total));
  return out;
}

PiConstruction build_pi(const Tower& t) {
  check_tower(t);
  const HarmonicMorphism& f = t.trig;
  const Graph& tree = f.target;
  const Graph& g = f.source;
  PiConstruction out;
  Graph& pt = out.pi_tilde;

  std::map<std::pair<int, std::vector<int>>, int> vindex;
  std::vector<Section> vsec;
  for (int x = 0; x < tree.num_vertices(); ++x)
    for (Section& s : fiber_sections(t, false, x)) {
      int id = pt.add_vertex("x" + tree.vertex_id(x) + ":" + split_label(s.split));
      vindex[{x, s.split}] = id;
      vsec.push_back(std::move(s));
    }

  // Restriction of an edge-section to the root of tree half-edge h.
  auto restrict_to = [&](const Section& s, int h) {
    int x = tree.root(h);
    std::map<int, int> plus, total;
    for (size_t i = 0; i < s.preimages.size(); ++i) {
      int k = s.preimages[i];
      int d = f.edge_degree[k];
      int hk = f.half_edge_map[2 * k] == h ? 2 * k : 2 * k + 1;
      if (f.half_edge_map[hk] != h) violated("edge does not cover its side");
      int y = g.root(hk);
      bool plus_lift_here = (hk % 2 == 0) || t.cover.sign(k) > 0;
      plus[y] += plus_lift_here ? s.split[i] : d - s.split[i];
      total[y] += d;
    }
    std::vector<int> split;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (f.vertex_map[v] != x) continue;
      if (total[v] != f.vertex_degree[v]) violated("restriction is not balanced");
      split.push_back(plus[v]);
    }
    auto it = vindex.find({x, split});
    if (it == vindex.end()) violated("restriction is not a vertex-section");
    return it->second;
  };

  std::map<std::pair<int, std::vector<int>>, int> eindex;
  std::vector<Section> esec;
  // incident[v][side half-edge] = summed degrees of incident edge-sections
  std::vector<std::map<int, int>> incident(pt.num_vertices());
  for (int eps = 0; eps < tree.num_edges(); ++eps)
    for (Section& s : fiber_sections(t, true, eps)) {
      int a = restrict_to(s, 2 * eps);
      int b = restrict_to(s, 2 * eps + 1);
      LinearForm len = tree.length(eps) * Rational(1, s.local_degree);
      int id = pt.add_edge(a, b, len,
                           "s" + tree.edge_id(eps) + ":" + split_label(s.split));
      eindex[{eps, s.split}] = id;
      incident[a][2 * eps] += s.local_degree;
      incident[b][2 * eps + 1] += s.local_degree;
      esec.push_back(std::move(s));
    }

  for (int v = 0; v < pt.num_vertices(); ++v) {
    int x = vsec[v].base;
    for (int h : tree.half_edges_at(x))
      if (incident[v][h] != vsec[v].local_degree)
        violated("vertex-section " + pt.vertex_id(v) + " is not balanced");
  }

  auto flipped = [&](const Section& s) {
    std::vector<int> split = s.split;
    for (size_t i = 0; i < split.size(); ++i) {
      int d = s.over_edge ? f.edge_degree[s.preimages[i]]
                          : f.vertex_degree[s.preimages[i]];
      split[i] = d - split[i];
    }
    return split;
  };
  for (const Section& s : vsec)
    out.vertex_involution.push_back(vindex.at({s.base, flipped(s)}));
  for (const Section& s : esec)
    out.edge_involution.push_back(eindex.at({s.base, flipped(s)}));
  for (int e = 0; e < pt.num_edges(); ++e) {
    int j = out.edge_involution[e];
    if (pt.source(j) != out.vertex_involution[pt.source(e)] ||
        pt.target(j) != out.vertex_involution[pt.target(e)] ||
        pt.length(j) != pt.length(e))
      violated("involution is not an isometry");
  }

  int n = components(pt, &out.component);
  if (n != 2) violated(std::to_string(n) + " components");
  if (out.component[0] != 0)
    for (int& c : out.component) c = 1 - c;
  for (int v = 0; v < pt.num_vertices(); ++v)
    if (out.component[out.vertex_involution[v]] == out.component[v])
      violated("involution preserves a component");

  std::vector<int> deg_v(tree.num_vertices(), 0), deg_e(tree.num_edges(), 0);
  std::vector<int> edges, verts;
  for (int v = 0; v < pt.num_vertices(); ++v)
    if (out.component[v] == 0) {
      verts.push_back(v);
      deg_v[vsec[v].base] += vsec[v].local_degree;
    }
  for (int e = 0; e < pt.num_edges(); ++e)
    if (out.component[pt.source(e)] == 0) {
      edges.push_back(e);
      deg_e[esec[e].base] += esec[e].local_degree;
    }
  for (int d : deg_v)
    if (d != 4) violated("component has degree " + std::to_string(d));
  for (int d : deg_e)
    if (d != 4) violated("component has degree " + std::to_string(d));

  out.pi = subgraph(pt, edges, verts).graph;
  out.genus_pi = betti1(out.pi);
  if (out.genus_pi != betti1(g) - 1)
    violated("g(Pi) = " + std::to_string(out.genus_pi) + ", g(G) = " +
             std::to_string(betti1(g)));
  return out;
}

DoubleCover stabilized_cover(const DoubleCover& c) {
  if (!c.is_free()) throw std::invalid_argument("cover is not free");
  Graph g = c.base();
  for (int v = 0; v < g.num_vertices(); ++v) g.set_vertex_genus(v, 0);
  StabilizeResult st = stabilize_with_map(g);
  std::vector<int> signs;
  for (const auto& path : st.edge_paths) {
    int s = 1;
    for (int e : path) s *= c.sign(e);
    signs.push_back(s);
  }
  return DoubleCover::free_cover(st.graph, signs);
}

TowerReport verify_tower(const Tower& t) {
  PiConstruction pc = build_pi(t);
  TowerReport r;
  r.genus_pi = pc.genus_pi;
  Graph pi = reduce_with_map(pc.pi).graph;
  DoubleCover cov = stabilized_cover(t.cover);
  r.w0_pi = w0_jac(pi);
  r.w0_cover = w0_prym(cov);
  r.w0_match = r.w0_pi == r.w0_cover;
  r.p_pi = p_jac(pi);

  QResult q = q_prym(cov);
  r.q_case = q.descriptor.name;
  OrthantImage orthant;
  for (Var v : q.q.variables()) orthant.param[v] = LinearForm::variable(v);
  r.q_selected = q.q.pieces()[q.q.select(orthant)].poly;
  for (int k = 1; k <= 2; ++k) {
    r.p_cover[k - 1] = p_prym(cov, k);
    r.i2_match[k - 1] = r.p_pi == r.p_cover[k - 1] + r.q_selected;
  }
  return r;
}

}  // namespace tprym
