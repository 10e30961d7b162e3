#include "tprym/sampling.h"

#include <set>
#include <stdexcept>

namespace tprym {

Graph random_graph(int genus, int vertices, std::mt19937_64& rng,
                   const std::string& prefix) {
  if (vertices < 1 || genus < 0) throw std::invalid_argument("bad sizes");
  Graph g;
  for (int v = 0; v < vertices; ++v) g.add_vertex("v" + std::to_string(v));
  int next = 0;
  auto edge = [&](int a, int b) {
    g.add_edge(a, b, prefix + std::to_string(next++));
  };
  for (int v = 1; v < vertices; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edge(pick(rng), v);
  }
  std::uniform_int_distribution<int> any(0, vertices - 1);
  for (int i = 0; i < genus; ++i) edge(any(rng), any(rng));
  return g;
}

DoubleCover random_free_cover(const Graph& g, std::mt19937_64& rng) {
  std::vector<DoubleCover> all = enumerate_free_covers(g);
  if (all.empty()) throw std::invalid_argument("graph has no cycles");
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

std::map<Var, Rational> random_point(const std::vector<Var>& vars,
                                     std::mt19937_64& rng, int max_num,
                                     int max_den) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  std::map<Var, Rational> p;
  for (Var v : vars) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    p[v] = q;
  }
  return p;
}

std::vector<Var> length_variables(const Graph& g) {
  std::set<Var> s;
  for (int e = 0; e < g.num_edges(); ++e)
    for (const auto& [v, c] : g.length(e).terms()) s.insert(v);
  return {s.begin(), s.end()};
}

}  // namespace tprym
