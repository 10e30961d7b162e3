#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "tprym/canonical.h"
#include "tprym/graph.h"

using namespace tprym;
using namespace tprym::test;

TEST(Graph, HalfEdgeStructure) {
  Graph g = load_graph("dumbbell_graph");
  ASSERT_EQ(g.num_vertices(), 2);
  ASSERT_EQ(g.num_edges(), 3);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    EXPECT_EQ(Graph::partner(Graph::partner(h)), h);
    EXPECT_EQ(Graph::edge_of(h), Graph::edge_of(Graph::partner(h)));
  }
  int u = g.find_vertex("u");
  EXPECT_EQ(g.valence(u), 3);
  EXPECT_TRUE(g.is_loop(g.find_edge("g1")));
  EXPECT_EQ(g.edges_at(u).size(), 2u);
}

TEST(Graph, GenusAndBetti) {
  EXPECT_EQ(genus(load_graph("loop")), 1);
  EXPECT_EQ(genus(load_graph("theta")), 2);
  EXPECT_EQ(genus(load_graph("dumbbell_graph")), 2);
  Graph g;
  g.add_vertex("a", 2);
  g.add_vertex("b");
  g.add_edge(0, 1, "e");
  EXPECT_EQ(betti1(g), 0);
  EXPECT_EQ(genus(g), 2);
  Graph d;
  d.add_vertex("a");
  d.add_vertex("b");
  EXPECT_THROW(genus(d), std::invalid_argument);
}

TEST(Graph, ContractCollapsesComponentsWithGenus) {
  Graph g = load_graph("theta");
  ContractResult r = contract(g, {0, 1});
  EXPECT_EQ(r.graph.num_vertices(), 1);
  EXPECT_EQ(r.graph.num_edges(), 1);
  EXPECT_EQ(r.graph.vertex_genus(0), 1);
  EXPECT_EQ(genus(r.graph), genus(g));
  EXPECT_EQ(r.edge_map[0], -1);
  EXPECT_EQ(r.edge_map[2], 0);
}

TEST(Graph, GenusIsPreservedByContraction) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    Graph g = random_graph(2 + k % 3, 2 + k % 4, rng);
    for (int e = 0; e < g.num_edges(); ++e)
      EXPECT_EQ(genus(contract(g, {e}).graph), genus(g));
  }
}

TEST(Graph, StabilizePrunesAndMerges) {
  Graph g;
  for (const char* v : {"a", "b", "c", "d"}) g.add_vertex(v);
  g.add_edge(0, 0, "l");
  g.add_edge(0, 1, "x");
  g.add_edge(1, 2, "y");
  g.add_edge(2, 2, "m");
  g.add_edge(1, 3, "leaf");
  StabilizeResult s = stabilize_with_map(g);
  EXPECT_EQ(s.graph.num_vertices(), 2);
  EXPECT_EQ(s.graph.num_edges(), 3);
  int bridge = -1;
  for (int e = 0; e < s.graph.num_edges(); ++e)
    if (!s.graph.is_loop(e)) bridge = e;
  ASSERT_GE(bridge, 0);
  EXPECT_EQ(s.graph.length(bridge), L("x + y"));
  EXPECT_EQ(s.edge_paths[bridge].size(), 2u);
  Graph loop = load_graph("loop");
  EXPECT_THROW(stabilize(loop), std::invalid_argument);
  EXPECT_EQ(reduce_with_map(loop).graph.num_edges(), 1);
}

TEST(Graph, StabilizationPreservesGenus) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    Graph g = random_graph(2 + k % 3, 1 + k % 6, rng);
    Graph s = stabilize(g);
    EXPECT_EQ(genus(s), genus(g));
    for (int v = 0; v < s.num_vertices(); ++v)
      EXPECT_TRUE(s.valence(v) >= 3 || s.vertex_genus(v) > 0);
  }
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    Graph g = random_graph(3, 4, rng);
    std::vector<int> perm(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Graph h;
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
    for (size_t i = 0; i < perm.size(); ++i) h.add_vertex("w" + std::to_string(i), g.vertex_genus(inv[i]));
    std::vector<int> order(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) order[e] = e;
    std::shuffle(order.begin(), order.end(), rng);
    for (int e : order) {
      bool flip = rng() & 1;
      int a = perm[g.source(e)], b = perm[g.target(e)];
      h.add_edge(flip ? b : a, flip ? a : b, g.length(e), "h" + std::to_string(e));
    }
    EXPECT_EQ(canonical_code(g), canonical_code(h));
    EXPECT_EQ(canonical_code(g, true), canonical_code(h, true));
  }
}

TEST(Canonical, DistinguishesNonIsomorphic) {
  EXPECT_NE(canonical_code(load_graph("theta")), canonical_code(load_graph("dumbbell_graph")));
  Graph a = load_graph("theta");
  Graph b = a;
  b.set_vertex_genus(0, 1);
  EXPECT_NE(canonical_code(a), canonical_code(b));
}
