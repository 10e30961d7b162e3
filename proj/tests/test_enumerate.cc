#include <gtest/gtest.h>

#include <set>

#include "helpers.h"
#include "tprym/canonical.h"
#include "tprym/enumerate.h"

using namespace tprym;
using namespace tprym::test;

TEST(Trees, CountsAndValence) {
  EXPECT_EQ(trivalent_trees(1).size(), 1u);
  EXPECT_EQ(trivalent_trees(2).size(), 1u);
  EXPECT_EQ(trivalent_trees(3).size(), 2u);
  std::vector<Graph> t9 = trivalent_trees(9);
  EXPECT_EQ(t9.size(), 37u);
  std::set<std::string> codes;
  for (const Graph& t : t9) {
    EXPECT_EQ(t.num_edges(), 9);
    EXPECT_EQ(betti1(t), 0);
    EXPECT_TRUE(is_connected(t));
    for (int v = 0; v < t.num_vertices(); ++v) EXPECT_LE(t.valence(v), 3);
    codes.insert(tree_code(t));
  }
  EXPECT_EQ(codes.size(), 37u);
}

TEST(Trees, LabelingConvention) {
  for (const Graph& t : trivalent_trees(5)) {
    for (int e = 0; e < t.num_edges(); ++e) {
      EXPECT_LT(std::stoi(t.vertex_id(t.source(e))), std::stoi(t.vertex_id(t.target(e))));
      EXPECT_EQ(t.length(e), L("t" + std::to_string(e)));
    }
  }
}

TEST(Markings, SingleEdge) {
  std::vector<Graph> t = trivalent_trees(1);
  std::vector<TypedTree> m = type_markings(t[0]);
  ASSERT_EQ(m.size(), 2u);
  std::set<std::vector<int>> got;
  for (const TypedTree& tt : m)
    got.insert({tt.edge_type[0], tt.vertex_type[0], tt.vertex_type[1]});
  EXPECT_EQ(got, (std::set<std::vector<int>>{{1, 1, 1}, {3, 2, 2}}));
}

TEST(Markings, NineEdgeTotal) {
  std::int64_t total = 0;
  for (const Graph& t : trivalent_trees(9)) total += type_markings(t).size();
  EXPECT_EQ(total, 1184);
}

TEST(Markings, TypesAreInRange) {
  for (const Graph& t : trivalent_trees(5))
    for (const TypedTree& tt : type_markings(t)) {
      for (int x : tt.edge_type) EXPECT_TRUE(x >= 1 && x <= 3);
      for (int x : tt.vertex_type) EXPECT_TRUE(x >= 1 && x <= 3);
    }
}

TEST(Pipeline, GenusTwoAndThreeCounts) {
  StageCounts c2, c3;
  std::vector<Tower> t2 = towers(2, &c2);
  EXPECT_EQ(c2.trees, 4);
  EXPECT_EQ(c2.typed, 32);
  EXPECT_EQ(c2.monodromy, 140);
  EXPECT_EQ(c2.connected, 136);
  EXPECT_EQ(c2.generic, 121);
  EXPECT_EQ(c2.covers, 363);
  EXPECT_EQ(static_cast<std::int64_t>(t2.size()), c2.covers);
  generic_structures(3, &c3);
  EXPECT_EQ(c3.trees, 11);
  EXPECT_EQ(c3.typed, 176);
  EXPECT_EQ(c3.monodromy, 1196);
  EXPECT_EQ(c3.connected, 1185);
  EXPECT_EQ(c3.generic, 365);
  EXPECT_EQ(c3.covers, 2555);
}

TEST(Pipeline, GenericStructuresAreValid) {
  for (const HarmonicMorphism& f : generic_structures(3, nullptr)) {
    EXPECT_NO_THROW(check_harmonic(f));
    EXPECT_EQ(global_degree(f), 3);
    EXPECT_EQ(betti1(f.source), 3);
    EXPECT_TRUE(genericity_filter(f, 3));
  }
}

TEST(Pipeline, Deterministic) {
  std::vector<Tower> a = towers(2, nullptr), b = towers(2, nullptr);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(tower_to_json(a[i]), tower_to_json(b[i]));
}

TEST(Verification, GenusTwo) {
  VerificationReport r = run_verification(2);
  EXPECT_EQ(r.passed[1], 363);
  EXPECT_EQ(r.passed[0], 0);
  EXPECT_EQ(r.errors, 0);
  EXPECT_EQ(r.winning_coefficient, 2);
  EXPECT_EQ(r.q_cases, std::vector<std::string>{"genus<=2"});
}

TEST(Verification, ParallelEqualsSerial) {
  VerificationOptions serial, parallel;
  parallel.jobs = 4;
  VerificationReport a = run_verification(2, serial), b = run_verification(2, parallel);
  ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
  for (size_t i = 0; i < a.outcomes.size(); ++i) {
    EXPECT_EQ(a.outcomes[i].index, b.outcomes[i].index);
    EXPECT_EQ(a.outcomes[i].q_case, b.outcomes[i].q_case);
    EXPECT_EQ(a.outcomes[i].i2_match[1], b.outcomes[i].i2_match[1]);
  }
  EXPECT_EQ(a.passed[1], b.passed[1]);
}
