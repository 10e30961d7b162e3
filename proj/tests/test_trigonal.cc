#include <gtest/gtest.h>

#include <set>

#include "helpers.h"
#include "tprym/canonical.h"
#include "tprym/enumerate.h"
#include "tprym/moments.h"
#include "tprym/trigonal.h"

using namespace tprym;
using namespace tprym::test;

namespace {

const std::vector<Tower>& genus3_towers() {
  static const std::vector<Tower> t = towers(3, nullptr);
  return t;
}

std::vector<int> fiber_degrees(const Tower& t, int tree_vertex) {
  std::vector<int> d;
  for (int v = 0; v < t.trig.source.num_vertices(); ++v)
    if (t.trig.vertex_map[v] == tree_vertex) d.push_back(t.trig.vertex_degree[v]);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

TEST(FiberSections, CountsAndDegrees) {
  std::set<std::vector<int>> seen;
  for (const Tower& t : genus3_towers()) {
    for (int x = 0; x < t.trig.target.num_vertices(); ++x) {
      std::vector<int> d = fiber_degrees(t, x);
      std::vector<Section> s = fiber_sections(t, false, x);
      std::vector<int> deg;
      int total = 0;
      for (const Section& sec : s) {
        deg.push_back(sec.local_degree);
        total += sec.local_degree;
      }
      std::sort(deg.begin(), deg.end());
      EXPECT_EQ(total, 8);
      if (d == std::vector<int>{1, 1, 1}) {
        EXPECT_EQ(s.size(), 8u);
        EXPECT_EQ(deg, std::vector<int>(8, 1));
      } else if (d == std::vector<int>{1, 2}) {
        EXPECT_EQ(s.size(), 6u);
        EXPECT_EQ(deg, (std::vector<int>{1, 1, 1, 1, 2, 2}));
      } else if (d == std::vector<int>{3}) {
        EXPECT_EQ(s.size(), 4u);
        EXPECT_EQ(deg, (std::vector<int>{1, 1, 3, 3}));
      } else {
        ADD_FAILURE() << "unexpected fiber";
      }
      seen.insert(d);
    }
    if (seen.size() == 3) break;
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(FiberSections, EdgeFibersSumToEight) {
  const Tower& t = genus3_towers().front();
  for (int e = 0; e < t.trig.target.num_edges(); ++e) {
    int total = 0;
    for (const Section& s : fiber_sections(t, true, e)) total += s.local_degree;
    EXPECT_EQ(total, 8);
  }
}

TEST(Pi, ComponentsAreSwappedAndIsomorphic) {
  const std::vector<Tower>& all = genus3_towers();
  for (size_t i = 0; i < all.size(); i += 97) {
    PiConstruction pc = build_pi(all[i]);
    std::vector<int> comp0, comp1;
    for (int v = 0; v < pc.pi_tilde.num_vertices(); ++v) {
      EXPECT_NE(pc.component[v], pc.component[pc.vertex_involution[v]]);
      EXPECT_EQ(pc.vertex_involution[pc.vertex_involution[v]], v);
    }
    std::vector<int> e0, e1;
    for (int e = 0; e < pc.pi_tilde.num_edges(); ++e)
      (pc.component[pc.pi_tilde.source(e)] == 0 ? e0 : e1).push_back(e);
    Graph a = subgraph(pc.pi_tilde, e0).graph, b = subgraph(pc.pi_tilde, e1).graph;
    EXPECT_EQ(canonical_code(a, true), canonical_code(b, true));
    EXPECT_EQ(pc.genus_pi, betti1(all[i].cover.base()) - 1);
    EXPECT_EQ(canonical_code(a, true), canonical_code(pc.pi, true));
  }
}

TEST(Pi, TowerReportOnSample) {
  const std::vector<Tower>& all = genus3_towers();
  for (size_t i = 0; i < all.size(); i += 211) {
    TowerReport r = verify_tower(all[i]);
    EXPECT_EQ(r.genus_pi, 2);
    EXPECT_TRUE(r.w0_match);
    EXPECT_TRUE(r.i2_match[1]);
    EXPECT_FALSE(r.i2_match[0]);
  }
}

TEST(Tower, JsonRoundTrip) {
  const std::vector<Tower>& all = genus3_towers();
  for (size_t i = 0; i < all.size(); i += 301) {
    Json j = tower_to_json(all[i]);
    Tower back = tower_from_json(j);
    EXPECT_EQ(tower_to_json(back), j);
    EXPECT_EQ(normalized_signs(back.cover), normalized_signs(all[i].cover));
  }
}

TEST(Tower, NegativeControls) {
  const Tower& good = genus3_towers().front();
  EXPECT_NO_THROW(check_tower(good));

  Tower wrong_degree = good;
  wrong_degree.trig.edge_degree[0] = wrong_degree.trig.edge_degree[0] == 1 ? 2 : 1;
  EXPECT_THROW(check_tower(wrong_degree), std::invalid_argument);

  Tower wrong_length = good;
  Graph& g = wrong_length.cover.mutable_base();
  g.set_length(0, g.length(0) * 2);
  wrong_length.trig.source.set_length(0, g.length(0));
  EXPECT_THROW(check_tower(wrong_length), std::invalid_argument);

  Tower trivial = good;
  trivial.cover = DoubleCover::free_cover(good.cover.base(),
                                          std::vector<int>(good.cover.base().num_edges(), 1));
  EXPECT_THROW(check_tower(trivial), std::invalid_argument);

  Tower mismatch = good;
  mismatch.trig.source.set_length(0, L("zz"));
  EXPECT_THROW(check_tower(mismatch), std::invalid_argument);

  Json j = tower_to_json(good);
  j["edge_map"].begin().value()["degree"] = 7;
  EXPECT_THROW(tower_from_json(j), std::invalid_argument);
}

TEST(Tower, MismatchedCoverIsReported) {
  // Gluing the p-side of one tower to the cover class of another must not
  // pass unnoticed: w0 of the Pi built from one class differs from w0_prym of
  // a different class on the same base somewhere in the sweep.
  const std::vector<Tower>& all = genus3_towers();
  int detected = 0, compared = 0;
  for (size_t i = 0; i + 1 < all.size() && compared < 200; ++i) {
    const Tower& a = all[i];
    const Tower& b = all[i + 1];
    if (canonical_code(a.cover.base(), true) != canonical_code(b.cover.base(), true)) continue;
    if (a.cover.base().num_edges() != b.cover.base().num_edges()) continue;
    TowerReport ra = verify_tower(a);
    ++compared;
    Polynomial other = w0_prym(stabilized_cover(b.cover));
    if (other != ra.w0_pi) ++detected;
  }
  ASSERT_GT(compared, 0);
  EXPECT_GT(detected, 0);
}
