#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "tprym/moments.h"
#include "tprym/oracle.h"

using namespace tprym;
using namespace tprym::test;

namespace {

std::vector<DoubleCover> random_covers(int count, std::uint64_t seed, int max_genus = 4) {
  std::mt19937_64 rng(seed);
  std::vector<DoubleCover> out;
  for (int k = 0; k < count; ++k) {
    int g = 2 + k % (max_genus - 1);
    out.push_back(random_free_cover(random_graph(g, 1 + k % 5, rng), rng));
  }
  return out;
}

}  // namespace

TEST(Jacobian, Loop) {
  Graph g = load_graph("loop");
  MomentExpression m = i2_jac(g);
  EXPECT_EQ(m.radicand, P("e"));
  ASSERT_TRUE(m.numerator.is_polynomial());
  EXPECT_EQ(m.numerator.pieces()[0].poly, P("e^2"));
  EXPECT_EQ(m.scale, Rational(1, 12));
  EXPECT_TRUE(w1_jac(g).is_zero());
}

TEST(Jacobian, Theta) {
  Graph g = load_graph("theta");
  EXPECT_EQ(w0_jac(g), P("a*b + a*c + b*c"));
  EXPECT_EQ(w1_jac(g), P("a*b*c"));
  EXPECT_EQ(p_jac(g), P("a^2*b + a^2*c + a*b^2 + 4*a*b*c + a*c^2 + b^2*c + b*c^2"));
  Point ones = all_ones(g);
  auto [num, rad] = i2_jac(g).evaluate_exact(ones);
  EXPECT_EQ(rad, 3);
  // Regular hexagon of area sqrt(3): I2 = sqrt(3) * 5/18.
  EXPECT_EQ(num, Rational(5, 6));
  EXPECT_EQ(tau(g, ones), Rational(7, 36));
}

TEST(Jacobian, TreeLengthSumAndKirchhoff) {
  Graph g = load_graph("dumbbell_graph");
  EXPECT_EQ(w0_jac(g), P("g1*g2"));
  EXPECT_EQ(tree_length_sum(g), P("g1^2*g2 + g1*g2^2"));
}

TEST(Jacobian, TauIdentityOnRandomGraphs) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 50; ++k) {
    Graph g = random_graph(1 + k % 4, 1 + k % 6, rng);
    EXPECT_TRUE(tau_identity_residual(g).is_zero()) << k;
  }
}

TEST(Jacobian, Homogeneity) {
  std::mt19937_64 rng(78);
  for (int k = 0; k < 30; ++k) {
    Graph g = random_graph(1 + k % 4, 1 + k % 5, rng);
    int b = betti1(g);
    EXPECT_EQ(w0_jac(g).homogeneous_degree(), b);
    EXPECT_EQ(p_jac(g).homogeneous_degree(), b + 1);
  }
}

TEST(Prym, DumbbellIsACircle) {
  DoubleCover c = load_cover("dumbbell");
  MomentExpression m = i2_prym(c);
  EXPECT_EQ(m.radicand, P("4*f + g1 + g2"));
  ASSERT_TRUE(m.numerator.is_polynomial());
  EXPECT_EQ(m.numerator.pieces()[0].poly, P("4*f + g1 + g2").pow(2));
  EXPECT_NEAR(m.evaluate(all_ones(c.base())), 36 / (12 * std::sqrt(6.0)), 1e-12);
}

TEST(Prym, TwoOddLoopsIsACircle) {
  DoubleCover c = load_cover("two_odd_loops");
  EXPECT_EQ(w0_prym(c), P("g1 + g2"));
  EXPECT_EQ(p_prym(c), P("g1 + g2").pow(2));
  EXPECT_NE(p_prym(c, 1), P("g1 + g2").pow(2));
}

TEST(Prym, GenusTwoHasNoCorrection) {
  DoubleCover c = load_cover("theta_one_odd");
  QResult q = q_prym(c);
  EXPECT_EQ(q.descriptor.name, "genus<=2");
  ASSERT_TRUE(q.q.is_polynomial());
  EXPECT_TRUE(q.q.pieces()[0].poly.is_zero());
  EXPECT_TRUE(i2_prym(c).numerator.is_polynomial());
}

TEST(Prym, CaseDetection) {
  EXPECT_EQ(q_prym(load_cover("genus3_fs2")).descriptor.name, "fs2=1,fs3=0");
  EXPECT_EQ(q_prym(load_cover("prism")).descriptor.name, "fs2=0,fs3=1");
  EXPECT_EQ(q_prym(load_cover("k4_one_odd")).descriptor.name, "fs2=0,fs3=0");
  QResult q = q_prym(load_cover("genus3_fs2"));
  EXPECT_EQ(q.q.size(), 2u);
}

TEST(Prym, GenusAboveFourIsRejected) {
  std::mt19937_64 rng(5);
  DoubleCover c = random_free_cover(random_graph(5, 3, rng), rng);
  EXPECT_THROW(q_prym(c), std::invalid_argument);
}

TEST(Prym, ExactAgreementWithPolygonIntegralInRankTwo) {
  std::mt19937_64 rng(91);
  std::vector<DoubleCover> covers = {load_cover("k4_one_odd"), load_cover("genus3_fs2"),
                                     load_cover("fs2")};
  for (const DoubleCover& c : random_covers(40, 92, 3))
    if (torus_rank(c) == 2) covers.push_back(c);
  ASSERT_GE(covers.size(), 10u);
  for (const DoubleCover& c : covers) {
    MomentExpression m = i2_prym(c);
    for (int k = 0; k < 5; ++k) {
      Point p = random_point(length_variables(c.base()), rng);
      Matrix gram = prym_gram(c, p);
      auto [num, rad] = m.evaluate_exact(p);
      ASSERT_EQ(rad, determinant(gram));
      // I2 = num / sqrt(det) = sqrt(det) * Q.
      EXPECT_EQ(num, rad * voronoi_q_2d(gram));
    }
  }
}

TEST(Prym, HomogeneityDegrees) {
  std::vector<DoubleCover> covers = random_covers(30, 93);
  for (const std::string& n : cover_fixtures()) covers.push_back(load_cover(n));
  for (const DoubleCover& c : covers) {
    int t = torus_rank(c);
    EXPECT_TRUE(w0_prym(c).homogeneous_of_degree(t));
    EXPECT_TRUE(p_prym(c).homogeneous_of_degree(t + 1));
    for (const Piece& piece : q_prym(c).q.pieces())
      EXPECT_TRUE(piece.poly.homogeneous_of_degree(t + 1));
  }
}

TEST(Prym, WallContinuity) {
  std::vector<DoubleCover> covers = random_covers(60, 94);
  for (const std::string& n : cover_fixtures()) covers.push_back(load_cover(n));
  for (const DoubleCover& c : covers) EXPECT_TRUE(wall_continuity(q_prym(c).q));
}

TEST(Prym, ContractionLimits) {
  for (const std::string& name : cover_fixtures()) {
    DoubleCover c = load_cover(name);
    MomentExpression m = i2_prym(c);
    for (int e = 0; e < c.base().num_edges(); ++e) {
      SCOPED_TRACE(name + " / " + c.base().edge_id(e));
      DoubleCover d = contract_cover(c, {e}).cover;
      std::map<Var, LinearForm> zero;
      for (const auto& [v, k] : c.base().length(e).terms()) zero[v] = LinearForm();
      Polynomial rad = m.radicand.substitute_partial(zero);
      PiecewisePolynomial num = m.numerator.substitute(zero);
      if (torus_rank(d) == torus_rank(c)) {
        MomentExpression md = i2_prym(d);
        EXPECT_EQ(rad, md.radicand);
        EXPECT_EQ(compare_functions(num, md.numerator), "");
      } else {
        EXPECT_TRUE(rad.is_zero());
        EXPECT_EQ(compare_functions(num, PiecewisePolynomial(Polynomial())), "");
      }
    }
  }
}

TEST(Prym, ContractionLimitsOnRandomCovers) {
  for (const DoubleCover& c : random_covers(15, 95)) {
    MomentExpression m = i2_prym(c);
    for (int e = 0; e < c.base().num_edges(); ++e) {
      DoubleCover d = contract_cover(c, {e}).cover;
      if (torus_rank(d) != torus_rank(c)) continue;
      std::map<Var, LinearForm> zero;
      for (const auto& [v, k] : c.base().length(e).terms()) zero[v] = LinearForm();
      MomentExpression md = i2_prym(d);
      EXPECT_EQ(m.radicand.substitute_partial(zero), md.radicand);
      EXPECT_EQ(compare_functions(m.numerator.substitute(zero), md.numerator), "");
    }
  }
}

TEST(Prym, DilatedEdgeInvariance) {
  DoubleCover c = load_cover("theta_dilated_edges");
  std::vector<int> dilated;
  for (int e = 0; e < c.base().num_edges(); ++e)
    if (c.edge_dilated(e)) dilated.push_back(e);
  ASSERT_EQ(dilated.size(), 2u);
  DoubleCover d = contract_cover(c, dilated).cover;
  EXPECT_TRUE(d.is_edge_free());
  MomentExpression a = i2_prym(c), b = i2_prym(d);
  EXPECT_EQ(a.radicand, b.radicand);
  EXPECT_EQ(compare_functions(a.numerator, b.numerator), "");
  for (Var v : a.numerator.variables()) {
    EXPECT_NE(var_name(v), "b");
    EXPECT_NE(var_name(v), "c");
  }
}
