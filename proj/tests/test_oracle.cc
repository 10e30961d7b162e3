#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "tprym/moments.h"
#include "tprym/oracle.h"

using namespace tprym;
using namespace tprym::test;

namespace {

Matrix M(std::initializer_list<std::initializer_list<int>> rows) {
  Matrix m;
  for (auto& r : rows) {
    std::vector<Rational> row;
    for (int x : r) row.push_back(x);
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST(LinearAlgebra, Determinant) {
  EXPECT_EQ(determinant(M({{2, 1}, {1, 2}})), 3);
  EXPECT_EQ(determinant(M({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(M({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})), -3);
  EXPECT_TRUE(is_positive_definite(M({{2, 1}, {1, 2}})));
  EXPECT_FALSE(is_positive_definite(M({{1, 2}, {2, 1}})));
}

TEST(LinearAlgebra, LatticeBasis) {
  auto b = lattice_basis({{2, 0}, {0, 2}, {1, 1}});
  ASSERT_EQ(b.size(), 2u);
  Matrix m;
  for (auto& r : b) m.push_back({Rational(r[0]), Rational(r[1])});
  Rational d = determinant(m);
  EXPECT_EQ(d * d, 4);
}

TEST(Volume, FixtureDeterminants) {
  std::mt19937_64 rng(101);
  for (const std::string& n : cover_fixtures()) {
    DoubleCover c = load_cover(n);
    for (int k = 0; k < 10; ++k) {
      Point p = random_point(length_variables(c.base()), rng);
      EXPECT_EQ(determinant(prym_gram(c, p)), w0_prym(c).evaluate(p)) << n;
    }
  }
  for (const std::string& n : graph_fixtures()) {
    Graph g = load_graph(n);
    for (int k = 0; k < 10; ++k) {
      Point p = random_point(length_variables(g), rng);
      EXPECT_EQ(determinant(jac_gram(g, p)), w0_jac(g).evaluate(p)) << n;
    }
  }
}

TEST(Volume, RandomCovers) {
  std::mt19937_64 rng(102);
  for (int k = 0; k < 40; ++k) {
    DoubleCover c = random_free_cover(random_graph(2 + k % 3, 1 + k % 5, rng), rng);
    Point p = random_point(length_variables(c.base()), rng);
    EXPECT_EQ(determinant(prym_gram(c, p)), w0_prym(c).evaluate(p));
  }
}

TEST(Volume, NonpositiveLengthIsRejected) {
  Graph g = load_graph("theta");
  EXPECT_THROW(jac_gram(g, point({{"a", "1"}, {"b", "0"}, {"c", "1"}})), std::invalid_argument);
}

TEST(Voronoi, HexagonExact) {
  EXPECT_EQ(voronoi_q_2d(M({{2, 1}, {1, 2}})), Rational(5, 18));
  EXPECT_EQ(voronoi_q_2d(M({{2, 5}, {5, 14}})), Rational(5, 18));
  EXPECT_EQ(voronoi_q_2d(M({{1, 0}, {0, 1}})), Rational(1, 6));
}

TEST(Voronoi, ClosestVectorBeatsNeighbours) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(-3, 3);
  Matrix g = M({{5, 2, 1}, {2, 4, 1}, {1, 1, 3}});
  VoronoiReducer r(g);
  for (int k = 0; k < 200; ++k) {
    std::vector<double> x = {u(rng), u(rng), u(rng)};
    std::vector<long> z = r.closest(x);
    std::vector<double> d(3);
    for (int i = 0; i < 3; ++i) d[i] = x[i] - z[i];
    double best = r.norm2(d);
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) {
          std::vector<double> y = {d[0] - a, d[1] - b, d[2] - c};
          EXPECT_LE(best, r.norm2(y) + 1e-9);
        }
    EXPECT_NEAR(r.reduced_norm2(x), best, 1e-9);
  }
}

TEST(MonteCarlo, Circle) {
  MomentEstimate m = mc_moment(M({{4}}), 200000, 1);
  EXPECT_NEAR(m.i0, 2.0, 1e-12);
  EXPECT_NEAR(m.i2, 2.0 / 3.0, 4 * m.std_error);
}

TEST(MonteCarlo, HexagonWithinFourStandardErrors) {
  Matrix g = M({{2, 1}, {1, 2}});
  MomentEstimate m = mc_moment(g, 400000, 7);
  double exact = std::sqrt(3.0) * 5.0 / 18.0;
  EXPECT_LE(std::fabs(m.i2 - exact), 4 * m.std_error);
}

TEST(MonteCarlo, SeedDeterminism) {
  Matrix g = M({{3, 1}, {1, 2}});
  MomentEstimate a = mc_moment(g, 10000, 42), b = mc_moment(g, 10000, 42);
  EXPECT_EQ(a.i2, b.i2);
}

TEST(MonteCarlo, RejectsBadInput) {
  EXPECT_THROW(mc_moment(M({{1, 2}, {2, 1}}), 100, 1), std::invalid_argument);
  Matrix big(5, std::vector<Rational>(5, 0));
  for (int i = 0; i < 5; ++i) big[i][i] = 1;
  EXPECT_THROW(mc_moment(big, 100, 1), std::invalid_argument);
}
