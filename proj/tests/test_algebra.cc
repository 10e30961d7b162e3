#include <gtest/gtest.h>

#include <random>

#include "helpers.h"
#include "tprym/cone.h"
#include "tprym/moments.h"
#include "tprym/polynomial.h"

using namespace tprym;
using namespace tprym::test;

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(Q("3"), Rational(3));
  EXPECT_EQ(Q("-3/2"), Rational(-3, 2));
  EXPECT_EQ(Q("0.25"), Rational(1, 4));
  EXPECT_EQ(Q("6/4"), Rational(3, 2));
  EXPECT_EQ(to_string(Q("6/4")), "3/2");
  EXPECT_THROW(Q("abc"), std::invalid_argument);
  EXPECT_THROW(Q("1/0"), std::invalid_argument);
}

TEST(LinearForm, ArithmeticAndParsing) {
  LinearForm f = L("x + 1/2*y - 2");
  EXPECT_EQ(f.coeff(var("x")), 1);
  EXPECT_EQ(f.coeff(var("y")), Rational(1, 2));
  EXPECT_EQ(f.constant(), -2);
  EXPECT_EQ(LinearForm::parse(f.to_string()), f);
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ((f * 2).coeff(var("y")), 1);
  LinearForm g = f.substitute({{var("y"), L("2*x")}});
  EXPECT_EQ(g, L("2*x - 2"));
  EXPECT_EQ(f.evaluate(point({{"x", "1"}, {"y", "4"}})), 1);
}

TEST(Polynomial, RingOperations) {
  Polynomial a = P("x + y"), b = P("x - y");
  EXPECT_EQ(a * b, P("x^2 - y^2"));
  EXPECT_EQ(a.pow(2), P("x^2 + 2*x*y + y^2"));
  EXPECT_EQ((a - a), Polynomial());
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.pow(3).homogeneous_degree(), 3);
  EXPECT_EQ((a + Polynomial(Rational(1))).homogeneous_degree(), Polynomial::kInhomogeneous);
  EXPECT_EQ(Polynomial().homogeneous_degree(), Polynomial::kZero);
}

TEST(Polynomial, StringRoundTrip) {
  for (const char* s : {"4*f^2*g - e + 1/2", "a^2*b + 3/7*c^3", "0", "-x"}) {
    Polynomial p = P(s);
    EXPECT_EQ(Polynomial::parse(p.to_string()), p) << s;
  }
  EXPECT_EQ(P("4*f^2*g - e + 1/2").to_string(), "4*f^2*g - e + 1/2");
}

TEST(Polynomial, SubstituteAndEvaluate) {
  Polynomial p = P("x^2*y + 3*y");
  Polynomial q = p.substitute({{var("x"), L("a + b")}, {var("y"), L("2")}});
  EXPECT_EQ(q, P("2*a^2 + 4*a*b + 2*b^2 + 6"));
  EXPECT_THROW(p.substitute({{var("x"), L("a")}}), std::invalid_argument);
  EXPECT_EQ(p.substitute_partial({{var("x"), L("0")}}), P("3*y"));
  EXPECT_EQ(p.evaluate(point({{"x", "1/2"}, {"y", "4"}})), 13);
}

TEST(Polynomial, SubstitutionIsAHomomorphism) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-3, 3);
  auto random_poly = [&] {
    Polynomial p;
    for (int i = 0; i < 4; ++i)
      p += Polynomial(Rational(c(rng))) * P("x").pow(c(rng) + 3) * P("y").pow(c(rng) + 3);
    return p;
  };
  std::map<Var, LinearForm> m = {{var("x"), L("u + 2*v")}, {var("y"), L("u - 1")}};
  for (int k = 0; k < 20; ++k) {
    Polynomial a = random_poly(), b = random_poly();
    EXPECT_EQ((a * b).substitute(m), a.substitute(m) * b.substitute(m));
    EXPECT_EQ((a + b).substitute(m), a.substitute(m) + b.substitute(m));
  }
}

TEST(Piecewise, SelectAndEvaluate) {
  PiecewisePolynomial pp = PiecewisePolynomial(
      {Piece{Cone{{L("x - y")}}, P("x")}, Piece{Cone{{L("y - x")}}, P("y")}});
  EXPECT_EQ(pp.evaluate(point({{"x", "3"}, {"y", "1"}})), 3);
  EXPECT_EQ(pp.evaluate(point({{"x", "1"}, {"y", "3"}})), 3);
  EXPECT_TRUE(wall_continuity(pp));
  OrthantImage c;
  c.param[var("x")] = L("s + t");
  c.param[var("y")] = L("t");
  EXPECT_EQ(pp.select(c), 0u);
  OrthantImage both;
  both.param[var("x")] = L("s");
  both.param[var("y")] = L("t");
  EXPECT_THROW(pp.select(both), std::runtime_error);
}

TEST(Piecewise, DiscontinuityIsDetected) {
  PiecewisePolynomial pp = PiecewisePolynomial(
      {Piece{Cone{{L("x - y")}}, P("x")}, Piece{Cone{{L("y - x")}}, P("2*y")}});
  EXPECT_FALSE(wall_continuity(pp));
}

TEST(Piecewise, MaxIsP2Shaped) {
  PiecewisePolynomial m = p2(L("e"), L("f"));
  EXPECT_TRUE(wall_continuity(m));
  for (int piece = 0; piece < static_cast<int>(m.size()); ++piece)
    EXPECT_EQ(m.pieces()[piece].poly.homogeneous_degree(), 3);
}

TEST(Piecewise, RestrictionToEmptyConeIsEmpty) {
  PiecewisePolynomial pp(P("x"));
  Cone c{{L("-x - y")}};
  EXPECT_TRUE(pp.restricted(c).empty());
  PiecewisePolynomial joined = PiecewisePolynomial::join(
      {pp.restricted(c), pp.restricted(Cone{{L("x - y")}}), pp.restricted(Cone{{L("y - x")}})});
  EXPECT_EQ(joined.evaluate(point({{"x", "2"}, {"y", "1"}})), 2);
}

TEST(Piecewise, SubstitutionToFace) {
  PiecewisePolynomial m = p2(L("e"), L("f"));
  PiecewisePolynomial lim = m.substitute({{var("e"), LinearForm()}});
  ASSERT_TRUE(lim.is_polynomial());
  EXPECT_EQ(lim.evaluate(point({{"f", "2"}})), m.evaluate(point({{"e", "0"}, {"f", "2"}})));
}

TEST(Moment, EvaluateExactParts) {
  MomentExpression m{PiecewisePolynomial(P("e^2")), P("e"), Rational(1, 12)};
  auto [num, rad] = m.evaluate_exact(point({{"e", "4"}}));
  EXPECT_EQ(num, Rational(4, 3));
  EXPECT_EQ(rad, 4);
  EXPECT_NEAR(m.evaluate(point({{"e", "4"}})), 4.0 / 6.0, 1e-12);
}
