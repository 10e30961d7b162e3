#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tprym/linear_form.h"
#include "tprym/polynomial.h"

namespace tprym {

// Subcone of the closed positive orthant: every inequality means form >= 0.
// The orthant constraints are implicit.
struct Cone {
  std::vector<LinearForm> inequalities;

  Cone intersect(const Cone& o) const;
  Cone substitute(const std::map<Var, LinearForm>& m) const;
  bool contains(const std::map<Var, Rational>& point, bool strict) const;
  // Drops identically-zero and nonnegative-coefficient inequalities and
  // duplicates; keeps order otherwise.
  Cone simplified() const;
  // Sufficient test for an empty interior: some inequality (or positive
  // combination of two) has nonpositive coefficients and is nonzero, or two
  // inequalities are opposite.
  bool degenerate() const;
  std::vector<Var> variables() const;
  bool operator==(const Cone& o) const { return inequalities == o.inequalities; }
  std::string to_string() const;
};

// Image of the positive orthant under x_v = param[v](t), t >= 0, with
// nonnegative coefficients. Linear-form signs on it are read off exactly
// from coefficients after substitution.
struct OrthantImage {
  std::map<Var, LinearForm> param;
};

enum class Sign { kNonneg, kNonpos, kIndefinite };

std::string to_string(Sign s);

Sign sign_on_cone(const LinearForm& f, const OrthantImage& c);
// Inequality-described cone: nonneg when f has a certificate f = a*g + r with
// g an inequality, a >= 0 and r coefficientwise nonnegative. kIndefinite means
// no certificate was found.
Sign sign_on_cone(const LinearForm& f, const Cone& c);

struct Piece {
  Cone cone;
  Polynomial poly;
  bool operator==(const Piece& o) const {
    return cone == o.cone && poly == o.poly;
  }
};

class PiecewisePolynomial {
 public:
  PiecewisePolynomial() : pieces_{Piece{}} {}
  PiecewisePolynomial(const Polynomial& p) : pieces_{Piece{Cone{}, p}} {}  // NOLINT
  explicit PiecewisePolynomial(std::vector<Piece> pieces);

  const std::vector<Piece>& pieces() const { return pieces_; }
  size_t size() const { return pieces_.size(); }
  bool is_polynomial() const { return pieces_.size() == 1; }
  bool empty() const { return pieces_.empty(); }

  PiecewisePolynomial operator+(const PiecewisePolynomial& o) const;
  PiecewisePolynomial operator-(const PiecewisePolynomial& o) const;
  PiecewisePolynomial operator*(const PiecewisePolynomial& o) const;
  PiecewisePolynomial operator*(const Rational& s) const;
  PiecewisePolynomial& operator+=(const PiecewisePolynomial& o) {
    return *this = *this + o;
  }
  // Restricts every piece to the cone; drops pieces that become degenerate.
  // The result is empty when the cone has no interior; an empty function is
  // only meant to be passed to join.
  PiecewisePolynomial restricted(const Cone& c) const;
  // Piecewise union of alternatives on (expected) complementary cones.
  static PiecewisePolynomial join(const std::vector<PiecewisePolynomial>& parts);

  // Substitutes in cones and polynomials, drops degenerate pieces and removes
  // duplicates. Used for limits (variables -> 0) and for length maps.
  PiecewisePolynomial substitute(const std::map<Var, LinearForm>& m) const;

  // Index of the piece whose every inequality is nonneg on the cone.
  // Throws std::runtime_error("cone not branch-pure: ...") if some inequality
  // of every candidate is indefinite, or if no piece applies.
  size_t select(const OrthantImage& c) const;

  // Value at a point; any piece containing the point (closed) is used.
  Rational evaluate(const std::map<Var, Rational>& point) const;

  std::vector<Var> variables() const;
  std::string to_string() const;

 private:
  void prune(bool allow_empty = false);
  std::vector<Piece> pieces_;
};

// True iff pieces agree on every shared wall. A pair of pieces shares a wall
// when one carries an inequality opposite to one of the other and a sampled
// point on that hyperplane lies strictly inside both; the restrictions are
// then compared as polynomials after solving the wall equation for one
// variable.
bool wall_continuity(const PiecewisePolynomial& pp, std::uint64_t seed = 1);

// Compares two piecewise polynomials as functions: every pair of pieces
// sharing a sampled interior point must carry identical polynomials.
// Returns an empty string on success, else a diagnostic.
std::string compare_functions(const PiecewisePolynomial& a,
                              const PiecewisePolynomial& b,
                              int samples = 200, std::uint64_t seed = 7);

struct MomentExpression {
  PiecewisePolynomial numerator;
  Polynomial radicand;
  Rational scale;

  // scale * numerator / sqrt(radicand) at a point.
  double evaluate(const std::map<Var, Rational>& point) const;
  // Exact parts at a point: (scale * numerator, radicand).
  std::pair<Rational, Rational> evaluate_exact(
      const std::map<Var, Rational>& point) const;
};

}  // namespace tprym
