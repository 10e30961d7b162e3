#pragma once

#include <boost/container/small_vector.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tprym/linear_form.h"
#include "tprym/rational.h"

namespace tprym {

// Exponent multiset over formal variables, stored as sorted (var, exponent).
class Monomial {
 public:
  using Factors = boost::container::small_vector<std::pair<Var, unsigned>, 6>;

  Monomial() = default;
  static Monomial of(Var v, unsigned exponent = 1);

  const Factors& factors() const { return f_; }
  unsigned degree() const { return degree_; }
  unsigned exponent(Var v) const;
  bool is_one() const { return f_.empty(); }

  Monomial operator*(const Monomial& o) const;
  // Removes v entirely; returns its exponent through *removed.
  Monomial without(Var v, unsigned* removed) const;

  // Graded order on variable ids: internal canonical order.
  bool operator<(const Monomial& o) const {
    if (degree_ != o.degree_) return degree_ < o.degree_;
    return f_ < o.f_;
  }
  bool operator==(const Monomial& o) const { return f_ == o.f_; }
  bool operator!=(const Monomial& o) const { return !(f_ == o.f_); }

 private:
  Factors f_;
  unsigned degree_ = 0;
};

class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  static constexpr int kInhomogeneous = -1;
  static constexpr int kZero = -2;

  Polynomial() = default;
  Polynomial(const Rational& c);        // NOLINT
  Polynomial(const LinearForm& f);      // NOLINT
  static Polynomial variable(Var v) { return Polynomial(LinearForm::variable(v)); }
  static Polynomial variable(const std::string& name) {
    return variable(var(name));
  }
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  Rational coeff(const Monomial& m) const;
  std::vector<Var> variables() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial pow(unsigned n) const;

  // Exact composition. Throws std::invalid_argument("unmapped variable ...")
  // if a variable of the polynomial has no image.
  Polynomial substitute(const std::map<Var, LinearForm>& m) const;
  // Same, leaving unmapped variables in place.
  Polynomial substitute_partial(const std::map<Var, LinearForm>& m) const;
  Rational evaluate(const std::map<Var, Rational>& values) const;

  // Degree if homogeneous, kZero for the zero polynomial, else kInhomogeneous.
  int homogeneous_degree() const;
  bool homogeneous_of_degree(int d) const {
    int h = homogeneous_degree();
    return h == kZero || h == d;
  }
  unsigned total_degree() const;

  // Terms in graded lexicographic order over variable names, highest first:
  // "4*f^2*g - e + 1/2".
  std::string to_string() const;
  // Parses the output of to_string.
  static Polynomial parse(const std::string& text);

 private:
  friend class PolyAccumulator;
  static Polynomial from_sorted(std::vector<Term> terms);
  std::vector<Term> terms_;  // strictly increasing Monomial order, no zeros
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) {
  return p * s;
}

// Collects terms in arbitrary order and normalizes once at the end.
class PolyAccumulator {
 public:
  void add(const Monomial& m, const Rational& c);
  void add(const Polynomial& p, const Rational& scale = 1);
  // Adds scale * m * p.
  void add_product(const Monomial& m, const Polynomial& p,
                   const Rational& scale = 1);
  Polynomial finish();

 private:
  void compact();
  std::vector<Polynomial::Term> buf_;
  size_t compacted_ = 0;
};

// Product of linear forms.
Polynomial product(const std::vector<LinearForm>& forms);

}  // namespace tprym
