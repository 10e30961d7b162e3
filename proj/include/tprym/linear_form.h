#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tprym/rational.h"

namespace tprym {

using Var = std::uint32_t;

// Process-wide append-only registry of formal variables. Thread-safe.
Var var(const std::string& name);
const std::string& var_name(Var v);
// Orders variables by name, comparing embedded digit runs numerically
// ("t2" < "t10"). Used wherever output must not depend on registration order.
bool var_name_less(Var a, Var b);

// Affine form sum_v c_v * v + constant. No zero coefficients are stored.
class LinearForm {
 public:
  LinearForm() = default;
  LinearForm(const Rational& constant) : constant_(constant) {}  // NOLINT
  static LinearForm variable(Var v, const Rational& coeff = 1);
  static LinearForm variable(const std::string& name) {
    return variable(var(name));
  }

  const std::vector<std::pair<Var, Rational>>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(Var v) const;
  bool is_constant() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty() && constant_ == 0; }

  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator-(const LinearForm& o) const;
  LinearForm operator-() const;
  LinearForm operator*(const Rational& s) const;
  LinearForm& operator+=(const LinearForm& o) { return *this = *this + o; }
  LinearForm& operator-=(const LinearForm& o) { return *this = *this - o; }
  bool operator==(const LinearForm& o) const {
    return constant_ == o.constant_ && terms_ == o.terms_;
  }
  bool operator!=(const LinearForm& o) const { return !(*this == o); }
  bool operator<(const LinearForm& o) const;

  // Replaces variables by forms; unmapped variables stay.
  LinearForm substitute(const std::map<Var, LinearForm>& m) const;
  Rational evaluate(const std::map<Var, Rational>& values) const;

  // All coefficients and the constant are >= 0 (resp. <= 0).
  bool nonneg_coefficients() const;
  bool nonpos_coefficients() const;

  // "3/2", "x1", "t1 + 1/2*t3 - 2".
  std::string to_string() const;
  // Accepts the output of to_string plus plain identifiers and rationals.
  static LinearForm parse(const std::string& text);

 private:
  void add_term(Var v, const Rational& c);
  std::vector<std::pair<Var, Rational>> terms_;  // sorted by Var
  Rational constant_ = 0;
};

inline LinearForm operator*(const Rational& s, const LinearForm& f) {
  return f * s;
}

}  // namespace tprym
