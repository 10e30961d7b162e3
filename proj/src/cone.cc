#include "tprym/cone.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace tprym {
namespace {

// f and g are opposite when f = -a*g for some a > 0.
bool opposite(const LinearForm& f, const LinearForm& g) {
  if (f.is_zero() || g.is_zero()) return false;
  if (f.terms().size() != g.terms().size()) return false;
  if (f.terms().empty()) return false;
  Rational a = -f.terms().front().second / g.terms().front().second;
  if (a <= 0) return false;
  return f + g * a == LinearForm();
}

bool positive_multiple(const LinearForm& f, const LinearForm& g) {
  return opposite(f, -g);
}

Rational random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 1000);
  std::uniform_int_distribution<int> scale(0, 2);
  Rational q(num(rng));
  int s = scale(rng);
  for (int i = 0; i < s; ++i) q /= 10;
  return q;
}

std::vector<Var> union_vars(const std::vector<std::vector<Var>>& lists) {
  std::set<Var> s;
  for (const auto& l : lists) s.insert(l.begin(), l.end());
  return {s.begin(), s.end()};
}

std::vector<Var> cone_vars(const Cone& c) { return c.variables(); }

}  // namespace

std::string to_string(Sign s) {
  switch (s) {
    case Sign::kNonneg:
      return "nonneg";
    case Sign::kNonpos:
      return "nonpos";
    case Sign::kIndefinite:
      return "indefinite";
  }
  return "?";
}

Cone Cone::intersect(const Cone& o) const {
  Cone r = *this;
  r.inequalities.insert(r.inequalities.end(), o.inequalities.begin(),
                        o.inequalities.end());
  return r;
}

Cone Cone::substitute(const std::map<Var, LinearForm>& m) const {
  Cone r;
  for (const auto& f : inequalities) r.inequalities.push_back(f.substitute(m));
  return r;
}

bool Cone::contains(const std::map<Var, Rational>& point, bool strict) const {
  for (const auto& f : inequalities) {
    Rational v = f.evaluate(point);
    if (strict ? v <= 0 : v < 0) return false;
  }
  return true;
}

Cone Cone::simplified() const {
  Cone r;
  for (const auto& f : inequalities) {
    if (f.nonneg_coefficients()) continue;
    bool dup = false;
    for (const auto& g : r.inequalities) {
      if (positive_multiple(f, g)) {
        dup = true;
        break;
      }
    }
    if (!dup) r.inequalities.push_back(f);
  }
  return r;
}

bool Cone::degenerate() const {
  for (const auto& f : inequalities) {
    if (f.nonpos_coefficients() && !f.is_zero()) return true;
  }
  for (size_t i = 0; i < inequalities.size(); ++i) {
    for (size_t j = i + 1; j < inequalities.size(); ++j) {
      const LinearForm& a = inequalities[i];
      const LinearForm& b = inequalities[j];
      if (opposite(a, b)) return true;
      std::vector<Rational> lambdas = {Rational(1)};
      for (const auto& [v, cb] : b.terms()) {
        Rational ca = a.coeff(v);
        if (ca != 0 && sgn(ca) != sgn(cb)) lambdas.push_back(-ca / cb);
      }
      for (const auto& l : lambdas) {
        LinearForm s = a + b * l;
        if (!s.is_zero() && s.nonpos_coefficients()) return true;
      }
    }
  }
  return false;
}

std::vector<Var> Cone::variables() const {
  std::set<Var> s;
  for (const auto& f : inequalities)
    for (const auto& t : f.terms()) s.insert(t.first);
  return {s.begin(), s.end()};
}

std::string Cone::to_string() const {
  if (inequalities.empty()) return "orthant";
  std::string out;
  for (const auto& f : inequalities) {
    if (!out.empty()) out += ", ";
    out += f.to_string() + " >= 0";
  }
  return out;
}

Sign sign_on_cone(const LinearForm& f, const OrthantImage& c) {
  LinearForm g = f.substitute(c.param);
  if (g.nonneg_coefficients()) return Sign::kNonneg;
  if (g.nonpos_coefficients()) return Sign::kNonpos;
  return Sign::kIndefinite;
}

Sign sign_on_cone(const LinearForm& f, const Cone& c) {
  // Looks for a >= 0 with h - a*g coefficientwise nonnegative.
  auto certified = [&c](const LinearForm& h) {
    if (h.nonneg_coefficients()) return true;
    for (const auto& g : c.inequalities) {
      Rational lo = 0;
      std::optional<Rational> hi;
      bool ok = true;
      std::set<Var> vars;
      for (const auto& t : h.terms()) vars.insert(t.first);
      for (const auto& t : g.terms()) vars.insert(t.first);
      for (Var w : vars) {
        Rational hw = h.coeff(w), gw = g.coeff(w);
        if (gw > 0) {
          Rational b = hw / gw;
          if (!hi || b < *hi) hi = b;
        } else if (gw < 0) {
          lo = std::max<Rational>(lo, hw / gw);
        } else if (hw < 0) {
          ok = false;
        }
      }
      Rational hc = h.constant(), gc = g.constant();
      if (gc > 0) {
        Rational b = hc / gc;
        if (!hi || b < *hi) hi = b;
      } else if (gc < 0) {
        lo = std::max<Rational>(lo, hc / gc);
      } else if (hc < 0) {
        ok = false;
      }
      if (ok && (!hi || lo <= *hi)) return true;
    }
    return false;
  };
  if (certified(f)) return Sign::kNonneg;
  if (certified(-f)) return Sign::kNonpos;
  return Sign::kIndefinite;
}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Piece> pieces)
    : pieces_(std::move(pieces)) {
  prune();
}

void PiecewisePolynomial::prune(bool allow_empty) {
  std::vector<Piece> kept;
  for (auto& p : pieces_) {
    Cone c = p.cone.simplified();
    if (c.degenerate()) continue;
    Piece q{c, p.poly};
    if (std::find(kept.begin(), kept.end(), q) == kept.end()) {
      kept.push_back(std::move(q));
    }
  }
  if (kept.empty() && !allow_empty) {
    throw std::logic_error("piecewise polynomial with no full-dimensional piece");
  }
  pieces_ = std::move(kept);
}

PiecewisePolynomial PiecewisePolynomial::operator+(
    const PiecewisePolynomial& o) const {
  std::vector<Piece> r;
  for (const auto& a : pieces_)
    for (const auto& b : o.pieces_)
      r.push_back({a.cone.intersect(b.cone), a.poly + b.poly});
  return PiecewisePolynomial(std::move(r));
}

PiecewisePolynomial PiecewisePolynomial::operator-(
    const PiecewisePolynomial& o) const {
  return *this + o * Rational(-1);
}

PiecewisePolynomial PiecewisePolynomial::operator*(
    const PiecewisePolynomial& o) const {
  std::vector<Piece> r;
  for (const auto& a : pieces_)
    for (const auto& b : o.pieces_)
      r.push_back({a.cone.intersect(b.cone), a.poly * b.poly});
  return PiecewisePolynomial(std::move(r));
}

PiecewisePolynomial PiecewisePolynomial::operator*(const Rational& s) const {
  PiecewisePolynomial r = *this;
  for (auto& p : r.pieces_) p.poly = p.poly * s;
  return r;
}

PiecewisePolynomial PiecewisePolynomial::restricted(const Cone& c) const {
  std::vector<Piece> r;
  for (const auto& p : pieces_) r.push_back({p.cone.intersect(c), p.poly});
  PiecewisePolynomial out;
  out.pieces_ = std::move(r);
  out.prune(true);
  return out;
}

PiecewisePolynomial PiecewisePolynomial::join(
    const std::vector<PiecewisePolynomial>& parts) {
  std::vector<Piece> r;
  for (const auto& part : parts)
    r.insert(r.end(), part.pieces_.begin(), part.pieces_.end());
  return PiecewisePolynomial(std::move(r));
}

PiecewisePolynomial PiecewisePolynomial::substitute(
    const std::map<Var, LinearForm>& m) const {
  std::vector<Piece> r;
  for (const auto& p : pieces_)
    r.push_back({p.cone.substitute(m), p.poly.substitute_partial(m)});
  return PiecewisePolynomial(std::move(r));
}

size_t PiecewisePolynomial::select(const OrthantImage& c) const {
  std::string indefinite;
  for (size_t i = 0; i < pieces_.size(); ++i) {
    bool ok = true;
    for (const auto& f : pieces_[i].cone.inequalities) {
      Sign s = sign_on_cone(f, c);
      if (s == Sign::kNonneg) continue;
      ok = false;
      if (s == Sign::kIndefinite && indefinite.empty()) {
        indefinite = f.to_string();
      }
      break;
    }
    if (ok) return i;
  }
  if (!indefinite.empty()) {
    throw std::runtime_error("cone not branch-pure: " + indefinite);
  }
  throw std::runtime_error("cone not branch-pure: no piece applies");
}

Rational PiecewisePolynomial::evaluate(
    const std::map<Var, Rational>& point) const {
  for (const auto& p : pieces_)
    if (p.cone.contains(point, false)) return p.poly.evaluate(point);
  throw std::runtime_error("point outside every piece");
}

std::vector<Var> PiecewisePolynomial::variables() const {
  std::vector<std::vector<Var>> lists;
  for (const auto& p : pieces_) {
    lists.push_back(p.poly.variables());
    lists.push_back(cone_vars(p.cone));
  }
  return union_vars(lists);
}

std::string PiecewisePolynomial::to_string() const {
  if (pieces_.size() == 1 && pieces_[0].cone.inequalities.empty()) {
    return pieces_[0].poly.to_string();
  }
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += "; ";
    out += "[" + p.cone.to_string() + "] " + p.poly.to_string();
  }
  return out;
}

bool wall_continuity(const PiecewisePolynomial& pp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& ps = pp.pieces();
  for (size_t i = 0; i < ps.size(); ++i) {
    for (size_t j = i + 1; j < ps.size(); ++j) {
      for (const auto& a : ps[i].cone.inequalities) {
        for (const auto& b : ps[j].cone.inequalities) {
          if (!opposite(a, b)) continue;
          std::vector<Var> vars =
              union_vars({ps[i].poly.variables(), ps[j].poly.variables(),
                          cone_vars(ps[i].cone), cone_vars(ps[j].cone)});
          Var solved = a.terms().back().first;
          Rational ca = a.terms().back().second;
          LinearForm rest = a - LinearForm::variable(solved, ca);
          LinearForm sol = rest * (Rational(-1) / ca);
          bool interior = false;
          for (int attempt = 0; attempt < 256 && !interior; ++attempt) {
            std::map<Var, Rational> pt;
            for (Var v : vars)
              if (v != solved) pt[v] = random_positive(rng);
            Rational sv = sol.evaluate(pt);
            if (sv <= 0) continue;
            pt[solved] = sv;
            interior = true;
            for (const Cone* c : {&ps[i].cone, &ps[j].cone}) {
              for (const auto& f : c->inequalities) {
                if (positive_multiple(f, a) || opposite(f, a)) continue;
                if (f.evaluate(pt) <= 0) {
                  interior = false;
                  break;
                }
              }
              if (!interior) break;
            }
          }
          if (!interior) continue;
          std::map<Var, LinearForm> m{{solved, sol}};
          if (ps[i].poly.substitute_partial(m) !=
              ps[j].poly.substitute_partial(m)) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

std::string compare_functions(const PiecewisePolynomial& a,
                              const PiecewisePolynomial& b, int samples,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Var> vars = union_vars({a.variables(), b.variables()});
  std::set<std::pair<size_t, size_t>> pairs;
  for (int s = 0; s < samples; ++s) {
    std::map<Var, Rational> pt;
    for (Var v : vars) pt[v] = random_positive(rng);
    std::optional<size_t> ia, ib;
    for (size_t i = 0; i < a.pieces().size() && !ia; ++i)
      if (a.pieces()[i].cone.contains(pt, true)) ia = i;
    for (size_t i = 0; i < b.pieces().size() && !ib; ++i)
      if (b.pieces()[i].cone.contains(pt, true)) ib = i;
    if (ia && ib) pairs.insert({*ia, *ib});
  }
  if (pairs.empty()) return "no common interior sample point";
  for (const auto& [i, j] : pairs) {
    if (a.pieces()[i].poly != b.pieces()[j].poly) {
      return "pieces differ on [" + a.pieces()[i].cone.to_string() + "] ∩ [" +
             b.pieces()[j].cone.to_string() + "]: " +
             a.pieces()[i].poly.to_string() + " vs " +
             b.pieces()[j].poly.to_string();
    }
  }
  return "";
}

double MomentExpression::evaluate(const std::map<Var, Rational>& point) const {
  auto [num, rad] = evaluate_exact(point);
  return num.get_d() / std::sqrt(rad.get_d());
}

std::pair<Rational, Rational> MomentExpression::evaluate_exact(
    const std::map<Var, Rational>& point) const {
  return {scale * numerator.evaluate(point), radicand.evaluate(point)};
}

}  // namespace tprym
