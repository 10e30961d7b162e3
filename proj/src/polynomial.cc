#include "tprym/polynomial.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tprym {

Monomial Monomial::of(Var v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.f_.emplace_back(v, exponent);
    m.degree_ = exponent;
  }
  return m;
}

unsigned Monomial::exponent(Var v) const {
  for (const auto& [x, e] : f_)
    if (x == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.degree_ = degree_ + o.degree_;
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
      r.f_.push_back(*a++);
    } else if (a == f_.end() || b->first < a->first) {
      r.f_.push_back(*b++);
    } else {
      r.f_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::without(Var v, unsigned* removed) const {
  Monomial r;
  *removed = 0;
  for (const auto& [x, e] : f_) {
    if (x == v) {
      *removed = e;
    } else {
      r.f_.emplace_back(x, e);
      r.degree_ += e;
    }
  }
  return r;
}

namespace {

void normalize(std::vector<Polynomial::Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  size_t out = 0;
  for (size_t i = 0; i < terms.size();) {
    size_t j = i + 1;
    Rational c = terms[i].second;
    while (j < terms.size() && terms[j].first == terms[i].first) {
      c += terms[j].second;
      ++j;
    }
    if (c != 0) {
      if (out != i) terms[out].first = std::move(terms[i].first);
      terms[out].second = c;
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

Polynomial Polynomial::from_sorted(std::vector<Term> terms) {
  Polynomial p;
  p.terms_ = std::move(terms);
  return p;
}

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial(), c);
}

Polynomial::Polynomial(const LinearForm& f) {
  if (f.constant() != 0) terms_.emplace_back(Monomial(), f.constant());
  for (const auto& [v, c] : f.terms()) terms_.emplace_back(Monomial::of(v), c);
  normalize(terms_);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), m,
      [](const Term& t, const Monomial& x) { return t.first < x; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

std::vector<Var> Polynomial::variables() const {
  std::vector<Var> vs;
  for (const auto& t : terms_)
    for (const auto& f : t.first.factors()) vs.push_back(f.first);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Term> r;
  r.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      r.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      r.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) r.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  return from_sorted(std::move(r));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + (-o);
}

Polynomial Polynomial::operator*(const Rational& s) const {
  if (s == 0) return Polynomial();
  Polynomial r = *this;
  for (auto& t : r.terms_) t.second *= s;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return Polynomial();
  std::vector<Term> r;
  r.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) r.emplace_back(a.first * b.first, a.second * b.second);
  normalize(r);
  return from_sorted(std::move(r));
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial r(1);
  for (unsigned i = 0; i < n; ++i) r *= *this;
  return r;
}

namespace {

Polynomial substitute_impl(const Polynomial& p,
                           const std::map<Var, LinearForm>& m, bool strict) {
  std::map<Var, std::vector<Polynomial>> powers;
  PolyAccumulator acc;
  for (const auto& [mono, c] : p.terms()) {
    Monomial kept;
    Polynomial image(1);
    for (const auto& [v, e] : mono.factors()) {
      auto it = m.find(v);
      if (it == m.end()) {
        if (strict) {
          throw std::invalid_argument("unmapped variable " + var_name(v));
        }
        kept = kept * Monomial::of(v, e);
        continue;
      }
      auto& pw = powers[v];
      if (pw.empty()) pw.emplace_back(1);
      while (pw.size() <= e) pw.push_back(pw.back() * Polynomial(it->second));
      image *= pw[e];
    }
    acc.add_product(kept, image, c);
  }
  return acc.finish();
}

}  // namespace

Polynomial Polynomial::substitute(const std::map<Var, LinearForm>& m) const {
  return substitute_impl(*this, m, true);
}

Polynomial Polynomial::substitute_partial(
    const std::map<Var, LinearForm>& m) const {
  return substitute_impl(*this, m, false);
}

Rational Polynomial::evaluate(const std::map<Var, Rational>& values) const {
  Rational r = 0;
  for (const auto& [mono, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : mono.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        throw std::invalid_argument("unassigned variable " + var_name(v));
      }
      t *= tprym::pow(it->second, e);
    }
    r += t;
  }
  return r;
}

int Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return kZero;
  unsigned d = terms_.front().first.degree();
  for (const auto& t : terms_)
    if (t.first.degree() != d) return kInhomogeneous;
  return static_cast<int>(d);
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree());
  return d;
}

namespace {

// Exponent vector in variable-name order, for printing.
std::vector<std::pair<Var, unsigned>> name_sorted(const Monomial& m) {
  std::vector<std::pair<Var, unsigned>> f(m.factors().begin(),
                                          m.factors().end());
  std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) {
    return var_name_less(a.first, b.first);
  });
  return f;
}

// True if a precedes b in descending graded-lex order over names.
bool print_before(const std::vector<std::pair<Var, unsigned>>& a, unsigned da,
                  const std::vector<std::pair<Var, unsigned>>& b,
                  unsigned db) {
  if (da != db) return da > db;
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].first != b[i].first) return var_name_less(a[i].first, b[i].first);
    if (a[i].second != b[i].second) return a[i].second > b[i].second;
  }
  return a.size() > b.size();
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  struct Row {
    std::vector<std::pair<Var, unsigned>> f;
    unsigned d;
    const Rational* c;
  };
  std::vector<Row> rows;
  rows.reserve(terms_.size());
  for (const auto& [m, c] : terms_) rows.push_back({name_sorted(m), m.degree(), &c});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return print_before(a.f, a.d, b.f, b.d);
  });
  std::string out;
  for (const Row& r : rows) {
    const Rational& c = *r.c;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    for (const auto& [v, e] : r.f) {
      if (!mono.empty()) mono += "*";
      mono += var_name(v);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

Polynomial Polynomial::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  PolyAccumulator acc;
  size_t i = 0;
  while (i < s.size()) {
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("malformed polynomial: " + text);
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw std::invalid_argument("malformed polynomial: " + text);
    Rational c = sign;
    Monomial m;
    size_t k = 0;
    while (k <= tok.size()) {
      size_t star = tok.find('*', k);
      if (star == std::string::npos) star = tok.size();
      std::string factor = tok.substr(k, star - k);
      if (factor.empty()) throw std::invalid_argument("malformed polynomial: " + text);
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        c *= parse_rational(factor);
      } else {
        unsigned e = 1;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
          e = static_cast<unsigned>(std::stoul(factor.substr(caret + 1)));
          factor = factor.substr(0, caret);
        }
        m = m * Monomial::of(var(factor), e);
      }
      k = star + 1;
    }
    acc.add(m, c);
    i = j;
  }
  return acc.finish();
}

void PolyAccumulator::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  buf_.emplace_back(m, c);
  if (buf_.size() > 2 * compacted_ + 4096) compact();
}

void PolyAccumulator::add(const Polynomial& p, const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [m, c] : p.terms()) buf_.emplace_back(m, c * scale);
  if (buf_.size() > 2 * compacted_ + 4096) compact();
}

void PolyAccumulator::add_product(const Monomial& m, const Polynomial& p,
                                  const Rational& scale) {
  if (scale == 0) return;
  for (const auto& [pm, c] : p.terms()) buf_.emplace_back(m * pm, c * scale);
  if (buf_.size() > 2 * compacted_ + 4096) compact();
}

void PolyAccumulator::compact() {
  normalize(buf_);
  compacted_ = buf_.size();
}

Polynomial PolyAccumulator::finish() {
  normalize(buf_);
  Polynomial p = Polynomial::from_sorted(std::move(buf_));
  buf_.clear();
  compacted_ = 0;
  return p;
}

Polynomial product(const std::vector<LinearForm>& forms) {
  Polynomial r(1);
  for (const auto& f : forms) r *= Polynomial(f);
  return r;
}

}  // namespace tprym
