#include "tprym/linear_form.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace tprym {
namespace {

struct Registry {
  std::mutex mu;
  std::unordered_map<std::string, Var> ids;
  std::deque<std::string> names;  // deque: references stay valid on growth
};

Registry& registry() {
  static Registry r;
  return r;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '.' || c == '\'' || c == '[' || c == ']' || c == ':')) {
      return false;
    }
  }
  return true;
}

}  // namespace

Var var(const std::string& name) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.ids.find(name);
  if (it != r.ids.end()) return it->second;
  if (!valid_identifier(name)) {
    throw std::invalid_argument("invalid variable name: " + name);
  }
  Var id = static_cast<Var>(r.names.size());
  r.names.push_back(name);
  r.ids.emplace(name, id);
  return id;
}

const std::string& var_name(Var v) {
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  if (v >= r.names.size()) throw std::out_of_range("unknown variable id");
  return r.names[v];
}

bool var_name_less(Var a, Var b) {
  if (a == b) return false;
  const std::string& x = var_name(a);
  const std::string& y = var_name(b);
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    bool dx = std::isdigit(static_cast<unsigned char>(x[i]));
    bool dy = std::isdigit(static_cast<unsigned char>(y[j]));
    if (dx && dy) {
      size_t i2 = i, j2 = j;
      while (i2 < x.size() && std::isdigit(static_cast<unsigned char>(x[i2])))
        ++i2;
      while (j2 < y.size() && std::isdigit(static_cast<unsigned char>(y[j2])))
        ++j2;
      std::string nx = x.substr(i, i2 - i), ny = y.substr(j, j2 - j);
      nx.erase(0, std::min(nx.find_first_not_of('0'), nx.size()));
      ny.erase(0, std::min(ny.find_first_not_of('0'), ny.size()));
      if (nx.size() != ny.size()) return nx.size() < ny.size();
      if (nx != ny) return nx < ny;
      i = i2;
      j = j2;
    } else {
      if (x[i] != y[j]) return x[i] < y[j];
      ++i;
      ++j;
    }
  }
  if (x.size() - i != y.size() - j) return x.size() - i < y.size() - j;
  return x < y;
}

LinearForm LinearForm::variable(Var v, const Rational& coeff) {
  LinearForm f;
  if (coeff != 0) f.terms_.emplace_back(v, coeff);
  return f;
}

Rational LinearForm::coeff(Var v) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), v,
      [](const std::pair<Var, Rational>& t, Var x) { return t.first < x; });
  if (it != terms_.end() && it->first == v) return it->second;
  return 0;
}

void LinearForm::add_term(Var v, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), v,
      [](const std::pair<Var, Rational>& t, Var x) { return t.first < x; });
  if (it != terms_.end() && it->first == v) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, {v, c});
  }
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  LinearForm r;
  r.constant_ = constant_ + o.constant_;
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (c != 0) r.terms_.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  return r;
}

LinearForm LinearForm::operator-() const {
  LinearForm r = *this;
  r.constant_ = -r.constant_;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

LinearForm LinearForm::operator-(const LinearForm& o) const {
  return *this + (-o);
}

LinearForm LinearForm::operator*(const Rational& s) const {
  if (s == 0) return LinearForm();
  LinearForm r = *this;
  r.constant_ *= s;
  for (auto& t : r.terms_) t.second *= s;
  return r;
}

bool LinearForm::operator<(const LinearForm& o) const {
  if (terms_.size() != o.terms_.size()) return terms_.size() < o.terms_.size();
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first != o.terms_[i].first)
      return terms_[i].first < o.terms_[i].first;
    if (terms_[i].second != o.terms_[i].second)
      return terms_[i].second < o.terms_[i].second;
  }
  return constant_ < o.constant_;
}

LinearForm LinearForm::substitute(const std::map<Var, LinearForm>& m) const {
  LinearForm r(constant_);
  for (const auto& [v, c] : terms_) {
    auto it = m.find(v);
    if (it == m.end()) {
      r.add_term(v, c);
    } else {
      r += it->second * c;
    }
  }
  return r;
}

Rational LinearForm::evaluate(const std::map<Var, Rational>& values) const {
  Rational r = constant_;
  for (const auto& [v, c] : terms_) {
    auto it = values.find(v);
    if (it == values.end()) {
      throw std::invalid_argument("unassigned variable " + var_name(v));
    }
    r += c * it->second;
  }
  return r;
}

bool LinearForm::nonneg_coefficients() const {
  if (constant_ < 0) return false;
  for (const auto& t : terms_)
    if (t.second < 0) return false;
  return true;
}

bool LinearForm::nonpos_coefficients() const {
  if (constant_ > 0) return false;
  for (const auto& t : terms_)
    if (t.second > 0) return false;
  return true;
}

std::string LinearForm::to_string() const {
  std::vector<std::pair<Var, Rational>> sorted = terms_;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return var_name_less(a.first, b.first);
  });
  std::string out;
  auto append = [&out](const Rational& c, const std::string& name) {
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (name.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += name;
    } else {
      out += mag.get_str() + "*" + name;
    }
  };
  for (const auto& [v, c] : sorted) append(c, var_name(v));
  if (constant_ != 0 || out.empty()) append(constant_, "");
  return out;
}

LinearForm LinearForm::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty linear form");
  LinearForm r;
  size_t i = 0;
  while (i < s.size()) {
    Rational sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("malformed linear form: " + text);
    }
    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string tok = s.substr(i, j - i);
    if (tok.empty()) throw std::invalid_argument("malformed linear form: " + text);
    auto star = tok.find('*');
    if (star != std::string::npos) {
      Rational c = parse_rational(tok.substr(0, star));
      r.add_term(var(tok.substr(star + 1)), sign * c);
    } else if (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.') {
      r.constant_ += sign * parse_rational(tok);
    } else {
      r.add_term(var(tok), sign);
    }
    i = j;
  }
  return r;
}

}  // namespace tprym
