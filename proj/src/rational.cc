#include "tprym/rational.h"

#include <stdexcept>

namespace tprym {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s = text;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) {
      throw std::invalid_argument("malformed rational: " + text);
    }
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    std::string den = "1" + std::string(frac.size(), '0');
    s = (neg ? "-" : "") + whole + frac + "/" + den;
  }
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
          c == '-' || c == '+')) {
      throw std::invalid_argument("malformed rational: " + text);
    }
  }
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational: " + text);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace tprym
