#pragma once

#include <gmpxx.h>

#include <string>

namespace tprym {

using Rational = mpq_class;

// Parses "3", "-3/2" or "0.25". Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Nonnegative integer power.
Rational pow(const Rational& base, unsigned exponent);

}  // namespace tprym
