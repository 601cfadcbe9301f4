#pragma once

#include <gmpxx.h>

#include <string>

namespace sqconf {

using Integer = mpz_class;
using Rational = mpq_class;

// num/den in lowest terms (the two-argument mpq_class constructor does not
// canonicalize).
Rational ratio(const Integer& num, const Integer& den);

// Accepts "3", "-3/8" and "0.375"; exponent notation is rejected (InputError).
Rational parse_rational(const std::string& text);

// Canonical "p/q" (or "p" for integers).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
double to_double(const Rational& q);

Rational abs(const Rational& q);
int sign(const Rational& q);

}  // namespace sqconf
