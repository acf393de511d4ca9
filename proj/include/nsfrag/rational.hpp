#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nsfrag {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" or "p"; always canonical (lowest terms, positive denominator).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p", "-p", "p/q" and finite decimals such as "0.25" or "-1.5".
Rational parse_rational(std::string_view text);

Rational abs(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
int sign(const Rational& q);

// b^e for an integer exponent; negative exponents invert (b must be nonzero).
Rational pow(const Rational& b, long e);

}  // namespace nsfrag
