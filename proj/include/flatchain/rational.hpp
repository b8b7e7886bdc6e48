#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace flatchain {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

// Parses "p", "-p" or "p/q"; the result is in lowest terms.
Rational parse_rational(std::string_view text);

// Lowest-terms "p/q" (or "p" for integers); exact round trip with parse_rational.
std::string to_string(const Rational& q);

// True when `text` is exactly the canonical spelling of its value.
bool is_canonical_rational_string(std::string_view text);

Integer floor(const Rational& q);
Rational abs(const Rational& q);
int sign(const Rational& q);
double to_double(const Rational& q);

// Exact square root when q is the square of a rational.
bool is_perfect_square(const Rational& q, Rational* root = nullptr);

// Rational with denominator 2^bits approximating x (used for sampled shifts).
Rational dyadic(double x, unsigned bits);

Integer lcm(const Integer& a, const Integer& b);

}  // namespace flatchain
