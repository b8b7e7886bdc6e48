#include "flatchain/rational.hpp"

#include <cmath>

#include "flatchain/errors.hpp"

namespace flatchain {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Integer p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_canonical_rational_string(std::string_view text) {
  try {
    return to_string(parse_rational(text)) == text;
  } catch (const ParseError&) {
    return false;
  }
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return sgn(q); }

double to_double(const Rational& q) { return q.get_d(); }

bool is_perfect_square(const Rational& q, Rational* root) {
  if (q < 0) return false;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0) {
    return false;
  }
  if (root != nullptr) {
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    *root = Rational(a, b);
    root->canonicalize();
  }
  return true;
}

Rational dyadic(double x, unsigned bits) {
  const double scale = std::ldexp(1.0, static_cast<int>(bits));
  Integer num(static_cast<long>(std::floor(x * scale)));
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace flatchain
