#ifndef BELTRAMI_RATIONAL_HPP
#define BELTRAMI_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace beltrami {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Exact square root of a non-negative rational, if it has one.
inline bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

/// Parses a decimal literal such as "0.25" or "-3" or a ratio "1/5" into an exact rational.
inline Rational parse_decimal(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q(Integer(text.substr(0, slash), 10), Integer(text.substr(slash + 1), 10));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  }
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  auto dot = s.find('.');
  std::string digits = s;
  long scale = 0;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    scale = static_cast<long>(s.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a number: '" + text + "'");
  Integer den = 1;
  for (long i = 0; i < scale; ++i) den *= 10;
  Rational q(Integer(digits, 10), den);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

/// Best rational approximation with bounded denominator (continued fractions).
inline Rational approximate_rational(double value, long max_den) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value");
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double xval = value;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(xval);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = xval - a;
    if (std::abs(frac) < 1e-12) break;
    xval = 1.0 / frac;
  }
  return make_rational(p1, q1);
}

}  // namespace beltrami

#endif  // BELTRAMI_RATIONAL_HPP
