#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace crn {

// Exact rational scalar. All arithmetic in this library is exact; no floating
// point anywhere.
using Rational = mpq_class;
using RatVec = std::vector<Rational>;

// mpq_class(num, den) does not reduce the fraction by itself.
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline bool is_zero_vec(const RatVec& v) {
  for (const Rational& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

// base^exp for a nonnegative integer exponent.
inline Rational rat_pow(const Rational& base, unsigned long exp) {
  if (exp == 0) return 1;
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exp);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace crn
