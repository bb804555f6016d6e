#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hydrogreen {

// Arbitrary-precision rational. gmp keeps the value reduced with a
// positive denominator, which is exactly the canonical form we need.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long to_long(const Rat& q) {
  if (!is_integer(q)) throw std::domain_error("to_long: not an integer");
  if (!q.get_num().fits_slong_p())
    throw std::overflow_error("to_long: out of range");
  return q.get_num().get_si();
}

inline std::string to_string(const Rat& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

/// Accepts "n", "n/d" and decimal notation "a.b" (exactly, no rounding).
inline Rat parse_rat(const std::string& s) {
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string frac = s.substr(dot + 1);
    if (digits.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    mpz_class num, den = 1;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rat q(num, den);
    q.canonicalize();
    return q;
  }
  Rat q;
  if (q.set_str(s, 10) != 0 || (s.find('/') != std::string::npos && q.get_den() == 0))
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace hydrogreen
