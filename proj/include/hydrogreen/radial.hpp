#pragma once

#include <vector>

#include "hydrogreen/channel.hpp"

namespace hydrogreen {

/// Power-series solution of the radial equation on channel l:
/// u(r) = r^l sum_k c_k r^k with c_0 = 1 and exact symbolic coefficients.
/// This is the independent oracle the Green expansion is checked against.
struct RadialSeries {
  int l = 0;
  std::vector<ParamPoly> c;  // c[k] multiplies r^{l+k}
};

/// Regular solution at r = 0 (indicial root +l):
///   c_0 = 1,  c_k = -2 (Z c_{k-1} + E c_{k-2}) / (k (k + 2l + 1)).
inline RadialSeries frobenius_series(Channel ch, int order) {
  RadialSeries s;
  s.l = ch.l;
  s.c.resize(order + 1);
  s.c[0] = ParamPoly(Rat(1));
  for (long k = 1; k <= order; ++k) {
    ParamPoly t = ParamPoly::Z() * s.c[k - 1];
    if (k >= 2) t += ParamPoly::E() * s.c[k - 2];
    s.c[k] = t * rat(-2, k * (k + 2 * ch.l + 1));
  }
  return s;
}

/// Coefficients of the radial operator applied to the series (one power of
/// r^{-2} divided out): residual_k = k(k+2l+1)/2 c_k + Z c_{k-1} + E c_{k-2}.
/// All entries vanish iff the series formally solves the equation.
inline RadialSeries apply_radial_operator(const RadialSeries& s) {
  RadialSeries r;
  r.l = s.l;
  r.c.resize(s.c.size());
  for (long k = 0; k < static_cast<long>(s.c.size()); ++k) {
    ParamPoly t = s.c[k] * rat(k * (k + 2 * s.l + 1), 2);
    if (k >= 1) t += ParamPoly::Z() * s.c[k - 1];
    if (k >= 2) t += ParamPoly::E() * s.c[k - 2];
    r.c[k] = t;
  }
  return r;
}

inline bool is_zero_series(const RadialSeries& s) {
  for (const auto& c : s.c)
    if (!c.is_zero()) return false;
  return true;
}

/// Bound-state series: E = -Z^2/(2 n^2) substituted into the Frobenius
/// solution. Requires l <= n-1.
inline RadialSeries eigenstate_series(int n, Channel ch, int order) {
  if (n < 1 || ch.l >= n)
    throw std::invalid_argument("eigenstate_series: need 0 <= l <= n-1");
  RadialSeries s = frobenius_series(ch, order);
  Rat c = rat(-1, 2 * static_cast<long>(n) * n);
  for (auto& coeff : s.c) coeff = coeff.substitute_energy(c);
  return s;
}

}  // namespace hydrogreen
