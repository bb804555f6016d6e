#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "hydrogreen/green.hpp"
#include "hydrogreen/quadrature.hpp"
#include "hydrogreen/radial.hpp"

namespace hydrogreen {

/// Polynomial smoothstep cutoff: identically 1 on [0, inner], identically 0
/// on [outer, inf), C^smoothness across the transition.
struct CutoffSpec {
  double inner = 1.0;
  double outer = 2.0;
  int smoothness = 4;

  CutoffSpec() = default;
  CutoffSpec(double in, double out, int s = 4)
      : inner(in), outer(out), smoothness(s) {
    if (!(0 < inner && inner < outer))
      throw std::invalid_argument("CutoffSpec: need 0 < inner < outer");
  }

  double value(double r) const { return eval(r, 0); }
  double d1(double r) const { return eval(r, 1); }
  double d2(double r) const { return eval(r, 2); }

 private:
  // generalized smoothstep S_N(t) = sum_k binom(N+k,k) binom(2N+1,N-k) (-t)^k t^{N+1}
  double eval(double r, int deriv) const {
    if (r <= inner || r >= outer) return deriv == 0 && r <= inner ? 1.0 : 0.0;
    double width = outer - inner;
    double t = (r - inner) / width;
    int n = smoothness;
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      double c = binom(n + k, k) * binom(2 * n + 1, n - k);
      if (k % 2 == 1) c = -c;
      int p = n + 1 + k;
      double term = c;
      for (int d = 0; d < deriv; ++d) term *= p - d;
      term *= std::pow(t, p - deriv);
      s += term;
    }
    double scale = std::pow(width, -deriv);
    return deriv == 0 ? 1.0 - s : -s * scale;
  }
  static double binom(int n, int k) {
    double v = 1;
    for (int j = 1; j <= k; ++j) v = v * (n - k + j) / j;
    return v;
  }
};

/// Radial function with evaluators for f, (-r d/dr) f and (-r d/dr)^2 f on
/// (0, inf). Built from ordinary derivatives; the Mellin-derivative forms are
/// what the Fuchs symbol needs.
struct RadialProfile {
  std::function<double(double)> f;
  std::function<double(double)> mf;   // (-r d/dr) f = -r f'
  std::function<double(double)> mmf;  // (-r d/dr)^2 f = r f' + r^2 f''

  static RadialProfile from_derivatives(std::function<double(double)> f0,
                                        std::function<double(double)> f1,
                                        std::function<double(double)> f2) {
    RadialProfile p;
    p.f = f0;
    p.mf = [f1](double r) { return -r * f1(r); };
    p.mmf = [f1, f2](double r) { return r * f1(r) + r * r * f2(r); };
    return p;
  }

  /// Max relative deviation between the supplied Mellin derivatives and
  /// central finite differences of f at the sample points.
  double finite_difference_check(const std::vector<double>& samples) const {
    double worst = 0.0;
    for (double r : samples) {
      double h = 1e-5 * std::max(1.0, r);
      double d1 = (f(r + h) - f(r - h)) / (2 * h);
      double d2 = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
      double ref = std::max({std::abs(mf(r)), std::abs(mmf(r)), 1e-12});
      worst = std::max(worst, std::abs(mf(r) + r * d1) / ref);
      worst = std::max(worst, std::abs(mmf(r) - (r * d1 + r * r * d2)) / ref);
    }
    return worst;
  }
};

struct MellinValue {
  std::complex<double> value;
  double error_estimate = 0.0;
  bool converged = true;
};

/// Weighted Mellin transform (M f)(w) = int_0^inf r^w f(r) dr/r, evaluated by
/// adaptive quadrature up to the truncation radius. The weight gamma only
/// selects the contour line; at a fixed evaluation point it does not enter
/// the value and is accepted for interface symmetry.
inline MellinValue weighted_mellin(const RadialProfile& f, double /*gamma*/,
                                   std::complex<double> w,
                                   const QuadratureSpec& spec = {},
                                   double lower = 0.0, double upper = -1.0) {
  if (upper < 0) upper = spec.truncation_radius;
  MellinValue out;
  auto re = integrate(
      [&](double r) {
        double mag = std::pow(r, w.real() - 1);
        return mag * std::cos(w.imag() * std::log(r)) * f.f(r);
      },
      lower, upper, spec);
  out.value.real(re.value);
  out.error_estimate = re.error_estimate;
  out.converged = re.converged;
  if (w.imag() != 0.0) {
    auto im = integrate(
        [&](double r) {
          double mag = std::pow(r, w.real() - 1);
          return mag * std::sin(w.imag() * std::log(r)) * f.f(r);
        },
        lower, upper, spec);
    out.value.imag(im.value);
    out.error_estimate += im.error_estimate;
    out.converged = out.converged && im.converged;
  }
  return out;
}

/// Pointwise action of the w-polynomial symbol part on channel l:
///   (h0 f)(r) = ((-r d/dr)^2 - (-r d/dr) - l(l+1)) f / 2.
/// Only the value evaluator of the result is defined.
inline RadialProfile apply_h0(const RadialProfile& f, Channel ch) {
  double ll = static_cast<double>(ch.l) * (ch.l + 1);
  RadialProfile out;
  out.f = [f, ll](double r) {
    return 0.5 * (f.mmf(r) - f.mf(r) - ll * f.f(r));
  };
  return out;
}

/// Cutoff triple (omega', omega'', omega~) for the Q functionals. omega'
/// multiplies the output side only and never enters the numeric values;
/// omega~ must be identically 1 on the support of omega''.
struct CutoffTriple {
  CutoffSpec omega_prime;
  CutoffSpec omega2;
  CutoffSpec omega_tilde;

  CutoffTriple() : omega_prime(1, 2), omega2(1, 2), omega_tilde(2, 4) {}
  CutoffTriple(CutoffSpec op, CutoffSpec o2, CutoffSpec ot)
      : omega_prime(op), omega2(o2), omega_tilde(ot) {
    if (omega_tilde.inner < omega2.outer)
      throw std::invalid_argument(
          "CutoffTriple: omega~ must be 1 on supp omega''");
  }
};

struct FunctionalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

// h0 applied on channel l to (cutoff * u), in plain-derivative form.
inline std::function<double(double)> h0_of_cut_profile(
    const RadialProfile& u, const CutoffSpec& cut, Channel ch) {
  double ll = static_cast<double>(ch.l) * (ch.l + 1);
  return [u, cut, ll](double r) {
    double f = u.f(r);
    double f1 = -u.mf(r) / r;                       // f'
    double f2 = (u.mmf(r) + u.mf(r)) / (r * r);     // f''
    double c = cut.value(r), c1 = cut.d1(r), c2 = cut.d2(r);
    double g = c * f;
    double g1 = c1 * f + c * f1;
    double g2 = c2 * f + 2 * c1 * f1 + c * f2;
    return 0.5 * (r * r * g2 + 2 * r * g1 - ll * g);
  };
}

inline FunctionalResult merge(const QuadratureResult& a,
                              const QuadratureResult& b, double fa, double fb) {
  FunctionalResult r;
  r.value = fa * a.value + fb * b.value;
  r.error_estimate = std::abs(fa) * a.error_estimate +
                     std::abs(fb) * b.error_estimate;
  r.converged = a.converged && b.converged;
  return r;
}

}  // namespace detail

/// Q_0(u) = -2 [ (M (w''-1) op(h0)(w~ u))(0) + (M w''(rZ + r^2 E) u)(0) ].
inline FunctionalResult q0_value(const RadialProfile& u, double Z, double E,
                                 const CutoffTriple& cut,
                                 const QuadratureSpec& spec = {}) {
  auto h0g = detail::h0_of_cut_profile(u, cut.omega_tilde, Channel(0));
  auto a = integrate(
      [&](double r) { return (cut.omega2.value(r) - 1.0) * h0g(r) / r; },
      cut.omega2.inner, cut.omega_tilde.outer, spec);
  auto b = integrate(
      [&](double r) { return cut.omega2.value(r) * (Z + r * E) * u.f(r); },
      0.0, cut.omega2.outer, spec);
  return detail::merge(a, b, -2.0, -2.0);
}

/// Q_1(u) per the two-bracket formula: evaluation points -1 and 0 with the
/// h0 + Zr symbol on channel 1 in the first bracket.
inline FunctionalResult q1_value(const RadialProfile& u, double Z, double E,
                                 const CutoffTriple& cut,
                                 const QuadratureSpec& spec = {}) {
  auto h0g = detail::h0_of_cut_profile(u, cut.omega_tilde, Channel(1));
  const CutoffSpec& o2 = cut.omega2;
  const CutoffSpec& ot = cut.omega_tilde;
  auto a1 = integrate(
      [&](double r) {
        double bracket = h0g(r) + Z * r * ot.value(r) * u.f(r);
        return (o2.value(r) - 1.0) * bracket / (r * r);
      },
      o2.inner, ot.outer, spec);
  auto b1 = integrate(
      [&](double r) { return o2.value(r) * E * u.f(r); }, 0.0, o2.outer, spec);
  auto a0 = integrate(
      [&](double r) { return (o2.value(r) - 1.0) * h0g(r) / r; }, o2.inner,
      ot.outer, spec);
  auto b0 = integrate(
      [&](double r) { return o2.value(r) * (Z + r * E) * u.f(r); }, 0.0,
      o2.outer, spec);
  auto first = detail::merge(a1, b1, -2.0 / (3.0 * Z), -2.0 / (3.0 * Z));
  auto second = detail::merge(a0, b0, -2.0 / 3.0, -2.0 / 3.0);
  FunctionalResult r;
  r.value = first.value + second.value;
  r.error_estimate = first.error_estimate + second.error_estimate;
  r.converged = first.converged && second.converged;
  return r;
}

/// Closed-form bound-state radial profile: r^l p(r) exp(-Z r / n) with the
/// polynomial part recovered from the terminating Frobenius series.
inline RadialProfile eigenstate_profile(int n, Channel ch, double Z) {
  RadialSeries s = eigenstate_series(n, ch, n - ch.l + 2);
  // divide the series by exp(-Zr/n): p_k = c_k - sum_{j<k} p_j e_{k-j}
  int deg = n - ch.l - 1;
  std::vector<Rat> zpow_free(deg + 1);  // p_k / Z^k, exact
  std::vector<Rat> e(deg + 1);          // e_k / Z^k = (-1/n)^k / k!
  Rat en = 1;
  for (int k = 0; k <= deg; ++k) {
    e[k] = en;
    en *= rat(-1, n) / (k + 1);
  }
  for (int k = 0; k <= deg; ++k) {
    // c_k is a multiple of Z^k after the energy substitution
    Rat ck = 0;
    for (const auto& [key, v] : s.c[k].terms()) ck += v;  // coefficient of Z^k
    Rat pk = ck;
    for (int j = 0; j < k; ++j) pk -= zpow_free[j] * e[k - j];
    zpow_free[k] = pk;
  }
  std::vector<double> p(deg + 1);
  for (int k = 0; k <= deg; ++k)
    p[k] = zpow_free[k].get_d() * std::pow(Z, k);

  int l = ch.l;
  double zn = Z / n;
  auto poly = [p](double r, int deriv) {
    double v = 0;
    for (int k = deriv; k < static_cast<int>(p.size()); ++k) {
      double term = p[k];
      for (int d = 0; d < deriv; ++d) term *= k - d;
      v += term * std::pow(r, k - deriv);
    }
    return v;
  };
  auto f0 = [l, zn, poly](double r) {
    return std::pow(r, l) * poly(r, 0) * std::exp(-zn * r);
  };
  auto f1 = [l, zn, poly](double r) {
    double rp = std::pow(r, l);
    double d = (l > 0 ? l * std::pow(r, l - 1) : 0.0) * poly(r, 0) +
               rp * poly(r, 1) - zn * rp * poly(r, 0);
    return d * std::exp(-zn * r);
  };
  auto f2 = [l, zn, poly](double r) {
    double rp = std::pow(r, l);
    double rl1 = l > 0 ? l * std::pow(r, l - 1) : 0.0;
    double rl2 = l > 1 ? l * (l - 1) * std::pow(r, l - 2) : 0.0;
    double g = rl2 * poly(r, 0) + 2 * rl1 * poly(r, 1) + rp * poly(r, 2);
    double h = rl1 * poly(r, 0) + rp * poly(r, 1);
    return (g - 2 * zn * h + zn * zn * rp * poly(r, 0)) * std::exp(-zn * r);
  };
  return RadialProfile::from_derivatives(f0, f1, f2);
}

struct EndToEndResult {
  double max_relative_deviation = 0.0;
  double q_value = 0.0;
  bool converged = true;
};

/// Close the loop u = -G u: evaluate -series_l(r) Q_l(u) with the exact
/// series and the numeric functional against the analytic eigenfunction.
inline EndToEndResult end_to_end_check(int n, Channel ch, double Z,
                                       const std::vector<double>& r_samples,
                                       const QuadratureSpec& spec = {},
                                       int series_order = 2,
                                       const CutoffTriple& cut = {}) {
  if (ch.l > 1)
    throw std::invalid_argument("end_to_end_check: only l = 0, 1 supported");
  double E = -0.5 * Z * Z / (n * n);
  RadialProfile u = eigenstate_profile(n, ch, Z);
  FunctionalResult q = ch.l == 0 ? q0_value(u, Z, E, cut, spec)
                                 : q1_value(u, Z, E, cut, spec);

  int full_order = ch.l + series_order;
  auto res = assemble(WeightData(rat(1)), std::nullopt, full_order, full_order);
  auto series = specialize_energy(res.groups.at(ch.l).series, n);

  EndToEndResult out;
  out.q_value = q.value;
  out.converged = q.converged;
  for (double r : r_samples) {
    double s = 0.0;
    for (int k = 0; k <= series_order && k < static_cast<int>(series.size());
         ++k)
      s += series[k].eval(Z, E) * std::pow(r, ch.l + k);
    double model = -s * q.value;
    double exact = u.f(r);
    double dev = exact == 0.0 ? std::abs(model)
                              : std::abs(model - exact) / std::abs(exact);
    out.max_relative_deviation = std::max(out.max_relative_deviation, dev);
  }
  return out;
}

}  // namespace hydrogreen
