#pragma once

#include <cmath>
#include <functional>

namespace hydrogreen {

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_subdivisions = 2000;
  double truncation_radius = 60.0;  // upper cutoff for (0, inf) integrals
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

namespace detail {

// 15-point Gauss-Kronrod pair (nodes/weights on [-1,1]).
inline constexpr double gk_nodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
inline constexpr double gk_wk[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785,
    0.169004726639267, 0.140653259715525, 0.104790010322250,
    0.063092092629979, 0.022935322010529};
inline constexpr double gk_wg[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct GkEstimate {
  double value, error;
};

inline GkEstimate gk15(const std::function<double(double)>& f, double a,
                       double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double kron = gk_wk[0] * fc;
  double gauss = gk_wg[0] * fc;
  for (int j = 1; j < 8; ++j) {
    double x = h * gk_nodes[j];
    double fsum = f(c - x) + f(c + x);
    kron += gk_wk[j] * fsum;
    if (j % 2 == 0) gauss += gk_wg[j / 2] * fsum;
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

inline void adapt(const std::function<double(double)>& f, double a, double b,
                  double tol, int* budget, QuadratureResult* out) {
  GkEstimate e = gk15(f, a, b);
  if (e.error <= tol || *budget <= 0) {
    if (e.error > tol) out->converged = false;
    out->value += e.value;
    out->error_estimate += e.error;
    return;
  }
  --*budget;
  double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, budget, out);
  adapt(f, m, b, 0.5 * tol, budget, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration on [a, b].
inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  double a, double b,
                                  const QuadratureSpec& spec = {}) {
  QuadratureResult out;
  if (a >= b) return out;
  auto first = detail::gk15(f, a, b);
  double tol = std::max(spec.abs_tol,
                        spec.rel_tol * std::abs(first.value));
  int budget = spec.max_subdivisions;
  detail::adapt(f, a, b, tol, &budget, &out);
  return out;
}

}  // namespace hydrogreen
