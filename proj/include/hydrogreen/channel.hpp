#pragma once

#include <optional>
#include <utility>

#include "hydrogreen/rational_w.hpp"

namespace hydrogreen {

/// Angular momentum channel. On channel l the Laplace-Beltrami operator acts
/// as the scalar -l(l+1), so every operator family in sight becomes a scalar
/// rational function of w; the projection P_l is purely a symbolic index.
struct Channel {
  int l = 0;
  explicit Channel(int l_) : l(l_) {
    if (l < 0) throw std::invalid_argument("Channel: l must be >= 0");
  }
  friend bool operator==(Channel a, Channel b) { return a.l == b.l; }
};

/// Principal conormal symbol restricted to channel l:
///   h0(w) = (w^2 - w - l(l+1)) / 2, with roots -l and l+1.
inline PolyW conormal_symbol(Channel ch) {
  long l = ch.l;
  return PolyW(std::vector<ParamPoly>{
      ParamPoly(rat(-l * (l + 1), 2)), ParamPoly(rat(-1, 2)),
      ParamPoly(rat(1, 2))});
}

/// Channel-l summand of the spectral inverse: 2 / ((w+l)(w-l-1)).
inline FactoredRationalW sigma_inverse(Channel ch) {
  return FactoredRationalW::one_over({{Rat(-ch.l), 1}, {Rat(ch.l + 1), 1}},
                                     ParamPoly(Rat(2)));
}

/// The two integer points where the conormal symbol fails to be bijective
/// on channel l. Their union over all l is exactly the integer lattice.
inline std::pair<int, int> nonbijectivity_points(Channel ch) {
  return {-ch.l, ch.l + 1};
}

/// Principal part of the spectral inverse at the integer w0: the channel
/// that owns the pole and the scalar residue multiplying P_l.
/// (The 1/(2l+1) spherical-harmonic normalization is folded in.)
inline std::pair<Channel, Rat> principal_part_sigma_inverse(int w0) {
  int l = w0 <= 0 ? -w0 : w0 - 1;
  Rat coeff = rat(2, 2 * l + 1);
  return {Channel(l), w0 <= 0 ? -coeff : coeff};
}

/// Weight data for the Mellin calculus: the working weight gamma, an optional
/// auxiliary weight gamma~ > gamma, and a tag for the weight interval.
struct WeightData {
  Rat gamma;
  std::optional<Rat> gamma_tilde;
  std::string theta = "(-inf,0]";

  WeightData() = default;
  explicit WeightData(Rat g, std::optional<Rat> gt = std::nullopt)
      : gamma(std::move(g)), gamma_tilde(std::move(gt)) {
    if (gamma_tilde && *gamma_tilde <= gamma)
      throw std::invalid_argument("WeightData: gamma~ must exceed gamma");
  }
};

/// Ellipticity/admissibility flags for a weight-energy pair.
struct AdmissibilityReport {
  bool weight_not_half_integer = false;  // gamma not in Z + 1/2
  bool exit_condition = false;           // E < 0
  bool theorem_regime = false;           // 1/2 < gamma < 3/2
  bool all() const {
    return weight_not_half_integer && exit_condition && theorem_regime;
  }
};

inline AdmissibilityReport check_admissibility(const WeightData& w,
                                               const Rat& energy) {
  AdmissibilityReport r;
  r.weight_not_half_integer = !is_integer(w.gamma - rat(1, 2));
  r.exit_condition = energy < 0;
  r.theorem_regime = w.gamma > rat(1, 2) && w.gamma < rat(3, 2);
  return r;
}

}  // namespace hydrogreen
