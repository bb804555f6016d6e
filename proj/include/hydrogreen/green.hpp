#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hydrogreen/parametrix.hpp"

namespace hydrogreen {

/// Vertical strip between two contour lines Re w = left and Re w = right.
struct Strip {
  Rat left, right;
  int orientation = +1;  // +1: counterclockwise around the strip
  Strip(Rat l, Rat r, int o = +1)
      : left(std::move(l)), right(std::move(r)), orientation(o) {
    if (!(left < right)) throw std::invalid_argument("Strip: need left < right");
  }
};

struct PoleOnContourError : std::runtime_error {
  explicit PoleOnContourError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Symbolic tag for a Mellin-functional value such as (M(w''-1) op(h0) v)(w0).
/// Cutoff functions never enter residue values, so they are carried as tags.
struct MellinMarker {
  enum class Source { GI, GII };
  // What sits between the Mellin transform and the argument function.
  enum class Prefix {
    plain,           // (M <cutoff> v)(point)
    op_h0,           // (M <cutoff> op(h0) v)(point)
    mul_rZ,          // (M <cutoff> rZ v)(point), Z absorbed
    mul_r2E,         // (M <cutoff> r^2 E v)(point), E absorbed
    op_h0_plus_Zr,   // merged rendering: op(h0 + Zr)
    mul_rZ_plus_r2E  // merged rendering: (rZ + r^2 E)
  };
  enum class Cutoff { omega2_v, omega2m1_v };
  // Scalar prefactor still outside the marker (raw Appendix-A form).
  enum class Prefactor { one, Z, E };

  Source source = Source::GI;
  Prefix prefix = Prefix::plain;
  Cutoff cutoff = Cutoff::omega2_v;
  Prefactor prefactor = Prefactor::one;
  int point = 0;
  int derivative_order = 0;

  auto key() const {
    return std::tuple(source, prefix, cutoff, prefactor, point,
                      derivative_order);
  }
  friend bool operator==(const MellinMarker& a, const MellinMarker& b) {
    return a.key() == b.key();
  }
  friend bool operator<(const MellinMarker& a, const MellinMarker& b) {
    return a.key() < b.key();
  }

  std::string str() const {
    std::string pre;
    switch (prefactor) {
      case Prefactor::one: break;
      case Prefactor::Z: pre = "Z*"; break;
      case Prefactor::E: pre = "E*"; break;
    }
    std::string cut = cutoff == Cutoff::omega2_v ? "w''" : "(w''-1)";
    std::string op;
    switch (prefix) {
      case Prefix::plain: break;
      case Prefix::op_h0: op = " op(h0)"; break;
      case Prefix::mul_rZ: op = " rZ"; break;
      case Prefix::mul_r2E: op = " r^2E"; break;
      case Prefix::op_h0_plus_Zr: op = " op(h0+Zr)"; break;
      case Prefix::mul_rZ_plus_r2E: op = " (rZ+r^2E)"; break;
    }
    std::string d = derivative_order > 0
                        ? "^(" + std::to_string(derivative_order) + ")"
                        : "";
    return pre + "(M " + cut + op + " v)" + d + "(" + std::to_string(point) +
           ")";
  }
};

/// One term of a Green-operator expansion: coeff * r^r_power * ln^log_power r
/// * P_channel * <marker functional>.
struct AsymptoticTerm {
  int channel = 0;
  int r_power = 0;
  int log_power = 0;
  ParamPoly coeff;
  MellinMarker marker;

  auto sort_key() const {
    return std::tuple(channel, r_power, marker.point, marker.prefix,
                      marker.cutoff, marker.prefactor, marker.source,
                      log_power, marker.derivative_order);
  }
};

struct GreenExpansion {
  std::vector<AsymptoticTerm> terms;
  int order = 0;           // max parametrix order N that contributed
  int channel_cutoff = 0;  // L
  WeightData weight;
  bool channel_cutoff_warning = false;  // channels > L would matter below r-order N
};

/// Poles of f strictly inside the strip. A pole on either boundary line means
/// the weight was chosen badly and raises PoleOnContourError.
inline std::vector<std::pair<Rat, int>> poles_in_strip(
    const FactoredRationalW& f, const Strip& s) {
  std::vector<std::pair<Rat, int>> out;
  for (const auto& [q, m] : f.poles()) {
    if (q == s.left || q == s.right)
      throw PoleOnContourError("pole at w = " + to_string(q) +
                               " lies on a contour line");
    if (s.left < q && q < s.right) out.emplace_back(q, m);
  }
  return out;
}

/// Residue terms of (1/2pi i) \oint r^{-w} f(w) (M..v)(w) dw over the strip
/// contour. A pole of multiplicity m yields log powers 0..m-1 through the
/// Laurent expansion of r^{-w} at the pole.
inline std::vector<AsymptoticTerm> contour_terms(const FactoredRationalW& f,
                                                 const Strip& s, int r_offset,
                                                 const MellinMarker& marker_base,
                                                 Channel ch) {
  std::vector<AsymptoticTerm> out;
  for (const auto& [q, m] : poles_in_strip(f, s)) {
    if (!is_integer(q))
      throw std::domain_error("contour_terms: non-integer pole at w = " +
                              to_string(q));
    long qi = to_long(q);
    auto pp = f.principal_part(q);
    Rat factorial = 1;
    for (const auto& [k, coeff] : pp) {
      // r^{-w} = r^{-q} sum_j (-ln r)^j (w-q)^j / j!
      if (k > 1) factorial *= (k - 1);
      if (coeff.is_zero()) continue;
      AsymptoticTerm t;
      t.channel = ch.l;
      t.r_power = static_cast<int>(r_offset - qi);
      t.log_power = k - 1;
      Rat sign = (k - 1) % 2 == 0 ? 1 : -1;
      t.coeff = coeff * (sign / factorial) * Rat(s.orientation);
      t.marker = marker_base;
      t.marker.point = static_cast<int>(qi);
      t.marker.derivative_order = k - 1;
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace detail {

inline Rat three_halves() { return rat(3, 2); }

inline void append(std::vector<AsymptoticTerm>& dst,
                   std::vector<AsymptoticTerm> src) {
  for (auto& t : src) dst.push_back(std::move(t));
}

inline ParamPoly prefactor_poly(MellinMarker::Prefactor p) {
  switch (p) {
    case MellinMarker::Prefactor::Z: return ParamPoly::Z();
    case MellinMarker::Prefactor::E: return ParamPoly::E();
    default: return ParamPoly(Rat(1));
  }
}

}  // namespace detail

/// G_I contributions for parametrix orders 0..N and channels 0..L.
/// Z family: symbol T^1 h^(-1)_i between the weight lines of gamma-1 and
/// gamma; E family: symbol h^(-1)_i between gamma-2 and gamma.
inline std::vector<AsymptoticTerm> gi_terms(const WeightData& weight, int order,
                                            int channel_cutoff) {
  const Rat g = weight.gamma;
  std::vector<AsymptoticTerm> out;
  for (int l = 0; l <= channel_cutoff; ++l) {
    Channel ch(l);
    for (int i = 0; i <= order; ++i) {
      FactoredRationalW hi = parametrix_coefficient(ch, i);
      MellinMarker base;
      base.source = MellinMarker::Source::GI;
      base.cutoff = MellinMarker::Cutoff::omega2_v;
      base.prefix = MellinMarker::Prefix::plain;

      base.prefactor = MellinMarker::Prefactor::Z;
      Strip sz(detail::three_halves() - g, detail::three_halves() - g + 1);
      auto tz = contour_terms(hi.shift(1), sz, i + 1, base, ch);
      for (auto& t : tz) t.coeff = t.coeff * ParamPoly::Z();
      detail::append(out, std::move(tz));

      base.prefactor = MellinMarker::Prefactor::E;
      Strip se(detail::three_halves() - g, detail::three_halves() - g + 2);
      auto te = contour_terms(hi, se, i + 2, base, ch);
      for (auto& t : te) t.coeff = t.coeff * ParamPoly::E();
      detail::append(out, std::move(te));
    }
  }
  return out;
}

/// Default auxiliary weight: wide enough that every pole of every shifted
/// parametrix coefficient for channels <= L sits right of Re w = 3/2 - gamma~.
inline Rat default_gamma_tilde(int order, int channel_cutoff) {
  return detail::three_halves() + channel_cutoff + order + 2;
}

/// G_II contributions: three families with symbols T^2 h^(-1)_i (acting after
/// op(h0)), T^1 h^(-1)_i (Z prefactor) and h^(-1)_i (E prefactor).
inline std::vector<AsymptoticTerm> gii_terms(const WeightData& weight,
                                             const Rat& gamma_tilde, int order,
                                             int channel_cutoff) {
  const Rat g = weight.gamma;
  if (gamma_tilde <= g)
    throw std::invalid_argument("gii_terms: gamma~ must exceed gamma");
  Strip strip(detail::three_halves() - gamma_tilde, detail::three_halves() - g);
  std::vector<AsymptoticTerm> out;
  for (int l = 0; l <= channel_cutoff; ++l) {
    Channel ch(l);
    for (int i = 0; i <= order; ++i) {
      FactoredRationalW hi = parametrix_coefficient(ch, i);
      // the condition on gamma~: every pole must lie inside [3/2-g~, 3/2-g]
      for (const auto& [q, m] : hi.shift(2).poles())
        if (q <= strip.left)
          throw std::invalid_argument(
              "gii_terms: gamma~ too small, pole escapes the strip");

      MellinMarker base;
      base.source = MellinMarker::Source::GII;
      base.cutoff = MellinMarker::Cutoff::omega2m1_v;

      base.prefix = MellinMarker::Prefix::op_h0;
      base.prefactor = MellinMarker::Prefactor::one;
      detail::append(out, contour_terms(hi.shift(2), strip, i, base, ch));

      base.prefix = MellinMarker::Prefix::plain;
      base.prefactor = MellinMarker::Prefactor::Z;
      auto tz = contour_terms(hi.shift(1), strip, i + 1, base, ch);
      for (auto& t : tz) t.coeff = t.coeff * ParamPoly::Z();
      detail::append(out, std::move(tz));

      base.prefactor = MellinMarker::Prefactor::E;
      auto te = contour_terms(hi, strip, i + 2, base, ch);
      for (auto& t : te) t.coeff = t.coeff * ParamPoly::E();
      detail::append(out, std::move(te));
    }
  }
  return out;
}

/// Rewrite a raw term into canonical-marker form: the Z or E prefactor and
/// the corresponding power of r are absorbed into the marker via the Mellin
/// shift identity (M r^k v)(w) = (M v)(w + k). The term's value is unchanged.
inline AsymptoticTerm canonicalize_marker(const AsymptoticTerm& t) {
  AsymptoticTerm c = t;
  switch (t.marker.prefactor) {
    case MellinMarker::Prefactor::one:
      break;
    case MellinMarker::Prefactor::Z:
      c.coeff = t.coeff.divide_by_Z();
      c.marker.prefix = MellinMarker::Prefix::mul_rZ;
      c.marker.point = t.marker.point - 1;
      c.marker.prefactor = MellinMarker::Prefactor::one;
      break;
    case MellinMarker::Prefactor::E:
      c.coeff = t.coeff.divide_by_E();
      c.marker.prefix = MellinMarker::Prefix::mul_r2E;
      c.marker.point = t.marker.point - 2;
      c.marker.prefactor = MellinMarker::Prefactor::one;
      break;
  }
  return c;
}

/// Exact ratio of two parameter polynomials (used for Q-functional entries,
/// which may carry negative powers of Z, e.g. -2/(3Z)).
struct ParamRatio {
  ParamPoly num, den{Rat(1)};
  bool operator==(const ParamRatio& o) const {
    return num * o.den == o.num * den;
  }
  std::string str() const {
    if (den.is_constant()) {
      Rat d = den.constant_value();
      return (num * (Rat(1) / d)).str();
    }
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

/// One entry of the grouped functional Q_l.
struct QEntry {
  MellinMarker marker;  // canonical
  ParamRatio value;
};

/// Per-channel grouped view: an attempted rank-1 factorization
///   (channel-l block) = series_l(r) * Q_l(markers).
struct ChannelGroup {
  int channel = 0;
  bool rank1_ok = false;
  int failing_r_order = -1;  // first r-order where the factorization breaks
  bool has_log_terms = false;
  // series[k] multiplies r^{l+k}; normalized so series[0] = Z^l (channel 0
  // leads with 1, channel 1 with Zr, matching the grouped expansion).
  std::vector<ParamPoly> series;
  std::vector<QEntry> q_functional;
};

struct AssembleResult {
  GreenExpansion raw;                      // the Appendix-A style ledger
  std::vector<AsymptoticTerm> canonical;   // merged canonical-marker terms
  std::vector<ChannelGroup> groups;
};

namespace detail {

/// Merge terms with identical (channel, r_power, log_power, marker), dropping
/// zero sums, and sort deterministically.
inline std::vector<AsymptoticTerm> merge_terms(
    std::vector<AsymptoticTerm> terms) {
  std::map<std::tuple<int, int, int, decltype(MellinMarker().key())>, AsymptoticTerm>
      acc;
  for (auto& t : terms) {
    auto key = std::tuple(t.channel, t.r_power, t.log_power, t.marker.key());
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, std::move(t));
    else it->second.coeff += t.coeff;
  }
  std::vector<AsymptoticTerm> out;
  for (auto& [k, t] : acc)
    if (!t.coeff.is_zero()) out.push_back(std::move(t));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.sort_key() < b.sort_key();
  });
  return out;
}

}  // namespace detail

/// Build the full expansion: raw ledger, canonical term table and per-channel
/// rank-1 grouping. The grouping follows the convention that channel l's
/// series leads with (Z r)^l-like normalization: series[0] = Z^l.
inline AssembleResult assemble(const WeightData& weight,
                               std::optional<Rat> gamma_tilde_opt, int order,
                               int channel_cutoff) {
  auto adm = check_admissibility(weight, rat(-1, 2));
  if (!adm.weight_not_half_integer || !adm.theorem_regime)
    throw std::invalid_argument("assemble: gamma must lie in (1/2,3/2) off Z+1/2");
  Rat gamma_tilde =
      gamma_tilde_opt ? *gamma_tilde_opt
                      : default_gamma_tilde(order, channel_cutoff);

  AssembleResult res;
  res.raw.order = order;
  res.raw.channel_cutoff = channel_cutoff;
  res.raw.weight = weight;
  res.raw.weight.gamma_tilde = gamma_tilde;
  res.raw.channel_cutoff_warning = channel_cutoff < order;
  res.raw.terms = detail::merge_terms(gi_terms(weight, order, channel_cutoff));
  {
    auto gii = gii_terms(weight, gamma_tilde, order, channel_cutoff);
    auto all = res.raw.terms;
    detail::append(all, std::move(gii));
    res.raw.terms = detail::merge_terms(std::move(all));
  }

  std::vector<AsymptoticTerm> canon;
  canon.reserve(res.raw.terms.size());
  for (const auto& t : res.raw.terms) canon.push_back(canonicalize_marker(t));
  res.canonical = detail::merge_terms(std::move(canon));

  // per-channel coefficient matrix over (r_power, marker)
  for (int l = 0; l <= channel_cutoff; ++l) {
    ChannelGroup grp;
    grp.channel = l;
    std::map<int, std::map<MellinMarker, ParamPoly>> rows;
    for (const auto& t : res.canonical) {
      if (t.channel != l) continue;
      if (t.log_power > 0) {
        grp.has_log_terms = true;
        continue;
      }
      rows[t.r_power][t.marker] += t.coeff;
    }
    if (rows.empty() || rows.begin()->first != l) {
      res.groups.push_back(std::move(grp));  // nothing to factor
      continue;
    }
    const auto& lead = rows.begin()->second;
    // reference column: the op(h0) marker at point -l, present from r^l on
    MellinMarker ref;
    ref.source = MellinMarker::Source::GII;
    ref.prefix = MellinMarker::Prefix::op_h0;
    ref.cutoff = MellinMarker::Cutoff::omega2m1_v;
    ref.prefactor = MellinMarker::Prefactor::one;
    ref.point = -l;
    auto ref_it = lead.find(ref);
    grp.rank1_ok = ref_it != lead.end() && !grp.has_log_terms;
    if (ref_it != lead.end()) {
      const ParamPoly& lead_ref = ref_it->second;  // = -2/(2l+1)
      // series[k] = Z^l * c[l+k][ref] / c[l][ref]
      Rat lead_val = lead_ref.constant_value();
      ParamPoly zl = ParamPoly::monomial(l, 0);
      for (const auto& [rp, cols] : rows) {
        // rows beyond r^{N+l} lack even the reference-column contribution of
        // parametrix order N+1 and are truncation-incomplete; drop them
        if (rp > order + l) break;
        auto it = cols.find(ref);
        ParamPoly c = it == cols.end() ? ParamPoly() : it->second;
        int k = rp - l;
        while (static_cast<int>(grp.series.size()) < k) grp.series.push_back({});
        grp.series.push_back(zl * c * (Rat(1) / lead_val));
        // columns at marker point p need parametrix order rp + p; above r^N
        // the point-0 columns are truncated, so only rows <= N are admissible
        // evidence for the rank-1 test
        if (rp > order) continue;
        // rank-1 test against the leading row
        for (const auto& [m, cv] : cols) {
          auto lm = lead.find(m);
          ParamPoly lv = lm == lead.end() ? ParamPoly() : lm->second;
          if (cv * lead_ref != c * lv) {
            if (grp.rank1_ok) grp.failing_r_order = rp;
            grp.rank1_ok = false;
          }
        }
        // markers missing from this row but present in the lead row are fine
        // (a zero entry there just requires c * lead-value == 0):
        for (const auto& [m, lv] : lead) {
          if (cols.count(m)) continue;
          if (!(c * lv).is_zero() && m != ref) {
            // c[rp][m] == 0 but series * q[m] != 0
            if (grp.rank1_ok) grp.failing_r_order = rp;
            grp.rank1_ok = false;
          }
        }
      }
      // Q_l entries: q[m] = c[l][m] / Z^l
      for (const auto& [m, cv] : lead) {
        QEntry e;
        e.marker = m;
        e.value = ParamRatio{cv, zl};
        grp.q_functional.push_back(std::move(e));
      }
    }
    res.groups.push_back(std::move(grp));
  }
  return res;
}

/// Substitute the bound-state energy E = -Z^2/(2 n^2) into every coefficient.
inline GreenExpansion specialize_energy(const GreenExpansion& g, int n) {
  if (n < 1) throw std::invalid_argument("specialize_energy: n must be >= 1");
  Rat c = rat(-1, 2 * static_cast<long>(n) * n);
  GreenExpansion out = g;
  std::vector<AsymptoticTerm> terms;
  for (auto t : g.terms) {
    t.coeff = t.coeff.substitute_energy(c);
    if (!t.coeff.is_zero()) terms.push_back(std::move(t));
  }
  out.terms = std::move(terms);
  return out;
}

/// Same substitution on a coefficient series.
inline std::vector<ParamPoly> specialize_energy(
    const std::vector<ParamPoly>& series, int n) {
  Rat c = rat(-1, 2 * static_cast<long>(n) * n);
  std::vector<ParamPoly> out;
  out.reserve(series.size());
  for (const auto& p : series) out.push_back(p.substitute_energy(c));
  return out;
}

}  // namespace hydrogreen
