#pragma once

#include <string>
#include <vector>

#include "hydrogreen/param_poly.hpp"

namespace hydrogreen {

/// Polynomial in the Mellin covariable w with ParamPoly coefficients.
/// coeffs_[k] multiplies w^k; the leading coefficient is nonzero unless the
/// polynomial is zero (empty list).
class PolyW {
 public:
  PolyW() = default;
  PolyW(const ParamPoly& c) {  // NOLINT(runtime/explicit)
    if (!c.is_zero()) coeffs_.push_back(c);
  }
  PolyW(const Rat& c) : PolyW(ParamPoly(c)) {}  // NOLINT(runtime/explicit)
  explicit PolyW(std::vector<ParamPoly> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static PolyW w() { return PolyW(std::vector<ParamPoly>{ParamPoly(), ParamPoly(Rat(1))}); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<ParamPoly>& coeffs() const { return coeffs_; }
  ParamPoly coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k]
                                                          : ParamPoly();
  }

  friend PolyW operator+(const PolyW& a, const PolyW& b) {
    std::vector<ParamPoly> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return PolyW(std::move(c));
  }
  friend PolyW operator-(const PolyW& a, const PolyW& b) {
    std::vector<ParamPoly> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return PolyW(std::move(c));
  }
  friend PolyW operator*(const PolyW& a, const PolyW& b) {
    if (a.is_zero() || b.is_zero()) return PolyW();
    std::vector<ParamPoly> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolyW(std::move(c));
  }
  friend PolyW operator*(const PolyW& a, const ParamPoly& s) {
    return a * PolyW(s);
  }
  friend bool operator==(const PolyW& a, const PolyW& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const PolyW& a, const PolyW& b) { return !(a == b); }

  /// Evaluate at a rational point.
  ParamPoly eval(const Rat& q) const {
    ParamPoly v;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      v = v * ParamPoly(q) + *it;
    return v;
  }

  /// p(w + n): exact recomposition.
  PolyW shift(const Rat& n) const {
    // Horner in (w + n): fold from the top coefficient down.
    PolyW r;
    PolyW wn = w() + PolyW(ParamPoly(n));
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      r = r * wn + PolyW(*it);
    return r;
  }

  /// Exact synthetic division by (w - q). Throws if the remainder is nonzero;
  /// a failure here means a normalization invariant was violated upstream.
  PolyW divide_by_linear(const Rat& q) const {
    if (is_zero()) return PolyW();
    std::vector<ParamPoly> quot(coeffs_.size() - 1);
    ParamPoly carry;  // running remainder
    for (int k = degree(); k >= 1; --k) {
      carry = carry * ParamPoly(q) + coeffs_[k];
      quot[k - 1] = carry;
    }
    ParamPoly rem = carry * ParamPoly(q) + coeffs_[0];
    if (!rem.is_zero())
      throw std::logic_error("PolyW: inexact division by linear factor");
    return PolyW(std::move(quot));
  }

  /// Long division by a monic divisor: returns (quotient, remainder).
  std::pair<PolyW, PolyW> divmod_monic(const PolyW& d) const {
    if (d.is_zero()) throw std::invalid_argument("PolyW: division by zero");
    PolyW rem = *this;
    std::vector<ParamPoly> quot;
    int dd = d.degree();
    if (rem.degree() >= dd) quot.resize(rem.degree() - dd + 1);
    while (!rem.is_zero() && rem.degree() >= dd) {
      int k = rem.degree() - dd;
      ParamPoly lead = rem.coeffs_.back();
      quot[k] = lead;
      std::vector<ParamPoly> sub(k + dd + 1);
      for (int j = 0; j <= dd; ++j) sub[k + j] = lead * d.coeff(j);
      rem = rem - PolyW(std::move(sub));
    }
    return {PolyW(std::move(quot)), rem};
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (coeffs_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string c = coeffs_[k].str();
      if (k == 0) {
        s += c;
      } else {
        if (c != "1") s += "(" + c + ")*";
        s += k == 1 ? "w" : "w^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
  std::vector<ParamPoly> coeffs_;
};

}  // namespace hydrogreen
