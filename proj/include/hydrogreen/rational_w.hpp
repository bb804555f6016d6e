#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hydrogreen/poly_w.hpp"

namespace hydrogreen {

/// Rational function of w kept in factored form: a PolyW numerator over a
/// multiset of linear factors (w - q). Denominators are never expanded; every
/// pole location stays explicit, which makes residue extraction exact.
///
/// Invariant: after normalize() the numerator vanishes at no denominator root.
class FactoredRationalW {
 public:
  using Den = std::map<Rat, int>;  // root -> multiplicity

  FactoredRationalW() = default;
  FactoredRationalW(const PolyW& num) : num_(num) {}  // NOLINT(runtime/explicit)
  FactoredRationalW(const ParamPoly& c) : num_(c) {}  // NOLINT(runtime/explicit)
  FactoredRationalW(const Rat& c) : num_(c) {}        // NOLINT(runtime/explicit)
  FactoredRationalW(PolyW num, Den den)
      : num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  static FactoredRationalW one_over(const Den& den, const ParamPoly& num = ParamPoly(Rat(1))) {
    return FactoredRationalW(PolyW(num), den);
  }

  const PolyW& num() const { return num_; }
  const Den& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  int den_degree() const {
    int d = 0;
    for (const auto& [q, m] : den_) d += m;
    return d;
  }

  /// Sorted pole inventory (root, multiplicity).
  std::vector<std::pair<Rat, int>> poles() const {
    return {den_.begin(), den_.end()};
  }

  friend FactoredRationalW operator+(const FactoredRationalW& a,
                                     const FactoredRationalW& b) {
    Den den;
    for (const auto& [q, m] : a.den_) den[q] = m;
    for (const auto& [q, m] : b.den_) {
      auto it = den.find(q);
      if (it == den.end() || it->second < m) den[q] = m;
    }
    PolyW num = a.num_ * cofactor(den, a.den_) + b.num_ * cofactor(den, b.den_);
    return FactoredRationalW(std::move(num), std::move(den));
  }
  friend FactoredRationalW operator-(const FactoredRationalW& a,
                                     const FactoredRationalW& b) {
    return a + (b * ParamPoly(Rat(-1)));
  }
  friend FactoredRationalW operator*(const FactoredRationalW& a,
                                     const FactoredRationalW& b) {
    Den den = a.den_;
    for (const auto& [q, m] : b.den_) den[q] += m;
    return FactoredRationalW(a.num_ * b.num_, std::move(den));
  }
  friend FactoredRationalW operator*(const FactoredRationalW& a,
                                     const ParamPoly& s) {
    return a * FactoredRationalW(s);
  }
  friend bool operator==(const FactoredRationalW& a,
                         const FactoredRationalW& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const FactoredRationalW& a,
                         const FactoredRationalW& b) {
    return !(a == b);
  }

  /// f(w + n): the shift operator T^n. Every root q moves to q - n.
  FactoredRationalW shift(const Rat& n) const {
    Den den;
    for (const auto& [q, m] : den_) den[q - n] = m;
    FactoredRationalW r;
    r.num_ = num_.shift(n);
    r.den_ = std::move(den);
    return r;  // shifting cannot create common factors
  }

  /// Exact value f(q). Throws std::domain_error at a pole.
  ParamPoly eval_at(const Rat& q) const {
    Rat d = 1;
    for (const auto& [root, m] : den_) {
      if (root == q) throw std::domain_error("FactoredRationalW: pole at evaluation point");
      Rat diff = q - root;
      for (int j = 0; j < m; ++j) d *= diff;
    }
    return num_.eval(q) * (Rat(1) / d);
  }

  /// Laurent principal part at q: coefficients of (w-q)^{-k} for
  /// k = 1..multiplicity(q). Empty if q is not a pole.
  std::vector<std::pair<int, ParamPoly>> principal_part(const Rat& q) const {
    auto it = den_.find(q);
    if (it == den_.end()) return {};
    int m = it->second;
    // g(t) := (w-q)^m f(w) at w = q+t, expanded to order t^{m-1}.
    // Coefficient of t^{m-k} is the (w-q)^{-k} Laurent coefficient.
    std::vector<ParamPoly> g = taylor_of_regular_factor(q, m);
    std::vector<std::pair<int, ParamPoly>> pp;
    for (int k = 1; k <= m; ++k) pp.emplace_back(k, g[m - k]);
    return pp;
  }

  /// Residue at a simple pole (shorthand used by the residue engine).
  ParamPoly residue(const Rat& q) const {
    auto pp = principal_part(q);
    if (pp.empty()) return ParamPoly();
    return pp.front().second;
  }

  /// Quotient of numerator by the expanded (monic) denominator: the
  /// polynomial part of f.
  PolyW polynomial_part() const {
    return num_.divmod_monic(expanded_den()).first;
  }

  PolyW expanded_den() const {
    PolyW d(Rat(1));
    for (const auto& [q, m] : den_)
      for (int j = 0; j < m; ++j) d = d * (PolyW::w() - PolyW(ParamPoly(q)));
    return d;
  }

  std::string str() const {
    if (num_.is_zero()) return "0";
    std::string n = num_.str();
    if (den_.empty()) return n;
    if (num_.degree() > 0 || n.find(' ') != std::string::npos) n = "(" + n + ")";
    std::string d;
    for (const auto& [q, m] : den_) {
      for (int j = 0; j < m; ++j) {
        if (q == 0) {
          d += "(w)";
        } else if (q > 0) {
          d += "(w-" + to_string(q) + ")";
        } else {
          d += "(w+" + to_string(-q) + ")";
        }
      }
    }
    return n + "/" + d;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      while (it->second > 0 && num_.eval(it->first).is_zero()) {
        num_ = num_.divide_by_linear(it->first);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  // Product of (w - q)^{target(q) - have(q)} over all roots.
  static PolyW cofactor(const Den& target, const Den& have) {
    PolyW p(Rat(1));
    for (const auto& [q, m] : target) {
      auto it = have.find(q);
      int deficit = m - (it == have.end() ? 0 : it->second);
      for (int j = 0; j < deficit; ++j)
        p = p * (PolyW::w() - PolyW(ParamPoly(q)));
    }
    return p;
  }

  // Taylor coefficients (orders 0..m-1) of N(q+t) / prod_{r != q} (q+t-r)^{m_r}.
  std::vector<ParamPoly> taylor_of_regular_factor(const Rat& q, int m) const {
    // numerator N(q+t) as a polynomial in t, truncated
    PolyW shifted = num_.shift(q);  // N(w+q), i.e. coefficients in t
    std::vector<ParamPoly> series(m);
    for (int k = 0; k < m; ++k) series[k] = shifted.coeff(k);
    // divide by each regular factor via geometric series:
    // 1/(c+t)^mu = c^{-mu} sum_i binom(mu-1+i, i) (-t/c)^i
    for (const auto& [root, mult] : den_) {
      if (root == q) continue;
      Rat c = q - root;
      for (int rep = 0; rep < mult; ++rep) {
        std::vector<Rat> inv(m);
        Rat acc = Rat(1) / c;
        for (int i = 0; i < m; ++i) {
          inv[i] = acc;
          acc *= -Rat(1) / c;
        }
        std::vector<ParamPoly> next(m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j + i < m; ++j)
            next[i + j] += series[j] * inv[i];
        series = std::move(next);
      }
    }
    return series;
  }

  PolyW num_;
  Den den_;
};

}  // namespace hydrogreen
