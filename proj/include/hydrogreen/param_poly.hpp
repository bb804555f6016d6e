#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hydrogreen/rational.hpp"

namespace hydrogreen {

/// Polynomial in the physical parameters Z (nuclear charge) and E (energy)
/// with exact rational coefficients. Zero coefficients are never stored.
class ParamPoly {
 public:
  // key = (degree in Z, degree in E)
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, Rat>;

  ParamPoly() = default;
  ParamPoly(const Rat& c) { set({0, 0}, c); }  // NOLINT(runtime/explicit)
  ParamPoly(long c) : ParamPoly(Rat(c)) {}     // NOLINT(runtime/explicit)

  static ParamPoly monomial(int zdeg, int edeg, const Rat& c = 1) {
    ParamPoly p;
    p.set({zdeg, edeg}, c);
    return p;
  }
  static ParamPoly Z() { return monomial(1, 0); }
  static ParamPoly E() { return monomial(0, 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Key{0, 0});
  }
  Rat constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("ParamPoly: not constant");
    return terms_.begin()->second;
  }
  const Terms& terms() const { return terms_; }

  ParamPoly& operator+=(const ParamPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  ParamPoly& operator-=(const ParamPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }
  friend ParamPoly operator-(const ParamPoly& a) {
    ParamPoly r;
    for (const auto& [k, c] : a.terms_) r.set(k, -c);
    return r;
  }
  friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }
  friend ParamPoly operator*(const ParamPoly& a, const Rat& s) {
    ParamPoly r;
    if (s != 0)
      for (const auto& [k, c] : a.terms_) r.set(k, c * s);
    return r;
  }
  friend ParamPoly operator*(const Rat& s, const ParamPoly& a) { return a * s; }

  friend bool operator==(const ParamPoly& a, const ParamPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ParamPoly& a, const ParamPoly& b) {
    return !(a == b);
  }
  friend bool operator<(const ParamPoly& a, const ParamPoly& b) {
    return a.terms_ < b.terms_;
  }

  /// Substitute E := c * Z^2 (used with c = -1/(2 n^2) for bound states).
  ParamPoly substitute_energy(const Rat& c) const {
    ParamPoly r;
    for (const auto& [k, coeff] : terms_) {
      Rat factor = 1;
      for (int j = 0; j < k.second; ++j) factor *= c;
      r.add_term({k.first + 2 * k.second, 0}, coeff * factor);
    }
    return r;
  }

  /// Exact division by Z (every monomial must carry a factor of Z).
  ParamPoly divide_by_Z() const {
    ParamPoly r;
    for (const auto& [k, c] : terms_) {
      if (k.first < 1) throw std::domain_error("ParamPoly: not divisible by Z");
      r.set({k.first - 1, k.second}, c);
    }
    return r;
  }
  /// Exact division by E.
  ParamPoly divide_by_E() const {
    ParamPoly r;
    for (const auto& [k, c] : terms_) {
      if (k.second < 1) throw std::domain_error("ParamPoly: not divisible by E");
      r.set({k.first, k.second - 1}, c);
    }
    return r;
  }

  double eval(double z, double e) const {
    double v = 0;
    for (const auto& [k, c] : terms_) {
      double m = c.get_d();
      for (int j = 0; j < k.first; ++j) m *= z;
      for (int j = 0; j < k.second; ++j) m *= e;
      v += m;
    }
    return v;
  }

  ParamPoly eval_at(const Rat& z, const Rat& e) const {
    Rat v = 0;
    for (const auto& [k, c] : terms_) {
      Rat m = c;
      for (int j = 0; j < k.first; ++j) m *= z;
      for (int j = 0; j < k.second; ++j) m *= e;
      v += m;
    }
    return ParamPoly(v);
  }

  /// Rational content: gcd of coefficient numerators over lcm of denominators,
  /// signed like the lexicographically-leading term. Zero polynomial -> 0.
  Rat content() const {
    if (terms_.empty()) return 0;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [k, c] : terms_) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat c(num_gcd, den_lcm);
    c.canonicalize();
    if (terms_.rbegin()->second < 0) c = -c;
    return c;
  }

  /// Render in the factored style "(1/3)(Z^2 - E)" when a nontrivial content
  /// can be pulled out.
  std::string str() const {
    if (terms_.empty()) return "0";
    Rat c = content();
    ParamPoly prim;
    for (const auto& [k, coeff] : terms_) prim.set(k, coeff / c);
    std::string body = prim.plain_str();
    if (c == 1) return body;
    if (prim.is_constant() && prim.constant_value() == 1) return to_string(c);
    std::string cs = to_string(c);
    if (c < 0 || c.get_den() != 1) cs = "(" + cs + ")";
    return cs + "(" + body + ")";
  }

  std::string plain_str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print highest Z-degree first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      Rat c = it->second;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Rat a = abs(c);
      bool has_var = it->first.first > 0 || it->first.second > 0;
      if (a != 1 || !has_var) os << to_string(a) << (has_var ? "*" : "");
      if (it->first.first > 0) {
        os << "Z";
        if (it->first.first > 1) os << "^" << it->first.first;
      }
      if (it->first.second > 0) {
        if (it->first.first > 0) os << "*";
        os << "E";
        if (it->first.second > 1) os << "^" << it->first.second;
      }
    }
    return os.str();
  }

  void set(const Key& k, const Rat& c) {
    if (c != 0) terms_[k] = c;
  }
  void add_term(const Key& k, const Rat& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

 private:
  Terms terms_;
};

}  // namespace hydrogreen
