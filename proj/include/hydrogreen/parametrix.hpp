#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "hydrogreen/channel.hpp"

namespace hydrogreen {

/// Taylor coefficients h^(-1)_i(w) of the parametrix's Mellin symbol on a
/// fixed channel, computed by the recursion
///
///   (T^2 h^(-1)_i) h0 + (T^1 h^(-1)_{i-1}) h1 + h^(-1)_{i-2} h2 = delta_{i0}
///
/// with h1 = Z and h2 = E constant in w. Since the hydrogen symbol is
/// quadratic in r, the same step continues to arbitrary order.
class ParametrixTable {
 public:
  const FactoredRationalW& coefficient(Channel ch, int i) {
    if (i < 0) throw std::invalid_argument("parametrix order must be >= 0");
    std::scoped_lock lock(mu_);
    return compute(ch.l, i);
  }

 private:
  const FactoredRationalW& compute(int l, int i) {
    auto key = std::make_pair(l, i);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    FactoredRationalW value;
    // h0^{-1}(w-2), the inverse of the shifted conormal symbol
    FactoredRationalW h0inv_shifted = sigma_inverse(Channel(l)).shift(-2);
    if (i == 0) {
      value = h0inv_shifted;
    } else {
      FactoredRationalW bracket =
          compute(l, i - 1).shift(-1) * ParamPoly::Z();
      if (i >= 2) bracket = bracket + compute(l, i - 2).shift(-2) * ParamPoly::E();
      value = bracket * ParamPoly(Rat(-1)) * h0inv_shifted;
    }
    return cache_.emplace(key, std::move(value)).first->second;
  }

  std::mutex mu_;
  std::map<std::pair<int, int>, FactoredRationalW> cache_;
};

/// h^(-1)_0(w) = h0^{-1}(w-2) = 2/((w+l-2)(w-l-3)).
inline FactoredRationalW parametrix_order0(Channel ch) {
  return sigma_inverse(ch).shift(-2);
}

inline FactoredRationalW parametrix_coefficient(Channel ch, int i) {
  static ParametrixTable table;  // lock-guarded, values immutable once stored
  return table.coefficient(ch, i);
}

/// Exact check of the defining relations for i = 0..N. Entry i is true when
///   sum_j (T^{2-j} h^(-1)_{i-j}) h_j  equals  delta_{i0}.
inline std::vector<bool> verify_defining_relations(Channel ch, int order) {
  std::vector<bool> ok(order + 1);
  FactoredRationalW h0{conormal_symbol(ch)};
  FactoredRationalW h1{ParamPoly::Z()}, h2{ParamPoly::E()};
  for (int i = 0; i <= order; ++i) {
    FactoredRationalW sum = parametrix_coefficient(ch, i).shift(2) * h0;
    if (i >= 1) sum = sum + parametrix_coefficient(ch, i - 1).shift(1) * h1;
    if (i >= 2) sum = sum + parametrix_coefficient(ch, i - 2) * h2;
    FactoredRationalW expect{ParamPoly(Rat(i == 0 ? 1 : 0))};
    ok[i] = sum == expect;
  }
  return ok;
}

/// Sorted integer pole list of h^(-1)_i on channel l. Multiplicities are
/// reported as they actually occur; no simplicity is forced.
inline std::vector<std::pair<long, int>> pole_inventory(Channel ch, int i) {
  std::vector<std::pair<long, int>> out;
  for (const auto& [q, m] : parametrix_coefficient(ch, i).poles())
    out.emplace_back(to_long(q), m);
  return out;
}

}  // namespace hydrogreen
