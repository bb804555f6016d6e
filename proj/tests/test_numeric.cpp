#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "hydrogreen/mellin_numeric.hpp"

using namespace hydrogreen;

namespace {

RadialProfile exp_profile(double a) {
  // u = e^{-a r}
  return RadialProfile::from_derivatives(
      [a](double r) { return std::exp(-a * r); },
      [a](double r) { return -a * std::exp(-a * r); },
      [a](double r) { return a * a * std::exp(-a * r); });
}

RadialProfile r_exp_profile(double a) {
  // u = r e^{-a r}
  return RadialProfile::from_derivatives(
      [a](double r) { return r * std::exp(-a * r); },
      [a](double r) { return (1 - a * r) * std::exp(-a * r); },
      [a](double r) { return (a * a * r - 2 * a) * std::exp(-a * r); });
}

}  // namespace

TEST_CASE("adaptive quadrature on closed forms") {
  auto one = integrate([](double r) { return std::exp(-r); }, 0, 60);
  CHECK(one.converged);
  CHECK(one.value == Catch::Approx(1.0).epsilon(1e-10));

  auto osc = integrate([](double r) { return std::sin(10 * r); }, 0, M_PI / 10);
  CHECK(osc.value == Catch::Approx(0.2).epsilon(1e-10));

  QuadratureSpec tiny;
  tiny.max_subdivisions = 1;
  tiny.abs_tol = 1e-16;
  tiny.rel_tol = 1e-16;
  auto hard = integrate([](double r) { return std::sqrt(std::abs(r - 0.3)); },
                        0, 1, tiny);
  CHECK_FALSE(hard.converged);

  CHECK(integrate([](double) { return 1.0; }, 2, 2).value == 0.0);
}

TEST_CASE("weighted Mellin transform reproduces the Gamma function") {
  auto u = exp_profile(1.0);
  double expected[] = {1, 1, 2, 6, 24, 120};  // Gamma(1..6)
  for (int w = 1; w <= 6; ++w) {
    auto v = weighted_mellin(u, 1.0, {static_cast<double>(w), 0.0});
    CHECK(v.converged);
    CHECK(v.value.real() == Catch::Approx(expected[w - 1]).epsilon(1e-9));
    CHECK(v.value.imag() == 0.0);
  }
  // complex point: |Gamma(1 + i)| = sqrt(pi / sinh(pi))
  auto g = weighted_mellin(u, 1.0, {1.0, 1.0});
  CHECK(std::abs(g.value) ==
        Catch::Approx(std::sqrt(M_PI / std::sinh(M_PI))).epsilon(1e-8));
  // zero profile
  RadialProfile zero = RadialProfile::from_derivatives(
      [](double) { return 0.0; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
  CHECK(weighted_mellin(zero, 1.0, {2.0, 0.0}).value == std::complex<double>());
}

TEST_CASE("cutoff functions: plateau, support and smooth derivatives") {
  CutoffSpec c(1, 2, 4);
  CHECK(c.value(0.5) == 1.0);
  CHECK(c.value(1.0) == 1.0);
  CHECK(c.value(2.0) == 0.0);
  CHECK(c.value(3.0) == 0.0);
  CHECK(c.d1(0.5) == 0.0);
  CHECK(c.d2(2.5) == 0.0);
  CHECK(c.value(1.5) == Catch::Approx(0.5));
  // analytic derivatives agree with finite differences in the transition
  for (double r : {1.2, 1.5, 1.8}) {
    double h = 1e-6;
    CHECK(c.d1(r) ==
          Catch::Approx((c.value(r + h) - c.value(r - h)) / (2 * h)).margin(1e-6));
    CHECK(c.d2(r) == Catch::Approx((c.d1(r + h) - c.d1(r - h)) / (2 * h))
                         .margin(1e-5));
  }
  CHECK_THROWS_AS(CutoffSpec(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(CutoffSpec(0, 1), std::invalid_argument);
}

TEST_CASE("radial profiles: derivative bookkeeping") {
  auto u = r_exp_profile(0.5);
  CHECK(u.finite_difference_check({0.3, 1.0, 2.7, 5.0}) < 1e-5);
  // (-r d/dr) r e^{-r/2} = -(r - r^2/2) e^{-r/2}
  double r = 1.7;
  CHECK(u.mf(r) ==
        Catch::Approx(-(r - r * r / 2) * std::exp(-r / 2)).epsilon(1e-12));
}

TEST_CASE("h0 action annihilates the harmonic profiles r^l") {
  for (int l = 0; l <= 3; ++l) {
    RadialProfile rl = RadialProfile::from_derivatives(
        [l](double r) { return std::pow(r, l); },
        [l](double r) { return l * std::pow(r, l - 1); },
        [l](double r) { return l * (l - 1) * std::pow(r, l - 2); });
    auto h = apply_h0(rl, Channel(l));
    for (double r : {0.5, 1.0, 2.3}) {
      INFO("l=" << l << " r=" << r);
      CHECK(h.f(r) == Catch::Approx(0.0).margin(1e-12));
    }
    // and scales r^l by (l(l+1) - l'(l'+1))/2 = -(l+1) on channel l+1
    auto h2 = apply_h0(rl, Channel(l + 1));
    double r = 1.3;
    CHECK(h2.f(r) == Catch::Approx(-(l + 1) * std::pow(r, l)).margin(1e-9));
  }
}

TEST_CASE("cutoff triple constraint") {
  CHECK_THROWS_AS(CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1, 2),
                               CutoffSpec(1, 2)),
                  std::invalid_argument);
  CHECK_NOTHROW(CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1, 2),
                             CutoffSpec(2, 4)));
}

TEST_CASE("Q_0 on the ground state") {
  auto u = exp_profile(1.0);  // n=1, Z=1, E=-1/2
  CutoffTriple cut;
  auto q = q0_value(u, 1.0, -0.5, cut);
  REQUIRE(q.converged);
  CHECK(q.value == Catch::Approx(-1.0).margin(1e-6));
}

TEST_CASE("Q_0 is linear in the input") {
  CutoffTriple cut;
  auto u = exp_profile(1.0);
  RadialProfile scaled = RadialProfile::from_derivatives(
      [](double r) { return 2.5 * std::exp(-r); },
      [](double r) { return -2.5 * std::exp(-r); },
      [](double r) { return 2.5 * std::exp(-r); });
  auto a = q0_value(u, 1.0, -0.5, cut);
  auto b = q0_value(scaled, 1.0, -0.5, cut);
  CHECK(b.value == Catch::Approx(2.5 * a.value).epsilon(1e-9));
}

TEST_CASE("Q_0 is cutoff independent on eigenstates") {
  auto u = exp_profile(1.0);
  std::vector<CutoffTriple> triples = {
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1, 2), CutoffSpec(2, 4)),
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(0.7, 1.5), CutoffSpec(1.5, 3)),
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1.2, 2.5), CutoffSpec(2.5, 5)),
  };
  std::vector<double> vals;
  for (const auto& cut : triples) {
    auto q = q0_value(u, 1.0, -0.5, cut);
    REQUIRE(q.converged);
    vals.push_back(q.value);
  }
  for (double v : vals) CHECK(std::abs(v - vals[0]) < 1e-6);
}

TEST_CASE("Q_1 on the 2p state, with cutoff variation") {
  auto u = r_exp_profile(0.5);  // n=2, l=1, Z=1, E=-1/8
  std::vector<CutoffTriple> triples = {
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1, 2), CutoffSpec(2, 4)),
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(0.8, 1.8), CutoffSpec(1.8, 3.5)),
  };
  std::vector<double> vals;
  for (const auto& cut : triples) {
    auto q = q1_value(u, 1.0, -0.125, cut);
    REQUIRE(q.converged);
    vals.push_back(q.value);
  }
  CHECK(vals[0] == Catch::Approx(-1.0).margin(1e-5));
  CHECK(std::abs(vals[1] - vals[0]) < 1e-5);
}

TEST_CASE("eigenstate profiles match the closed forms") {
  auto p10 = eigenstate_profile(1, Channel(0), 1.0);
  auto p20 = eigenstate_profile(2, Channel(0), 1.0);
  auto p21 = eigenstate_profile(2, Channel(1), 1.0);
  for (double r : {0.2, 1.3, 4.0}) {
    CHECK(p10.f(r) == Catch::Approx(std::exp(-r)).epsilon(1e-12));
    CHECK(p20.f(r) ==
          Catch::Approx((1 - r / 2) * std::exp(-r / 2)).epsilon(1e-12));
    CHECK(p21.f(r) == Catch::Approx(r * std::exp(-r / 2)).epsilon(1e-12));
  }
  CHECK(p20.finite_difference_check({0.5, 1.3, 3.0}) < 1e-5);
}

TEST_CASE("end to end: -series * Q reproduces the eigenfunctions near 0") {
  std::vector<double> samples = {0.01, 0.02, 0.05, 0.1};
  // series truncation at order K leaves an O(r^{K+1}) relative error;
  // at r <= 0.1 with K=2 that is comfortably below 5e-4
  auto a = end_to_end_check(1, Channel(0), 1.0, samples);
  CHECK(a.converged);
  CHECK(a.q_value == Catch::Approx(-1.0).margin(1e-6));
  CHECK(a.max_relative_deviation < 5e-4);

  auto b = end_to_end_check(2, Channel(1), 1.0, samples);
  CHECK(b.converged);
  CHECK(b.q_value == Catch::Approx(-1.0).margin(1e-5));
  CHECK(b.max_relative_deviation < 5e-4);

  auto c = end_to_end_check(2, Channel(0), 1.0, samples);
  CHECK(c.max_relative_deviation < 5e-4);

  // higher truncation order tightens the bound
  auto d = end_to_end_check(1, Channel(0), 1.0, samples, {}, 4);
  CHECK(d.max_relative_deviation < 5e-6);

  CHECK_THROWS_AS(end_to_end_check(1, Channel(1), 1.0, samples),
                  std::invalid_argument);
}
