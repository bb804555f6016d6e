// Command-line front end: parametrix symbols, Green-operator term ledgers,
// grouped expansions, oracle verification, and numeric Q-functional checks.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hydrogreen/green.hpp"
#include "hydrogreen/mellin_numeric.hpp"
#include "hydrogreen/radial.hpp"
#include "hydrogreen/serialize.hpp"

namespace {

using namespace hydrogreen;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailure = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
  int order = 2;
  std::string channels = "0..2";
  std::string gamma = "1";
  std::string gamma_tilde;
  std::string Z = "sym";
  std::string E = "sym";
  std::optional<int> n;
  int l = 0;
  std::string format = "text";
  double tol = 1e-6;
};

std::pair<int, int> parse_channels(const std::string& s) {
  auto dots = s.find("..");
  int a, b;
  if (dots == std::string::npos) {
    a = b = std::stoi(s);
  } else {
    a = std::stoi(s.substr(0, dots));
    b = std::stoi(s.substr(dots + 2));
  }
  if (a < 0 || b < a) throw std::invalid_argument("bad channel range: " + s);
  return {a, b};
}

void add_common(CLI::App* cmd, Options* o) {
  cmd->add_option("--order", o->order, "expansion order K");
  cmd->add_option("--channels", o->channels, "channel range a..b");
  cmd->add_option("--gamma", o->gamma, "Mellin weight (rational)");
  cmd->add_option("--gamma-tilde", o->gamma_tilde, "auxiliary weight");
  cmd->add_option("--Z", o->Z, "nuclear charge (rational or 'sym')");
  cmd->add_option("--E", o->E, "energy (rational or 'sym')");
  cmd->add_option("--n", o->n, "principal quantum number");
  cmd->add_option("--l", o->l, "angular momentum channel");
  cmd->add_option("--format", o->format, "text | json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));
  cmd->add_option("--tol", o->tol, "numeric tolerance");
}

int cmd_parametrix(const Options& o) {
  if (o.order < 0) {
    std::cerr << "error: --order must be >= 0\n";
    return kExitUsage;
  }
  auto [a, b] = parse_channels(o.channels);
  for (int l = a; l <= b; ++l) {
    Channel ch(l);
    if (o.format == "text") std::cout << "channel l = " << l << "\n";
    for (int i = 0; i <= o.order; ++i) {
      auto hi = parametrix_coefficient(ch, i);
      auto poles = pole_inventory(ch, i);
      if (o.format == "json-lines") {
        json rec{{"channel", l}, {"order", i}, {"symbol", hi.str()}};
        json pl = json::array();
        for (auto [q, m] : poles) pl.push_back(json{{"w", q}, {"mult", m}});
        rec["poles"] = pl;
        std::cout << rec.dump() << "\n";
      } else {
        std::cout << "  h^-1_" << i << "(w) = " << hi.str() << "\n    poles:";
        for (auto [q, m] : poles) {
          std::cout << " w=" << q;
          if (m > 1) std::cout << " (x" << m << ")";
        }
        std::cout << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_green(const Options& o) {
  auto [a, b] = parse_channels(o.channels);
  WeightData weight(parse_rat(o.gamma));
  auto adm = check_admissibility(weight, rat(-1, 2));
  if (!adm.weight_not_half_integer || !adm.theorem_regime) {
    std::cerr << "error: gamma must lie in (1/2, 3/2) and off Z + 1/2\n";
    return kExitCheckFailure;
  }
  std::optional<Rat> gt;
  if (!o.gamma_tilde.empty()) gt = parse_rat(o.gamma_tilde);

  auto res = assemble(weight, gt, o.order, b);
  GreenExpansion ledger = res.raw;
  if (o.n) ledger = specialize_energy(ledger, *o.n);

  if (o.format == "json-lines") {
    for (const auto& t : ledger.terms)
      if (t.channel >= a) std::cout << to_json_line(t) << "\n";
    return kExitOk;
  }

  std::cout << "raw term ledger (G_I + G_II), order " << o.order
            << ", channels " << a << ".." << b << ", gamma " << o.gamma
            << ":\n";
  for (const auto& t : ledger.terms) {
    if (t.channel < a) continue;
    std::cout << "  r^" << t.r_power;
    if (t.log_power > 0) std::cout << " ln^" << t.log_power << "(r)";
    std::cout << " P_" << t.channel << "  " << t.coeff.str() << "  "
              << t.marker.str() << "\n";
  }
  std::cout << "\ngrouped expansion (series_l x Q_l):\n";
  bool factorization_ok = true;
  for (const auto& g : res.groups) {
    if (g.channel < a) continue;
    std::cout << "  channel " << g.channel << ": rank-1 "
              << (g.rank1_ok ? "ok" : "FAILED") << "\n";
    if (!g.rank1_ok) {
      factorization_ok = false;
      if (g.failing_r_order >= 0)
        std::cout << "    first failing r-order: " << g.failing_r_order << "\n";
    }
    std::cout << "    series:";
    auto series = o.n ? specialize_energy(g.series, *o.n) : g.series;
    for (size_t k = 0; k < series.size(); ++k) {
      if (series[k].is_zero()) continue;
      std::cout << " [" << series[k].str() << "] r^" << g.channel + k;
    }
    std::cout << "\n    Q_" << g.channel << " entries:\n";
    for (const auto& e : g.q_functional)
      std::cout << "      " << e.value.str() << " * " << e.marker.str() << "\n";
  }
  if (!factorization_ok)
    std::cout << "note: rank-1 factorization failed on some channel; "
                 "raw ledger remains authoritative\n";
  return kExitOk;  // factorization failure is reported, not fatal
}

int cmd_verify(const Options& o) {
  auto [a, b] = parse_channels(o.channels);
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok,
                    const std::string& detail = "") {
    all_ok = all_ok && ok;
    if (o.format == "json-lines") {
      std::cout << json{{"check", name}, {"pass", ok}, {"detail", detail}}.dump()
                << "\n";
    } else {
      std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
      if (!detail.empty()) std::cout << "  (" << detail << ")";
      std::cout << "\n";
    }
  };

  for (int l = a; l <= b; ++l) {
    auto ok = verify_defining_relations(Channel(l), o.order);
    bool good = true;
    for (bool v : ok) good = good && v;
    report("defining relations l=" + std::to_string(l) + " i<=" +
               std::to_string(o.order),
           good);
  }

  // oracle comparison: assembled channel series vs Frobenius recursion
  int full_order = b + o.order;
  auto res = assemble(WeightData(parse_rat(o.gamma)), std::nullopt, full_order,
                      b);
  for (int l = a; l <= b; ++l) {
    const auto& grp = res.groups.at(l);
    auto frob = frobenius_series(Channel(l), o.order);
    ParamPoly zl = ParamPoly::monomial(l, 0);
    bool match = grp.rank1_ok;
    for (int k = 0; k <= o.order && match; ++k) {
      ParamPoly got = k < static_cast<int>(grp.series.size()) ? grp.series[k]
                                                              : ParamPoly();
      match = got == zl * frob.c[k];
    }
    auto residual = apply_radial_operator(frob);
    report("oracle series l=" + std::to_string(l),
           match && is_zero_series(residual));
  }

  // Remark-1 side-by-side on the printed channel-0 r^2 and channel-1 r^3
  // factors; the paper's sign "(1 - 1/(2n^2))" disagrees with substitution.
  {
    int n = o.n.value_or(1);
    Rat sub0 = (Rat(1) + rat(1, 2 * static_cast<long>(n) * n)) / 3;  // derived
    Rat paper0 = (Rat(1) - rat(1, 2 * static_cast<long>(n) * n)) / 3;
    Rat sub1 = (Rat(1) + rat(1, static_cast<long>(n) * n)) / 10;
    Rat paper1 = (Rat(1) - rat(1, static_cast<long>(n) * n)) / 10;
    std::string detail = "substituted r^2 factor " + to_string(sub0) +
                         " vs printed " + to_string(paper0) +
                         "; substituted r^3 factor " + to_string(sub1) +
                         " vs printed " + to_string(paper1) +
                         "; printed sign flagged as discrepant";
    auto s0 = eigenstate_series(n, Channel(0), 2);
    bool ok0 = s0.c[2] == ParamPoly::monomial(2, 0, sub0);
    bool ok1 = true;
    if (n >= 2) {
      auto s1 = eigenstate_series(n, Channel(1), 2);
      ok1 = s1.c[2] == ParamPoly::monomial(2, 0, sub1);
    }
    report("energy specialization coefficients (n=" + std::to_string(n) + ")",
           ok0 && ok1, detail);
  }

  // bound-state termination: polynomial part of the series has degree n-l-1
  if (o.n) {
    int n = *o.n;
    for (int l = a; l <= b && l < n; ++l) {
      auto s = eigenstate_series(n, Channel(l), n - l + 3);
      // divide by exp(-Zr/n): remainder coefficients must vanish from n-l on
      std::vector<Rat> p(s.c.size()), e(s.c.size());
      Rat en = 1;
      for (size_t k = 0; k < e.size(); ++k) {
        e[k] = en;
        en *= rat(-1, n) / static_cast<long>(k + 1);
      }
      bool ok = true;
      for (size_t k = 0; k < s.c.size(); ++k) {
        Rat ck = 0;
        for (const auto& [key, v] : s.c[k].terms()) ck += v;
        Rat pk = ck;
        for (size_t j = 0; j < k; ++j) pk -= p[j] * e[k - j];
        p[k] = pk;
        if (static_cast<int>(k) >= n - l && pk != 0) ok = false;
      }
      report("bound-state termination n=" + std::to_string(n) +
                 " l=" + std::to_string(l),
             ok);
    }
  }

  return all_ok ? kExitOk : kExitCheckFailure;
}

int cmd_qcheck(const Options& o) {
  int n = o.n.value_or(1);
  int l = o.l;
  if (l < 0 || l > 1) {
    std::cerr << "error: qcheck supports l = 0 or 1\n";
    return kExitUsage;
  }
  if (n < 1 || l >= n) {
    std::cerr << "error: need principal quantum number n > l\n";
    return kExitUsage;
  }
  double Z = o.Z == "sym" ? 1.0 : parse_rat(o.Z).get_d();
  double E = -0.5 * Z * Z / (n * n);

  std::vector<CutoffTriple> triples = {
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1, 2), CutoffSpec(2, 4)),
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(0.7, 1.5), CutoffSpec(1.5, 3)),
      CutoffTriple(CutoffSpec(1, 2), CutoffSpec(1.2, 2.5), CutoffSpec(2.5, 5)),
  };

  RadialProfile u = eigenstate_profile(n, Channel(l), Z);
  bool converged = true;
  std::vector<double> values;
  for (const auto& cut : triples) {
    FunctionalResult q = l == 0 ? q0_value(u, Z, E, cut)
                                : q1_value(u, Z, E, cut);
    converged = converged && q.converged;
    values.push_back(q.value);
  }
  double spread = 0;
  for (double v : values)
    spread = std::max(spread, std::abs(v - values.front()));

  auto e2e = end_to_end_check(n, Channel(l), Z,
                              {0.01, 0.02, 0.05, 0.08, 0.1});
  converged = converged && e2e.converged;

  if (o.format == "json-lines") {
    json rec{{"n", n},        {"l", l},
             {"Z", Z},        {"q_values", values},
             {"spread", spread}, {"end_to_end_deviation",
                                  e2e.max_relative_deviation},
             {"converged", converged}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "Q_" << l << " values across cutoff triples:";
    for (double v : values) std::printf(" %.10f", v);
    std::printf("\n  spread: %.3e\n", spread);
    std::printf("  end-to-end max relative deviation (r <= 0.1): %.3e\n",
                e2e.max_relative_deviation);
    if (!converged) std::cout << "  WARNING: quadrature did not converge\n";
  }
  if (!converged) return kExitNonConvergence;
  double target = -std::pow(Z, -l);
  if (std::abs(values.front() - target) > std::max(o.tol, 1e-5) ||
      spread > std::max(o.tol, 1e-5))
    return kExitCheckFailure;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Green-operator expansion engine for the hydrogen atom"};
  app.require_subcommand(1);
  Options o;
  auto* p = app.add_subcommand("parametrix", "print parametrix symbols");
  auto* g = app.add_subcommand("green", "print term ledger and grouped view");
  auto* v = app.add_subcommand("verify", "run exact verification checks");
  auto* q = app.add_subcommand("qcheck", "numeric Q-functional checks");
  for (auto* cmd : {p, g, v, q}) add_common(cmd, &o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (p->parsed()) return cmd_parametrix(o);
    if (g->parsed()) return cmd_green(o);
    if (v->parsed()) return cmd_verify(o);
    if (q->parsed()) return cmd_qcheck(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
