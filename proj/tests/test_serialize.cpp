#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "hydrogreen/serialize.hpp"

using namespace hydrogreen;

TEST_CASE("rationals serialize as exact strings") {
  Rat q = rat(-22, 7);
  json j = to_json(q);
  CHECK(j["num"] == "-22");
  CHECK(j["den"] == "7");
  CHECK(rat_from_json(j) == q);

  // values beyond double precision survive
  Rat big(mpz_class("123456789012345678901234567890"),
          mpz_class("987654321098765432109876543211"));
  big.canonicalize();
  CHECK(rat_from_json(to_json(big)) == big);
}

TEST_CASE("parameter polynomials round-trip as monomial lists") {
  ParamPoly p = ParamPoly::monomial(2, 0, rat(1, 3)) +
                ParamPoly::monomial(0, 1, rat(-1, 3)) +
                ParamPoly::monomial(1, 2, rat(7, 5));
  CHECK(poly_from_json(to_json(p)) == p);
  CHECK(poly_from_json(to_json(ParamPoly())) == ParamPoly());
}

TEST_CASE("marker enums round-trip by name") {
  MellinMarker m;
  m.source = MellinMarker::Source::GII;
  m.prefix = MellinMarker::Prefix::op_h0;
  m.cutoff = MellinMarker::Cutoff::omega2m1_v;
  m.prefactor = MellinMarker::Prefactor::E;
  m.point = -3;
  m.derivative_order = 1;
  CHECK(marker_from_json(to_json(m)) == m);
  CHECK_THROWS_AS(marker_from_json(json{{"source", "bogus"},
                                        {"prefix", "plain"},
                                        {"cutoff", "omega2"},
                                        {"prefactor", "1"},
                                        {"point", 0},
                                        {"derivative_order", 0}}),
                  std::invalid_argument);
}

TEST_CASE("full ledger round-trips through json lines") {
  auto res = assemble(WeightData(rat(1)), std::nullopt, 2, 2);
  REQUIRE(!res.raw.terms.empty());
  std::ostringstream stream;
  for (const auto& t : res.raw.terms) stream << to_json_line(t) << "\n";

  std::istringstream in(stream.str());
  std::vector<AsymptoticTerm> parsed;
  std::string line;
  while (std::getline(in, line)) parsed.push_back(term_from_json_line(line));

  REQUIRE(parsed.size() == res.raw.terms.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].channel == res.raw.terms[i].channel);
    CHECK(parsed[i].r_power == res.raw.terms[i].r_power);
    CHECK(parsed[i].log_power == res.raw.terms[i].log_power);
    CHECK(parsed[i].coeff == res.raw.terms[i].coeff);
    CHECK(parsed[i].marker == res.raw.terms[i].marker);
  }
}

TEST_CASE("term records carry the documented keys") {
  AsymptoticTerm t;
  t.channel = 2;
  t.r_power = 3;
  t.coeff = ParamPoly::Z();
  json j = to_json(t);
  for (const char* key :
       {"channel", "r_power", "log_power", "coefficient", "marker"})
    CHECK(j.contains(key));
  CHECK(j["coefficient"][0]["coeff"].contains("num"));
  CHECK(j["coefficient"][0]["coeff"].contains("den"));
}
