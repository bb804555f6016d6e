#pragma once

#include <string>

#include <json.hpp>

#include "hydrogreen/green.hpp"

namespace hydrogreen {

using nlohmann::json;

/// Exact rationals travel as decimal strings so no precision is lost.
inline json to_json(const Rat& r) {
  return json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

inline Rat rat_from_json(const json& j) {
  Rat r(mpz_class(j.at("num").get<std::string>()),
        mpz_class(j.at("den").get<std::string>()));
  r.canonicalize();
  return r;
}

/// Z/E-monomial list: [{"zdeg": a, "edeg": b, "coeff": {...}}, ...].
inline json to_json(const ParamPoly& p) {
  json arr = json::array();
  for (const auto& [k, c] : p.terms())
    arr.push_back(json{{"zdeg", k.first}, {"edeg", k.second},
                       {"coeff", to_json(c)}});
  return arr;
}

inline ParamPoly poly_from_json(const json& j) {
  ParamPoly p;
  for (const auto& t : j)
    p.add_term({t.at("zdeg").get<int>(), t.at("edeg").get<int>()},
               rat_from_json(t.at("coeff")));
  return p;
}

namespace detail {

inline const char* source_name(MellinMarker::Source s) {
  return s == MellinMarker::Source::GI ? "GI" : "GII";
}

inline const char* prefix_name(MellinMarker::Prefix p) {
  switch (p) {
    case MellinMarker::Prefix::plain: return "plain";
    case MellinMarker::Prefix::op_h0: return "op_h0";
    case MellinMarker::Prefix::mul_rZ: return "mul_rZ";
    case MellinMarker::Prefix::mul_r2E: return "mul_r2E";
    case MellinMarker::Prefix::op_h0_plus_Zr: return "op_h0_plus_Zr";
    case MellinMarker::Prefix::mul_rZ_plus_r2E: return "mul_rZ_plus_r2E";
  }
  return "plain";
}

inline const char* cutoff_name(MellinMarker::Cutoff c) {
  return c == MellinMarker::Cutoff::omega2_v ? "omega2" : "omega2m1";
}

inline const char* prefactor_name(MellinMarker::Prefactor p) {
  switch (p) {
    case MellinMarker::Prefactor::one: return "1";
    case MellinMarker::Prefactor::Z: return "Z";
    case MellinMarker::Prefactor::E: return "E";
  }
  return "1";
}

template <typename Enum, typename Name>
Enum enum_from_name(const std::string& s, std::initializer_list<Enum> values,
                    Name name) {
  for (Enum v : values)
    if (s == name(v)) return v;
  throw std::invalid_argument("unknown enum tag: " + s);
}

}  // namespace detail

inline json to_json(const MellinMarker& m) {
  return json{{"source", detail::source_name(m.source)},
              {"prefix", detail::prefix_name(m.prefix)},
              {"cutoff", detail::cutoff_name(m.cutoff)},
              {"prefactor", detail::prefactor_name(m.prefactor)},
              {"point", m.point},
              {"derivative_order", m.derivative_order}};
}

inline MellinMarker marker_from_json(const json& j) {
  using M = MellinMarker;
  MellinMarker m;
  m.source = detail::enum_from_name(j.at("source").get<std::string>(),
                                    {M::Source::GI, M::Source::GII},
                                    detail::source_name);
  m.prefix = detail::enum_from_name(
      j.at("prefix").get<std::string>(),
      {M::Prefix::plain, M::Prefix::op_h0, M::Prefix::mul_rZ,
       M::Prefix::mul_r2E, M::Prefix::op_h0_plus_Zr,
       M::Prefix::mul_rZ_plus_r2E},
      detail::prefix_name);
  m.cutoff = detail::enum_from_name(
      j.at("cutoff").get<std::string>(),
      {M::Cutoff::omega2_v, M::Cutoff::omega2m1_v}, detail::cutoff_name);
  m.prefactor = detail::enum_from_name(
      j.at("prefactor").get<std::string>(),
      {M::Prefactor::one, M::Prefactor::Z, M::Prefactor::E},
      detail::prefactor_name);
  m.point = j.at("point").get<int>();
  m.derivative_order = j.at("derivative_order").get<int>();
  return m;
}

/// One JSON-lines record per expansion term.
inline json to_json(const AsymptoticTerm& t) {
  return json{{"channel", t.channel},
              {"r_power", t.r_power},
              {"log_power", t.log_power},
              {"coefficient", to_json(t.coeff)},
              {"marker", to_json(t.marker)}};
}

inline AsymptoticTerm term_from_json(const json& j) {
  AsymptoticTerm t;
  t.channel = j.at("channel").get<int>();
  t.r_power = j.at("r_power").get<int>();
  t.log_power = j.at("log_power").get<int>();
  t.coeff = poly_from_json(j.at("coefficient"));
  t.marker = marker_from_json(j.at("marker"));
  return t;
}

inline std::string to_json_line(const AsymptoticTerm& t) {
  return to_json(t).dump();
}

inline AsymptoticTerm term_from_json_line(const std::string& line) {
  return term_from_json(json::parse(line));
}

}  // namespace hydrogreen
