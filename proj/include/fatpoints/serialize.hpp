#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encoding of points, polynomials, witnesses and reports.
 *
 * Scalars are written as decimal strings ("-3/7", "12") so exact values
 * survive a round trip; exponent triples are [a,b,c] arrays.
 */

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpoints/geometry.hpp"
#include "fatpoints/linsys.hpp"

namespace fatpoints {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fatpoints/1";

inline json to_json(const Scalar& s) { return s.to_string(); }

inline json to_json(const ProjectivePoint& p) {
  return json::array({p[0].to_string(), p[1].to_string(), p[2].to_string()});
}

inline json to_json(const std::vector<ProjectivePoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline json to_json(const HomoPoly& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exp", {e[0], e[1], e[2]}}, {"coeff", c.to_string()}});
  return {{"degree", f.degree()}, {"field", f.field().to_string()}, {"text", f.to_string()}, {"terms", terms}};
}

inline json to_json(const Line& l) {
  return json::array({l.coeffs()[0].to_string(), l.coeffs()[1].to_string(), l.coeffs()[2].to_string()});
}

inline json to_json(const std::vector<Line>& lines) {
  json a = json::array();
  for (const auto& l : lines) a.push_back(to_json(l));
  return a;
}

inline json to_json(const ArrangementWitness& w) {
  return {{"lines", to_json(w.lines)}, {"incidence", w.incidence}};
}

inline json to_json(const LinearSystemReport& r) {
  json j = {{"field", r.field},
            {"degree", r.degree},
            {"expected_dim", r.expected_dim},
            {"actual_dim", r.actual_dim},
            {"superabundance", r.superabundance},
            {"certification", to_string(r.certification)},
            {"primes", r.primes},
            {"rank_proven", r.rank_proven}};
  if (r.kernel_basis) {
    json k = json::array();
    for (const auto& g : *r.kernel_basis) k.push_back(to_json(g));
    j["kernel_basis"] = k;
  }
  return j;
}

inline json to_json(const AlphaResult& a) {
  json j = {{"alpha", a.alpha},
            {"lower", to_string(a.lower)},
            {"upper", to_string(a.upper)},
            {"expected_at_alpha", a.expected_at}};
  if (a.below) j["below"] = to_json(*a.below);
  if (a.at) j["at"] = to_json(*a.at);
  return j;
}

inline json to_json(const AlphaReport& r) {
  json details = json::array();
  for (const auto& d : r.details) details.push_back(to_json(d));
  return {{"field", r.field}, {"alphas", r.alphas}, {"diffs", r.diffs}, {"seed", r.seed}, {"details", details}};
}

// Parsing.

inline Scalar scalar_from_json(const Field& f, const json& j) {
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<long long>());
  throw std::invalid_argument("scalar must be a string or an integer");
}

inline ProjectivePoint point_from_json(const Field& f, const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("point must be an array of 3 coordinates");
  return ProjectivePoint(scalar_from_json(f, j[0]), scalar_from_json(f, j[1]), scalar_from_json(f, j[2]));
}

inline HomoPoly poly_from_json(const json& j) {
  const Field f = Field::parse(j.at("field").get<std::string>());
  HomoPoly out(f, j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) {
    const auto e = t.at("exp");
    out.set({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()}, scalar_from_json(f, t.at("coeff")));
  }
  return out;
}

/// Point set document: {"schema", "field", "points": [[x,y,z], ...]}.
struct PointSet {
  Field field = Field::rational();
  std::vector<ProjectivePoint> points;
  std::vector<Line> lines;
};

inline json point_set_json(const Field& field, const std::vector<ProjectivePoint>& pts,
                           const std::vector<Line>& lines = {}) {
  json j = {{"schema", kSchema}, {"field", field.to_string()}, {"points", to_json(pts)}};
  if (!lines.empty()) j["lines"] = to_json(lines);
  return j;
}

inline PointSet point_set_from_json(const json& j) {
  PointSet out;
  if (j.contains("schema") && j.at("schema") != kSchema) {
    throw std::invalid_argument("unsupported schema " + j.at("schema").dump());
  }
  if (j.contains("field")) out.field = Field::parse(j.at("field").get<std::string>());
  for (const auto& p : j.at("points")) out.points.push_back(point_from_json(out.field, p));
  if (j.contains("lines")) {
    for (const auto& l : j.at("lines")) {
      if (!l.is_array() || l.size() != 3) throw std::invalid_argument("line must be an array of 3 coefficients");
      out.lines.emplace_back(scalar_from_json(out.field, l[0]), scalar_from_json(out.field, l[1]),
                             scalar_from_json(out.field, l[2]));
    }
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace fatpoints
