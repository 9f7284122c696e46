#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skorohod/cadlag.hpp"
#include "skorohod/distance.hpp"
#include "skorohod/pseudometric.hpp"
#include "skorohod/time_change.hpp"
#include "skorohod/topology.hpp"
#include "skorohod/value_map.hpp"

namespace skorohod::io {

using nlohmann::json;

/// Malformed or semantically invalid input documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + ": non-finite number");
  return v;
}

// ---- values and step functions ----

inline Value value_from_json(const json& j) {
  if (j.is_string()) return Value(j.get<std::string>());
  if (!j.is_array() || j.empty()) throw ParseError("value: expected a nonempty array or a string");
  Coords c;
  for (const auto& e : j) c.push_back(number(e, "value coordinate"));
  return Value(std::move(c));
}

inline json to_json(const Value& v) {
  if (v.is_label()) return v.label();
  return json(v.coords());
}

inline StepFunction step_from_json(const json& j) {
  if (!j.is_object() || !j.contains("times") || !j.contains("values")) {
    throw ParseError("step function: expected {\"times\":[...],\"values\":[...]}");
  }
  if (!j["times"].is_array() || !j["values"].is_array()) throw ParseError("step function: times/values must be arrays");
  std::vector<double> times;
  for (const auto& t : j["times"]) times.push_back(number(t, "time"));
  std::vector<Value> values;
  for (const auto& v : j["values"]) values.push_back(value_from_json(v));
  try {
    return StepFunction(std::move(times), std::move(values));
  } catch (const ValueSpaceMismatch& e) {
    throw ParseError(std::string("step function: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const StepFunction& f) {
  json values = json::array();
  for (const auto& v : f.values()) values.push_back(to_json(v));
  return json{{"times", std::vector<double>(f.times().begin(), f.times().end())}, {"values", values}};
}

// ---- value maps and pseudometrics ----

inline ValueMap value_map_from_json(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "identity") return ValueMap::identity();
  if (kind == "square") return ValueMap::square();
  if (kind == "projection") return ValueMap::projection(j.at("coords").get<std::vector<std::size_t>>());
  if (kind == "affine") {
    return ValueMap::affine(j.at("matrix").get<std::vector<std::vector<double>>>(), j.at("offset").get<std::vector<double>>());
  }
  if (kind == "clamp") return ValueMap::clamp(number(j.at("lo"), "lo"), number(j.at("hi"), "hi"));
  throw ParseError("value map: unknown kind '" + kind + "'");
}

inline json to_json(const ValueMap& m) {
  switch (m.kind()) {
    case ValueMap::Kind::Identity: return {{"kind", "identity"}};
    case ValueMap::Kind::Square: return {{"kind", "square"}};
    case ValueMap::Kind::Projection: return {{"kind", "projection"}, {"coords", m.coords()}};
    case ValueMap::Kind::Affine: return {{"kind", "affine"}, {"matrix", m.matrix()}, {"offset", m.offset()}};
    case ValueMap::Kind::Clamp: return {{"kind", "clamp"}, {"lo", m.lo()}, {"hi", m.hi()}};
    case ValueMap::Kind::Custom: return {{"kind", "custom"}, {"name", m.name()}};
  }
  return {};
}

inline Pseudometric pseudometric_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("pseudometric: expected an object");
  const std::string kind = j.value("kind", "");
  try {
    if (kind == "coordinate") return Pseudometric::coordinate(j.at("k").get<std::size_t>());
    if (kind == "euclidean") return Pseudometric::euclidean();
    if (kind == "discrete") return Pseudometric::discrete();
    if (kind == "scaled") return Pseudometric::scaled(number(j.at("c"), "c"), pseudometric_from_json(j.at("inner")));
    if (kind == "pulled_back") {
      return Pseudometric::pulled_back(value_map_from_json(j.at("map")), pseudometric_from_json(j.at("inner")));
    }
    if (kind == "max") {
      std::vector<Pseudometric> parts;
      for (const auto& p : j.at("of")) parts.push_back(pseudometric_from_json(p));
      return Pseudometric::max_of(std::move(parts));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("pseudometric: ") + e.what());
  }
  throw ParseError("pseudometric: unknown kind '" + kind + "'");
}

inline json to_json(const Pseudometric& d) {
  switch (d.kind()) {
    case Pseudometric::Kind::Coordinate: return {{"kind", "coordinate"}, {"k", d.coordinate_index()}};
    case Pseudometric::Kind::Euclidean: return {{"kind", "euclidean"}};
    case Pseudometric::Kind::Discrete: return {{"kind", "discrete"}};
    case Pseudometric::Kind::Scaled: return {{"kind", "scaled"}, {"c", d.scale()}, {"inner", to_json(d.parts().front())}};
    case Pseudometric::Kind::PulledBack:
      return {{"kind", "pulled_back"}, {"map", to_json(d.map())}, {"inner", to_json(d.parts().front())}};
    case Pseudometric::Kind::Max: {
      json of = json::array();
      for (const auto& p : d.parts()) of.push_back(to_json(p));
      return {{"kind", "max"}, {"of", of}};
    }
  }
  return {};
}

/// A family config: the value space it is meant for plus its generators.
struct FamilyConfig {
  ValueSpace space;
  PseudometricFamily family;
};

inline FamilyConfig family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array()) {
    throw ParseError("family: expected {\"space\":{...},\"generators\":[...]}");
  }
  ValueSpace space;
  if (j.contains("space")) {
    const auto& s = j["space"];
    if (s.contains("labels")) {
      space = ValueSpace{true, 0};
    } else {
      space = ValueSpace{false, s.value("dim", std::size_t{1})};
    }
  }
  std::vector<Pseudometric> gens;
  for (const auto& g : j["generators"]) gens.push_back(pseudometric_from_json(g));
  if (gens.empty()) throw ParseError("family: no generators");
  return FamilyConfig{space, max_close(std::move(gens))};
}

inline json to_json(const PseudometricFamily& fam, const ValueSpace& space) {
  json gens = json::array();
  for (const auto& g : fam.generators()) gens.push_back(to_json(g));
  json s = space.labels ? json{{"labels", true}} : json{{"dim", space.dim}};
  return {{"space", s}, {"generators", gens}};
}

/// "1,2", "{1,2}" or "all" -> index.
inline FamilyIndex parse_index(const std::string& text, const PseudometricFamily& family) {
  if (text.empty() || text == "all") return family.full();
  std::string body;
  for (char c : text) {
    if (c != '{' && c != '}' && c != ' ') body += c;
  }
  std::vector<std::size_t> positions;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      positions.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw ParseError("metric index: bad entry '" + item + "'");
    }
  }
  FamilyIndex idx = FamilyIndex::of(positions);
  if (idx.empty() || !idx.subset_of(family.full())) throw ParseError("metric index " + text + " outside the family");
  return idx;
}

// ---- time changes, distance results, reports ----

inline TimeChange time_change_from_json(const json& j) {
  const json& knots = j.contains("knots") ? j["knots"] : j;
  if (!knots.is_array()) throw ParseError("certificate: expected \"knots\" array");
  std::vector<TimeChange::Knot> out;
  for (const auto& k : knots) {
    if (!k.is_array() || k.size() != 2) throw ParseError("certificate: knots are [t, lambda(t)] pairs");
    out.emplace_back(number(k[0], "knot"), number(k[1], "knot"));
  }
  return TimeChange(std::move(out));  // InvalidTimeChange on bad ordering
}

inline json to_json(const TimeChange& lambda) {
  json knots = json::array();
  for (const auto& [t, s] : lambda.knots()) knots.push_back({t, s});
  return {{"knots", knots}};
}

inline json to_json(const DistanceResult& r) {
  return {{"distance", r.value}, {"time_sup", r.time_sup}, {"value_sup", r.value_sup}, {"certificate", to_json(r.certificate)}};
}

inline json to_json(const TransferReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"y", to_json(v.y)}, {"fine_distance", v.fine_distance}, {"coarse_distance", v.coarse_distance}});
  }
  json out{{"pass", r.pass()}, {"trials", r.trials}, {"rejected", r.rejected}, {"violations", violations}};
  if (r.modulus) out["modulus"] = {{"index", r.modulus->index.to_string()}, {"delta", r.modulus->delta}};
  if (!r.modulus_failure.empty()) out["modulus_failure"] = r.modulus_failure;
  return out;
}

inline json to_json(const ContinuityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"source_distance", row.source_distance},
                    {"pulled_back_distance", row.pulled_back_distance},
                    {"pushed_distance", row.pushed_distance},
                    {"identity_holds", row.identity_holds}});
  }
  json settles = json::array();
  for (const auto& s : r.settles_below) settles.push_back(s ? json(*s) : json(nullptr));
  return {{"pass", r.pass()},
          {"identity_holds", r.identity_holds},
          {"final_threshold", r.final_threshold},
          {"final_below", r.final_below},
          {"settles_below_1e-1_1e-2_1e-3", settles},
          {"rows", rows}};
}

}  // namespace skorohod::io
