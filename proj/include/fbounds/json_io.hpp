#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "fbounds/model.hpp"

namespace fbounds {

// Distribution-input format:
//   {"observational": {"p": {"a,b,y": prob, ...}},
//    "factorial":     {"r": {"a,b,y": prob, ...}}}
// with keys like "0,1,1". Either section may be omitted; omitted cells are
// zero. Probabilities are validated against the type invariants at 1e-9.
struct ScenarioInput {
  std::optional<ObservationalDist> obs;
  std::optional<FactorialDist> fact;
};

namespace detail {

inline std::array<int, 3> parse_aby_key(const std::string& key) {
  std::array<int, 3> out{};
  if (key.size() != 5 || key[1] != ',' || key[3] != ',')
    throw model_error("bad cell key '" + key + "', expected 'a,b,y'");
  for (int i = 0; i < 3; ++i) {
    const char c = key[2 * i];
    if (c != '0' && c != '1')
      throw model_error("bad cell key '" + key + "', entries must be 0 or 1");
    out[i] = c - '0';
  }
  return out;
}

template <typename Dist>
Dist parse_cells(const nlohmann::json& map, const char* what) {
  Dist dist;
  for (const auto& [key, value] : map.items()) {
    const auto [a, b, y] = parse_aby_key(key);
    if (!value.is_number())
      throw model_error(std::string(what) + " cell " + key + " is not a number");
    dist.prob(a, b, y) = value.template get<double>();
  }
  return dist;
}

}  // namespace detail

inline ScenarioInput parse_scenario_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw model_error(std::string("scenario json: ") + e.what());
  }
  if (!doc.is_object()) throw model_error("scenario json: top level must be an object");

  ScenarioInput input;
  if (doc.contains("observational")) {
    const auto& section = doc.at("observational");
    if (!section.is_object() || !section.contains("p"))
      throw model_error("scenario json: 'observational' must hold a 'p' map");
    ObservationalDist obs =
        detail::parse_cells<ObservationalDist>(section.at("p"), "observational");
    obs.validate(kInputTol);
    input.obs = obs;
  }
  if (doc.contains("factorial")) {
    const auto& section = doc.at("factorial");
    if (!section.is_object() || !section.contains("r"))
      throw model_error("scenario json: 'factorial' must hold an 'r' map");
    FactorialDist fact = detail::parse_cells<FactorialDist>(section.at("r"), "factorial");
    fact.validate(kInputTol);
    input.fact = fact;
  }
  if (!input.obs && !input.fact)
    throw model_error("scenario json: need 'observational' and/or 'factorial'");
  return input;
}

inline nlohmann::ordered_json scenario_to_json(const std::optional<ObservationalDist>& obs,
                                               const std::optional<FactorialDist>& fact) {
  nlohmann::ordered_json doc;
  auto key = [](int a, int b, int y) {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(y);
  };
  if (obs) {
    nlohmann::ordered_json cells;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) cells[key(a, b, y)] = obs->prob(a, b, y);
    doc["observational"]["p"] = cells;
  }
  if (fact) {
    nlohmann::ordered_json cells;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) cells[key(a, b, y)] = fact->prob(a, b, y);
    doc["factorial"]["r"] = cells;
  }
  return doc;
}

}  // namespace fbounds
