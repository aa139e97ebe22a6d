#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "searchgame/game.hpp"

namespace searchgame {

// Game-spec document format (JSON):
//   {
//     "states":   ["1", "2", ...],              n labels
//     "matrices": [[...], ...],                 each n x n, rows nested or
//                                               flat row-major length n*n
//     "repeat":   "cycle" | "hold_last",        optional, default hold_last
//     "initial":  [p_0, ..., p_{n-1}]
//   }

inline RawGameSpec read_raw_spec(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(std::string("spec parse error: ") + e.what());
  }
  RawGameSpec raw;
  try {
    if (!doc.is_object()) throw SpecError("spec document must be an object");
    raw.states = doc.at("states").get<std::vector<std::string>>();
    for (const auto& m : doc.at("matrices")) {
      std::vector<double> flat;
      if (m.is_array() && !m.empty() && m.front().is_array()) {
        for (const auto& row : m)
          for (const auto& e : row) flat.push_back(e.get<double>());
      } else {
        flat = m.get<std::vector<double>>();
      }
      raw.matrices.push_back(std::move(flat));
    }
    if (doc.contains("repeat")) raw.repeat = doc.at("repeat").get<std::string>();
    raw.initial = doc.at("initial").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("spec field error: ") + e.what());
  }
  return raw;
}

inline GameSpec load_game_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw SpecError("cannot open spec file: " + path);
  return validate_spec(read_raw_spec(is));
}

inline nlohmann::json spec_to_json(const GameSpec& spec) {
  nlohmann::json doc;
  doc["states"] = spec.states().labels();
  nlohmann::json matrices = nlohmann::json::array();
  int n = spec.state_count();
  for (const auto& m : spec.schedule().matrices()) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < n; ++j) row.push_back(m(i, j));
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  doc["matrices"] = std::move(matrices);
  doc["repeat"] =
      spec.schedule().rule() == RepeatRule::cycle ? "cycle" : "hold_last";
  doc["initial"] = spec.initial().probs();
  return doc;
}

inline void write_game_spec(const GameSpec& spec, std::ostream& os) {
  os << spec_to_json(spec).dump(2) << "\n";
}

inline void save_game_spec(const GameSpec& spec, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw SpecError("cannot write spec file: " + path);
  write_game_spec(spec, os);
}

}  // namespace searchgame
