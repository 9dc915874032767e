#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hornopt/minstats.hpp"
#include "hornopt/neighbors.hpp"
#include "hornopt/optimize.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt::report {

using nlohmann::json;

inline json ops_json(const OpCount& ops) { return {{"mul", ops.mul}, {"add", ops.add}, {"total", ops.total()}}; }

inline json config_json(const SearchConfig& c) {
  return {{"N", c.iterations},
          {"kind", std::string(to_token(c.kind))},
          {"seed", c.seed},
          {"t_initial", c.t_initial},
          {"t_final", c.t_final},
          {"init", std::string(to_token(c.init))}};
}

inline json run_json(const std::string& expression_id, const SearchConfig& cfg, const RunResult& r, const VarTable& vars,
                     bool with_trace) {
  json j = {{"expression_id", expression_id},
            {"config", config_json(cfg)},
            {"best_total", r.best_ops.total()},
            {"best_mul", r.best_ops.mul},
            {"best_add", r.best_ops.add},
            {"best_scheme", r.best_scheme.names(vars)},
            {"accepted", r.accepted},
            {"proposed", r.proposed},
            {"wall_seconds", r.wall_seconds}};
  if (with_trace) {
    json t = json::array();
    for (const auto& p : r.trace) t.push_back({{"iteration", p.iteration}, {"total", p.total}});
    j["trace"] = std::move(t);
  }
  return j;
}

inline json flatness_json(const std::string& expression_id, const FlatnessReport& rep, const VarTable& vars) {
  json levels = json::array();
  for (const auto& l : rep.levels) {
    levels.push_back({{"radius", l.radius},
                      {"fraction", l.fraction},
                      {"close", l.close},
                      {"evaluated", l.evaluated},
                      {"population", l.population},
                      {"sampled", l.sampled}});
  }
  return {{"expression_id", expression_id},
          {"state", rep.state.names(vars)},
          {"reference_total", rep.reference_total},
          {"threshold", rep.threshold},
          {"sample_size", rep.sample_size ? json(*rep.sample_size) : json(nullptr)},
          {"levels", std::move(levels)}};
}

/// Writes one CSV row; fields containing separators or quotes are quoted.
inline void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") == std::string::npos) {
      out << f;
      continue;
    }
    out << '"';
    for (char c : f) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"';
  }
  out << '\n';
}

/// Shortest decimal text that reads back to the same double.
inline std::string number(double v) { return json(v).dump(); }

}  // namespace hornopt::report
