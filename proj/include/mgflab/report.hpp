#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mgflab/curve_lab.hpp"
#include "mgflab/domain_probe.hpp"
#include "mgflab/golden_store.hpp"

namespace mgflab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// Command output. `results` is deterministic for fixed inputs; wall-clock
/// numbers live only in `timings`.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json versions = Json::object();
  Json timings = Json::object();

  Json to_json() const {
    return Json{{"command", command}, {"inputs", inputs}, {"results", results}, {"versions", versions},
                {"timings", timings}};
  }

  static Report from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.versions = j.at("versions");
    r.timings = j.at("timings");
    return r;
  }

  bool operator==(const Report&) const = default;
};

inline Json log_value_json(const LogValue& v) {
  if (v.is_divergent()) return "divergent";
  if (v.is_zero()) return "zero";
  return v.log();
}

inline LogValue log_value_from_json(const Json& j) {
  if (j.is_string()) return parse_log_value(j.get<std::string>());
  return LogValue::from_log(j.get<double>());
}

inline Json config_json(const QuadConfig& c) {
  return Json{{"rel_tol", c.rel_tol},           {"abs_tol_log", c.abs_tol_log},   {"max_subdivisions", c.max_subdivisions},
              {"initial_window", c.initial_window}, {"window_growth", c.window_growth}, {"max_windows", c.max_windows}};
}

inline Json versions_json(const QuadConfig& c) { return Json{{"mgflab", kVersion}, {"quad", config_json(c)}}; }

inline Json point_json(std::span<const double> u) {
  Json a = Json::array();
  for (double x : u) a.push_back(x);
  return a;
}

inline Json ray_json(const RayReport& r) {
  Json j;
  j["direction"] = point_json(r.direction);
  if (r.theta_star.infinite)
    j["theta_star"] = Json{{"kind", "infinite"}, {"lo", r.theta_star.lo}};
  else
    j["theta_star"] = Json{{"kind", "finite"}, {"lo", r.theta_star.lo}, {"hi", r.theta_star.hi}};
  j["classification"] = to_string(r.classification);
  if (r.classification == RayClass::Case2FiniteBoundary || r.classification == RayClass::Inconsistent)
    j["boundary_value"] = log_value_json(r.boundary_value);
  if (!r.samples.empty()) {
    j["direct_value"] = log_value_json(r.direct_value);
    j["extrapolation"] = Json{{"limit", log_value_json(r.extrapolation.limit)},
                              {"window", r.extrapolation.window},
                              {"converged", r.extrapolation.converged},
                              {"level", r.extrapolation.level}};
    Json s = Json::array();
    for (const auto& x : r.samples) s.push_back(Json{{"theta", x.t}, {"log_g", log_value_json(x.value)}});
    j["samples"] = s;
  }
  j["predicate_evaluations"] = r.predicate_evaluations;
  j["oracle_disagreements"] = r.oracle_disagreements;
  j["warnings"] = r.warnings;
  return j;
}

inline Json trace_json(const CurveTrace& tr) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < tr.schedule.size(); ++i)
    pts.push_back(Json{{"t", tr.schedule[i]},
                       {"log_g", log_value_json(tr.values[i])},
                       {"status", to_string(tr.values[i].tag())},
                       {"membership", to_string(tr.memberships[i])}});
  return Json{{"curve", tr.curve_label}, {"evaluator", to_string(tr.evaluator)}, {"points", pts}};
}

inline Json accumulation_json(const AccumulationReport& r) {
  Json det = Json::array();
  for (const auto& d : r.detected)
    det.push_back(Json{{"level", d.level},
                       {"limit", log_value_json(d.limit)},
                       {"residual", d.residual},
                       {"converged", d.converged},
                       {"subsequence", d.subsequence}});
  return Json{{"curve", r.curve_label},
              {"detected", det},
              {"divergent_levels", r.divergent_levels},
              {"saturated_at_infinity", r.saturated_at_infinity},
              {"notes", r.notes}};
}

/// Number in log scale as printed in tables and CSV.
inline std::string format_number(double x) {
  std::ostringstream s;
  s << std::setprecision(15) << x;
  return s.str();
}

inline std::string format_json_value(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) return format_number(j.get<double>());
  return j.dump();
}

}  // namespace mgflab
