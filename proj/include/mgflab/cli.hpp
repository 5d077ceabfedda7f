#pragma once

// The `mgf` command line: eval, ray, scan, curve {trace,accumulate}, verify.
// Exit codes: 0 success, 2 usage error, 3 divergent result, 4 verification
// failure, 1 any other error.

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgflab/acceptance.hpp"
#include "mgflab/curve_lab.hpp"
#include "mgflab/domain_probe.hpp"
#include "mgflab/golden_store.hpp"
#include "mgflab/measures.hpp"
#include "mgflab/report.hpp"

namespace mgflab::cli {

enum ExitCode { kOk = 0, kError = 1, kUsage = 2, kDivergent = 3, kVerifyFailed = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return x;
}

inline Point parse_point(const std::string& s) {
  if (s.empty()) throw UsageError("empty coordinate list");
  Point p;
  for (const auto& part : split(s, ',')) p.push_back(parse_double(part));
  return p;
}

inline Target parse_target(const std::string& s) {
  if (s == "inf" || s == "infinity") return Target::infinity();
  if (s == "e*pi" || s == "epi") return Target::finite(std::exp(kLogEPi));
  const double p = parse_double(s);
  if (!(p > 0.0) || std::log(p) < kLogEPi - 1e-12) throw UsageError("target must be at least e*pi: " + s);
  return Target::finite(p);
}

inline std::vector<Target> parse_targets(const std::string& s) {
  std::vector<Target> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_target(part));
  if (out.empty()) throw UsageError("no targets given");
  return out;
}

inline Level parse_level(const std::string& s) {
  if (s == "low") return Level::low();
  if (s == "high") return Level::high();
  if (s.rfind("q=", 0) == 0) {
    const double q = parse_double(s.substr(2));
    if (!(q >= 1.0)) throw UsageError("oscillator level must be >= 1: " + s);
    return Level::at_oscillator(q);
  }
  if (s.rfind("p=", 0) == 0) return Level::at_target(parse_target(s.substr(2)));
  throw UsageError("unknown level '" + s + "' (expected low, high, q=<level> or p=<target>)");
}

struct CurveSpec {
  Curve curve;
  std::vector<Level> levels;                   // default levels for `accumulate`
  std::optional<std::vector<double>> schedule;  // default schedule for `trace`, when not geometric
};

/// Curve names: paper-item1, endpoint-item1[:beta=B], item2:p=<P|inf>,
/// item3:targets=<P,...>, bn4d:base=<curve>, vertical, constant:<u1>,<u2>.
inline CurveSpec parse_curve(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto keyed = [&](const std::string& key) {
    if (arg.rfind(key + "=", 0) != 0) throw UsageError("curve '" + name + "' expects " + key + "=...: " + spec);
    return arg.substr(key.size() + 1);
  };
  if (name == "paper-item1") {
    if (!arg.empty()) throw UsageError("paper-item1 takes no parameters");
    return {h_curve(), {Level::low(), Level::at_oscillator(2.0), Level::high()}, std::nullopt};
  }
  if (name == "endpoint-item1") {
    const double beta = arg.empty() ? 2.0 : parse_double(keyed("beta"));
    if (!(beta > 1.0)) throw UsageError("beta must exceed 1");
    return {endpoint_curve_item1(beta), {Level::low(), Level::at_target(Target::finite(50.0)), Level::high()}, std::nullopt};
  }
  if (name == "item2") return {limit_curve_item2(parse_target(keyed("p"))), {Level::low()}, std::nullopt};
  if (name == "item3") {
    const Item3Schedule s = schedule_item3(parse_targets(keyed("targets")));
    return {s.curve, item3_levels(s.targets), s.schedule};
  }
  if (name == "bn4d") {
    CurveSpec base = parse_curve(keyed("base"));
    return {boundary_curve_4d(base.curve), base.levels, base.schedule};
  }
  if (name == "vertical") return {vertical_curve(), {Level::low()}, std::nullopt};
  if (name == "constant") {
    const Point p = parse_point(arg);
    if (p.size() != 2) throw UsageError("constant curve needs u1,u2");
    return {constant_curve(p[0], p[1]), {Level::low()}, std::nullopt};
  }
  throw UsageError("unknown curve '" + name + "'");
}

inline std::vector<double> parse_schedule(const std::string& s, const Curve& c) {
  if (s.rfind("geometric:", 0) != 0) throw UsageError("schedule must be geometric:j0,j1");
  const auto parts = split(s.substr(10), ',');
  if (parts.size() != 2) throw UsageError("schedule must be geometric:j0,j1");
  const double j0 = parse_double(parts[0]), j1 = parse_double(parts[1]);
  if (j0 != std::floor(j0) || j1 != std::floor(j1) || j0 < 0 || j1 < j0 || j1 > 52)
    throw UsageError("geometric schedule needs integers 0 <= j0 <= j1 <= 52");
  auto sched = default_schedule(c, static_cast<int>(j0), static_cast<int>(j1));
  if (sched.empty()) throw UsageError("schedule has no points at or after the curve start t0");
  return sched;
}

inline MgfMethod parse_method(const std::string& s) {
  if (s == "closed-form" || s == "closed") return MgfMethod::ClosedForm;
  if (s == "quadrature" || s == "quad") return MgfMethod::Quadrature;
  throw UsageError("method must be closed-form or quadrature");
}

inline DensityPtr lookup_density(const std::string& label) {
  try {
    return density(label);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string status_of(const LogValue& v) { return to_string(v.tag()); }

inline std::string value_text(const LogValue& v) {
  if (v.is_divergent()) return "divergent";
  if (v.is_zero()) return "zero";
  return format_number(v.log());
}

inline std::string join_point(std::span<const double> u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + format_number(u[i]);
  return s;
}

// Left-aligned cell of at least `width` columns, always followed by a gap.
inline std::string pad(const std::string& s, std::size_t width) {
  return s.size() + 2 > width ? s + "  " : s + std::string(width - s.size(), ' ');
}

// Key/value table for flat objects, one row per field.
inline void print_kv(std::ostream& out, const Json& obj, const std::string& prefix = "") {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object()) {
      print_kv(out, *it, key + ".");
    } else if (it->is_array()) {
      if (!it->empty() && it->front().is_object()) continue;  // tables are printed separately
      std::string s;
      for (std::size_t i = 0; i < it->size(); ++i) s += (i ? "," : "") + format_json_value((*it)[i]);
      out << pad(key, 28) << s << '\n';
    } else {
      out << pad(key, 28) << format_json_value(*it) << '\n';
    }
  }
}

// Inputs followed by results, without repeating shared keys.
inline Json merged(const Report& r) {
  Json m = r.inputs;
  m.update(r.results);
  return m;
}

struct Options {
  std::string density;
  std::string u, dir, curve, schedule, levels, out = "table", method = "closed-form", plan = "reduced";
  std::string golden_path, only;
  double tol = 0.0;
  unsigned workers = 1;
  std::size_t n = 16;
  bool factorization = false, linear = false, refresh = false, understand = false, verbose = false;
};

inline QuadConfig quad_config(const Options& o) {
  QuadConfig c;
  if (o.tol > 0.0) c.rel_tol = o.tol;
  c.validate();
  return c;
}

inline void emit(std::ostream& out, const Options& o, const Report& r, const std::function<void()>& table,
                 const std::function<void()>& csv) {
  if (o.out == "json")
    out << r.to_json().dump(2) << '\n';
  else if (o.out == "csv")
    csv();
  else
    table();
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  const DensityPtr d = lookup_density(o.density);
  if (o.u.empty()) throw UsageError("eval needs --u");
  const Point u = parse_point(o.u);
  if (u.size() != d->dimension) throw UsageError("--u has " + std::to_string(u.size()) + " coordinates, density '" +
                                                 d->label + "' has dimension " + std::to_string(d->dimension));
  const QuadConfig cfg = quad_config(o);
  const MgfMethod method = parse_method(o.method);
  const QuadraturePlan plan = o.plan == "full" ? QuadraturePlan::Full : QuadraturePlan::Reduced;
  if (o.plan != "full" && o.plan != "reduced") throw UsageError("--plan must be full or reduced");
  const MgfPoint p = evaluate_mgf(*d, u, method, cfg, plan);

  Report r;
  r.command = "eval";
  r.inputs = Json{{"density", d->label}, {"u", point_json(u)}, {"method", to_string(method)}};
  if (method == MgfMethod::Quadrature) r.inputs["plan"] = o.plan;
  r.versions = versions_json(cfg);
  r.results = Json{{"method", to_string(p.method)}, {"log_g", log_value_json(p.value)}, {"status", status_of(p.value)}};
  if (d->domain_oracle) r.results["membership"] = to_string(d->domain_oracle(u));
  if (o.linear) {
    if (p.value.is_finite() && (p.value.is_zero() || p.value.log() <= 700.0))
      r.results["linear"] = p.value.linear();
    else
      r.results["linear"] = "refused: above overflow cap";
  }
  if (o.factorization) {
    if (d->label != "bn") throw UsageError("--factorization is available for density 'bn' only");
    if (!(std::abs(u[1]) < 1.0)) throw UsageError("--factorization needs |u2| < 1");
    const Factorization f = bn_factorization(u, cfg);
    r.results["factorization"] = Json{{"I1", log_value_json(f.I1)}, {"I2", log_value_json(f.I2)}, {"I3", log_value_json(f.I3)}};
  }
  emit(
      out, o, r, [&] { print_kv(out, merged(r)); },
      [&] {
        out << "density,u,log_g,status\n";
        out << d->label << ",\"" << join_point(u) << "\"," << value_text(p.value) << ',' << status_of(p.value) << '\n';
      });
  return p.value.is_divergent() ? kDivergent : kOk;
}

inline ProbeConfig probe_config(const Options& o) {
  ProbeConfig pc;
  pc.quad = quad_config(o);
  pc.sample_method = parse_method(o.method);
  return pc;
}

inline int cmd_ray(const Options& o, std::ostream& out) {
  const DensityPtr d = lookup_density(o.density);
  if (o.dir.empty()) throw UsageError("ray needs --dir");
  const Point dir = parse_point(o.dir);
  if (dir.size() != d->dimension) throw UsageError("--dir dimension does not match the density");
  if (std::all_of(dir.begin(), dir.end(), [](double x) { return x == 0.0; })) throw UsageError("--dir must be nonzero");
  const ProbeConfig pc = probe_config(o);
  const RayReport rr = ray_classify(*d, dir, pc);
  Report r;
  r.command = "ray";
  r.inputs = Json{{"density", d->label}, {"direction", point_json(dir)}};
  r.versions = versions_json(pc.quad);
  r.results = ray_json(rr);
  emit(
      out, o, r,
      [&] {
        print_kv(out, merged(r));
        if (!rr.samples.empty()) {
          out << '\n' << pad("theta", 26) << "log_g\n";
          for (const auto& s : rr.samples) out << pad(format_number(s.t), 26) << value_text(s.value) << '\n';
        }
      },
      [&] {
        out << "theta,log_g,status\n";
        for (const auto& s : rr.samples) out << format_number(s.t) << ',' << value_text(s.value) << ',' << status_of(s.value) << '\n';
      });
  return kOk;
}

inline int cmd_scan(const Options& o, std::ostream& out) {
  const DensityPtr d = lookup_density(o.density);
  if (o.n < 1) throw UsageError("--n must be at least 1");
  const ProbeConfig pc = probe_config(o);
  std::vector<Point> dirs;
  if (!o.dir.empty()) {
    for (const auto& part : split(o.dir, ';')) dirs.push_back(parse_point(part));
    for (const auto& p : dirs)
      if (p.size() != d->dimension) throw UsageError("--dir dimension does not match the density");
  } else if (d->dimension == 2) {
    dirs = scan_directions(o.n);
  } else if (d->dimension == 1) {
    dirs = {{1.0}, {-1.0}};
  } else {
    throw UsageError("angular scan needs a 2-dimensional density; pass explicit directions with --dir 'a,b,..;c,d,..'");
  }
  const auto reps = domain_scan(*d, std::span<const Point>(dirs), pc, o.workers);
  Report r;
  r.command = "scan";
  r.inputs = Json{{"density", d->label}, {"directions", dirs.size()}};
  r.versions = versions_json(pc.quad);
  Json rays = Json::array();
  for (const auto& rep : reps) {
    Json j = ray_json(rep);
    j.erase("samples");
    rays.push_back(j);
  }
  r.results = Json{{"rays", rays}};
  auto theta_text = [](const RayReport& rep) {
    return rep.theta_star.infinite ? std::string("infinite") : format_number(rep.theta_star.lo);
  };
  emit(
      out, o, r,
      [&] {
        out << pad("direction", 40) << pad("theta_star", 22) << "classification\n";
        for (const auto& rep : reps)
          out << pad(join_point(rep.direction), 40) << pad(theta_text(rep), 22) << to_string(rep.classification) << '\n';
      },
      [&] {
        out << "direction,theta_lo,theta_hi,classification,oracle_disagreements\n";
        for (const auto& rep : reps)
          out << '"' << join_point(rep.direction) << "\"," << theta_text(rep) << ','
              << (rep.theta_star.infinite ? std::string("infinite") : format_number(rep.theta_star.hi)) << ','
              << to_string(rep.classification) << ',' << rep.oracle_disagreements << '\n';
      });
  return kOk;
}

inline int cmd_curve_trace(const Options& o, std::ostream& out) {
  if (o.curve.empty()) throw UsageError("curve trace needs --curve");
  const CurveSpec spec = parse_curve(o.curve);
  const QuadConfig cfg = quad_config(o);
  const MgfMethod method = parse_method(o.method);
  std::vector<double> sched;
  if (!o.schedule.empty())
    sched = parse_schedule(o.schedule, spec.curve);
  else
    sched = spec.schedule ? *spec.schedule : default_schedule(spec.curve);
  const CurveTrace tr = trace(spec.curve, method, sched, cfg, o.workers);
  Report r;
  r.command = "curve trace";
  r.inputs = Json{{"curve", o.curve}, {"evaluator", to_string(method)}, {"points", sched.size()}};
  r.versions = versions_json(cfg);
  r.results = trace_json(tr);
  r.results["notes"] = spec.curve.notes;
  emit(
      out, o, r,
      [&] {
        out << "curve " << spec.curve.label << '\n';
        for (const auto& n : spec.curve.notes) out << "note  " << n << '\n';
        out << pad("t", 26) << pad("log_g", 26) << "status\n";
        for (std::size_t i = 0; i < sched.size(); ++i)
          out << pad(format_number(sched[i]), 26) << pad(value_text(tr.values[i]), 26) << status_of(tr.values[i]) << '\n';
      },
      [&] {
        out << "t,log_g,status\n";
        for (std::size_t i = 0; i < sched.size(); ++i)
          out << format_number(sched[i]) << ',' << value_text(tr.values[i]) << ',' << status_of(tr.values[i]) << '\n';
      });
  return kOk;
}

inline int cmd_curve_accumulate(const Options& o, std::ostream& out) {
  if (o.curve.empty()) throw UsageError("curve accumulate needs --curve");
  const CurveSpec spec = parse_curve(o.curve);
  std::vector<Level> levels = spec.levels;
  if (!o.levels.empty()) {
    levels.clear();
    for (const auto& part : split(o.levels, ',')) levels.push_back(parse_level(part));
  }
  const QuadConfig cfg = quad_config(o);
  const MgfMethod method = parse_method(o.method);
  const AccumulationReport acc = accumulation_points(spec.curve, levels, method, cfg, {}, o.workers);
  Report r;
  r.command = "curve accumulate";
  Json lv = Json::array();
  for (const auto& l : levels) lv.push_back(to_string(l));
  r.inputs = Json{{"curve", o.curve}, {"evaluator", to_string(method)}, {"levels", lv}};
  r.versions = versions_json(cfg);
  r.results = accumulation_json(acc);
  emit(
      out, o, r,
      [&] {
        out << "curve " << acc.curve_label << '\n';
        out << pad("level", 21) << pad("limit", 26) << pad("residual", 24) << "converged\n";
        for (const auto& d : acc.detected)
          out << pad(d.level, 21) << pad(value_text(d.limit), 26) << pad(format_number(d.residual), 24)
              << (d.converged ? "yes" : "no") << '\n';
        for (const auto& l : acc.divergent_levels) out << pad(l, 21) << "divergent\n";
        out << "saturated_at_infinity " << (acc.saturated_at_infinity ? "true" : "false") << '\n';
        for (const auto& n : acc.notes) out << "note  " << n << '\n';
      },
      [&] {
        out << "level,limit,residual,converged\n";
        for (const auto& d : acc.detected)
          out << d.level << ',' << value_text(d.limit) << ',' << format_number(d.residual) << ','
              << (d.converged ? "true" : "false") << '\n';
        for (const auto& l : acc.divergent_levels) out << l << ",divergent,,\n";
      });
  return kOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  const std::string path = o.golden_path.empty() ? GoldenStore::default_path() : o.golden_path;
  if (o.refresh) {
    if (!o.understand) throw UsageError("--refresh-goldens overwrites the golden store; add --i-understand to proceed");
    const GoldenStore g = GoldenStore::generate();
    g.save(path);
    out << "wrote " << g.entries().size() << " golden entries to " << path << '\n';
    return kOk;
  }
  std::vector<int> only;
  if (!o.only.empty())
    for (const auto& part : split(o.only, ',')) {
      const double id = parse_double(part);
      if (id != std::floor(id) || id < 1 || id > 11) throw UsageError("--only takes criterion ids 1..11");
      only.push_back(static_cast<int>(id));
    }
  const GoldenStore goldens = GoldenStore::load(path);
  AcceptanceOptions ao;
  ao.quad = quad_config(o);
  ao.workers = std::max(1u, o.workers);
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_acceptance(goldens, only, ao);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Report r;
  r.command = "verify";
  r.inputs = Json{{"golden_path", path}, {"only", only}};
  r.versions = versions_json(ao.quad);
  Json crit = Json::array();
  int failed = 0;
  for (const auto& c : results) {
    Json checks = Json::array();
    for (const auto& k : c.checks)
      checks.push_back(Json{{"check", k.what}, {"ok", k.ok}, {"informational", k.informational}, {"detail", k.detail}});
    crit.push_back(Json{{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"error", c.error}, {"checks", checks}});
    r.timings["criterion_" + std::to_string(c.id) + "_s"] = c.seconds;
    if (!c.passed()) ++failed;
  }
  r.timings["total_s"] = total;
  r.results = Json{{"criteria", crit}, {"passed", static_cast<int>(results.size()) - failed}, {"failed", failed}};
  emit(
      out, o, r,
      [&] {
        for (const auto& c : results) {
          out << "criterion " << std::setw(2) << std::right << c.id << "  " << (c.passed() ? "PASS" : "FAIL") << "  "
              << c.title << '\n';
          for (const auto& k : c.checks)
            if (o.verbose || !k.ok || k.informational)
              out << "    " << (k.informational ? "info" : k.ok ? "ok  " : "FAIL") << "  " << k.what
                  << (k.detail.empty() ? "" : ": " + k.detail) << '\n';
          if (!c.error.empty()) out << "    error  " << c.error << '\n';
        }
        out << results.size() - failed << " passed, " << failed << " failed\n";
      },
      [&] {
        out << "criterion,title,status\n";
        for (const auto& c : results) out << c.id << ",\"" << c.title << "\"," << (c.passed() ? "pass" : "fail") << '\n';
      });
  return failed ? kVerifyFailed : kOk;
}

/// Entry point; `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mgf: moment generating functions near the boundary of their domain", "mgf"};
  app.require_subcommand(1);
  Options o;

  auto workers = [&](CLI::App* s) { s->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 256u)); };
  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    s->add_option("--tol", o.tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
  };
  auto density_arg = [&](CLI::App* s) {
    s->add_option("density,--density", o.density, "Density label: bn, laplace, damped-cauchy, normal, bn⊗bn, product:a,b")
        ->required();
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate log G(u)");
  density_arg(eval);
  eval->add_option("--u", o.u, "Point u, comma separated");
  eval->add_option("--method", o.method, "closed-form or quadrature");
  eval->add_option("--plan", o.plan, "Quadrature representation: full or reduced");
  eval->add_flag("--factorization", o.factorization, "Also print I1, I2, I3");
  eval->add_flag("--linear", o.linear, "Also print G(u) itself when below the overflow cap");
  common(eval);

  CLI::App* ray = app.add_subcommand("ray", "Locate theta* along a ray and classify the boundary");
  density_arg(ray);
  ray->add_option("--dir", o.dir, "Direction, comma separated");
  ray->add_option("--method", o.method, "Evaluator for the samples");
  common(ray);

  CLI::App* scan = app.add_subcommand("scan", "Scan theta* over directions");
  density_arg(scan);
  scan->add_option("--n", o.n, "Number of equally spaced directions");
  scan->add_option("--dir", o.dir, "Explicit directions 'a,b;c,d;...'");
  scan->add_option("--method", o.method, "Evaluator for the samples");
  workers(scan);
  common(scan);

  CLI::App* curve = app.add_subcommand("curve", "Curves into the boundary");
  curve->require_subcommand(1);
  CLI::App* ctrace = curve->add_subcommand("trace", "log G along a curve");
  CLI::App* cacc = curve->add_subcommand("accumulate", "Accumulation points of G along a curve");
  for (CLI::App* s : {ctrace, cacc}) {
    s->add_option("--curve", o.curve, "Curve name, e.g. endpoint-item1:beta=2");
    s->add_option("--method", o.method, "closed-form or quadrature");
    workers(s);
    common(s);
  }
  ctrace->add_option("--schedule", o.schedule, "geometric:j0,j1 for t_j = 1 - 2^-j");
  cacc->add_option("--levels", o.levels, "Levels: low,high,q=<level>,p=<target>");

  CLI::App* verify = app.add_subcommand("verify", "Run the acceptance criteria");
  verify->add_option("--only", o.only, "Comma separated criterion ids");
  verify->add_option("--golden-path", o.golden_path, "Golden store (default: $MGF_GOLDEN_PATH or the shipped store)");
  verify->add_flag("--refresh-goldens", o.refresh, "Regenerate the golden store");
  verify->add_flag("--i-understand", o.understand, "Confirm --refresh-goldens");
  verify->add_flag("--verbose", o.verbose, "Print every check");
  workers(verify);
  common(verify);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (ray->parsed()) return cmd_ray(o, out);
    if (scan->parsed()) return cmd_scan(o, out);
    if (ctrace->parsed()) return cmd_curve_trace(o, out);
    if (cacc->parsed()) return cmd_curve_accumulate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "mgf: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "mgf: error: " << e.what() << '\n';
    return kError;
  }
  err << "mgf: no command\n";
  return kUsage;
}

}  // namespace mgflab::cli
