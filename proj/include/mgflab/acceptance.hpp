#pragma once

// The acceptance criteria, shared by tests/acceptance and `mgf verify`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mgflab/curve_lab.hpp"
#include "mgflab/domain_probe.hpp"
#include "mgflab/golden_store.hpp"
#include "mgflab/measures.hpp"
#include "mgflab/oracle.hpp"
#include "mgflab/report.hpp"

namespace mgflab {

struct Check {
  std::string what;
  bool ok = false;
  std::string detail;
  bool informational = false;  // reported, never fails the criterion
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;  // exception text if the criterion could not run

  bool passed() const {
    if (!error.empty()) return false;
    for (const auto& c : checks)
      if (!c.informational && !c.ok) return false;
    return true;
  }
};

struct AcceptanceOptions {
  QuadConfig quad;
  unsigned workers = 4;
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

inline double log_or_nan(const LogValue& v) { return v.is_divergent() ? std::nan("") : v.log(); }

class Criterion {
 public:
  explicit Criterion(CriterionResult& r) : r_(r) {}
  void check(std::string what, bool ok, std::string detail = {}) { r_.checks.push_back({std::move(what), ok, std::move(detail)}); }
  void near(std::string what, double got, double want, double tol) {
    const double err = std::abs(got - want);
    check(std::move(what), err <= tol, fmt("got %.15g want %.15g |err| %.3g", got, want, err) + fmt(" tol %.3g", tol));
  }
  void note(std::string what, std::string detail) { r_.checks.push_back({std::move(what), true, std::move(detail), true}); }

 private:
  CriterionResult& r_;
};

inline void criterion_boundary_value(Criterion& c, const GoldenStore& g, const AcceptanceOptions& o) {
  const double want = g.at("bn", "log_mgf(0,1)").value.log();
  const Point u{0.0, 1.0};
  c.near("closed form log G(0,1) = 1 + log pi", bn_log_mgf(u, o.quad).log(), kLogEPi, 1e-8);
  c.near("golden agrees with 1 + log pi", want, kLogEPi, 1e-8);
  const QuadResult q = mgf_quadrature(*density("bn"), u, o.quad, QuadraturePlan::Full);
  c.check("2-D quadrature converged", q.converged && q.value.is_finite());
  c.near("2-D quadrature of the tilted density", log_or_nan(q.value), want, 1e-4);
  c.near("linear value e*pi", std::exp(bn_log_mgf(u, o.quad).log()), 8.539734, 1e-6);
}

inline void criterion_mass(Criterion& c, const GoldenStore& g, const AcceptanceOptions& o) {
  const double want = g.at("bn", "log_mgf(0,0)").value.log();
  const Point zero{0.0, 0.0};
  c.near("bn_log_mgf(0,0) against the oracle golden", bn_log_mgf(zero, o.quad).log(), want, 1e-8);
  c.near("oracle golden against log(pi e erfc(1))", want,
         std::log(std::numbers::pi * std::numbers::e * std::erfc(1.0)), 1e-8);
  c.near("2-D trapezoid golden", g.at("bn", "log_mass_2d").value.log(), want, 1e-8);
  c.near("registered mass", density("bn")->log_mass.log(), want, 1e-8);
  c.near("2-D quadrature at u=0", log_or_nan(mgf_quadrature(*density("bn"), zero, o.quad, QuadraturePlan::Full).value),
         want, 1e-8);
}

inline void criterion_geometry(Criterion& c, const AcceptanceOptions& o) {
  ProbeConfig pc;
  pc.quad = o.quad;
  const auto bn = density("bn");
  const auto reps = domain_scan(*bn, 16, pc, o.workers);
  double worst = 0.0;
  int disagreements = 0;
  bool axis_ok = true;
  for (const auto& r : reps) {
    disagreements += r.oracle_disagreements;
    const double s = std::abs(r.direction[1]);
    if (s == 0.0) {
      axis_ok = axis_ok && r.theta_star.infinite;
      continue;
    }
    if (r.theta_star.infinite) {
      worst = INFINITY;
      continue;
    }
    worst = std::max(worst, std::abs(r.theta_star.lo - 1.0 / s) * s);
  }
  c.check("16 directions: theta* = 1/|sin phi| within 1e-6 relative", worst <= 1e-6, fmt("worst relative error %.3g", worst));
  c.check("horizontal directions are Infinite", axis_ok);
  c.check("membership oracle and quadrature predicate agree", disagreements == 0,
          fmt("%g disagreements", disagreements));
  const Point d34{0.6, 0.8};
  const RayReport r34 = theta_star(*bn, d34, pc);
  c.near("direction (3,4)/5: theta* = 1.25", r34.theta_star.lo, 1.25, 1.25e-9);
  const Point d4{0.0, 1.0, 0.0, 0.0};
  const RayReport r4 = theta_star(*density("bn⊗bn"), d4, pc);
  c.near("bn⊗bn direction (0,1,0,0): theta* = 1", r4.theta_star.lo, 1.0, 1e-9);
}

inline void criterion_dichotomy(Criterion& c, const AcceptanceOptions& o) {
  ProbeConfig pc;
  pc.quad = o.quad;
  const auto bn = density("bn");
  const Point up{0.0, 1.0}, diag{1.0, 1.0}, left{-2.0, 1.0}, one{1.0};
  const RayReport v = ray_classify(*bn, up, pc);
  c.check("(0,1) is Case2FiniteBoundary", v.classification == RayClass::Case2FiniteBoundary, to_string(v.classification));
  c.near("(0,1) boundary value", log_or_nan(v.boundary_value), kLogEPi, 1e-4);
  for (const auto& [name, dir] : {std::pair{"(1,1)", diag}, std::pair{"(-2,1)", left}}) {
    const RayReport r = ray_classify(*bn, dir, pc);
    c.check(std::string(name) + " is Case1Blowup", r.classification == RayClass::Case1Blowup, to_string(r.classification));
  }
  const std::pair<const char*, RayClass> baselines[] = {
      {"laplace", RayClass::Case1Blowup}, {"damped-cauchy", RayClass::Case2FiniteBoundary}, {"normal", RayClass::EntireRay}};
  for (const auto& [label, want] : baselines) {
    const RayReport r = ray_classify(*density(label), one, pc);
    c.check(std::string(label) + " is " + to_string(want), r.classification == want, to_string(r.classification));
  }
}

inline void criterion_monotone(Criterion& c, const AcceptanceOptions& o) {
  std::vector<double> thetas;
  for (int i = 0; i <= 9; ++i) thetas.push_back(0.1 * i);
  thetas.push_back(0.99);
  thetas.push_back(1.0);
  bool increasing = true;
  double prev = -INFINITY;
  for (double th : thetas) {
    const double v = bn_log_mgf(Point{0.0, th}, o.quad).log();
    if (!(v > prev)) increasing = false;
    prev = v;
  }
  c.check("log G(0,theta) strictly increasing on {0, 0.1, ..., 0.9, 0.99, 1}", increasing);
  const Curve vert = vertical_curve();
  const CurveTrace tr = trace(vert, MgfMethod::ClosedForm, default_schedule(vert), o.quad);
  const LimitEstimate e = limit_extrapolate(tr.samples());
  c.check("vertical trace extrapolation converged", e.converged, fmt("window %.3g", e.window));
  c.near("extrapolated limit equals G(0,1)", log_or_nan(e.limit), bn_log_mgf(Point{0.0, 1.0}, o.quad).log(), 1e-6);
}

inline void criterion_factorization(Criterion& c, const AcceptanceOptions& o) {
  double worst = 0.0;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      const Point u{-2.0 + 0.5 * i, -0.9 + 0.225 * j};
      const Factorization f = bn_factorization(u, o.quad);
      worst = std::max(worst, std::abs(f.product().log() - bn_log_mgf(u, o.quad).log()));
    }
  c.check("I1+I2+I3 = log G on the 9x9 grid within 1e-9", worst <= 1e-9, fmt("worst %.3g", worst));

  const double log_pi = std::log(std::numbers::pi);
  // Vertical ray (0, t) and the curve (s, √(1-s)), s = 1-t: both have
  // u₁²/(1-u₂²) → 0, so the completed-square term I2 vanishes.
  const double t = 1.0 - std::ldexp(1.0, -40);
  const Factorization fv = bn_factorization_gap(0.0, detail::strip_gap(t), o.quad);
  c.near("vertical ray: I1 -> 1", fv.I1.log(), 1.0, 1e-4);
  c.near("vertical ray: I3 -> log pi", fv.I3.log(), log_pi, 1e-4);
  const double s = std::ldexp(1.0, -30);
  const Factorization fs = bn_factorization_gap(s, s, o.quad);
  c.near("curve (s, sqrt(1-s)): I1 -> 1", fs.I1.log(), 1.0, 1e-4);
  c.near("curve (s, sqrt(1-s)): I3 -> log pi", fs.I3.log(), log_pi, 1e-4);
  // On curves where u₁²/(4(1-u₂²)) does not vanish, I3 tracks log π - I2.
  const Curve ec = endpoint_curve_item1(2.0);
  const CurvePoint p = ec(detail::phase_low_t(1LL << 20));
  const Factorization fe = bn_factorization_gap(p.u[0], p.gaps[0], o.quad);
  c.note("endpoint curve, sin=-1 phase near t=1",
         fmt("I1 %.6f I2 %.6f I3 %.6f", fe.I1.log(), fe.I2.log(), fe.I3.log()) +
             fmt(" (I2+I3 %.6f vs log pi %.6f)", fe.I2.log() + fe.I3.log(), log_pi));
}

inline void criterion_item1(Criterion& c, const AcceptanceOptions& o) {
  const Curve ec = endpoint_curve_item1(2.0);
  const EndpointCheck ep = endpoint_contract(ec, default_schedule(ec));
  c.check("endpoint contract: last 10 points within 1e-3 of (0,1) and decreasing", ep.passed,
          fmt("max distance %.3g decreasing %g", ep.max_distance, ep.decreasing));
  const AccumulationReport r = accumulation_points(
      ec, {Level::low(), Level::at_target(Target::finite(50.0)), Level::high()}, MgfMethod::ClosedForm, o.quad, {}, o.workers);
  const DetectedLimit* low = nullptr;
  const DetectedLimit* mid = nullptr;
  for (const auto& d : r.detected) {
    if (d.level == "low") low = &d;
    if (d.level == "p=50") mid = &d;
  }
  c.check("sin=-1 subsequence has a finite limit", low != nullptr);
  if (low) c.near("sin=-1 limit within 1% of 1 + log pi", low->limit.log(), kLogEPi, 0.01 * kLogEPi);
  c.check("sin=+1 subsequence is Divergent",
          std::find(r.divergent_levels.begin(), r.divergent_levels.end(), "high") != r.divergent_levels.end());
  c.check("mid-level subsequence has a finite limit above 1 + log pi", mid && mid->limit.log() > kLogEPi + 1e-3,
          mid ? fmt("limit %.6f", mid->limit.log()) : "missing");
  const double blow = bn_log_mgf(Point{0.9999, 0.9999}, o.quad).log();
  c.check("log G(0.9999, 0.9999) >= 100", blow >= 100.0, fmt("%.6f", blow));
  c.near("saddle growth matches the trapezoid oracle", blow, oracle::bn_log_mgf(0.9999, 0.9999), 1e-8);
}

inline void criterion_item2(Criterion& c, const AcceptanceOptions& o) {
  const Curve c100 = limit_curve_item2(Target::finite(100.0));
  const auto s100 = default_schedule(c100);
  const LimitEstimate e100 = limit_extrapolate(trace(c100, MgfMethod::ClosedForm, s100, o.quad, o.workers).samples());
  c.near("p=100: limit within 2% of log 100", log_or_nan(e100.limit), std::log(100.0), 0.02 * std::log(100.0));
  c.check("p=100: endpoint contract", endpoint_contract(c100, s100).passed);
  const Curve cinf = limit_curve_item2(Target::infinity());
  const auto sinf = default_schedule(cinf);
  const LimitEstimate einf = limit_extrapolate(trace(cinf, MgfMethod::ClosedForm, sinf, o.quad, o.workers).samples());
  c.check("p=inf: trace is Divergent", einf.limit.is_divergent());
  c.check("p=inf: endpoint contract", endpoint_contract(cinf, sinf).passed);
  const Curve cep = limit_curve_item2(Target::finite(std::exp(kLogEPi)));
  c.check("p=e*pi is the vertical ray", cep.kind == CurveKind::Vertical);
  const LimitEstimate eep =
      limit_extrapolate(trace(cep, MgfMethod::ClosedForm, default_schedule(cep), o.quad, o.workers).samples());
  c.check("p=e*pi: extrapolation converged", eep.converged);
  c.near("p=e*pi: limit equals G(0,1)", log_or_nan(eep.limit), bn_log_mgf(Point{0.0, 1.0}, o.quad).log(), 1e-6);
}

inline void criterion_item3(Criterion& c, const AcceptanceOptions& o) {
  const Item3Schedule s = schedule_item3({Target::finite(20.0), Target::finite(200.0)});
  const AccumulationReport r = accumulation_points(s.curve, item3_levels(s.targets), MgfMethod::ClosedForm, o.quad, {}, o.workers);
  c.check("exactly two finite limits", r.detected.size() == 2, fmt("%g detected", static_cast<double>(r.detected.size())));
  c.check("not saturated at infinity", !r.saturated_at_infinity);
  if (r.detected.size() == 2) {
    c.near("first limit within 5% of log 20", r.detected[0].limit.log(), std::log(20.0), 0.05 * std::log(20.0));
    c.near("second limit within 5% of log 200", r.detected[1].limit.log(), std::log(200.0), 0.05 * std::log(200.0));
  }
  const std::vector<double> merged = s.schedule;
  bool increasing = !merged.empty();
  for (std::size_t i = 1; i < merged.size(); ++i) increasing = increasing && merged[i] > merged[i - 1];
  c.check("merged schedule strictly increasing", increasing);
  const Item3Schedule si = schedule_item3({Target::finite(20.0), Target::finite(200.0), Target::infinity()});
  const AccumulationReport ri =
      accumulation_points(si.curve, item3_levels(si.targets), MgfMethod::ClosedForm, o.quad, {}, o.workers);
  c.check("adding inf sets saturated_at_infinity", ri.saturated_at_infinity);
  c.check("finite limits unchanged by adding inf", ri.detected.size() == 2);
}

inline void criterion_tensor(Criterion& c, const AcceptanceOptions& o) {
  const Curve base = endpoint_curve_item1(2.0);
  const Curve b4 = boundary_curve_4d(base);
  const auto sched = default_schedule(base);
  const CurveTrace t2 = trace(base, MgfMethod::ClosedForm, sched, o.quad, o.workers);
  const CurveTrace t4 = trace(b4, MgfMethod::ClosedForm, sched, o.quad, o.workers);
  double worst = 0.0;
  bool membership = true;
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const double d = t4.values[i].log() - t2.values[i].log();
    worst = std::max(worst, std::abs(d - kLogEPi) / std::max(1.0, std::abs(t4.values[i].log())));
    membership = membership && t4.memberships[i] == Membership::BoundaryInV;
  }
  c.check("closed form: log G4 - log G = 1 + log pi at every schedule point", worst <= 1e-13,
          fmt("worst relative deviation %.3g", worst));
  c.check("every 4-D point is a product-boundary point in V", membership);

  const auto bn = density("bn");
  const auto bn2 = density("bn⊗bn");
  double worst_q = 0.0;
  for (double t : {0.0, 0.5, 0.75, 0.875, 0.9375}) {
    const CurvePoint p4 = b4(t);
    const double g4 = log_or_nan(mgf_quadrature(*bn2, p4.u, o.quad, QuadraturePlan::Reduced).value);
    const double g2 = log_or_nan(mgf_quadrature(*bn, base(t).u, o.quad, QuadraturePlan::Full).value);
    worst_q = std::max(worst_q, std::abs(g4 - g2 - kLogEPi));
  }
  c.check("quadrature at 5 spot points: shift 1 + log pi within 1e-6", worst_q <= 1e-6, fmt("worst %.3g", worst_q));

  const std::vector<Level> levels{Level::low(), Level::at_target(Target::finite(50.0)), Level::high()};
  const AccumulationReport a2 = accumulation_points(base, levels, MgfMethod::ClosedForm, o.quad, {}, o.workers);
  const AccumulationReport a4 = accumulation_points(b4, levels, MgfMethod::ClosedForm, o.quad, {}, o.workers);
  bool same = a2.detected.size() == a4.detected.size() && a2.divergent_levels == a4.divergent_levels &&
              a2.saturated_at_infinity == a4.saturated_at_infinity;
  double worst_a = 0.0;
  for (std::size_t i = 0; same && i < a2.detected.size(); ++i)
    worst_a = std::max(worst_a, std::abs(a4.detected[i].limit.log() - a2.detected[i].limit.log() - kLogEPi));
  c.check("4-D accumulation structure = base structure shifted by 1 + log pi", same && worst_a <= 1e-9,
          fmt("worst shift error %.3g", worst_a));
}

inline void criterion_properties(Criterion& c, const AcceptanceOptions& o) {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> U1(-3.0, 3.0), U2(-0.95, 0.95), L(0.0, 1.0);
  auto G = [&](double a, double b) { return bn_log_mgf(Point{a, b}, o.quad).log(); };

  double sym = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = U1(rng), b = U2(rng), g = G(a, b);
    sym = std::max({sym, std::abs(G(-a, b) - g), std::abs(G(a, -b) - g)});
  }
  c.check("symmetry in u1 and u2 within 1e-10 (50 points)", sym <= 1e-10, fmt("worst %.3g", sym));

  double convex = -INFINITY;
  for (int i = 0; i < 100; ++i) {
    const double a1 = U1(rng), a2 = U2(rng), b1 = U1(rng), b2 = U2(rng);
    const double ga = G(a1, a2), gb = G(b1, b2);
    for (double lam : {0.25, 0.5, 0.75})
      convex = std::max(convex, G(lam * a1 + (1 - lam) * b1, lam * a2 + (1 - lam) * b2) - (lam * ga + (1 - lam) * gb));
  }
  c.check("log-convexity on 100 random segments (slack 1e-8)", convex <= 1e-8, fmt("max excess %.3g", convex));

  ProbeConfig pc;
  pc.quad = o.quad;
  auto scan_dump = [&](unsigned w) {
    Json j = Json::array();
    for (const auto& r : domain_scan(*density("bn"), 16, pc, w)) j.push_back(ray_json(r));
    return j.dump();
  };
  const Curve ec = endpoint_curve_item1(2.0);
  auto trace_dump = [&](unsigned w) { return trace_json(trace(ec, MgfMethod::ClosedForm, default_schedule(ec), o.quad, w)).dump(); };
  const Item3Schedule s3 = schedule_item3({Target::finite(20.0), Target::finite(200.0)});
  auto acc_dump = [&](unsigned w) {
    return accumulation_json(accumulation_points(s3.curve, item3_levels(s3.targets), MgfMethod::ClosedForm, o.quad, {}, w)).dump();
  };
  c.check("determinism: domain scan, 4 workers vs serial", scan_dump(4) == scan_dump(1));
  c.check("determinism: curve trace, 4 workers vs serial", trace_dump(4) == trace_dump(1));
  c.check("determinism: accumulation, 4 workers vs serial", acc_dump(4) == acc_dump(1));

  const auto bn = density("bn");
  std::vector<Point> grid;
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) grid.push_back({-2.0 + 0.5 * i, -0.9 + 0.225 * j});
  const auto diffs = parallel_map(grid.size(), o.workers, [&](std::size_t k) {
    const QuadResult q = mgf_quadrature(*bn, grid[k], o.quad, QuadraturePlan::Full);
    return q.value.is_finite() ? std::abs(q.value.log() - bn_log_mgf(grid[k], o.quad).log()) : INFINITY;
  });
  const double worst = *std::max_element(diffs.begin(), diffs.end());
  c.check("2-D quadrature vs closed form on the 9x9 grid within 1e-6", worst <= 1e-6, fmt("worst %.3g", worst));
}

}  // namespace detail

struct CriterionSpec {
  int id;
  const char* title;
  std::function<void(detail::Criterion&, const GoldenStore&, const AcceptanceOptions&)> run;
};

inline const std::vector<CriterionSpec>& acceptance_criteria() {
  using detail::Criterion;
  static const std::vector<CriterionSpec> specs = {
      {1, "boundary value G(0,1) = e*pi", detail::criterion_boundary_value},
      {2, "mass consistency", detail::criterion_mass},
      {3, "domain geometry", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_geometry(c, o); }},
      {4, "boundary dichotomy along rays", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_dichotomy(c, o); }},
      {5, "monotone convergence on the vertical ray", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_monotone(c, o); }},
      {6, "factorization", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_factorization(c, o); }},
      {7, "oscillating curve into (0,1): accumulation points", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_item1(c, o); }},
      {8, "curves with prescribed limit", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_item2(c, o); }},
      {9, "prescribed countable accumulation set", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_item3(c, o); }},
      {10, "four-dimensional boundary curve", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_tensor(c, o); }},
      {11, "property suites", [](Criterion& c, const GoldenStore&, const AcceptanceOptions& o) { detail::criterion_properties(c, o); }},
  };
  return specs;
}

/// Runs the selected criteria (all when `only` is empty), in id order.
inline std::vector<CriterionResult> run_acceptance(const GoldenStore& goldens, const std::vector<int>& only = {},
                                                   const AcceptanceOptions& opts = {}) {
  std::vector<CriterionResult> out;
  for (const auto& spec : acceptance_criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), spec.id) == only.end()) continue;
    CriterionResult r;
    r.id = spec.id;
    r.title = spec.title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      detail::Criterion c(r);
      spec.run(c, goldens, opts);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mgflab
