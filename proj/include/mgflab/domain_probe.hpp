#pragma once

// Ray probing: locate θ* = sup{θ > 0 : G(θu) < ∞} along a direction and
// classify how G behaves as θ ↑ θ*.

#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mgflab/extrapolation.hpp"
#include "mgflab/measures.hpp"
#include "mgflab/parallel.hpp"

namespace mgflab {

struct ThetaStar {
  bool infinite = true;
  double lo = 0.0;  // largest θ known finite
  double hi = 0.0;  // smallest θ known divergent
};

enum class RayClass { Case1Blowup, Case2FiniteBoundary, EntireRay, Inconsistent };

inline std::string to_string(RayClass c) {
  switch (c) {
    case RayClass::Case1Blowup: return "Case1Blowup";
    case RayClass::Case2FiniteBoundary: return "Case2FiniteBoundary";
    case RayClass::EntireRay: return "EntireRay";
    case RayClass::Inconsistent: return "Inconsistent";
  }
  return "?";
}

struct ProbeConfig {
  QuadConfig quad;
  QuadraturePlan plan = QuadraturePlan::Reduced;  // predicate runs on this representation
  MgfMethod sample_method = MgfMethod::ClosedForm;
  double bracket_rel_tol = 1e-9;
  int max_doublings = 40;
  int sample_j_min = 2;
  int sample_j_max = 24;
  double case2_rel_tol = 1e-4;
  ExtrapolationOptions extrapolation;
};

struct RayReport {
  Point direction;
  ThetaStar theta_star;
  RayClass classification = RayClass::EntireRay;
  LogValue boundary_value = LogValue::divergent();  // extrapolated limit for Case 2
  LogValue direct_value = LogValue::divergent();    // G at theta_star.lo · direction
  LimitEstimate extrapolation;
  std::vector<Sample> samples;  // (θ, log G)
  int predicate_evaluations = 0;
  int oracle_disagreements = 0;
  std::vector<std::string> warnings;
};

namespace detail {

inline Point scaled(std::span<const double> dir, double theta) {
  Point u(dir.begin(), dir.end());
  for (double& x : u) x *= theta;
  return u;
}

enum class Finiteness { Finite, Divergent, Indeterminate };

// One probe of the quadrature finiteness predicate, cross-checked against
// the exact oracle when the density has one. On disagreement the oracle
// decides and the event is recorded.
inline bool probe_finite(const Density& d, std::span<const double> dir, double theta, const ProbeConfig& cfg,
                         RayReport& report) {
  const Point u = scaled(dir, theta);
  const QuadResult r = mgf_quadrature(d, u, cfg.quad, cfg.plan);
  ++report.predicate_evaluations;
  Finiteness q = r.value.is_divergent() ? Finiteness::Divergent
                 : r.converged         ? Finiteness::Finite
                                       : Finiteness::Indeterminate;
  if (d.domain_oracle) {
    const bool exact = in_domain(d.domain_oracle(u));
    if (q == Finiteness::Indeterminate || (q == Finiteness::Finite) != exact) {
      ++report.oracle_disagreements;
      std::ostringstream msg;
      msg.precision(17);
      msg << "quadrature predicate " << (q == Finiteness::Indeterminate ? "indeterminate" : "disagrees with oracle")
          << " at theta=" << theta;
      report.warnings.push_back(msg.str());
    }
    return exact;
  }
  if (q == Finiteness::Indeterminate) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "quadrature did not converge at theta=" << theta << "; treated as finite";
    report.warnings.push_back(msg.str());
    return true;
  }
  return q == Finiteness::Finite;
}

}  // namespace detail

/// Bracket θ* by doubling from θ = 1, then bisect to relative width
/// `bracket_rel_tol`. Fills direction, theta_star and predicate counters.
inline RayReport theta_star(const Density& d, std::span<const double> direction, const ProbeConfig& cfg = {}) {
  detail::check_dimension(d, direction);
  bool nonzero = false;
  for (double x : direction) nonzero = nonzero || x != 0.0;
  if (!nonzero) throw std::invalid_argument("theta_star: direction must be nonzero");

  RayReport report;
  report.direction.assign(direction.begin(), direction.end());
  if (!detail::probe_finite(d, direction, 0.0, cfg, report))
    throw std::domain_error("theta_star: G(0) is not finite for '" + d.label + "'");

  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int k = 0; k <= cfg.max_doublings; ++k) {
    const double theta = std::ldexp(1.0, k);
    if (detail::probe_finite(d, direction, theta, cfg, report)) {
      lo = theta;
    } else {
      hi = theta;
      found = true;
      break;
    }
  }
  if (!found) {
    report.theta_star.infinite = true;
    report.theta_star.lo = lo;
    report.theta_star.hi = std::numeric_limits<double>::infinity();
    return report;
  }
  while (hi - lo > cfg.bracket_rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (detail::probe_finite(d, direction, mid, cfg, report))
      lo = mid;
    else
      hi = mid;
  }
  report.theta_star.infinite = false;
  report.theta_star.lo = lo;
  report.theta_star.hi = hi;
  return report;
}

/// θ* plus the boundary dichotomy: either G blows up as θ ↑ θ* (the
/// boundary point is outside V) or it increases to a finite boundary value.
inline RayReport ray_classify(const Density& d, std::span<const double> direction, const ProbeConfig& cfg = {}) {
  RayReport report = theta_star(d, direction, cfg);
  if (report.theta_star.infinite) {
    report.classification = RayClass::EntireRay;
    return report;
  }
  const double top = report.theta_star.lo;
  if (!(top > 0.0)) {
    report.classification = RayClass::Inconsistent;
    report.warnings.push_back("theta_star bracket has no positive finite end");
    return report;
  }
  for (int j = cfg.sample_j_min; j <= cfg.sample_j_max; ++j) {
    const double theta = top * (1.0 - std::ldexp(1.0, -j));
    const Point u = detail::scaled(direction, theta);
    report.samples.push_back({theta, evaluate_mgf(d, u, cfg.sample_method, cfg.quad, cfg.plan).value});
  }
  report.extrapolation = limit_extrapolate(report.samples, cfg.extrapolation);
  report.direct_value = evaluate_mgf(d, detail::scaled(direction, top), cfg.sample_method, cfg.quad, cfg.plan).value;

  const LimitEstimate& ext = report.extrapolation;
  if (ext.limit.is_divergent()) {
    report.classification = RayClass::Case1Blowup;
    return report;
  }
  if (report.direct_value.is_finite() && !report.direct_value.is_zero() && !ext.limit.is_zero()) {
    const double a = ext.limit.log(), b = report.direct_value.log();
    if (std::abs(a - b) <= cfg.case2_rel_tol * std::max(1.0, std::abs(b))) {
      report.classification = RayClass::Case2FiniteBoundary;
      report.boundary_value = ext.limit;
      return report;
    }
  }
  report.classification = RayClass::Inconsistent;
  report.boundary_value = ext.limit;
  report.warnings.push_back("finite extrapolated limit does not match the direct boundary evaluation");
  return report;
}

/// Unit directions at angles 2πi/n, exact on the coordinate axes.
inline std::vector<Point> scan_directions(std::size_t n) {
  std::vector<Point> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((4 * i) % n == 0) {
      static constexpr double c[4] = {1.0, 0.0, -1.0, 0.0};
      static constexpr double s[4] = {0.0, 1.0, 0.0, -1.0};
      const std::size_t q = (4 * i) / n;
      dirs.push_back({c[q], s[q]});
      continue;
    }
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    dirs.push_back({std::cos(phi), std::sin(phi)});
  }
  return dirs;
}

inline std::vector<RayReport> domain_scan(const Density& d, std::span<const Point> directions,
                                          const ProbeConfig& cfg = {}, unsigned workers = 1) {
  return parallel_map(directions.size(), workers, [&](std::size_t i) { return ray_classify(d, directions[i], cfg); });
}

/// Angular scan of a 2-D density with `n_directions` equally spaced rays.
inline std::vector<RayReport> domain_scan(const Density& d, std::size_t n_directions, const ProbeConfig& cfg = {},
                                          unsigned workers = 1) {
  if (d.dimension != 2) throw std::invalid_argument("domain_scan: angular scan needs a 2-dimensional density");
  const std::vector<Point> dirs = scan_directions(n_directions);
  return domain_scan(d, std::span<const Point>(dirs), cfg, workers);
}

}  // namespace mgflab
