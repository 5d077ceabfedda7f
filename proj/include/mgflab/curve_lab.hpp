#pragma once

// Curves into the boundary point (0,1) of the bn strip and
// the behaviour of G along them.
//
// Points near the boundary are carried together with their strip gaps
// 1 - u₂², because u₂ itself rounds to 1 long before the gap vanishes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mgflab/extrapolation.hpp"
#include "mgflab/measures.hpp"
#include "mgflab/parallel.hpp"

namespace mgflab {

/// log(eπ), the value of G at (0, ±1).
inline const double kLogEPi = 1.0 + std::log(std::numbers::pi);

/// A target level in [eπ, ∞]. Infinity is a flag, never a large float.
struct Target {
  bool infinite = false;
  double value = 0.0;

  static Target finite(double p) { return {false, p}; }
  static Target infinity() { return {true, 0.0}; }
  bool is_boundary_value() const { return !infinite && std::abs(std::log(value) - kLogEPi) <= 1e-12; }
};

inline std::string to_string(const Target& t) {
  if (t.infinite) return "inf";
  std::ostringstream s;
  s.precision(17);
  s << t.value;
  return s.str();
}

struct CurvePoint {
  Point u;
  std::vector<double> gaps;  // 1 - u₂² for each (u₁, u₂) pair, computed without rounding u₂
};

enum class CurveKind { HCurve, EndpointItem1, Item2, Vertical, Constant, Boundary4d };

struct Curve {
  std::string label;
  CurveKind kind = CurveKind::Constant;
  std::size_t dimension = 2;
  double t0 = 0.0;
  std::optional<Point> declared_endpoint;
  std::function<CurvePoint(double)> map;
  // Oscillating quantity of the construction: h(t) for the h curve, the
  // completed-square exponent level q(t) for the endpoint family.
  std::function<double(double)> oscillator;
  double beta = 0.0;
  std::optional<Target> target;
  std::shared_ptr<const Curve> base;
  std::vector<std::string> notes;

  CurvePoint operator()(double t) const {
    if (!(t >= t0 && t < 1.0)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "curve '" << label << "': parameter t=" << t << " outside [" << t0 << ", 1)";
      throw std::domain_error(msg.str());
    }
    return map(t);
  }
};

// ---------------------------------------------------------------------------
// Oscillator

/// h(t) = (sin(1/(1-t)) + 2 - t)/(1-t). Lower envelope 1, upper (3-t)/(1-t).
inline double h_oscillator(double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("h_oscillator: t must lie in [0, 1)");
  const double s = 1.0 - t;
  return (std::sin(1.0 / s) + 2.0 - t) / s;
}

struct LevelTimes {
  std::vector<double> t;
  std::vector<long long> k;
  std::vector<std::string> notes;
};

namespace detail {

// Phase brackets: 1/(1-t) runs from 3π/2 + 2πk (sin = -1) up to
// 5π/2 + 2πk (sin = +1).
inline double phase_low_t(long long k) {
  return 1.0 - 1.0 / (1.5 * std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k));
}
inline double phase_high_t(long long k) {
  return 1.0 - 1.0 / (2.5 * std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k));
}

// Root of an increasing g on [lo, hi] with g(lo) <= 0 <= g(hi), bisected
// until the bracket is narrower than tol or has no interior double.
template <class G>
double bisect_increasing(G&& g, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (g(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

}  // namespace detail

/// One solution of h(t) = q per phase bracket k, increasing towards 1.
inline LevelTimes h_level_times(double q, long long k_min, long long k_max) {
  if (!(q >= 1.0)) throw std::domain_error("h_level_times: level must be >= 1, the lower envelope of h");
  if (k_min < 0 || k_max < k_min) throw std::invalid_argument("h_level_times: need 0 <= k_min <= k_max");
  LevelTimes out;
  for (long long k = k_min; k <= k_max; ++k) {
    const double lo = detail::phase_low_t(k), hi = detail::phase_high_t(k);
    if (q == 1.0) {
      out.t.push_back(lo);
      out.k.push_back(k);
      continue;
    }
    const double hmax = h_oscillator(hi);
    if (q > hmax) {
      out.notes.push_back("k=" + std::to_string(k) + ": level above the bracket maximum " + std::to_string(hmax));
      continue;
    }
    // Bisected to adjacent doubles, which is tighter than 1e-14 in t.
    out.t.push_back(detail::bisect_increasing([q](double t) { return h_oscillator(t) - q; }, lo, hi, 0.0));
    out.k.push_back(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curve constructions

namespace detail {

inline CurvePoint bn_point(double u1, double gap) {
  CurvePoint p;
  p.u = {u1, std::sqrt(1.0 - gap)};
  p.gaps = {gap};
  return p;
}

// log of e·e^q·√(4πq)·s/(4q²), the leading saddle contribution of the
// reduced integral at u₁ = s, 1 - u₂² = s²/(4q).
inline double log_saddle_model(double q, double s) {
  return 1.0 + q + 0.5 * std::log(4.0 * std::numbers::pi * q) + std::log(s) - std::log(4.0 * q * q);
}

// e^q q^{-3/2} is increasing past its minimum at q = 3/2.
inline constexpr double kSaddleBranchStart = 1.5;

// Smallest q >= 3/2 with log_saddle_model(q, s) = log_excess, or nullopt
// if even the minimum of the model exceeds it.
inline std::optional<double> calibrate_saddle(double log_excess, double s) {
  double lo = kSaddleBranchStart;
  if (log_saddle_model(lo, s) > log_excess) return std::nullopt;
  double hi = 2.0 * lo;
  while (log_saddle_model(hi, s) < log_excess) hi *= 2.0;
  return bisect_increasing([&](double q) { return log_saddle_model(q, s) - log_excess; }, lo, hi, 1e-13 * hi);
}

}  // namespace detail

/// c(t) = (t, √(1 - t/(4h(t)))), started at t₀ = 0.01. Oscillates as t → 1
/// and has no endpoint.
inline Curve h_curve() {
  Curve c;
  c.label = "paper-item1";
  c.kind = CurveKind::HCurve;
  c.t0 = 0.01;
  c.map = [](double t) { return detail::bn_point(t, t / (4.0 * h_oscillator(t))); };
  c.oscillator = [](double t) { return h_oscillator(t); };
  c.notes.push_back("parameter starts at t0=0.01; c(0) lies on the strip boundary");
  return c;
}

/// c(t) = (s, √(1 - s²/(4q))), s = 1 - t, with
/// q(t) = 1 + (β/2) log(1/s) (1 + sin(1/s)). Ends at (0,1).
inline Curve endpoint_curve_item1(double beta = 2.0) {
  if (!(beta > 1.0)) throw std::invalid_argument("endpoint_curve_item1: beta must exceed 1");
  auto q_of = [beta](double t) {
    const double s = 1.0 - t;
    return 1.0 + 0.5 * beta * std::log(1.0 / s) * (1.0 + std::sin(1.0 / s));
  };
  Curve c;
  std::ostringstream label;
  label << "endpoint-item1:beta=" << beta;
  c.label = label.str();
  c.kind = CurveKind::EndpointItem1;
  c.beta = beta;
  c.declared_endpoint = Point{0.0, 1.0};
  c.map = [q_of](double t) {
    const double s = 1.0 - t;
    return detail::bn_point(s, s * s / (4.0 * q_of(t)));
  };
  c.oscillator = q_of;
  return c;
}

/// The vertical ray (0, t).
inline Curve vertical_curve() {
  Curve c;
  c.label = "vertical";
  c.kind = CurveKind::Vertical;
  c.declared_endpoint = Point{0.0, 1.0};
  c.map = [](double t) {
    CurvePoint p;
    p.u = {0.0, t};
    p.gaps = {detail::strip_gap(t)};
    return p;
  };
  return c;
}

inline Curve constant_curve(double u1, double u2) {
  Curve c;
  std::ostringstream label;
  label.precision(17);
  label << "constant:" << u1 << "," << u2;
  c.label = label.str();
  c.kind = CurveKind::Constant;
  c.declared_endpoint = Point{u1, u2};
  c.map = [u1, u2](double) {
    CurvePoint p;
    p.u = {u1, u2};
    p.gaps = {detail::strip_gap(u2)};
    return p;
  };
  return c;
}

/// A curve into (0,1) along which G tends to p.
///
/// p = eπ gives the vertical ray. p = ∞ uses q(t) = 2 log(1/(1-t)). For
/// finite p the exponent level q(t) solves the leading-order saddle
/// equation e·e^q·√(4πq)·s/(4q²) = p - eπ at each t.
inline Curve limit_curve_item2(const Target& p) {
  if (!p.infinite && !(p.value > 0.0 && std::log(p.value) >= kLogEPi - 1e-12))
    throw std::invalid_argument("limit_curve_item2: target must be at least e*pi");
  if (!p.infinite && p.is_boundary_value()) {
    Curve c = vertical_curve();
    c.label = "item2:p=" + to_string(p);
    c.target = p;
    c.notes.push_back("boundary value target realised by the vertical ray");
    return c;
  }
  Curve c;
  c.label = "item2:p=" + to_string(p);
  c.kind = CurveKind::Item2;
  c.target = p;
  c.declared_endpoint = Point{0.0, 1.0};
  if (p.infinite) {
    c.t0 = 0.25;
    c.oscillator = [](double t) { return 2.0 * std::log(1.0 / (1.0 - t)); };
    c.notes.push_back("q(t) = 2 log(1/(1-t)), started at t0=0.25 where the gap is below 1");
  } else {
    const double log_excess = std::log(p.value - std::exp(kLogEPi));
    // calibrate_saddle fails for s above s_max, where the model minimum
    // already exceeds the excess.
    const double s_max = std::exp(log_excess - detail::log_saddle_model(detail::kSaddleBranchStart, 1.0));
    if (s_max < 1.0) {
      c.t0 = 1.0 - s_max * (1.0 - 1e-12);
      std::ostringstream note;
      note.precision(17);
      note << "calibration has no solution for 1-t above " << s_max << "; curve starts at t0=" << c.t0;
      c.notes.push_back(note.str());
    }
    c.oscillator = [log_excess](double t) {
      const auto q = detail::calibrate_saddle(log_excess, 1.0 - t);
      if (!q) throw std::domain_error("limit_curve_item2: calibration bracket failure at t=" + std::to_string(t));
      return *q;
    };
  }
  c.map = [q_of = c.oscillator](double t) {
    const double s = 1.0 - t;
    return detail::bn_point(s, s * s / (4.0 * q_of(t)));
  };
  return c;
}

/// t ↦ (base(t), 0, 1): the base curve paired with the boundary point of
/// the second factor.
inline Curve boundary_curve_4d(const Curve& base) {
  if (base.dimension != 2) throw std::invalid_argument("boundary_curve_4d: base curve must be 2-dimensional");
  Curve c;
  c.label = "bn4d:base=" + base.label;
  c.kind = CurveKind::Boundary4d;
  c.dimension = 4;
  c.t0 = base.t0;
  c.base = std::make_shared<const Curve>(base);
  if (base.declared_endpoint) c.declared_endpoint = Point{(*base.declared_endpoint)[0], (*base.declared_endpoint)[1], 0.0, 1.0};
  c.map = [b = c.base](double t) {
    CurvePoint p = (*b)(t);
    p.u.push_back(0.0);
    p.u.push_back(1.0);
    p.gaps.push_back(0.0);
    return p;
  };
  return c;
}

// ---------------------------------------------------------------------------
// Membership, evaluation, traces

/// Membership of a curve point from its stored gaps, one factor per pair.
inline Membership curve_membership(const CurvePoint& p) {
  Membership m = Membership::Interior;
  for (std::size_t i = 0; i < p.gaps.size(); ++i) {
    const double u1 = p.u[2 * i], gap = p.gaps[i];
    Membership f;
    if (!std::isfinite(u1) || !std::isfinite(gap) || gap < 0.0)
      f = Membership::Outside;
    else if (gap > 0.0)
      f = Membership::Interior;
    else
      f = u1 == 0.0 ? Membership::BoundaryInV : Membership::BoundaryNotInV;
    m = combine_membership(m, f);
  }
  return m;
}

/// log G at a curve point. ClosedForm sums the per-pair BN values; Quadrature
/// integrates each reduced marginal at the stored gap.
inline LogValue evaluate_curve_point(const CurvePoint& p, MgfMethod method, const QuadConfig& cfg = {}) {
  LogValue v = LogValue::from_log(0.0);
  for (std::size_t i = 0; i < p.gaps.size(); ++i) {
    const double u1 = p.u[2 * i], gap = p.gaps[i];
    if (method == MgfMethod::ClosedForm)
      v = v * bn_log_mgf_gap(u1, gap, cfg);
    else
      v = v * detail::bn_reduced_quadrature(u1, 1.0 - gap, gap, cfg).value;
  }
  return v;
}

struct CurveTrace {
  std::string curve_label;
  MgfMethod evaluator = MgfMethod::ClosedForm;
  std::vector<double> schedule;
  std::vector<LogValue> values;
  std::vector<CurvePoint> points;
  std::vector<Membership> memberships;

  std::vector<Sample> samples() const {
    std::vector<Sample> s;
    s.reserve(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) s.push_back({schedule[i], values[i]});
    return s;
  }
};

/// t_j = 1 - 2^{-j}, j = j0..j1.
inline std::vector<double> geometric_schedule(int j0 = 4, int j1 = 40) {
  if (j0 < 0 || j1 < j0 || j1 > 52) throw std::invalid_argument("geometric_schedule: need 0 <= j0 <= j1 <= 52");
  std::vector<double> s;
  for (int j = j0; j <= j1; ++j) s.push_back(1.0 - std::ldexp(1.0, -j));
  return s;
}

/// Default schedule restricted to the curve's parameter range.
inline std::vector<double> default_schedule(const Curve& c, int j0 = 4, int j1 = 40) {
  std::vector<double> s;
  for (double t : geometric_schedule(j0, j1))
    if (t >= c.t0) s.push_back(t);
  return s;
}

inline CurveTrace trace(const Curve& curve, MgfMethod evaluator, const std::vector<double>& schedule,
                        const QuadConfig& cfg = {}, unsigned workers = 1) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] >= curve.t0 && schedule[i] < 1.0))
      throw std::invalid_argument("trace: schedule point outside [t0, 1): " + std::to_string(schedule[i]));
    if (i > 0 && !(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("trace: schedule must be strictly increasing");
  }
  CurveTrace tr;
  tr.curve_label = curve.label;
  tr.evaluator = evaluator;
  tr.schedule = schedule;
  struct Row {
    CurvePoint p;
    Membership m;
    LogValue v;
  };
  std::vector<Row> rows = parallel_map(schedule.size(), workers, [&](std::size_t i) {
    const double t = schedule[i];
    CurvePoint p = curve(t);
    const Membership m = curve_membership(p);
    if (!in_domain(m)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "trace: curve '" << curve.label << "' leaves the domain at t=" << t << " (" << to_string(m) << ")";
      throw std::domain_error(msg.str());
    }
    LogValue v = evaluate_curve_point(p, evaluator, cfg);
    return Row{std::move(p), m, v};
  });
  for (auto& r : rows) {
    tr.points.push_back(std::move(r.p));
    tr.memberships.push_back(r.m);
    tr.values.push_back(r.v);
  }
  return tr;
}

struct EndpointCheck {
  double max_distance = 0.0;  // over the last `window` schedule points
  bool decreasing = true;
  bool passed = false;
};

/// |c(t) - endpoint| over the tail of a schedule. 1 - u₂ is recovered from
/// the stored gap to keep it exact near the boundary.
inline EndpointCheck endpoint_contract(const Curve& c, const std::vector<double>& schedule, std::size_t window = 10,
                                       double tol = 1e-3) {
  if (!c.declared_endpoint) throw std::invalid_argument("endpoint_contract: curve '" + c.label + "' has no endpoint");
  const Point& e = *c.declared_endpoint;
  EndpointCheck out;
  const std::size_t first = schedule.size() > window ? schedule.size() - window : 0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < schedule.size(); ++i) {
    const CurvePoint p = c(schedule[i]);
    double d2 = 0.0;
    for (std::size_t k = 0; k < p.u.size(); ++k) {
      double diff = p.u[k] - e[k];
      if (k % 2 == 1 && e[k] == 1.0 && k / 2 < p.gaps.size()) {
        const double g = p.gaps[k / 2];
        diff = g / (1.0 + std::sqrt(1.0 - g));  // 1 - √(1-g)
      }
      d2 += diff * diff;
    }
    const double d = std::sqrt(d2);
    out.max_distance = std::max(out.max_distance, d);
    if (d > prev) out.decreasing = false;
    prev = d;
  }
  out.passed = out.decreasing && out.max_distance < tol;
  return out;
}

// ---------------------------------------------------------------------------
// Phase-solved subsequences and accumulation points

struct Level {
  enum class Kind { Low, High, Oscillator, Target };
  Kind kind = Kind::Low;
  double oscillator = 0.0;  // Kind::Oscillator
  mgflab::Target target;    // Kind::Target

  static Level low() { return {Kind::Low, 0.0, {}}; }
  static Level high() { return {Kind::High, 0.0, {}}; }
  static Level at_oscillator(double q) { return {Kind::Oscillator, q, {}}; }
  static Level at_target(mgflab::Target p) {
    if (p.infinite) return high();
    if (p.is_boundary_value()) return low();
    return {Kind::Target, 0.0, p};
  }
};

inline std::string to_string(const Level& l) {
  std::ostringstream s;
  s.precision(17);
  switch (l.kind) {
    case Level::Kind::Low: return "low";
    case Level::Kind::High: return "high";
    case Level::Kind::Oscillator: s << "q=" << l.oscillator; return s.str();
    case Level::Kind::Target: return "p=" + to_string(l.target);
  }
  return "?";
}

// Phase brackets k = 2^j, j = log2_k_min..log2_k_max. Unset bounds take a
// per-curve default: the endpoint family keeps 1-t >= ~1e-7, where a
// period still spans many doubles. The h curve multiplies phase errors
// by 1/(1-t) inside h, so it stops earlier.
struct PhaseOptions {
  std::optional<int> log2_k_min;
  std::optional<int> log2_k_max;
  int geometric_j0 = 4;
  int geometric_j1 = 40;
};

inline std::pair<int, int> phase_range(const Curve& c, const PhaseOptions& opt) {
  const bool hc = c.kind == CurveKind::HCurve;
  return {opt.log2_k_min.value_or(hc ? 6 : 11), opt.log2_k_max.value_or(hc ? 15 : 20)};
}

struct Subsequence {
  std::vector<double> t;
  std::vector<std::string> notes;
};

/// Parameter values realising a level on the curve's oscillator phases.
/// Curves without an oscillator use the geometric schedule.
inline Subsequence level_subsequence(const Curve& c, const Level& level, const PhaseOptions& opt = {}) {
  if (c.kind == CurveKind::Boundary4d) return level_subsequence(*c.base, level, opt);
  Subsequence out;
  const bool oscillating = c.kind == CurveKind::HCurve || c.kind == CurveKind::EndpointItem1;
  if (!oscillating) {
    out.t = default_schedule(c, opt.geometric_j0, opt.geometric_j1);
    if (level.kind != Level::Kind::Low)
      out.notes.push_back("curve '" + c.label + "' does not oscillate; level " + to_string(level) +
                          " uses the geometric schedule");
    return out;
  }
  const auto [j_min, j_max] = phase_range(c, opt);
  for (int j = j_min; j <= j_max; ++j) {
    const long long k = 1LL << j;
    const double lo = detail::phase_low_t(k), hi = detail::phase_high_t(k);
    if (lo < c.t0) continue;
    switch (level.kind) {
      case Level::Kind::Low: out.t.push_back(lo); break;
      case Level::Kind::High: out.t.push_back(hi); break;
      case Level::Kind::Oscillator:
      case Level::Kind::Target: {
        std::function<double(double)> g;
        if (level.kind == Level::Kind::Oscillator) {
          g = [&](double t) { return c.oscillator(t) - level.oscillator; };
        } else {
          const double log_excess = std::log(level.target.value - std::exp(kLogEPi));
          g = [&c, log_excess](double t) {
            const CurvePoint p = c(t);
            const double q = p.u[0] * p.u[0] / (4.0 * p.gaps[0]);
            return detail::log_saddle_model(std::max(q, detail::kSaddleBranchStart), p.u[0]) - log_excess;
          };
        }
        if (!(g(lo) <= 0.0 && g(hi) >= 0.0)) {
          out.notes.push_back("k=" + std::to_string(k) + ": level " + to_string(level) + " not bracketed");
          break;
        }
        out.t.push_back(detail::bisect_increasing(g, lo, hi, 0.0));
        break;
      }
    }
  }
  return out;
}

struct DetectedLimit {
  std::string level;
  LogValue limit;
  std::vector<double> subsequence;
  double residual = 0.0;
  bool converged = false;
};

struct AccumulationReport {
  std::string curve_label;
  std::vector<DetectedLimit> detected;       // finite limits in level order
  std::vector<std::string> divergent_levels;  // levels whose subsequence diverges
  bool saturated_at_infinity = false;
  std::vector<std::string> notes;
};

inline AccumulationReport accumulation_points(const Curve& c, const std::vector<Level>& levels, MgfMethod evaluator,
                                              const QuadConfig& cfg = {}, const PhaseOptions& opt = {},
                                              unsigned workers = 1) {
  AccumulationReport rep;
  rep.curve_label = c.label;
  for (const Level& level : levels) {
    Subsequence sub = level_subsequence(c, level, opt);
    rep.notes.insert(rep.notes.end(), sub.notes.begin(), sub.notes.end());
    if (sub.t.size() < 6) {
      rep.notes.push_back("level " + to_string(level) + ": only " + std::to_string(sub.t.size()) +
                          " phase points, need 6");
      continue;
    }
    const CurveTrace tr = trace(c, evaluator, sub.t, cfg, workers);
    const LimitEstimate est = limit_extrapolate(tr.samples());
    if (est.limit.is_divergent()) {
      rep.saturated_at_infinity = true;
      rep.divergent_levels.push_back(to_string(level));
      continue;
    }
    rep.detected.push_back({to_string(level), est.limit, std::move(sub.t), est.window, est.converged});
  }
  return rep;
}

struct Item3Schedule {
  Curve curve;
  std::vector<Target> targets;
  std::vector<std::vector<double>> subsequences;  // one per target
  std::vector<double> schedule;                   // union, strictly increasing
};

/// Endpoint curve with one phase-solved subsequence per target, merged
/// into a single increasing schedule.
inline Item3Schedule schedule_item3(const std::vector<Target>& targets, const PhaseOptions& opt = {}) {
  if (targets.empty()) throw std::invalid_argument("schedule_item3: need at least one target");
  for (const Target& g : targets)
    if (!g.infinite && !(g.value > 0.0 && std::log(g.value) >= kLogEPi - 1e-12))
      throw std::invalid_argument("schedule_item3: targets must be at least e*pi");
  Item3Schedule out{endpoint_curve_item1(2.0), targets, {}, {}};
  out.curve.label = "item3:targets=";
  for (std::size_t i = 0; i < targets.size(); ++i) out.curve.label += (i ? "," : "") + to_string(targets[i]);
  for (const Target& g : targets) {
    Subsequence sub = level_subsequence(out.curve, Level::at_target(g), opt);
    out.curve.notes.insert(out.curve.notes.end(), sub.notes.begin(), sub.notes.end());
    out.subsequences.push_back(sub.t);
    out.schedule.insert(out.schedule.end(), sub.t.begin(), sub.t.end());
  }
  std::sort(out.schedule.begin(), out.schedule.end());
  out.schedule.erase(std::unique(out.schedule.begin(), out.schedule.end()), out.schedule.end());
  return out;
}

inline std::vector<Level> item3_levels(const std::vector<Target>& targets) {
  std::vector<Level> levels;
  for (const Target& g : targets) levels.push_back(Level::at_target(g));
  return levels;
}

}  // namespace mgflab
