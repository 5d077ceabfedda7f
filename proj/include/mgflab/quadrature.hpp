#pragma once

// Adaptive quadrature over the real line, carried out in log scale.
//
// The integrand is always supplied as x -> log f(x). Panels are evaluated
// with a 10-point Gauss-Legendre rule on the whole panel and on its two
// halves; the difference between the one- and two-panel sums is the local
// error estimate, and the panel with the largest estimate is bisected next.
// The real line is covered by an initial hull around the supplied
// breakpoints plus geometrically growing shells on both sides. Tails are
// classified on a geometric probe schedule before any integration work, so
// a non-integrable tail short-circuits to a Divergent result.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "mgflab/log_value.hpp"

namespace mgflab {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol_log = -690.0;  // log of the absolute tolerance
  int max_subdivisions = 2000;
  double initial_window = 16.0;
  double window_growth = 2.0;
  int max_windows = 60;

  void validate() const {
    if (!(rel_tol > 0.0) || !std::isfinite(abs_tol_log) || !(initial_window > 0.0))
      throw std::invalid_argument("QuadConfig: tolerances and window must be strictly positive");
    if (max_subdivisions < 1) throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 1");
    if (!(window_growth > 1.0)) throw std::invalid_argument("QuadConfig: window_growth must exceed 1");
    if (max_windows < 1) throw std::invalid_argument("QuadConfig: max_windows must be >= 1");
  }
};

struct QuadResult {
  LogValue value;
  double error_estimate_log = -std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t evaluations = 0;
};

struct TailClass {
  enum class Kind { ExponentialDecay, PowerDecay, NonIntegrable };
  enum class Side { Left, Right };

  Kind kind = Kind::NonIntegrable;
  Side side = Side::Right;
  double rate = 0.0;      // ExponentialDecay
  double exponent = 0.0;  // PowerDecay
  bool low_confidence = false;

  bool integrable() const {
    switch (kind) {
      case Kind::ExponentialDecay: return true;
      case Kind::PowerDecay: return exponent > 1.0;
      case Kind::NonIntegrable: return false;
    }
    return false;
  }
};

/// Geometric probe points origin ± base·factor^k, k = 0..count-1.
struct ProbeSchedule {
  double origin = 0.0;
  double base = 16.0;
  double factor = 2.0;
  int count = 21;

  double point(TailClass::Side side, int k) const {
    const double d = base * std::pow(factor, k);
    return side == TailClass::Side::Right ? origin + d : origin - d;
  }
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct GaussLegendre10 {
  std::array<double, 10> nodes{};
  std::array<double, 10> log_weights{};
};

// Nodes by Newton iteration on P_10; computed once.
inline const GaussLegendre10& gauss_legendre10() {
  static const GaussLegendre10 rule = [] {
    GaussLegendre10 r;
    constexpr int n = 10;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = x;
      r.log_weights[i] = std::log(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return r;
  }();
  return rule;
}

template <class F>
double eval_checked(const F& f, double x, std::size_t& evals) {
  ++evals;
  const double y = f(x);
  if (std::isnan(y) || y == std::numeric_limits<double>::infinity())
    throw std::domain_error("integrand returned NaN or +inf at x = " + std::to_string(x));
  return y;
}

// log ∫_a^b e^{f} by 10-point Gauss-Legendre.
template <class F>
double gl_panel(const F& f, double a, double b, std::size_t& evals) {
  const auto& rule = gauss_legendre10();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  if (!(half > 0.0)) return kNegInf;
  std::array<double, 10> terms{};
  for (int i = 0; i < 10; ++i) terms[i] = eval_checked(f, mid + half * rule.nodes[i], evals) + rule.log_weights[i];
  return log_sum(terms) + std::log(half);
}

inline double log_abs_diff(double a, double b) {
  if (a == kNegInf && b == kNegInf) return kNegInf;
  const double hi = std::max(a, b);
  const double d = std::abs(std::exp(a - hi) - std::exp(b - hi));
  return d == 0.0 ? kNegInf : hi + std::log(d);
}

struct Panel {
  double a = 0.0, b = 0.0;
  double one = kNegInf;    // one-panel rule
  double left = kNegInf;   // halves of the two-panel rule
  double right = kNegInf;
  double value = kNegInf;  // two-panel sum
  double err = kNegInf;
  int window = 0;          // 0 = hull, w > 0 = shell w
  int side = 0;            // -1 left shell, +1 right shell, 0 hull
};

template <class F>
Panel make_panel(const F& f, double a, double b, double one, std::size_t& evals, int window, int side) {
  Panel p;
  p.a = a;
  p.b = b;
  p.window = window;
  p.side = side;
  const double m = 0.5 * (a + b);
  p.one = std::isnan(one) ? gl_panel(f, a, b, evals) : one;
  p.left = gl_panel(f, a, m, evals);
  p.right = gl_panel(f, m, b, evals);
  p.value = log_add(p.left, p.right);
  p.err = log_abs_diff(p.one, p.value);
  return p;
}

// Running sum of exp(terms) with a movable reference to stay in range.
class LogAccumulator {
 public:
  void add(double t) {
    if (t == kNegInf) return;
    rebase(t);
    sum_ += std::exp(t - ref_);
  }
  void sub(double t) {
    if (t == kNegInf) return;
    sum_ = std::max(0.0, sum_ - std::exp(t - ref_));
  }
  double log() const { return sum_ > 0.0 ? ref_ + std::log(sum_) : kNegInf; }
  void reset() { ref_ = kNegInf, sum_ = 0.0; }

 private:
  void rebase(double t) {
    if (ref_ == kNegInf) {
      ref_ = t;
      return;
    }
    if (t > ref_ + 30.0) {
      sum_ *= std::exp(ref_ - t);
      ref_ = t;
    }
  }
  double ref_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace detail

/// Classify the decay of e^{f} along a geometric probe schedule.
///
/// Power-law behavior is recognized by stable log-log slopes over the last
/// probes; accelerating decline is exponential. Mixed-sign increments are
/// ambiguous and come back as a low-confidence PowerDecay with the smallest
/// exponent seen.
template <class F>
TailClass classify_tail(const F& f, TailClass::Side side, const ProbeSchedule& probes) {
  if (probes.count < 6) throw std::invalid_argument("classify_tail: need at least 6 probe points");
  std::vector<double> x(probes.count), y(probes.count);
  std::size_t evals = 0;
  for (int k = 0; k < probes.count; ++k) {
    x[k] = probes.point(side, k);
    y[k] = detail::eval_checked(f, x[k], evals);
  }
  TailClass tc;
  tc.side = side;
  const int n = probes.count;
  if (y[n - 1] == detail::kNegInf) {
    tc.kind = TailClass::Kind::ExponentialDecay;
    tc.rate = std::numeric_limits<double>::infinity();
    return tc;
  }
  // Increments and log-log slopes over the last four steps.
  std::array<double, 4> d{}, p{};
  for (int i = 0; i < 4; ++i) {
    const int k = n - 4 + i;
    if (y[k - 1] == detail::kNegInf) {
      // Support re-enters after vanishing: treat as low confidence.
      tc.kind = TailClass::Kind::PowerDecay;
      tc.exponent = 0.0;
      tc.low_confidence = true;
      return tc;
    }
    d[i] = y[k] - y[k - 1];
    // Log-log slope in |x| while moving away from 0; otherwise in the
    // distance from the probe origin.
    const double lr = std::abs(x[k]) > std::abs(x[k - 1]) ? std::log(std::abs(x[k]) / std::abs(x[k - 1]))
                                                          : std::log(probes.factor);
    p[i] = lr != 0.0 ? d[i] / lr : std::copysign(std::numeric_limits<double>::infinity(), d[i]);
  }
  constexpr double kPowerTol = 0.05;
  const bool power_like = std::abs(p[3] - p[2]) <= kPowerTol && std::abs(p[2] - p[1]) <= kPowerTol;
  const bool all_up = std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  const bool all_down = std::all_of(d.begin(), d.end(), [](double v) { return v <= 0.0; });
  if (power_like) {
    tc.kind = TailClass::Kind::PowerDecay;
    tc.exponent = -p[3];
    return tc;
  }
  if (all_up) {
    tc.kind = TailClass::Kind::NonIntegrable;
    return tc;
  }
  if (all_down && p[3] < p[2] && p[2] < p[1]) {
    tc.kind = TailClass::Kind::ExponentialDecay;
    tc.rate = -d[3] / std::abs(x[n - 1] - x[n - 2]);
    return tc;
  }
  tc.kind = TailClass::Kind::PowerDecay;
  tc.exponent = -*std::max_element(p.begin(), p.end());
  tc.low_confidence = true;
  return tc;
}

/// ∫_ℝ e^{f(x)} dx in log scale.
///
/// `breakpoints` are points of interest (modes, kinks, scale markers); the
/// initial hull spans them plus `initial_window` on each side and they are
/// used as panel boundaries.
template <class F>
QuadResult integrate_line(const F& f, const QuadConfig& cfg, std::span<const double> breakpoints = {}) {
  using detail::kNegInf;
  using detail::Panel;
  cfg.validate();
  QuadResult result;
  std::size_t evals = 0;
  const double L0 = cfg.initial_window;
  const double g = cfg.window_growth;

  std::vector<double> pts;
  for (double b : breakpoints)
    if (std::isfinite(b)) pts.push_back(b);
  if (pts.empty()) pts.push_back(0.0);
  std::sort(pts.begin(), pts.end());
  const double hull_lo = pts.front() - L0;
  const double hull_hi = pts.back() + L0;
  pts.push_back(hull_lo);
  pts.push_back(hull_lo + 0.5 * L0);
  pts.push_back(hull_hi - 0.5 * L0);
  pts.push_back(hull_hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const TailClass left_tail = classify_tail(f, TailClass::Side::Left, ProbeSchedule{hull_lo, L0, 2.0, 21});
  const TailClass right_tail = classify_tail(f, TailClass::Side::Right, ProbeSchedule{hull_hi, L0, 2.0, 21});
  evals += 42;
  if (!left_tail.integrable() || !right_tail.integrable()) {
    result.value = LogValue::divergent();
    result.converged = true;
    result.evaluations = evals;
    return result;
  }

  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(cfg.max_subdivisions) * 2 + 256);
  auto cmp = [&panels](std::size_t i, std::size_t j) {
    if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
    return i > j;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
  detail::LogAccumulator value_acc, err_acc;
  std::vector<char> alive;

  auto push = [&](Panel p) {
    value_acc.add(p.value);
    err_acc.add(p.err);
    panels.push_back(p);
    alive.push_back(1);
    queue.push(panels.size() - 1);
  };
  auto exact_sums = [&](double& v, double& e) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (alive[i]) order.emplace_back(panels[i].a, i);
    std::sort(order.begin(), order.end());
    std::vector<double> vs, es;
    vs.reserve(order.size());
    es.reserve(order.size());
    for (auto& [a, i] : order) {
      vs.push_back(panels[i].value);
      es.push_back(panels[i].err);
    }
    v = log_sum(vs);
    e = log_sum(es);
  };
  auto tol_log_for = [&](double value_log) {
    return std::max(cfg.abs_tol_log, std::log(cfg.rel_tol) + value_log);
  };

  int splits = 0;
  bool budget_exhausted = false;
  double value_log = kNegInf, err_log = kNegInf;
  double tail_value_log = kNegInf, tail_err_log = kNegInf;

  auto refine = [&]() {
    for (;;) {
      while (splits < cfg.max_subdivisions && !queue.empty()) {
        const double target = tol_log_for(log_add(value_acc.log(), tail_value_log)) + std::log(0.5);
        if (err_acc.log() <= target) break;
        const std::size_t i = queue.top();
        queue.pop();
        const Panel p = panels[i];
        if (p.err == kNegInf) break;
        alive[i] = 0;
        value_acc.sub(p.value);
        err_acc.sub(p.err);
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
          // Panel at floating-point resolution: keep it as is.
          Panel frozen = p;
          frozen.err = kNegInf;
          alive[i] = 1;
          panels[i] = frozen;
          value_acc.add(frozen.value);
          continue;
        }
        push(detail::make_panel(f, p.a, m, p.left, evals, p.window, p.side));
        push(detail::make_panel(f, m, p.b, p.right, evals, p.window, p.side));
        ++splits;
      }
      exact_sums(value_log, err_log);
      value_acc.reset();
      err_acc.reset();
      value_acc.add(value_log);
      err_acc.add(err_log);
      const double target = tol_log_for(log_add(value_log, tail_value_log)) + std::log(0.5);
      if (err_log <= target) return;
      if (splits >= cfg.max_subdivisions || queue.empty()) {
        budget_exhausted = true;
        return;
      }
    }
  };

  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    push(detail::make_panel(f, pts[i], pts[i + 1], std::numeric_limits<double>::quiet_NaN(), evals, 0, 0));
  refine();

  // Shell bookkeeping per side: index 0 left, 1 right.
  const std::array<const TailClass*, 2> tails{&left_tail, &right_tail};
  std::array<double, 2> edge{hull_lo, hull_hi};
  std::array<double, 2> prev_shell{kNegInf, kNegInf};
  std::array<double, 2> prev_prev_shell{kNegInf, kNegInf};
  bool stopped = false;
  bool decaying = true;

  for (int w = 1; w <= cfg.max_windows && !budget_exhausted; ++w) {
    const double width = L0 * std::pow(g, w - 1) * (g - 1.0);
    const double nl = edge[0] - width, nr = edge[1] + width;
    const double ml = edge[0] - 0.5 * width, mr = edge[1] + 0.5 * width;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    push(detail::make_panel(f, nl, ml, nan, evals, w, -1));
    push(detail::make_panel(f, ml, edge[0], nan, evals, w, -1));
    push(detail::make_panel(f, edge[1], mr, nan, evals, w, +1));
    push(detail::make_panel(f, mr, nr, nan, evals, w, +1));
    const std::array<double, 2> inner_edge = edge;
    edge = {nl, nr};
    refine();

    std::array<double, 2> shell{kNegInf, kNegInf};
    {
      std::array<std::vector<std::pair<double, double>>, 2> parts;
      for (std::size_t i = 0; i < panels.size(); ++i)
        if (alive[i] && panels[i].window == w) parts[panels[i].side > 0 ? 1 : 0].emplace_back(panels[i].a, panels[i].value);
      for (int s = 0; s < 2; ++s) {
        std::sort(parts[s].begin(), parts[s].end());
        std::vector<double> vs;
        for (auto& pr : parts[s]) vs.push_back(pr.second);
        shell[s] = log_sum(vs);
      }
    }

    // Tail remainder beyond the current edges.
    std::array<double, 2> rem{kNegInf, kNegInf}, rem_err{kNegInf, kNegInf};
    for (int s = 0; s < 2; ++s) {
      if (shell[s] == kNegInf) continue;
      const TailClass& tc = *tails[s];
      if (tc.kind == TailClass::Kind::PowerDecay && !tc.low_confidence) {
        const double rm = std::pow(g, 1.0 - tc.exponent);
        const double rem_m = shell[s] + std::log(rm / (1.0 - rm));
        rem[s] = rem_m;
        if (prev_shell[s] == kNegInf) {
          rem_err[s] = shell[s];
        } else {
          const double re = std::exp(shell[s] - prev_shell[s]);
          rem_err[s] = re < 1.0 ? detail::log_abs_diff(shell[s] + std::log(re / (1.0 - re)), rem_m)
                                : std::numeric_limits<double>::infinity();
        }
      } else {
        rem_err[s] = shell[s];
      }
    }
    tail_value_log = log_add(rem[0], rem[1]);
    tail_err_log = log_add(rem_err[0], rem_err[1]);

    // Outward decrease at the new edges (or vanished integrand).
    const double fl_in = detail::eval_checked(f, inner_edge[0], evals), fl_out = detail::eval_checked(f, nl, evals);
    const double fr_in = detail::eval_checked(f, inner_edge[1], evals), fr_out = detail::eval_checked(f, nr, evals);
    const bool outward_down = fl_out <= fl_in && fr_out <= fr_in;

    const double total = log_add(value_log, tail_value_log);
    const double tol = tol_log_for(total);
    decaying = true;
    for (int s = 0; s < 2; ++s)
      if (prev_shell[s] != kNegInf && shell[s] > prev_shell[s] && prev_prev_shell[s] != kNegInf &&
          prev_shell[s] > prev_prev_shell[s])
        decaying = false;
    prev_prev_shell = prev_shell;
    prev_shell = shell;
    if (outward_down && err_log <= tol + std::log(0.5) && tail_err_log <= tol + std::log(0.5)) {
      stopped = true;
      break;
    }
  }

  result.evaluations = evals;
  const double total = log_add(value_log, tail_value_log);
  if (!stopped && !budget_exhausted && !decaying) {
    result.value = LogValue::divergent();
    result.converged = true;
    return result;
  }
  result.value = LogValue::from_log(total);
  result.error_estimate_log = log_add(err_log, tail_err_log);
  result.converged = stopped && !budget_exhausted && result.error_estimate_log <= tol_log_for(total);
  return result;
}

/// Iterated quadrature over ℝ^dims. `f` takes the full coordinate span;
/// `breakpoints(axis, outer)` supplies per-axis hints given the already
/// fixed outer coordinates (may be empty). Any divergent inner integral
/// makes the whole result Divergent.
template <class F, class B>
QuadResult integrate_nested(const F& f, std::size_t dims, const QuadConfig& cfg, const B& breakpoints) {
  if (dims == 0) throw std::invalid_argument("integrate_nested: dims must be >= 1");
  std::vector<double> coords(dims, 0.0);
  bool divergent = false;
  bool all_converged = true;
  std::size_t evals = 0;

  std::function<QuadResult(std::size_t)> level = [&](std::size_t axis) -> QuadResult {
    const std::vector<double> bps = breakpoints(axis, std::span<const double>(coords.data(), axis));
    if (axis + 1 == dims) {
      auto inner = [&](double x) {
        coords[axis] = x;
        return f(std::span<const double>(coords));
      };
      QuadResult r = integrate_line(inner, cfg, bps);
      evals += r.evaluations;
      return r;
    }
    auto outer = [&](double x) {
      if (divergent) return 0.0;
      coords[axis] = x;
      const QuadResult r = level(axis + 1);
      if (r.value.is_divergent()) {
        divergent = true;
        return 0.0;
      }
      if (!r.converged) all_converged = false;
      return r.value.log();
    };
    return integrate_line(outer, cfg, bps);
  };

  QuadResult r = level(0);
  if (dims > 1) r.evaluations = evals;
  if (divergent) {
    r.value = LogValue::divergent();
    r.converged = true;
    r.error_estimate_log = -std::numeric_limits<double>::infinity();
  } else {
    r.converged = r.converged && all_converged;
  }
  return r;
}

/// ∫∫ e^{f(x,y)} dy dx: outer over x, inner over y.
template <class F>
QuadResult integrate_plane(const F& f, const QuadConfig& cfg,
                           std::function<std::vector<double>(std::size_t, std::span<const double>)> breakpoints = {}) {
  auto wrapped = [&](std::span<const double> c) { return f(c[0], c[1]); };
  if (!breakpoints) breakpoints = [](std::size_t, std::span<const double>) { return std::vector<double>{}; };
  return integrate_nested(wrapped, 2, cfg, breakpoints);
}

}  // namespace mgflab
