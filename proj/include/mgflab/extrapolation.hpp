#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "mgflab/log_value.hpp"

namespace mgflab {

struct Sample {
  double t = 0.0;
  LogValue value;
};

struct ExtrapolationOptions {
  double agreement_tol = 1e-6;  // relative to max(1, |limit|), log scale
  double log_threshold = 700.0;
  double growth_ratio = 0.9;  // successive increments shrinking slower than this never settle
  int max_levels = 4;
};

struct LimitEstimate {
  LogValue limit;
  double window = 0.0;  // spread of the last three accelerated values
  bool converged = false;
  int level = 0;        // Aitken iterations used
};

namespace detail {

inline std::vector<double> aitken_step(const std::vector<double>& x) {
  std::vector<double> out;
  if (x.size() < 3) return out;
  out.reserve(x.size() - 2);
  for (std::size_t i = 0; i + 2 < x.size(); ++i) {
    const double d1 = x[i + 1] - x[i];
    const double d2 = x[i + 2] - x[i + 1];
    const double den = d2 - d1;
    const double scale = std::abs(x[i]) + std::abs(x[i + 1]) + std::abs(x[i + 2]);
    if (den == 0.0 || std::abs(den) <= 1e-14 * scale)
      out.push_back(x[i + 2]);
    else
      out.push_back(x[i + 2] - d2 * d2 / den);
  }
  return out;
}

inline double spread_last3(const std::vector<double>& x) {
  const auto first = x.end() - 3;
  const auto [lo, hi] = std::minmax_element(first, x.end());
  return *hi - *lo;
}

}  // namespace detail

/// Estimate lim value_j from samples at increasing t_j.
///
/// Divergence is reported when the tail contains a Divergent sample, when
/// the values climb past `log_threshold`, or when the increments stay
/// positive without contracting. Otherwise iterated Aitken Δ² is applied
/// and the level whose last three values agree best is reported.
inline LimitEstimate limit_extrapolate(std::span<const Sample> samples, const ExtrapolationOptions& opts = {}) {
  if (samples.size() < 6) throw std::invalid_argument("limit_extrapolate: need at least 6 samples");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].t > samples[i - 1].t))
      throw std::invalid_argument("limit_extrapolate: sample points must be strictly increasing");

  LimitEstimate est;
  const std::size_t n = samples.size();
  for (std::size_t i = n / 2; i < n; ++i)
    if (samples[i].value.is_divergent()) {
      est.limit = LogValue::divergent();
      est.converged = true;
      return est;
    }
  std::vector<double> v;
  v.reserve(n);
  for (const auto& s : samples) v.push_back(s.value.is_divergent() ? opts.log_threshold : s.value.log());
  if (std::all_of(v.end() - 3, v.end(), [](double x) { return std::isinf(x); })) {
    est.limit = LogValue::zero();
    est.converged = true;
    return est;
  }

  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = v[i + 1] - v[i];
  const bool rising3 = d[n - 2] > 0 && d[n - 3] > 0 && d[n - 4] > 0;
  if (v.back() > opts.log_threshold && rising3) {
    est.limit = LogValue::divergent();
    est.converged = true;
    return est;
  }
  {
    const double noise = 1e-9 * std::max(1.0, std::abs(v.back()));
    bool growing = true;
    for (std::size_t i = n - 5; i < n - 1; ++i)
      if (!(d[i] > noise)) growing = false;
    for (std::size_t i = n - 4; growing && i < n - 1; ++i)
      if (d[i] / d[i - 1] < opts.growth_ratio) growing = false;
    if (growing) {
      est.limit = LogValue::divergent();
      est.converged = true;
      return est;
    }
  }

  std::vector<double> level = v;
  double best_spread = detail::spread_last3(level);
  double best_value = level.back();
  int best_level = 0;
  for (int k = 1; k <= opts.max_levels; ++k) {
    level = detail::aitken_step(level);
    if (level.size() < 3) break;
    const double s = detail::spread_last3(level);
    if (s < best_spread) {
      best_spread = s;
      best_value = level.back();
      best_level = k;
    }
  }
  est.limit = LogValue::from_log(best_value);
  est.window = best_spread;
  est.level = best_level;
  // Aitken also sums bounded oscillation (1,2,1,2,... goes to 1.5), so the
  // raw increments must be contracting unless the raw tail already agrees.
  const double raw_tol = opts.agreement_tol * std::max(1.0, std::abs(v.back()));
  const bool raw_settled = detail::spread_last3(v) <= raw_tol;
  const bool contracting = std::abs(d[n - 2]) + std::abs(d[n - 3]) < std::abs(d[n - 4]) + std::abs(d[n - 5]);
  est.converged = best_spread <= opts.agreement_tol * std::max(1.0, std::abs(best_value)) && (raw_settled || contracting);
  return est;
}

}  // namespace mgflab
