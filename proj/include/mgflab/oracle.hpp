#pragma once

// Reference values by plain trapezoid sums in long double. Shares no code
// with the adaptive engine and is used to produce and re-check goldens.
//
// The trapezoid rule converges geometrically for integrands analytic in a
// strip around the real axis, which covers every smooth integrand here;
// integrands with kinks (Laplace) are not handled.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mgflab::oracle {

/// log ∫_{-half}^{half} e^{logf(c + x)} dx ≈ log Σ h e^{logf}, shifted by the
/// running maximum.
template <class F>
long double trapezoid_log(F&& logf, long double centre, long double half_width, long double h) {
  if (!(h > 0) || !(half_width > 0)) throw std::invalid_argument("trapezoid_log: need positive step and width");
  const long n = static_cast<long>(std::ceil(half_width / h));
  std::vector<long double> vals;
  vals.reserve(2 * n + 1);
  long double peak = -INFINITY;
  for (long i = -n; i <= n; ++i) {
    const long double v = logf(centre + h * static_cast<long double>(i));
    vals.push_back(v);
    if (v > peak) peak = v;
  }
  if (peak == -INFINITY) return -INFINITY;
  long double sum = 0;
  for (long double v : vals) sum += std::exp(v - peak);
  return peak + std::log(sum * h);
}

/// log of the reduced bn integrand, written directly from the
/// marginal identity.
inline long double bn_marginal_log(long double u1, long double u2, long double x) {
  return u2 * u2 + u1 * x - (1 - u2 * u2) * x * x - std::log1p(x * x);
}

/// log G(u) for |u₂| < 1 from the 1-D marginal. The window covers the saddle
/// at u₁/(2(1-u₂²)) by at least 40 widths; the step resolves both the unit
/// scale of (1+x²)^{-1} and the Gaussian width.
inline double bn_log_mgf(double u1, double u2, long double h = 1.0L / 256) {
  if (!(std::abs(u2) < 1)) throw std::domain_error("oracle::bn_log_mgf: needs |u2| < 1");
  const long double gap = (1 - std::abs(static_cast<long double>(u2))) * (1 + std::abs(static_cast<long double>(u2)));
  const long double m = u1 / (2 * gap);
  const long double sd = 1 / std::sqrt(2 * gap);
  const long double half = std::abs(m) + 40 * std::max<long double>(1, sd);
  return static_cast<double>(trapezoid_log([&](long double x) { return bn_marginal_log(u1, u2, x); }, 0, half, h));
}

/// log of the tilted density e^{<u,ξ>} f(ξ) from its printed (corrected) form.
inline long double bn_tilted_log(long double u1, long double u2, long double x1, long double x2) {
  const long double v = 1 + x1 * x1;
  return -std::log(2 * std::sqrt(std::numbers::pi_v<long double>)) - 1.5L * std::log(v) - x1 * x1 -
         x2 * x2 / (4 * v) + u1 * x1 + u2 * x2;
}

/// log G(u) by a nested 2-D trapezoid over the density itself, for checks
/// independent of the marginal identity. Inner nodes follow the ξ₂
/// Gaussian, centred at 2u₂(1+ξ₁²) with width √(2(1+ξ₁²)).
inline double bn_log_mgf_2d(double u1, double u2, long double h1 = 1.0L / 32, int inner_per_sd = 24) {
  if (!(std::abs(u2) < 1)) throw std::domain_error("oracle::bn_log_mgf_2d: needs |u2| < 1");
  const long double gap = (1 - std::abs(static_cast<long double>(u2))) * (1 + std::abs(static_cast<long double>(u2)));
  const long double m = u1 / (2 * gap);
  const long double sd1 = 1 / std::sqrt(2 * gap);
  const long double half1 = std::abs(m) + 40 * std::max<long double>(1, sd1);
  auto outer = [&](long double x1) {
    const long double v = 1 + x1 * x1;
    const long double c = 2 * u2 * v, sd = std::sqrt(2 * v);
    return trapezoid_log([&](long double x2) { return bn_tilted_log(u1, u2, x1, x2); }, c, 40 * sd,
                         sd / inner_per_sd);
  };
  return static_cast<double>(trapezoid_log(outer, 0, half1, h1));
}

/// log(πe·erfc(1)) from the 1-D oracle at u = 0.
inline double bn_log_mass() { return bn_log_mgf(0.0, 0.0, 1.0L / 512); }

}  // namespace mgflab::oracle
