#pragma once

// Finite measures with densities on ℝ^d and their moment generating
// functions G(u) = ∫ e^{<u,ξ>} f(ξ) dξ.
//
// The bivariate bn density is implemented as
//
//   f(ξ) = (2√π)^{-1} (1+ξ₁²)^{-3/2} exp(-ξ₁² - ξ₂²/[4(1+ξ₁²)]),
//
// i.e. Gaussian in ξ₂ with variance 2(1+ξ₁²). This is the form for which
// the ξ₂-marginal identity
//
//   ∫ e^{<u,ξ>} f(ξ) dξ₂ = (1+ξ₁²)^{-1} exp(u₂² + u₁ξ₁ - (1-u₂²)ξ₁²)
//
// holds; an exponent of ξ₂²/[4(1+ξ₁)²] does not reproduce
// it. The measure is not renormalized: its mass is πe·erfc(1) ≈ 1.3433 and
// G(0,±1) = eπ.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgflab/log_value.hpp"
#include "mgflab/quadrature.hpp"

namespace mgflab {

using Point = std::vector<double>;

enum class Membership { Interior, BoundaryInV, BoundaryNotInV, Outside };

inline std::string to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "interior";
    case Membership::BoundaryInV: return "boundary-in-V";
    case Membership::BoundaryNotInV: return "boundary-not-in-V";
    case Membership::Outside: return "outside";
  }
  return "?";
}

inline bool in_domain(Membership m) { return m == Membership::Interior || m == Membership::BoundaryInV; }

/// Membership of (u, v) in the domain of a product measure, from the
/// memberships of u and v in the factor domains.
inline Membership combine_membership(Membership a, Membership b) {
  if (a == Membership::Outside || b == Membership::Outside) return Membership::Outside;
  if (a == Membership::Interior && b == Membership::Interior) return Membership::Interior;
  if (in_domain(a) && in_domain(b)) return Membership::BoundaryInV;
  return Membership::BoundaryNotInV;
}

/// An integral representation ∫_{ℝ^dims} e^{log_integrand(u, x)} dx = G(u).
struct IntegralForm {
  using Integrand = std::function<double(std::span<const double> u, std::span<const double> x)>;
  using Breakpoints =
      std::function<std::vector<double>(std::span<const double> u, std::size_t axis, std::span<const double> outer)>;

  std::size_t dims = 0;
  Integrand log_integrand;
  Breakpoints breakpoints;  // optional
};

struct Density {
  std::string label;
  std::size_t dimension = 0;
  std::function<double(std::span<const double>)> log_density;
  std::function<Membership(std::span<const double>)> domain_oracle;                 // optional
  std::function<LogValue(std::span<const double>, const QuadConfig&)> closed_form_log_mgf;  // optional
  IntegralForm full;                    // tilted density over all d coordinates
  std::optional<IntegralForm> reduced;  // some coordinates integrated analytically
  LogValue log_mass = LogValue::zero();
};

using DensityPtr = std::shared_ptr<const Density>;

enum class MgfMethod { ClosedForm, Quadrature };

inline std::string to_string(MgfMethod m) { return m == MgfMethod::ClosedForm ? "closed-form" : "quadrature"; }

/// Which integral representation a quadrature runs on.
enum class QuadraturePlan { Full, Reduced };

struct MgfPoint {
  Point u;
  LogValue value;
  MgfMethod method = MgfMethod::ClosedForm;
};

struct Factorization {
  LogValue I1;
  LogValue I2;
  LogValue I3;

  LogValue product() const { return I1 * I2 * I3; }
};

namespace detail {

inline void check_dimension(const Density& d, std::span<const double> u) {
  if (u.size() != d.dimension)
    throw std::invalid_argument("density '" + d.label + "' has dimension " + std::to_string(d.dimension) +
                                ", point has " + std::to_string(u.size()));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// 1 - u² computed from the distance to the nearest of ±1, exact there.
inline double strip_gap(double u2) {
  const double a = std::abs(u2);
  return (1.0 - a) * (1.0 + a);
}

// Scale markers for the reduced bn integrand.
inline std::vector<double> bn_reduced_breakpoints(double u1, double gap) {
  std::vector<double> bp{-4.0, -1.0, 0.0, 1.0, 4.0};
  if (gap > 0.0) {
    const double m = u1 / (2.0 * gap);
    const double sd = 1.0 / std::sqrt(2.0 * gap);
    bp.push_back(m);
    for (double k : {1.0, 2.0, 4.0, 8.0}) {
      bp.push_back(m - k * sd);
      bp.push_back(m + k * sd);
    }
    // Geometric ladder out to the saddle so no single panel spans the
    // 1/x² decay of the bulk and the far Gaussian bump together.
    const double reach = std::abs(m) + 8.0 * sd;
    for (double x = 16.0; x < reach; x *= 4.0) {
      bp.push_back(x);
      bp.push_back(-x);
    }
  }
  return bp;
}

// log of (1+x²)^{-1} exp(u₂² + u₁x - gap·x²), switching to the completed
// square near the saddle where the direct form cancels badly.
inline double bn_reduced_log(double u1, double u2sq, double gap, double x) {
  if (gap > 0.0 && u1 != 0.0) {
    const double m = u1 / (2.0 * gap);
    if (std::abs(x - m) < std::abs(x)) {
      const double q = u1 * m * 0.5;
      const double dx = x - m;
      return u2sq + q - gap * dx * dx - std::log1p(x * x);
    }
  }
  return u2sq + u1 * x - gap * x * x - std::log1p(x * x);
}

inline QuadResult bn_reduced_quadrature(double u1, double u2sq, double gap, const QuadConfig& cfg) {
  const std::vector<double> bp = bn_reduced_breakpoints(u1, gap);
  return integrate_line([&](double x) { return bn_reduced_log(u1, u2sq, gap, x); }, cfg, bp);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// bn: bivariate density

inline double bn_density(std::span<const double> xi) {
  if (xi.size() != 2) throw std::invalid_argument("bn_density: point must be 2-dimensional");
  const double v = 1.0 + xi[0] * xi[0];
  return -std::log(2.0 * std::sqrt(std::numbers::pi)) - 1.5 * std::log(v) - xi[0] * xi[0] - xi[1] * xi[1] / (4.0 * v);
}

/// log ∫ e^{<u,ξ>} f(ξ) dξ₂ at ξ₁, evaluated formally for every u₂.
inline double bn_marginal(std::span<const double> u, double xi1) {
  if (u.size() != 2) throw std::invalid_argument("bn_marginal: u must be 2-dimensional");
  return detail::bn_reduced_log(u[0], u[1] * u[1], detail::strip_gap(u[1]), xi1);
}

/// Exact domain membership: V = (ℝ × (-1,1)) ∪ {(0,1), (0,-1)}.
inline Membership bn_domain_membership(std::span<const double> u) {
  if (u.size() != 2) throw std::invalid_argument("bn_domain_membership: u must be 2-dimensional");
  const double a = std::abs(u[1]);
  if (a < 1.0) return Membership::Interior;
  if (a > 1.0) return Membership::Outside;
  return u[0] == 0.0 ? Membership::BoundaryInV : Membership::BoundaryNotInV;
}

/// log G at (u₁, u₂) with the strip gap 1 - u₂² supplied exactly. Curves
/// that approach the boundary carry the gap separately because u₂ itself
/// rounds to 1 long before the gap vanishes.
inline LogValue bn_log_mgf_gap(double u1, double gap, const QuadConfig& cfg = {}) {
  if (gap < 0.0) return LogValue::divergent();
  if (gap == 0.0) return u1 == 0.0 ? LogValue::from_log(1.0 + std::log(std::numbers::pi)) : LogValue::divergent();
  if (u1 == 0.0) {
    // ∫ e^{-a x²}/(1+x²) dx = π e^{a} erfc(√a), and u₂² + a = 1.
    return LogValue::from_log(1.0 + std::log(std::numbers::pi) + std::log(std::erfc(std::sqrt(gap))));
  }
  const QuadResult r = detail::bn_reduced_quadrature(u1, 1.0 - gap, gap, cfg);
  return r.value;
}

inline LogValue bn_log_mgf(std::span<const double> u, const QuadConfig& cfg = {}) {
  const Membership m = bn_domain_membership(u);
  if (!in_domain(m)) return LogValue::divergent();
  return bn_log_mgf_gap(u[0], detail::strip_gap(u[1]), cfg);
}

/// G = I₁·I₂·I₃ on the open strip, with the completed-square exponent in I₂:
///   I₁ = e^{u₂²}, I₂ = e^{u₁²/(4(1-u₂²))},
///   I₃ = ∫ (1+x²)^{-1} exp(-(1-u₂²)(x - u₁/(2(1-u₂²)))²) dx.
inline Factorization bn_factorization_gap(double u1, double gap, const QuadConfig& cfg = {}) {
  if (!(gap > 0.0)) throw std::domain_error("bn_factorization: requires |u2| < 1");
  Factorization fz;
  fz.I1 = LogValue::from_log(1.0 - gap);
  const double m = u1 / (2.0 * gap);
  fz.I2 = LogValue::from_log(u1 * m * 0.5);
  std::vector<double> bp = detail::bn_reduced_breakpoints(u1, gap);
  const QuadResult r = integrate_line(
      [&](double x) {
        const double dx = x - m;
        return -gap * dx * dx - std::log1p(x * x);
      },
      cfg, bp);
  fz.I3 = r.value;
  return fz;
}

inline Factorization bn_factorization(std::span<const double> u, const QuadConfig& cfg = {}) {
  if (u.size() != 2) throw std::invalid_argument("bn_factorization: u must be 2-dimensional");
  if (!(std::abs(u[1]) < 1.0)) throw std::domain_error("bn_factorization: requires |u2| < 1");
  return bn_factorization_gap(u[0], detail::strip_gap(u[1]), cfg);
}

// ---------------------------------------------------------------------------
// Quadrature of the tilted density

inline QuadResult mgf_quadrature(const Density& d, std::span<const double> u, const QuadConfig& cfg = {},
                                 QuadraturePlan plan = QuadraturePlan::Full) {
  detail::check_dimension(d, u);
  const IntegralForm& form = (plan == QuadraturePlan::Reduced && d.reduced) ? *d.reduced : d.full;
  auto f = [&](std::span<const double> x) { return form.log_integrand(u, x); };
  auto bp = [&](std::size_t axis, std::span<const double> outer) {
    return form.breakpoints ? form.breakpoints(u, axis, outer) : std::vector<double>{};
  };
  return integrate_nested(f, form.dims, cfg, bp);
}

/// Closed form when the density has one, quadrature otherwise.
inline MgfPoint evaluate_mgf(const Density& d, std::span<const double> u, MgfMethod method, const QuadConfig& cfg = {},
                             QuadraturePlan plan = QuadraturePlan::Full) {
  detail::check_dimension(d, u);
  MgfPoint p;
  p.u.assign(u.begin(), u.end());
  if (method == MgfMethod::ClosedForm && d.closed_form_log_mgf) {
    p.value = d.closed_form_log_mgf(u, cfg);
    p.method = MgfMethod::ClosedForm;
  } else {
    p.value = mgf_quadrature(d, u, cfg, plan).value;
    p.method = MgfMethod::Quadrature;
  }
  return p;
}

namespace detail {

inline IntegralForm tilted_full_form(std::function<double(std::span<const double>)> log_density, std::size_t dims,
                                     IntegralForm::Breakpoints bp) {
  IntegralForm form;
  form.dims = dims;
  form.log_integrand = [log_density = std::move(log_density)](std::span<const double> u, std::span<const double> x) {
    const double ld = log_density(x);
    return ld == -std::numeric_limits<double>::infinity() ? ld : ld + dot(u, x);
  };
  form.breakpoints = std::move(bp);
  return form;
}

}  // namespace detail

/// Computes the mass and checks it against the closed form at 0.
inline DensityPtr finalize_density(Density d, const QuadConfig& cfg = {}) {
  if (d.dimension == 0) throw std::invalid_argument("density dimension must be >= 1");
  const Point zero(d.dimension, 0.0);
  const QuadraturePlan plan = d.reduced ? QuadraturePlan::Reduced : QuadraturePlan::Full;
  const QuadResult mass = mgf_quadrature(d, zero, cfg, plan);
  if (!mass.value.is_finite() || mass.value.is_zero())
    throw std::invalid_argument("density '" + d.label + "' does not have finite positive mass");
  if (d.closed_form_log_mgf) {
    const LogValue cf = d.closed_form_log_mgf(zero, cfg);
    if (!cf.is_finite() || std::abs(std::expm1(cf.log() - mass.value.log())) > 1e-6)
      throw std::invalid_argument("density '" + d.label + "': closed-form mass disagrees with quadrature");
  }
  d.log_mass = mass.value;
  return std::make_shared<const Density>(std::move(d));
}

inline DensityPtr make_bn_density() {
  Density d;
  d.label = "bn";
  d.dimension = 2;
  d.log_density = [](std::span<const double> x) { return bn_density(x); };
  d.domain_oracle = [](std::span<const double> u) { return bn_domain_membership(u); };
  d.closed_form_log_mgf = [](std::span<const double> u, const QuadConfig& cfg) { return bn_log_mgf(u, cfg); };
  d.full.dims = 2;
  // log f(ξ) + <u,ξ>, regrouped as
  //   u₂² + u₁ξ₁ - (1-u₂²)ξ₁² - (ξ₂ - 2u₂v)²/(4v) - (3/2)log v - log(2√π),  v = 1+ξ₁².
  // Summing the raw terms loses all precision once |ξ₂| ~ 1e11.
  d.full.log_integrand = [](std::span<const double> u, std::span<const double> x) {
    const double v = 1.0 + x[0] * x[0];
    const double dy = x[1] - 2.0 * u[1] * v;
    return detail::bn_reduced_log(u[0], u[1] * u[1], detail::strip_gap(u[1]), x[0]) - 0.5 * std::log(v) -
           dy * dy / (4.0 * v) - std::log(2.0 * std::sqrt(std::numbers::pi));
  };
  d.full.breakpoints = [](std::span<const double> u, std::size_t axis, std::span<const double> outer) {
        if (axis == 0) return detail::bn_reduced_breakpoints(u[0], detail::strip_gap(u[1]));
        // ξ₂ | ξ₁ is Gaussian with mean 2u₂(1+ξ₁²) and variance 2(1+ξ₁²) after tilting.
        const double v = 1.0 + outer[0] * outer[0];
        const double c = 2.0 * u[1] * v;
        const double sd = std::sqrt(2.0 * v);
        std::vector<double> bp{c};
        for (double k : {1.0, 2.0, 4.0, 8.0}) {
          bp.push_back(c - k * sd);
          bp.push_back(c + k * sd);
        }
        return bp;
      };
  IntegralForm reduced;
  reduced.dims = 1;
  reduced.log_integrand = [](std::span<const double> u, std::span<const double> x) { return bn_marginal(u, x[0]); };
  reduced.breakpoints = [](std::span<const double> u, std::size_t, std::span<const double>) {
    return detail::bn_reduced_breakpoints(u[0], detail::strip_gap(u[1]));
  };
  d.reduced = std::move(reduced);
  return finalize_density(std::move(d));
}

// ---------------------------------------------------------------------------
// One-dimensional baselines

/// Laplace e^{-|x|}/2: V = (-1,1), blow-up at ±1.
inline DensityPtr make_laplace_density() {
  Density d;
  d.label = "laplace";
  d.dimension = 1;
  d.log_density = [](std::span<const double> x) { return -std::abs(x[0]) - std::numbers::ln2; };
  d.domain_oracle = [](std::span<const double> u) {
    const double a = std::abs(u[0]);
    return a < 1.0 ? Membership::Interior : a == 1.0 ? Membership::BoundaryNotInV : Membership::Outside;
  };
  d.closed_form_log_mgf = [](std::span<const double> u, const QuadConfig&) {
    const double a = std::abs(u[0]);
    if (!(a < 1.0)) return LogValue::divergent();
    return LogValue::from_log(-std::log((1.0 - a) * (1.0 + a)));
  };
  d.full = detail::tilted_full_form(d.log_density, 1, [](std::span<const double>, std::size_t, std::span<const double>) {
    return std::vector<double>{0.0};
  });
  return finalize_density(std::move(d));
}

/// Damped Cauchy e^{-|x|}/(π(1+x²)): V = [-1,1], finite boundary values.
inline DensityPtr make_damped_cauchy_density() {
  Density d;
  d.label = "damped-cauchy";
  d.dimension = 1;
  d.log_density = [](std::span<const double> x) {
    return -std::abs(x[0]) - std::log(std::numbers::pi) - std::log1p(x[0] * x[0]);
  };
  d.domain_oracle = [](std::span<const double> u) {
    const double a = std::abs(u[0]);
    return a < 1.0 ? Membership::Interior : a == 1.0 ? Membership::BoundaryInV : Membership::Outside;
  };
  d.full = detail::tilted_full_form(d.log_density, 1, [](std::span<const double>, std::size_t, std::span<const double>) {
    return std::vector<double>{-1.0, 0.0, 1.0};
  });
  return finalize_density(std::move(d));
}

/// Standard normal: V = ℝ.
inline DensityPtr make_normal_density() {
  Density d;
  d.label = "normal";
  d.dimension = 1;
  d.log_density = [](std::span<const double> x) {
    return -0.5 * x[0] * x[0] - 0.5 * std::log(2.0 * std::numbers::pi);
  };
  d.domain_oracle = [](std::span<const double>) { return Membership::Interior; };
  d.closed_form_log_mgf = [](std::span<const double> u, const QuadConfig&) {
    return LogValue::from_log(0.5 * u[0] * u[0]);
  };
  // The tilted density is N(u, 1); its mean is the only scale marker needed.
  d.full = detail::tilted_full_form(d.log_density, 1, [](std::span<const double> u, std::size_t, std::span<const double>) {
    return std::vector<double>{u[0]};
  });
  return finalize_density(std::move(d));
}

// ---------------------------------------------------------------------------
// Products and tilting

namespace detail {

inline IntegralForm product_form(const IntegralForm& a, std::size_t da, const IntegralForm& b, std::size_t db) {
  IntegralForm form;
  form.dims = a.dims + b.dims;
  form.log_integrand = [a, b, da, db](std::span<const double> u, std::span<const double> x) {
    return a.log_integrand(u.subspan(0, da), x.subspan(0, a.dims)) +
           b.log_integrand(u.subspan(da, db), x.subspan(a.dims, b.dims));
  };
  form.breakpoints = [a, b, da, db](std::span<const double> u, std::size_t axis, std::span<const double> outer) {
    if (axis < a.dims)
      return a.breakpoints ? a.breakpoints(u.subspan(0, da), axis, outer) : std::vector<double>{};
    return b.breakpoints ? b.breakpoints(u.subspan(da, db), axis - a.dims, outer.subspan(a.dims))
                         : std::vector<double>{};
  };
  return form;
}

}  // namespace detail

/// Tensor product f(ξ, η) = f_L(ξ) f_R(η).
inline DensityPtr product_density(const DensityPtr& left, const DensityPtr& right, const QuadConfig& cfg = {}) {
  const std::size_t dl = left->dimension, dr = right->dimension;
  Density d;
  d.label = left->label + "⊗" + right->label;
  d.dimension = dl + dr;
  d.log_density = [left, right, dl, dr](std::span<const double> x) {
    return left->log_density(x.subspan(0, dl)) + right->log_density(x.subspan(dl, dr));
  };
  if (left->domain_oracle && right->domain_oracle) {
    d.domain_oracle = [left, right, dl, dr](std::span<const double> u) {
      return combine_membership(left->domain_oracle(u.subspan(0, dl)), right->domain_oracle(u.subspan(dl, dr)));
    };
  }
  if (left->closed_form_log_mgf && right->closed_form_log_mgf) {
    d.closed_form_log_mgf = [left, right, dl, dr](std::span<const double> u, const QuadConfig& c) {
      return left->closed_form_log_mgf(u.subspan(0, dl), c) * right->closed_form_log_mgf(u.subspan(dl, dr), c);
    };
  }
  d.full = detail::product_form(left->full, dl, right->full, dr);
  if (left->reduced || right->reduced)
    d.reduced = detail::product_form(left->reduced ? *left->reduced : left->full, dl,
                                     right->reduced ? *right->reduced : right->full, dr);
  (void)cfg;
  if (d.closed_form_log_mgf) {
    // Mass of a product is the product of masses; no need for a d-dim quadrature.
    d.log_mass = left->log_mass * right->log_mass;
    return std::make_shared<const Density>(std::move(d));
  }
  return finalize_density(std::move(d), cfg);
}

/// Exponential tilt f_v(ξ) = e^{<v,ξ>} f(ξ); G_v(u) = G(u + v).
inline DensityPtr tilted_density(const DensityPtr& base, Point v, const QuadConfig& cfg = {}) {
  detail::check_dimension(*base, v);
  Density d;
  std::string sv;
  for (std::size_t i = 0; i < v.size(); ++i) sv += (i ? "," : "") + std::to_string(v[i]);
  d.label = "tilt(" + base->label + ";" + sv + ")";
  d.dimension = base->dimension;
  auto shift = [v](std::span<const double> u) {
    Point w(u.begin(), u.end());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += v[i];
    return w;
  };
  d.log_density = [base, v](std::span<const double> x) {
    const double ld = base->log_density(x);
    return ld == -std::numeric_limits<double>::infinity() ? ld : ld + detail::dot(v, x);
  };
  if (base->domain_oracle)
    d.domain_oracle = [base, shift](std::span<const double> u) { return base->domain_oracle(shift(u)); };
  if (base->closed_form_log_mgf)
    d.closed_form_log_mgf = [base, shift](std::span<const double> u, const QuadConfig& c) {
      return base->closed_form_log_mgf(shift(u), c);
    };
  auto shifted_form = [shift](const IntegralForm& f) {
    IntegralForm g;
    g.dims = f.dims;
    g.log_integrand = [f, shift](std::span<const double> u, std::span<const double> x) {
      return f.log_integrand(shift(u), x);
    };
    if (f.breakpoints)
      g.breakpoints = [f, shift](std::span<const double> u, std::size_t axis, std::span<const double> outer) {
        return f.breakpoints(shift(u), axis, outer);
      };
    return g;
  };
  d.full = shifted_form(base->full);
  if (base->reduced) d.reduced = shifted_form(*base->reduced);
  return finalize_density(std::move(d), cfg);
}

// ---------------------------------------------------------------------------
// Registry

/// Densities addressable by label: "bn", "laplace", "damped-cauchy",
/// "normal", "bn⊗bn", and "product:<a>,<b>".
class DensityRegistry {
 public:
  static DensityRegistry& global() {
    static DensityRegistry r;
    return r;
  }

  DensityPtr get(const std::string& label) {
    std::lock_guard lock(mutex_);
    return get_locked(label);
  }

  static std::vector<std::string> builtin_labels() { return {"bn", "laplace", "damped-cauchy", "normal", "bn⊗bn"}; }

 private:
  DensityPtr get_locked(const std::string& label) {
    if (auto it = cache_.find(label); it != cache_.end()) return it->second;
    DensityPtr d;
    if (label == "bn") d = make_bn_density();
    else if (label == "laplace") d = make_laplace_density();
    else if (label == "damped-cauchy") d = make_damped_cauchy_density();
    else if (label == "normal") d = make_normal_density();
    else if (label == "bn⊗bn") d = product_density(get_locked("bn"), get_locked("bn"));
    else if (label.rfind("product:", 0) == 0) {
      const std::string rest = label.substr(8);
      const auto comma = rest.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("product label needs two components: " + label);
      d = product_density(get_locked(rest.substr(0, comma)), get_locked(rest.substr(comma + 1)));
    } else {
      throw std::invalid_argument("unknown density label: " + label);
    }
    cache_.emplace(label, d);
    return d;
  }

  std::mutex mutex_;
  std::map<std::string, DensityPtr> cache_;
};

inline DensityPtr density(const std::string& label) { return DensityRegistry::global().get(label); }

}  // namespace mgflab
