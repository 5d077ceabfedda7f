#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "mgflab/golden_store.hpp"
#include "mgflab/measures.hpp"
#include "mgflab/oracle.hpp"

using namespace mgflab;

namespace {
constexpr double kPi = std::numbers::pi;
const double kLogEPi = 1.0 + std::log(kPi);
const double kLogMass = std::log(kPi * std::exp(1.0) * std::erfc(1.0));

double G(double u1, double u2) {
  const Point u{u1, u2};
  return bn_log_mgf(u).log();
}

// ξ₂-integral of the tilted raw density at fixed ξ₁, by the generic engine.
double xi2_quadrature(double u1, double u2, double x1) {
  const double v = 1 + x1 * x1;
  const double c = 2 * u2 * v, sd = std::sqrt(2 * v);
  std::vector<double> bp{c - 4 * sd, c, c + 4 * sd};
  auto f = [&](double x2) {
    const Point xi{x1, x2};
    return bn_density(xi) + u1 * x1 + u2 * x2;
  };
  return integrate_line(f, QuadConfig{}, bp).value.log();
}
}  // namespace

TEST(BnDensity, Examples) {
  EXPECT_NEAR(bn_density(Point{0, 0}), -std::log(2 * std::sqrt(kPi)), 1e-15);
  EXPECT_NEAR(bn_density(Point{1, 0}), std::log(std::pow(2.0, -1.5) / (2 * std::sqrt(kPi))) - 1, 1e-15);
  EXPECT_EQ(bn_density(Point{0.7, -2.0}), bn_density(Point{-0.7, 2.0}));
}

TEST(BnDensity, MassByTwoDimensionalQuadrature) {
  const auto d = density("bn");
  const QuadResult r = mgf_quadrature(*d, Point{0, 0}, QuadConfig{}, QuadraturePlan::Full);
  EXPECT_NEAR(r.value.log(), kLogMass, 1e-8);
  EXPECT_NEAR(d->log_mass.log(), kLogMass, 1e-9);
}

TEST(BnMarginal, Examples) {
  EXPECT_EQ(bn_marginal(Point{0, 0}, 0.0), 0.0);
  for (double x : {-3.0, 0.0, 0.5, 10.0}) EXPECT_NEAR(bn_marginal(Point{0, 1}, x), 1 - std::log1p(x * x), 1e-14);
  EXPECT_NEAR(bn_marginal(Point{0.3, 0.5}, 1.2), xi2_quadrature(0.3, 0.5, 1.2), 1e-9);
}

TEST(BnMarginal, IdentityOnRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U1(-3, 3), U2(-0.95, 0.95), X(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const double u1 = U1(rng), u2 = U2(rng), x = X(rng);
    const double want = bn_marginal(Point{u1, u2}, x);
    const double got = xi2_quadrature(u1, u2, x);
    EXPECT_LE(std::abs(std::expm1(got - want)), 1e-9) << u1 << "," << u2 << " x=" << x;
  }
}

TEST(BnMgf, Examples) {
  EXPECT_NEAR(G(0, 1), kLogEPi, 1e-14);
  EXPECT_NEAR(G(0, -1), kLogEPi, 1e-14);
  EXPECT_NEAR(G(0, 0), kLogMass, 1e-13);
  EXPECT_TRUE(bn_log_mgf(Point{0.5, 1}).is_divergent());
  EXPECT_TRUE(bn_log_mgf(Point{0, 1.0000001}).is_divergent());
}

TEST(BnMgf, AgreesWithTrapezoidOracle) {
  const double pts[][2] = {{0.3, 0.5}, {-1.5, 0.8}, {2.0, 0.0}, {0.0, 0.9}, {1.0, 0.5}, {4.0, -0.3}, {0.9999, 0.9999}};
  for (const auto& p : pts) EXPECT_NEAR(G(p[0], p[1]), oracle::bn_log_mgf(p[0], p[1]), 1e-9) << p[0] << "," << p[1];
}

TEST(BnMgf, Symmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U1(-4, 4), U2(-0.99, 0.99);
  for (int i = 0; i < 50; ++i) {
    const double a = U1(rng), b = U2(rng);
    const double g = G(a, b);
    EXPECT_NEAR(G(-a, b), g, 1e-10 * std::max(1.0, std::abs(g)));
    EXPECT_NEAR(G(a, -b), g, 1e-10 * std::max(1.0, std::abs(g)));
  }
}

TEST(BnMgf, Membership) {
  EXPECT_EQ(bn_domain_membership(Point{3.7, 0.2}), Membership::Interior);
  EXPECT_EQ(bn_domain_membership(Point{0, -1}), Membership::BoundaryInV);
  EXPECT_EQ(bn_domain_membership(Point{1e-9, 1}), Membership::BoundaryNotInV);
  EXPECT_EQ(bn_domain_membership(Point{0, 1.5}), Membership::Outside);
}

TEST(BnMgf, DivergentIffOutsideV) {
  const auto d = density("bn");
  const double pts[][2] = {{0, 0}, {1e-9, 1}, {0, 1}, {2, -1}, {0, -1}, {0, 1.2}, {3, 0.99}, {-0.1, -1}};
  for (const auto& p : pts) {
    const Point u{p[0], p[1]};
    EXPECT_EQ(bn_log_mgf(u).is_divergent(), !in_domain(d->domain_oracle(u))) << p[0] << "," << p[1];
    const QuadResult q = mgf_quadrature(*d, u, QuadConfig{}, QuadraturePlan::Reduced);
    EXPECT_EQ(q.value.is_divergent(), !in_domain(d->domain_oracle(u))) << p[0] << "," << p[1];
  }
}

TEST(BnMgf, QuadratureAtBoundaryPoint) {
  const auto d = density("bn");
  const QuadResult r = mgf_quadrature(*d, Point{0, 1}, QuadConfig{}, QuadraturePlan::Full);
  ASSERT_TRUE(r.value.is_finite());
  EXPECT_NEAR(r.value.log(), kLogEPi, 1e-4);
}

TEST(BnMgf, ClosedFormMatchesFullQuadratureGrid) {
  const auto d = density("bn");
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const Point u{-2.0 + 0.5 * i, -0.9 + 0.225 * j};
      const double cf = bn_log_mgf(u).log();
      const QuadResult q = mgf_quadrature(*d, u, QuadConfig{}, QuadraturePlan::Full);
      ASSERT_TRUE(q.value.is_finite());
      EXPECT_NEAR(q.value.log(), cf, 1e-6) << u[0] << "," << u[1];
    }
}

TEST(BnMgf, LogConvexity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U1(-3, 3), U2(-0.98, 0.98);
  for (int i = 0; i < 100; ++i) {
    const double a1 = U1(rng), a2 = U2(rng), b1 = U1(rng), b2 = U2(rng);
    const double ga = G(a1, a2), gb = G(b1, b2);
    for (double l : {0.25, 0.5, 0.75})
      EXPECT_LE(G(l * a1 + (1 - l) * b1, l * a2 + (1 - l) * b2), l * ga + (1 - l) * gb + 1e-8);
  }
}

TEST(BnMgf, MonotoneOnVerticalRay) {
  double prev = -INFINITY;
  for (int k = 0; k <= 100; ++k) {
    const double g = G(0, k / 100.0);
    EXPECT_GT(g, prev) << k;
    EXPECT_LE(g, kLogEPi + 1e-14);
    prev = g;
  }
  EXPECT_NEAR(prev, kLogEPi, 1e-14);
}

TEST(BnMgf, TinyGapStaysAccurate) {
  // Far-out saddle: the reduced integrand has a bump at u₁/(2·gap).
  for (double gap : {1e-4, 1e-8, 1e-12}) {
    QuadConfig tight;
    tight.rel_tol = 1e-12;
    const double a = bn_log_mgf_gap(0.5, gap).log(), b = bn_log_mgf_gap(0.5, gap, tight).log();
    EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a))) << gap;
    // Laplace asymptotics: u₂² + u₁²/(4gap) + log(√(π/gap)/(1+m²)).
    const double m = 0.25 / gap;
    const double approx = (1 - gap) + 0.0625 / gap + 0.5 * std::log(kPi / gap) - std::log1p(m * m);
    EXPECT_NEAR(a, approx, 1e-3 * std::max(1.0, std::abs(a))) << gap;
  }
}

TEST(Factorization, SumsToLogMgf) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U1(-3, 3), U2(-0.99, 0.99);
  for (int i = 0; i < 60; ++i) {
    const Point u{U1(rng), U2(rng)};
    const Factorization f = bn_factorization(u);
    EXPECT_NEAR(f.product().log(), bn_log_mgf(u).log(), 1e-9);
    EXPECT_NEAR(f.I1.log() + f.I2.log() + f.I3.log(), bn_log_mgf(u).log(), 1e-9);
  }
}

TEST(Factorization, Examples) {
  const Factorization z = bn_factorization(Point{0, 0});
  EXPECT_EQ(z.I1.log(), 0.0);
  EXPECT_EQ(z.I2.log(), 0.0);
  EXPECT_NEAR(z.I3.log(), kLogMass, 1e-10);
  EXPECT_NEAR(bn_factorization(Point{1, 0}).I2.log(), 0.25, 1e-15);
  const Factorization n = bn_factorization(Point{0, 1 - 1e-9});
  EXPECT_NEAR(n.I1.log(), 1.0, 1e-8);
  EXPECT_NEAR(n.I3.log(), std::log(kPi), 1e-4);
  EXPECT_THROW(bn_factorization(Point{0, 1}), std::domain_error);
}

TEST(Baselines, Registry) {
  for (const auto& l : DensityRegistry::builtin_labels()) EXPECT_NO_THROW(density(l)) << l;
  EXPECT_THROW(density("nope"), std::invalid_argument);
  EXPECT_EQ(density("product:bn,bn")->dimension, 4u);
}

TEST(Baselines, NormalAndLaplace) {
  const auto n = density("normal");
  for (double t : {-3.0, 0.0, 1.5, 5.0}) {
    const QuadResult r = mgf_quadrature(*n, Point{t});
    EXPECT_NEAR(r.value.log(), t * t / 2, 1e-9) << t;
  }
  const auto l = density("laplace");
  const QuadResult a = mgf_quadrature(*l, Point{0.999});
  ASSERT_TRUE(a.value.is_finite());
  EXPECT_NEAR(a.value.log(), -std::log(1 - 0.999 * 0.999), 1e-8);
  EXPECT_TRUE(mgf_quadrature(*l, Point{1.0}).value.is_divergent());
  EXPECT_TRUE(mgf_quadrature(*l, Point{-1.0}).value.is_divergent());
}

TEST(Baselines, DampedCauchyBoundaryFinite) {
  const auto d = density("damped-cauchy");
  const QuadResult r = mgf_quadrature(*d, Point{1.0});
  ASSERT_TRUE(r.value.is_finite());
  // ∫ e^{x-|x|}/(π(1+x²)) = 1/2 + (1/π)∫_0^∞ e^{-2x}/(1+x²) dx.
  const long double tail = oracle::trapezoid_log(
      [](long double x) { return x < 0 ? -INFINITY : -2 * x - std::log1p(x * x); }, 20, 20, 1.0L / 8192);
  // Full weight at x = 0 replaced by the trapezoid half weight.
  const double want = std::log(0.5 + (std::exp(static_cast<double>(tail)) - 0.5 / 8192) / kPi);
  EXPECT_NEAR(r.value.log(), want, 1e-7);
  EXPECT_TRUE(mgf_quadrature(*d, Point{1.01}).value.is_divergent());
}

TEST(Products, ClosedFormIsSum) {
  const auto bb = density("bn⊗bn");
  EXPECT_NEAR(bb->closed_form_log_mgf(Point{0, 1, 0, 1}, {}).log(), 2 * kLogEPi, 1e-13);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U1(-2, 2), U2(-0.9, 0.9);
  for (int i = 0; i < 10; ++i) {
    const double a = U1(rng), b = U2(rng);
    EXPECT_EQ(bb->closed_form_log_mgf(Point{a, b, 0, 1}, {}).log(), G(a, b) + G(0, 1));
  }
  EXPECT_NEAR(bb->log_mass.log(), 2 * kLogMass, 1e-9);
}

TEST(Products, QuadratureAtRandomInteriorPoints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> U1(-2, 2), U2(-0.9, 0.9), N(-1.5, 1.5), L(-0.9, 0.9);
  const auto nl = density("product:normal,laplace");
  const auto bnn = density("product:bn,normal");
  const auto bb = density("bn⊗bn");
  for (int i = 0; i < 10; ++i) {
    const Point u{N(rng), L(rng)};
    const double want = 0.5 * u[0] * u[0] - std::log(1 - u[1] * u[1]);
    EXPECT_NEAR(mgf_quadrature(*nl, u, {}, QuadraturePlan::Full).value.log(), want, 1e-6);

    const Point v{U1(rng), U2(rng), N(rng)};
    EXPECT_NEAR(mgf_quadrature(*bnn, v, {}, QuadraturePlan::Reduced).value.log(), G(v[0], v[1]) + 0.5 * v[2] * v[2],
                1e-6);

    const Point w{U1(rng), U2(rng), U1(rng), U2(rng)};
    EXPECT_NEAR(mgf_quadrature(*bb, w, {}, QuadraturePlan::Reduced).value.log(), G(w[0], w[1]) + G(w[2], w[3]), 1e-6);
  }
}

TEST(Products, MembershipConjunction) {
  using M = Membership;
  EXPECT_EQ(combine_membership(M::Interior, M::Interior), M::Interior);
  EXPECT_EQ(combine_membership(M::Interior, M::BoundaryInV), M::BoundaryInV);
  EXPECT_EQ(combine_membership(M::BoundaryInV, M::BoundaryInV), M::BoundaryInV);
  EXPECT_EQ(combine_membership(M::Interior, M::BoundaryNotInV), M::BoundaryNotInV);
  EXPECT_EQ(combine_membership(M::Outside, M::BoundaryInV), M::Outside);
  const auto bb = density("bn⊗bn");
  EXPECT_EQ(bb->domain_oracle(Point{0.3, 0.2, 0, 1}), M::BoundaryInV);
  EXPECT_EQ(bb->domain_oracle(Point{0.3, 1, 0, 1}), M::BoundaryNotInV);
}

TEST(Products, DimensionMismatchThrows) {
  EXPECT_THROW(evaluate_mgf(*density("bn"), Point{0, 0, 0}, MgfMethod::ClosedForm), std::invalid_argument);
}

TEST(Tilting, ShiftsArgument) {
  const auto t = tilted_density(density("bn"), Point{0, 0.5});
  EXPECT_NEAR(t->closed_form_log_mgf(Point{0.2, 0.1}, {}).log(), G(0.2, 0.6), 1e-14);
  EXPECT_NEAR(mgf_quadrature(*t, Point{0.2, 0.1}, {}, QuadraturePlan::Reduced).value.log(), G(0.2, 0.6), 1e-9);
  EXPECT_EQ(t->domain_oracle(Point{0, 0.5}), Membership::BoundaryInV);
  EXPECT_NEAR(t->log_mass.log(), G(0, 0.5), 1e-9);
}

TEST(Goldens, StoreRoundTripsAndMatchesFreshOracle) {
  const GoldenStore g = GoldenStore::load(GoldenStore::default_path());
  ASSERT_GE(g.entries().size(), 10u);
  for (const auto& e : g.entries()) EXPECT_TRUE(e.source == "quoted" || e.source == "oracle") << e.quantity;
  // Every 1-D bn entry is re-derived from the oracle and the library.
  for (const auto& e : g.entries()) {
    if (e.density != "bn" || e.quantity.rfind("log_mgf(", 0) != 0) continue;
    double a = 0, b = 0;
    char c1, c2, c3;
    std::istringstream s(e.quantity.substr(7));
    s >> c1 >> a >> c2 >> b >> c3;
    const LogValue lib = bn_log_mgf(Point{a, b});
    if (e.value.is_divergent()) {
      EXPECT_TRUE(lib.is_divergent()) << e.quantity;
      continue;
    }
    EXPECT_NEAR(lib.log(), e.value.log(), e.tolerance) << e.quantity;
    if (e.source == "oracle" && std::abs(b) < 1)
      EXPECT_NEAR(oracle::bn_log_mgf(a, b, e.quantity == "log_mgf(0,0)" ? 1.0L / 512 : 1.0L / 256), e.value.log(),
                  1e-12)
          << e.quantity;
  }
  const std::string tmp = ::testing::TempDir() + "goldens_roundtrip.tsv";
  g.save(tmp);
  const GoldenStore h = GoldenStore::load(tmp);
  ASSERT_EQ(h.entries().size(), g.entries().size());
  for (std::size_t i = 0; i < g.entries().size(); ++i) {
    EXPECT_EQ(h.entries()[i].value, g.entries()[i].value);
    EXPECT_EQ(h.entries()[i].source, g.entries()[i].source);
  }
}

TEST(Goldens, RejectsMalformed) {
  const std::string tmp = ::testing::TempDir() + "goldens_bad.tsv";
  {
    std::ofstream out(tmp);
    out << "bn\tlog_mgf(0,1)\t2.1\t1e-8\twiki\tx\n";
  }
  EXPECT_THROW(GoldenStore::load(tmp), std::runtime_error);
  EXPECT_THROW(parse_log_value("2.1x"), std::invalid_argument);
  EXPECT_TRUE(parse_log_value("divergent").is_divergent());
}
