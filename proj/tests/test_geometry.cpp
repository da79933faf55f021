#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "curvaspec/geometry.hpp"
#include "curvaspec/quadrature.hpp"

using namespace curvaspec;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST(Curvature, RejectsNonFinite) {
  EXPECT_THROW(Curvature(std::numeric_limits<double>::quiet_NaN()), ParameterError);
  EXPECT_THROW(Curvature(std::numeric_limits<double>::infinity()), ParameterError);
}

TEST(Curvature, Regimes) {
  EXPECT_TRUE(Curvature(0.0).is_flat());
  EXPECT_TRUE(Curvature(0.3).is_spherical());
  EXPECT_TRUE(Curvature(-0.3).is_hyperbolic());
  EXPECT_DOUBLE_EQ(Curvature(-0.25).radius_bound(), 2.0);
  EXPECT_TRUE(std::isinf(Curvature(1.0).radius_bound()));
  EXPECT_DOUBLE_EQ(Curvature(1.0).geodesic_extent(), pi / 2);
}

TEST(KappaFunctions, Values) {
  EXPECT_DOUBLE_EQ(s_kappa(Curvature(0.0), 2.0), 2.0);
  EXPECT_NEAR(s_kappa(Curvature(1.0), pi / 2), 1.0, 1e-15);
  EXPECT_NEAR(s_kappa(Curvature(-1.0), 1.0), 1.1752011936438014, 1e-15);
  EXPECT_NEAR(c_kappa(Curvature(-1.0), 1.0), 1.5430806348152437, 1e-15);
  EXPECT_NEAR(t_kappa(Curvature(1.0), 0.5), std::tan(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(c_kappa(Curvature(0.0), 7.0), 1.0);
}

TEST(KappaFunctions, TangentPoleThrows) {
  EXPECT_THROW(t_kappa(Curvature(1.0), pi / 2), DomainError);
}

TEST(KappaFunctions, ContinuousAtZero) {
  for (double x : {0.3, 1.0, 2.5}) {
    for (double eps : {1e-8, -1e-8, 1e-13, -1e-13}) {
      EXPECT_NEAR(s_kappa(Curvature(eps), x), x, 1e-6 * x);
      EXPECT_NEAR(c_kappa(Curvature(eps), x), 1.0, 1e-6);
    }
  }
}

TEST(KappaFunctions, CrossoverSeriesMatchesClosedForm) {
  // Just above and below the crossover the two formulas must agree.
  const double x = 1.7;
  const double above = s_kappa(Curvature(2e-12), x);
  const double below = s_kappa(Curvature(5e-13), x);
  EXPECT_NEAR(above, x, 1e-10);
  EXPECT_NEAR(below, x, 1e-10);
}

TEST(KappaFunctions, GeodesicRadiusInvertsTangent) {
  for (double kv : {-0.5, -1e-13, 0.0, 1e-13, 0.7}) {
    const Curvature k(kv);
    for (double rho : {0.1, 0.8, 1.5}) {
      EXPECT_NEAR(geodesic_radius(k, t_kappa(k, rho)), rho, 1e-13) << kv;
    }
  }
  EXPECT_THROW(geodesic_radius(Curvature(-1.0), 1.0), DomainError);
}

TEST(PolarPoint, NormalizesAngle) {
  EXPECT_NEAR(PolarPoint(1.0, -pi / 2).phi(), 3 * pi / 2, 1e-15);
  EXPECT_NEAR(PolarPoint(1.0, 5 * pi).phi(), pi, 1e-14);
  EXPECT_DOUBLE_EQ(PolarPoint(1.0, 2 * pi).phi(), 0.0);
  EXPECT_THROW(PolarPoint(-1.0, 0.0), DomainError);
}

TEST(Metric, Geodesic) {
  const auto a = metric_geodesic(Curvature(1.0), pi / 2);
  EXPECT_DOUBLE_EQ(a.g_rr, 1.0);
  EXPECT_NEAR(a.g_phiphi, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(metric_geodesic(Curvature(0.0), 3.0).g_phiphi, 9.0);
  EXPECT_NEAR(metric_geodesic(Curvature(-1.0), 1.0).g_phiphi, 1.3810978455418157, 1e-14);
}

TEST(Metric, Polar) {
  const auto a = metric_polar(Curvature(0.0), 2.0);
  EXPECT_DOUBLE_EQ(a.g_rr, 1.0);
  EXPECT_DOUBLE_EQ(a.g_phiphi, 4.0);
  const auto b = metric_polar(Curvature(1.0), 1.0);
  EXPECT_DOUBLE_EQ(b.g_rr, 0.25);
  EXPECT_DOUBLE_EQ(b.g_phiphi, 0.5);
  EXPECT_THROW(metric_polar(Curvature(-1.0), 1.0), DomainError);
}

TEST(Metric, ChartsAgree) {
  for (double kv : {-0.5, 0.0, 1.0}) {
    const Curvature k(kv);
    for (double rho : {0.2, 0.9, 1.4}) {
      const double r = t_kappa(k, rho);
      EXPECT_NEAR(metric_geodesic(k, rho).g_phiphi, metric_polar(k, r).g_phiphi,
                  1e-13 * metric_polar(k, r).g_phiphi);
      const double u = 1 + kv * r * r;
      EXPECT_NEAR(u * u * metric_polar(k, r).g_rr, 1.0, 1e-14);
    }
  }
}

TEST(Measure, Weight) {
  EXPECT_DOUBLE_EQ(measure_weight(Curvature(0.0), 2.0), 2.0);
  EXPECT_NEAR(measure_weight(Curvature(1.0), 1.0), 0.35355339059327373, 1e-16);
  EXPECT_NEAR(measure_weight(Curvature(-0.5), 1.0), 2.8284271247461903, 1e-15);
  EXPECT_THROW(measure_weight(Curvature(-1.0), 1.0), DomainError);
}

TEST(Measure, WeightDerivativeMatchesDifferences) {
  const Curvature k(0.6);
  for (double r : {0.3, 1.0, 2.2}) {
    const double h = 1e-5;
    const double fd = (measure_weight(k, r + h) - measure_weight(k, r - h)) / (2 * h);
    EXPECT_NEAR(measure_weight_derivative(k, r), fd, 1e-9);
  }
}

TEST(Measure, TotalOnSphere) {
  for (double kv : {0.5, 1.0, 2.0}) {
    const Curvature k(kv);
    const auto res = integrate([&](double r) { return measure_weight(k, r); }, 0.0,
                               std::numeric_limits<double>::infinity());
    EXPECT_NEAR(res.value, 1.0 / kv, 1e-11);
  }
}

TEST(RadialCoordinate, LogConformalFactorNearBoundary) {
  const Curvature k(-1.0);
  const RadialCoordinate c = radial_from_geodesic(k, 30.0);
  // 1 + k r^2 = 1 / cosh^2(30)
  EXPECT_NEAR(c.log_u, -2.0 * std::log(std::cosh(30.0)), 1e-12);
  EXPECT_LT(c.r, 1.0 + 1e-15);
  const RadialCoordinate d = radial_from_projective(Curvature(0.5), 1.2);
  EXPECT_NEAR(d.u(), 1.72, 1e-14);
}
