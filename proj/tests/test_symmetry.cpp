#include <cmath>

#include <gtest/gtest.h>

#include "curvaspec/symmetry.hpp"

using namespace curvaspec;

namespace {

const double kCurvatures[] = {-0.5, 0.0, 0.7, 1.0};

double max_abs(const std::array<double, 3>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

}  // namespace

TEST(Killing, BasisComponents) {
  const Curvature k(1.0);
  const PolarPoint p(1.0, 0.0);
  const FieldJet x1 = evaluate(KillingBasis{}.X1, k, p);
  EXPECT_DOUBLE_EQ(x1.f, 2.0);
  EXPECT_DOUBLE_EQ(x1.h, 0.0);
  const FieldJet x2 = evaluate(KillingBasis{}.X2, k, p);
  EXPECT_DOUBLE_EQ(x2.f, 0.0);
  EXPECT_DOUBLE_EQ(x2.h, 1.0);
  const FieldJet xj = evaluate(KillingBasis{}.XJ, k, p);
  EXPECT_DOUBLE_EQ(xj.h, 1.0);
  EXPECT_THROW(evaluate(KillingBasis{}.X1, k, PolarPoint(0.0, 0.0)), DegenerateCoordinateError);
}

TEST(Killing, ResidualsVanishAnalytically) {
  for (double kv : kCurvatures) {
    const Curvature k(kv);
    for (const KillingField& x : {KillingField{1, 0, 0}, KillingField{0, 1, 0}, KillingField{0.3, -1.2, 0.8}}) {
      const auto g = GeneralField::from_killing(x, k);
      for (double r : {0.2, 0.9, 1.3}) {
        const PolarPoint p(r, 2.1);
        EXPECT_LT(max_abs(killing_residual(g, k, p)), 1e-14);
        const auto l = lie_derivative_metric(g, k, p);
        EXPECT_LT(std::max({std::abs(l.rr), std::abs(l.rphi), std::abs(l.phiphi)}), 1e-13);
        EXPECT_LT(std::abs(measure_divergence(g, k, p)), 1e-14);
      }
    }
  }
}

TEST(Killing, ResidualsVanishWithFiniteDifferences) {
  for (double kv : kCurvatures) {
    const Curvature k(kv);
    const auto g = GeneralField::numeric_from_killing({0.4, 0.9, -0.6}, k);
    ASSERT_FALSE(g.analytic_partials());
    for (double r : {0.3, 1.0}) {
      const PolarPoint p(r, 0.4);
      EXPECT_LT(max_abs(killing_residual(g, k, p)), 1e-7);
      EXPECT_LT(std::abs(measure_divergence(g, k, p)), 1e-7);
    }
  }
}

TEST(Killing, NonKillingFieldIsDetected) {
  const Curvature k(0.5);
  // Pure dilation r d/dr is not an isometry.
  const auto dil = GeneralField::from_components(k, [](double r, double) { return std::pair{r, 0.0}; });
  const PolarPoint p(0.8, 1.0);
  EXPECT_GT(max_abs(killing_residual(dil, k, p)), 0.1);
  EXPECT_GT(std::abs(lie_derivative_metric(dil, k, p).rr), 0.1);
}

TEST(Killing, StructureConstants) {
  const KillingBasis b;
  const Curvature k(0.7);
  EXPECT_EQ(bracket(b.X1, b.X2, k), (KillingField{0.0, 0.0, -0.7}));
  EXPECT_EQ(bracket(b.X1, b.XJ, k), b.X2);
  EXPECT_EQ(bracket(b.X2, b.XJ, k), (-1.0) * b.X1);
  EXPECT_EQ(bracket(b.X1, b.X2, Curvature(0.0)), (KillingField{0.0, 0.0, 0.0}));
}

TEST(Killing, BracketMatchesPointwiseCommutator) {
  for (double kv : kCurvatures) {
    const Curvature k(kv);
    const KillingField a{0.5, -0.3, 1.1}, b{-0.7, 0.2, 0.4};
    const auto c = bracket(a, b, k);
    const auto ga = GeneralField::from_killing(a, k);
    const auto gb = GeneralField::from_killing(b, k);
    for (double r : {0.4, 1.1}) {
      const PolarPoint p(r, 5.0);
      const auto [f, h] = commutator(ga, gb, p);
      const FieldJet expect = evaluate(c, k, p);
      EXPECT_NEAR(f, expect.f, 1e-13) << kv;
      EXPECT_NEAR(h, expect.h, 1e-13) << kv;
    }
  }
}

TEST(Killing, BracketIsAntisymmetricAndJacobi) {
  const Curvature k(-0.5);
  const KillingField a{1, 2, 3}, b{-1, 0, 2}, c{4, -3, 1};
  EXPECT_EQ(bracket(a, b, k), (-1.0) * bracket(b, a, k));
  const auto j = bracket(a, bracket(b, c, k), k) + bracket(b, bracket(c, a, k), k) + bracket(c, bracket(a, b, k), k);
  EXPECT_EQ(j, (KillingField{0, 0, 0}));
}

TEST(Killing, StencilLeavingDomainThrows) {
  const Curvature k(-1.0);
  const auto g = GeneralField::numeric_from_killing({1, 0, 0}, k);
  EXPECT_THROW(g.jet(PolarPoint(1.0 - 1e-9, 0.0)), DomainError);
}
