#include <cmath>
#include <numbers>
#include <complex>

#include <gtest/gtest.h>

#include "curvaspec/quantization.hpp"

using namespace curvaspec;

namespace {

// exp(-r^2/2) e^{i l phi} r^|l| with analytic partials.
ScalarField gaussian_mode(int l) {
  return ScalarField::analytic([l](double r, double phi) {
    const double b = std::abs(l);
    const double g = std::pow(r, b) * std::exp(-0.5 * r * r);
    const double gp = (b / r - r) * g;
    const double gpp = ((b / r - r) * (b / r - r) - b / (r * r) - 1.0) * g;
    const complex e = std::polar(1.0, l * phi);
    const complex il{0.0, static_cast<double>(l)};
    ScalarJet j;
    j.value = g * e;
    j.d_r = gp * e;
    j.d_phi = il * g * e;
    j.d_rr = gpp * e;
    j.d_rphi = il * gp * e;
    j.d_phiphi = il * il * g * e;
    return j;
  });
}

ScalarField numeric(const ScalarField& f, Curvature k) {
  return ScalarField::from_values([f](double r, double phi) { return f.value(r, phi); }, k);
}

}  // namespace

TEST(Operators, AngularMomentumEigenvalue) {
  const Curvature k(0.4);
  const auto psi = gaussian_mode(2);
  const complex v = apply_momentum_operator(Momentum::J, k, psi, 0.8, 0.3);
  EXPECT_LT(std::abs(v - 2.0 * psi.value(0.8, 0.3)), 1e-14);
}

TEST(Operators, FlatGaussianIsGroundState) {
  const Curvature k(0.0);
  const auto psi = gaussian_mode(0);
  for (double r : {0.3, 1.0, 2.0}) {
    EXPECT_LT(std::abs(apply_hamiltonian(k, 1.0, psi, r, 0.5) - psi.value(r, 0.5)), 1e-13);
    EXPECT_LT(std::abs(schrodinger_residual(k, 1.0, psi, r, 0.5)), 1e-13);
  }
}

TEST(Operators, NumericDerivativesMatchAnalytic) {
  const Curvature k(-0.3);
  const auto a = gaussian_mode(1);
  const auto n = numeric(a, k);
  ASSERT_FALSE(n.analytic_derivatives());
  for (double r : {0.5, 1.2}) {
    const ScalarJet ja = a.jet(r, 0.9), jn = n.jet(r, 0.9);
    EXPECT_LT(std::abs(ja.d_r - jn.d_r), 1e-11);
    EXPECT_LT(std::abs(ja.d_rr - jn.d_rr), 1e-7);
    EXPECT_LT(std::abs(ja.d_rphi - jn.d_rphi), 1e-7);
    EXPECT_LT(std::abs(ja.d_phiphi - jn.d_phiphi), 1e-7);
  }
}

TEST(Operators, CasimirComposition) {
  for (double kv : {-0.2, 0.0, 0.6}) {
    const Curvature k(kv);
    const auto psi = gaussian_mode(1);
    const auto p1 = momentum_field(Momentum::P1, k, psi);
    const auto p2 = momentum_field(Momentum::P2, k, psi);
    const auto jj = momentum_field(Momentum::J, k, psi);
    for (double r : {0.6, 1.1}) {
      const double phi = 0.7;
      const complex lhs = apply_hamiltonian(k, 0.0, psi, r, phi);
      const complex rhs = 0.5 * (apply_momentum_operator(Momentum::P1, k, p1, r, phi) +
                                 apply_momentum_operator(Momentum::P2, k, p2, r, phi) +
                                 kv * apply_momentum_operator(Momentum::J, k, jj, r, phi));
      EXPECT_LT(std::abs(lhs - rhs), 1e-6) << kv;
    }
  }
}

TEST(Operators, MomentumCommutator) {
  const double kv = 0.8;
  const Curvature k(kv);
  const auto psi = gaussian_mode(2);
  const auto p1 = momentum_field(Momentum::P1, k, psi);
  const auto p2 = momentum_field(Momentum::P2, k, psi);
  const double r = 0.9, phi = 1.3;
  const complex comm = apply_momentum_operator(Momentum::P1, k, p2, r, phi) -
                       apply_momentum_operator(Momentum::P2, k, p1, r, phi);
  const complex expect = complex{0.0, kv} * apply_momentum_operator(Momentum::J, k, psi, r, phi);
  EXPECT_LT(std::abs(comm - expect), 1e-6);
}

TEST(Operators, OriginAndBoundaryRejected) {
  const auto psi = gaussian_mode(0);
  EXPECT_THROW(apply_hamiltonian(Curvature(0.0), 1.0, psi, 0.0, 0.0), DegenerateCoordinateError);
  EXPECT_THROW(apply_hamiltonian(Curvature(-1.0), 1.0, psi, 1.5, 0.0), DomainError);
}

TEST(InnerProduct, GaussianNorm) {
  // int exp(-r^2) r dr dphi = pi on the plane.
  const auto psi = gaussian_mode(0);
  const complex v = inner_product(Curvature(0.0), psi, psi, 0.0, 12.0);
  EXPECT_NEAR(v.real(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(InnerProduct, DifferentModesAreOrthogonal) {
  const complex v = inner_product(Curvature(0.5), gaussian_mode(1), gaussian_mode(2), 0.0, 10.0);
  EXPECT_LT(std::abs(v), 1e-13);
}

TEST(Units, RoundTrip) {
  const PhysicalScales s(2.0, 3.0, 5.0);
  EXPECT_DOUBLE_EQ(s.energy_unit(), 10.0);
  EXPECT_DOUBLE_EQ(s.curvature_unit(), 7.5);
  EXPECT_NEAR(s.length_unit(), std::sqrt(2.0 / 15.0), 1e-16);
  for (auto q : {Quantity::length, Quantity::curvature, Quantity::energy}) {
    EXPECT_NEAR(from_dimensionless(s, q, to_dimensionless(s, q, 1.7)), 1.7, 1e-15);
  }
  EXPECT_THROW(PhysicalScales(0.0, 1.0, 1.0), ParameterError);
  EXPECT_THROW(PhysicalScales(1.0, -1.0, 1.0), ParameterError);
}
