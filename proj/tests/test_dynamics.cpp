#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "curvaspec/dynamics.hpp"

using namespace curvaspec;

namespace {

DynamicsParams params(double k, double alpha = 1.0, double mass = 1.0) {
  return {Curvature(k), alpha, mass};
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_THROW(params(0.0, 1.0, 0.0).validate(), ParameterError);
  EXPECT_THROW(params(0.0, 1.0, -2.0).validate(), ParameterError);
  EXPECT_NO_THROW(params(0.0, 0.0, 1.0).validate());
}

TEST(Lagrangian, PolarKnownValue) {
  // k = 1, r = 1: u = 2, T = (1/2)(v_r^2/4 + v_phi^2/2)
  const double l = lagrangian_polar(params(1.0, 0.0), {1.0, 0.0, 2.0, 2.0});
  EXPECT_NEAR(l, 0.5 * (4.0 / 4.0 + 4.0 / 2.0), 1e-15);
}

TEST(Lagrangian, CartesianMatchesPolar) {
  for (double k : {-0.3, 0.0, 0.8}) {
    const PolarVelocityState p{0.9, 0.7, 0.4, -1.1};
    const auto c = to_cartesian(p);
    EXPECT_NEAR(lagrangian_cartesian(params(k, 1.3), c), lagrangian_polar(params(k, 1.3), p), 1e-13);
  }
}

TEST(Legendre, PolarRoundTrip) {
  const auto pr = params(-0.4, 1.0, 2.5);
  const PolarVelocityState v{1.2, 2.0, -0.3, 0.8};
  const auto back = inverse_legendre_polar(pr, legendre_polar(pr, v));
  EXPECT_NEAR(back.v_r, v.v_r, 1e-14);
  EXPECT_NEAR(back.v_phi, v.v_phi, 1e-14);
}

TEST(Legendre, CartesianExample) {
  // k = 1 at (1, 0) with v = (0, 2): u = 2, l = 2, p = (0, (2 + 2)/4).
  const auto p = legendre_cartesian(params(1.0), {1.0, 0.0, 0.0, 2.0});
  EXPECT_NEAR(p.p_x, 0.0, 1e-15);
  EXPECT_NEAR(p.p_y, 1.0, 1e-15);
}

TEST(Legendre, CartesianAgreesWithPolarMomenta) {
  for (double k : {-0.5, 0.0, 1.0}) {
    const auto pr = params(k);
    const PolarVelocityState v{0.8, 2.3, 0.5, -0.9};
    const auto cart = legendre_cartesian(pr, to_cartesian(v));
    const auto polar = to_polar(cart);
    const auto expect = legendre_polar(pr, v);
    EXPECT_NEAR(polar.p_r, expect.p_r, 1e-13) << k;
    EXPECT_NEAR(polar.p_phi, expect.p_phi, 1e-13) << k;
  }
}

TEST(Legendre, CartesianRoundTrip) {
  const auto pr = params(0.6, 1.0, 1.7);
  const CartesianVelocityState v{0.3, -0.9, 1.4, 0.2};
  const auto back = inverse_legendre_cartesian(pr, legendre_cartesian(pr, v));
  EXPECT_NEAR(back.v_x, v.v_x, 1e-14);
  EXPECT_NEAR(back.v_y, v.v_y, 1e-14);
}

TEST(Hamiltonian, PolarKnownValue) {
  // k = 1, r = 1, p_r = 1, p_phi = 1: (1/2)(4 + 2) + 1/2
  EXPECT_NEAR(hamiltonian_polar(params(1.0), {1.0, 0.0, 1.0, 1.0}), 3.5, 1e-15);
}

TEST(Hamiltonian, ThreeFormsAgree) {
  for (double k : {-0.5, 0.0, 0.9}) {
    const auto pr = params(k, 0.7, 1.3);
    const PhaseState s{0.6, 1.9, -0.4, 0.35};
    const double h = hamiltonian_polar(pr, s);
    EXPECT_NEAR(hamiltonian_cartesian(pr, to_cartesian(s)), h, 1e-13);
    EXPECT_NEAR(hamiltonian_noether(pr, noether_momenta(Curvature(k), s), s.r), h, 1e-13);
  }
}

TEST(Hamiltonian, OriginWithoutAngularMomentum) {
  EXPECT_NEAR(hamiltonian_polar(params(1.0), {0.0, 0.0, 2.0, 0.0}), 2.0, 1e-15);
}

TEST(Hamiltonian, RejectsBoundary) {
  EXPECT_THROW(hamiltonian_polar(params(-1.0), {1.0, 0.0, 0.0, 0.0}), DomainError);
}

TEST(Coordinates, PolarRoundTrip) {
  const PhaseState s{1.3, 4.0, 0.2, -0.7};
  const auto back = to_polar(to_cartesian(s));
  EXPECT_NEAR(back.r, s.r, 1e-15);
  EXPECT_NEAR(back.phi, s.phi, 1e-14);
  EXPECT_NEAR(back.p_r, s.p_r, 1e-15);
  EXPECT_NEAR(back.p_phi, s.p_phi, 1e-14);
  EXPECT_THROW(to_polar(CartesianPhaseState{0.0, 0.0, 1.0, 0.0}), DegenerateCoordinateError);
}

TEST(Poisson, CanonicalPairs) {
  const PhaseState s{0.7, 0.3, 0.2, 0.5};
  EXPECT_NEAR(poisson_bracket(observables::r(), observables::p_r(), s).value, 1.0, 1e-15);
  EXPECT_NEAR(poisson_bracket(observables::phi(), observables::p_phi(), s).value, 1.0, 1e-15);
  EXPECT_NEAR(poisson_bracket(observables::r(), observables::phi(), s).value, 0.0, 1e-15);
}

TEST(Poisson, MomentumAlgebra) {
  for (double kv : {-0.5, 0.0, 0.7}) {
    const Curvature k(kv);
    const PhaseState s{0.8, 1.1, -0.3, 0.6};
    const auto n = noether_momenta(k, s);
    EXPECT_NEAR(poisson_bracket(observables::P1(k), observables::P2(k), s).value, kv * n.J, 1e-12);
    EXPECT_NEAR(poisson_bracket(observables::P1(k), observables::J(), s).value, -n.P2, 1e-12);
    EXPECT_NEAR(poisson_bracket(observables::P2(k), observables::J(), s).value, n.P1, 1e-12);
  }
}

TEST(Poisson, FreeMotionConservesMomenta) {
  const auto pr = params(0.4, 0.0);
  const PhaseState s{0.9, 0.2, 0.3, -0.4};
  const auto h = observables::H(pr);
  for (const auto& obs : {observables::P1(pr.kappa), observables::P2(pr.kappa), observables::J()}) {
    EXPECT_NEAR(poisson_bracket(obs, h, s).value, 0.0, 1e-12) << obs.name();
  }
}

TEST(Poisson, FiniteDifferenceFallback) {
  const auto pr = params(0.5);
  const PhaseState s{0.9, 0.4, 0.3, 0.2};
  const auto numeric = Observable::from_values("H_fd", [&](const PhaseState& x) { return hamiltonian_polar(pr, x); });
  const auto res = poisson_bracket(numeric, observables::J(), s);
  EXPECT_TRUE(res.finite_difference);
  EXPECT_NEAR(res.value, 0.0, 1e-8);
  const auto res2 = poisson_bracket(numeric, observables::r(), s);
  EXPECT_NEAR(res2.value, -poisson_bracket(observables::r(), observables::H(pr), s).value, 1e-7);
}

TEST(Trajectory, CircularOrbitOnPlane) {
  // Unit frequency, r = 1, p_phi = 1 is a circle of period 2 pi.
  const auto tr = integrate_trajectory(params(0.0), {1.0, 0.0, 0.0, 1.0}, 2 * std::numbers::pi, 1e-3);
  ASSERT_EQ(tr.status, TrajectoryStatus::completed);
  for (const auto& s : tr.samples) EXPECT_NEAR(s.state.r, 1.0, 1e-9);
}

TEST(Trajectory, ConservesInvariants) {
  for (double k : {-0.5, 0.0, 1.0}) {
    const auto free = integrate_trajectory(params(k, 0.0), {0.5, 0.3, 0.01, 0.05}, 10.0, 1e-3);
    ASSERT_EQ(free.status, TrajectoryStatus::completed) << free.message;
    const auto d = free.max_drift();
    EXPECT_LT(d.H, 1e-8);
    EXPECT_LT(d.J, 1e-8);
    EXPECT_LT(d.P1, 1e-8);
    EXPECT_LT(d.P2, 1e-8);

    const auto bound = integrate_trajectory(params(k, 1.0), {0.5, 0.3, 0.1, 0.2}, 10.0, 1e-3);
    ASSERT_EQ(bound.status, TrajectoryStatus::completed) << bound.message;
    EXPECT_LT(bound.max_drift().H, 1e-8);
    EXPECT_LT(bound.max_drift().J, 1e-8);
  }
}

TEST(Trajectory, ZeroDurationHasOneSample) {
  const auto tr = integrate_trajectory(params(0.0), {1.0, 0.0, 0.0, 1.0}, 0.0, 1e-3);
  EXPECT_EQ(tr.samples.size(), 1u);
  EXPECT_EQ(tr.status, TrajectoryStatus::completed);
}

TEST(Trajectory, HyperbolicEscapeIsReported) {
  // Free outward motion runs into the boundary r = 1 where the chart degenerates.
  const auto tr = integrate_trajectory(params(-1.0, 0.0), {0.5, 0.0, 5.0, 0.0}, 50.0, 1e-3);
  EXPECT_NE(tr.status, TrajectoryStatus::completed);
  EXPECT_LT(tr.samples.back().t, 50.0);
  EXPECT_FALSE(tr.message.empty());
}

TEST(Trajectory, RejectsBadArguments) {
  EXPECT_THROW(integrate_trajectory(params(0.0), {1.0, 0.0, 0.0, 1.0}, 1.0, 0.0), ParameterError);
  EXPECT_THROW(integrate_trajectory(params(0.0), {0.0, 0.0, 0.0, 1.0}, 1.0, 1e-3), DegenerateCoordinateError);
}
