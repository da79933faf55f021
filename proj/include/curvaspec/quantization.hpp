#pragma once

// Quantum operators built from the Noether momenta, in units hbar = m = 1:
//   P1 = -i [(1 + k r^2) cos(phi) d_r - sin(phi)/r d_phi]
//   P2 = -i [(1 + k r^2) sin(phi) d_r + cos(phi)/r d_phi]
//   J  = -i d_phi
//   H  = -(1/2)(1 + k r^2)[(1 + k r^2) d_rr + (1 + 2 k r^2)/r d_r + 1/r^2 d_phiphi]
//        + (1/2) alpha^2 r^2
//
// The physical frequency is called omega here; the dimensionless variables
// are r' = r sqrt(m omega / hbar), k' = k hbar / (m omega), E' = E / (hbar omega).

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"
#include "curvaspec/quadrature.hpp"

namespace curvaspec {

using complex = std::complex<double>;

/// Value with first and second partials in (r, phi).
struct ScalarJet {
  complex value{};
  complex d_r{}, d_phi{};
  complex d_rr{}, d_rphi{}, d_phiphi{};
};

/// Complex scalar field on the chart, 2pi-periodic in phi. Derivatives are
/// analytic when the field is built from a jet function; otherwise they come
/// from 5-point central stencils with step 1e-4 max(1, r).
class ScalarField {
 public:
  using JetFn = std::function<ScalarJet(double r, double phi)>;
  using ValueFn = std::function<complex(double r, double phi)>;

  ScalarField() = default;

  static ScalarField analytic(JetFn fn) {
    ScalarField s;
    s.jet_ = std::move(fn);
    return s;
  }

  static ScalarField from_values(ValueFn fn, Curvature k = Curvature{}) {
    ScalarField s;
    s.value_ = std::move(fn);
    s.kappa_ = k;
    return s;
  }

  bool analytic_derivatives() const noexcept { return static_cast<bool>(jet_); }

  complex value(double r, double phi) const { return jet_ ? jet_(r, phi).value : value_(r, phi); }

  ScalarJet jet(double r, double phi) const {
    if (jet_) return jet_(r, phi);
    const double h = 1e-4 * std::max(1.0, r);
    if (r - 2.0 * h <= 0.0 || !in_domain(kappa_, r + 2.0 * h)) {
      throw DomainError("derivative stencil leaves the chart domain");
    }
    auto f = [&](double dr, double dp) { return value_(r + dr, phi + dp); };
    ScalarJet j;
    j.value = f(0, 0);
    const complex rp1 = f(h, 0), rm1 = f(-h, 0), rp2 = f(2 * h, 0), rm2 = f(-2 * h, 0);
    const complex pp1 = f(0, h), pm1 = f(0, -h), pp2 = f(0, 2 * h), pm2 = f(0, -2 * h);
    j.d_r = (-rp2 + 8.0 * rp1 - 8.0 * rm1 + rm2) / (12.0 * h);
    j.d_phi = (-pp2 + 8.0 * pp1 - 8.0 * pm1 + pm2) / (12.0 * h);
    j.d_rr = (-rp2 + 16.0 * rp1 - 30.0 * j.value + 16.0 * rm1 - rm2) / (12.0 * h * h);
    j.d_phiphi = (-pp2 + 16.0 * pp1 - 30.0 * j.value + 16.0 * pm1 - pm2) / (12.0 * h * h);
    j.d_rphi = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    return j;
  }

 private:
  JetFn jet_;
  ValueFn value_;
  Curvature kappa_;
};

enum class Momentum { P1, P2, J };

namespace detail {

inline void require_interior(Curvature k, double r) {
  if (!(r > 0.0)) throw DegenerateCoordinateError("operators need r > 0");
  conformal_factor(k, r);
}

inline complex momentum_from_jet(Momentum which, Curvature k, const ScalarJet& j, double r,
                                 double phi) {
  const complex minus_i{0.0, -1.0};
  const double u = 1.0 + k.value() * r * r;
  switch (which) {
    case Momentum::P1:
      return minus_i * (u * std::cos(phi) * j.d_r - std::sin(phi) / r * j.d_phi);
    case Momentum::P2:
      return minus_i * (u * std::sin(phi) * j.d_r + std::cos(phi) / r * j.d_phi);
    case Momentum::J:
      break;
  }
  return minus_i * j.d_phi;
}

/// The bracketed Laplace-Beltrami part: u [u d_rr + (1 + 2 k r^2)/r d_r + d_phiphi / r^2].
inline complex laplacian_from_jet(Curvature k, const ScalarJet& j, double r) {
  const double kr2 = k.value() * r * r;
  const double u = 1.0 + kr2;
  return u * (u * j.d_rr + (1.0 + 2.0 * kr2) / r * j.d_r + j.d_phiphi / (r * r));
}

}  // namespace detail

inline complex apply_momentum_operator(Momentum which, Curvature k, const ScalarField& psi,
                                       double r, double phi) {
  detail::require_interior(k, r);
  return detail::momentum_from_jet(which, k, psi.jet(r, phi), r, phi);
}

inline complex apply_hamiltonian(Curvature k, double alpha, const ScalarField& psi, double r,
                                 double phi) {
  detail::require_interior(k, r);
  const ScalarJet j = psi.jet(r, phi);
  return -0.5 * detail::laplacian_from_jet(k, j, r) + 0.5 * alpha * alpha * r * r * j.value;
}

/// Residual of the dimensionless stationary equation
/// u[...]psi - r^2 psi + 2 E psi, zero for an eigenpair.
inline complex schrodinger_residual(Curvature k, double energy, const ScalarField& psi, double r,
                                    double phi) {
  detail::require_interior(k, r);
  const ScalarJet j = psi.jet(r, phi);
  return detail::laplacian_from_jet(k, j, r) - r * r * j.value + 2.0 * energy * j.value;
}

/// The field P psi, with its own derivatives taken numerically. Used to apply
/// operators in sequence.
inline ScalarField momentum_field(Momentum which, Curvature k, ScalarField psi) {
  return ScalarField::from_values(
      [which, k, psi = std::move(psi)](double r, double phi) {
        return apply_momentum_operator(which, k, psi, r, phi);
      },
      k);
}

inline ScalarField hamiltonian_field(Curvature k, double alpha, ScalarField psi) {
  return ScalarField::from_values(
      [k, alpha, psi = std::move(psi)](double r, double phi) {
        return apply_hamiltonian(k, alpha, psi, r, phi);
      },
      k);
}

/// <a, b> = int conj(a) b d mu over r in [r_lo, r_hi], phi in [0, 2pi), with a
/// composite Gauss-Legendre rule in r and the periodic trapezoid rule in phi.
/// Meant for test functions supported inside (r_lo, r_hi).
inline complex inner_product(Curvature k, const ScalarField& a, const ScalarField& b, double r_lo,
                             double r_hi, std::size_t radial_panels = 64,
                             std::size_t angular_points = 128) {
  if (!(r_hi > r_lo) || r_lo < 0.0) throw ParameterError("inner_product: bad radial range");
  conformal_factor(k, r_hi);
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(angular_points);
  auto radial = [&](double r, bool imag) {
    complex sum{};
    for (std::size_t i = 0; i < angular_points; ++i) {
      const double phi = dphi * static_cast<double>(i);
      sum += std::conj(a.value(r, phi)) * b.value(r, phi);
    }
    const complex v = sum * dphi * measure_weight(k, r);
    return imag ? v.imag() : v.real();
  };
  const double re = composite_gauss_legendre([&](double r) { return radial(r, false); }, r_lo, r_hi,
                                             radial_panels);
  const double im = composite_gauss_legendre([&](double r) { return radial(r, true); }, r_lo, r_hi,
                                             radial_panels);
  return {re, im};
}

// ---------------------------------------------------------------------------
// Units

class PhysicalScales {
 public:
  PhysicalScales() = default;
  PhysicalScales(double hbar, double mass, double omega) : hbar_(hbar), mass_(mass), omega_(omega) {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0) || !std::isfinite(hbar) ||
        !std::isfinite(mass) || !std::isfinite(omega)) {
      throw ParameterError("physical scales hbar, mass, omega must be finite and positive");
    }
  }

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  double omega() const noexcept { return omega_; }

  double length_unit() const { return std::sqrt(hbar_ / (mass_ * omega_)); }
  double curvature_unit() const { return mass_ * omega_ / hbar_; }
  double energy_unit() const { return hbar_ * omega_; }

  /// Coupling of the potential (1/2) alpha^2 r^2 in physical units.
  double alpha() const { return std::sqrt(mass_) * omega_; }

 private:
  double hbar_ = 1.0;
  double mass_ = 1.0;
  double omega_ = 1.0;
};

enum class Quantity { length, curvature, energy };

inline double to_dimensionless(const PhysicalScales& s, Quantity q, double value) {
  switch (q) {
    case Quantity::length: return value / s.length_unit();
    case Quantity::curvature: return value / s.curvature_unit();
    case Quantity::energy: break;
  }
  return value / s.energy_unit();
}

inline double from_dimensionless(const PhysicalScales& s, Quantity q, double value) {
  switch (q) {
    case Quantity::length: return value * s.length_unit();
    case Quantity::curvature: return value * s.curvature_unit();
    case Quantity::energy: break;
  }
  return value * s.energy_unit();
}

}  // namespace curvaspec
