#pragma once

// Curvature-tagged elementary functions and the metric family of the
// constant-curvature surfaces (sphere, plane, hyperbolic plane).
//
// Two charts are used throughout:
//   geodesic polar (rho, phi):   g = d rho^2 + S_k(rho)^2 d phi^2
//   projective polar (r, phi):   g = dr^2 / (1 + k r^2)^2 + r^2 / (1 + k r^2) d phi^2
// related by r = T_k(rho).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "curvaspec/errors.hpp"

namespace curvaspec {

/// Below this magnitude (but nonzero) the kappa-functions switch to their
/// Taylor expansions in kappa.
inline constexpr double kFlatCrossover = 1e-12;

/// Dimensionless Gaussian curvature. Positive: sphere, zero: plane,
/// negative: hyperbolic plane.
class Curvature {
 public:
  constexpr Curvature() = default;

  explicit Curvature(double kappa) : value_(kappa) {
    if (!std::isfinite(kappa)) {
      throw ParameterError("curvature must be a finite real");
    }
  }

  constexpr double value() const noexcept { return value_; }
  constexpr bool is_flat() const noexcept { return value_ == 0.0; }
  constexpr bool is_spherical() const noexcept { return value_ > 0.0; }
  constexpr bool is_hyperbolic() const noexcept { return value_ < 0.0; }

  /// Projective radius where the hyperbolic metric blows up, 1/sqrt(-k).
  /// Infinite for k >= 0.
  double radius_bound() const noexcept {
    return is_hyperbolic() ? 1.0 / std::sqrt(-value_)
                           : std::numeric_limits<double>::infinity();
  }

  /// Geodesic radius covered by the projective chart: pi/(2 sqrt k) on the
  /// sphere (one hemisphere), infinite otherwise.
  double geodesic_extent() const noexcept {
    return is_spherical() ? std::numbers::pi / (2.0 * std::sqrt(value_))
                          : std::numeric_limits<double>::infinity();
  }

 private:
  double value_ = 0.0;
};

inline double s_kappa(Curvature k, double x) {
  const double kv = k.value();
  if (kv == 0.0) return x;
  if (std::abs(kv) < kFlatCrossover) {
    const double x2 = x * x;
    return x * (1.0 - kv * x2 / 6.0 + kv * kv * x2 * x2 / 120.0);
  }
  if (kv > 0.0) {
    const double sk = std::sqrt(kv);
    return std::sin(sk * x) / sk;
  }
  const double sk = std::sqrt(-kv);
  return std::sinh(sk * x) / sk;
}

inline double c_kappa(Curvature k, double x) {
  const double kv = k.value();
  if (kv == 0.0) return 1.0;
  if (std::abs(kv) < kFlatCrossover) {
    const double x2 = x * x;
    return 1.0 - kv * x2 / 2.0 + kv * kv * x2 * x2 / 24.0;
  }
  if (kv > 0.0) return std::cos(std::sqrt(kv) * x);
  return std::cosh(std::sqrt(-kv) * x);
}

inline double t_kappa(Curvature k, double x) {
  const double c = c_kappa(k, x);
  const double s = s_kappa(k, x);
  if (std::abs(c) <= 1e-15 * std::max(1.0, std::abs(s))) {
    throw DomainError("t_kappa: C_kappa vanishes at x = " + std::to_string(x));
  }
  return s / c;
}

/// Inverse of r = T_k(rho) on the chart domain.
inline double geodesic_radius(Curvature k, double r) {
  const double kv = k.value();
  if (kv == 0.0) return r;
  if (std::abs(kv) < kFlatCrossover) {
    const double r2 = r * r;
    return r * (1.0 - kv * r2 / 3.0 + kv * kv * r2 * r2 / 5.0);
  }
  if (kv > 0.0) {
    const double sk = std::sqrt(kv);
    return std::atan(sk * r) / sk;
  }
  const double sk = std::sqrt(-kv);
  if (sk * r >= 1.0) throw DomainError("geodesic_radius: r beyond hyperbolic boundary");
  return std::atanh(sk * r) / sk;
}

/// A point of the projective polar chart, angle reduced to [0, 2pi).
class PolarPoint {
 public:
  PolarPoint(double r, double phi) : r_(r), phi_(normalize_angle(phi)) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw DomainError("polar radius must be finite and non-negative");
    }
  }

  double r() const noexcept { return r_; }
  double phi() const noexcept { return phi_; }

  static double normalize_angle(double phi) {
    if (!std::isfinite(phi)) throw DomainError("angle must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double a = std::fmod(phi, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
  }

 private:
  double r_;
  double phi_;
};

/// Conformal factor 1 + k r^2, validated against the hyperbolic boundary.
inline double conformal_factor(Curvature k, double r) {
  if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
  const double u = 1.0 + k.value() * r * r;
  if (!(u > 0.0)) {
    throw DomainError("r = " + std::to_string(r) +
                      " lies on or beyond the hyperbolic boundary 1/sqrt(-kappa)");
  }
  return u;
}

inline bool in_domain(Curvature k, double r) noexcept {
  return r >= 0.0 && 1.0 + k.value() * r * r > 0.0;
}

/// A radius expressed in both charts. log_u = log(1 + k r^2) is carried
/// separately because near the hyperbolic boundary r rounds to 1/sqrt(-k)
/// long before 1 + k r^2 stops being representable.
struct RadialCoordinate {
  double rho = 0.0;
  double r = 0.0;
  double log_u = 0.0;

  double u() const { return std::exp(log_u); }
};

inline RadialCoordinate radial_from_geodesic(Curvature k, double rho) {
  if (!(rho >= 0.0)) throw DomainError("geodesic radius must be non-negative");
  const double kv = k.value();
  if (kv == 0.0) return {rho, rho, 0.0};
  if (std::abs(kv) < kFlatCrossover) {
    const double r = t_kappa(k, rho);
    return {rho, r, std::log1p(kv * r * r)};
  }
  const double sk = std::sqrt(std::abs(kv));
  const double x = sk * rho;
  if (kv > 0.0) {
    if (x >= std::numbers::pi / 2.0) throw DomainError("geodesic radius beyond the chart hemisphere");
    return {rho, std::tan(x) / sk, -2.0 * std::log(std::cos(x))};
  }
  const double log_cosh = x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
  return {rho, std::tanh(x) / sk, -2.0 * log_cosh};
}

inline RadialCoordinate radial_from_projective(Curvature k, double r) {
  conformal_factor(k, r);
  return {geodesic_radius(k, r), r, std::log1p(k.value() * r * r)};
}

/// Diagonal metric components; the off-diagonal part vanishes in both charts.
struct MetricComponents {
  double g_rr;
  double g_phiphi;
};

inline MetricComponents metric_geodesic(Curvature k, double rho) {
  if (!(rho >= 0.0)) throw DomainError("geodesic radius must be non-negative");
  const double s = s_kappa(k, rho);
  return {1.0, s * s};
}

inline MetricComponents metric_polar(Curvature k, double r) {
  const double u = conformal_factor(k, r);
  return {1.0 / (u * u), r * r / u};
}

/// Density of the invariant measure d mu = w(r) dr d phi.
inline double measure_weight(Curvature k, double r) {
  const double u = conformal_factor(k, r);
  return r / (u * std::sqrt(u));
}

/// dw/dr = (1 - 2 k r^2) / (1 + k r^2)^{5/2}.
inline double measure_weight_derivative(Curvature k, double r) {
  const double u = conformal_factor(k, r);
  return (1.0 - 2.0 * k.value() * r * r) / (u * u * std::sqrt(u));
}

}  // namespace curvaspec
