#pragma once

// Killing vector fields X = f d/dr + h d/dphi of the projective metric.
//
// The three-dimensional solution space is parameterized by coefficients on
// the basis
//   X1 = (1 + k r^2) cos(phi) d/dr - sin(phi)/r d/dphi
//   X2 = (1 + k r^2) sin(phi) d/dr + cos(phi)/r d/dphi
//   XJ = d/dphi
// with [X1, X2] = -k XJ, [X1, XJ] = X2, [X2, XJ] = -X1.

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"

namespace curvaspec {

/// Components and first partials of a vector field at a point.
struct FieldJet {
  double f = 0.0, h = 0.0;
  double f_r = 0.0, f_phi = 0.0;
  double h_r = 0.0, h_phi = 0.0;
};

/// Coefficients (c1, c2, c3) of c1 X1 + c2 X2 + c3 XJ.
struct KillingField {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  friend KillingField operator+(const KillingField& a, const KillingField& b) {
    return {a.c1 + b.c1, a.c2 + b.c2, a.c3 + b.c3};
  }
  friend KillingField operator*(double s, const KillingField& a) {
    return {s * a.c1, s * a.c2, s * a.c3};
  }
  friend bool operator==(const KillingField&, const KillingField&) = default;
};

struct KillingBasis {
  KillingField X1{1.0, 0.0, 0.0};
  KillingField X2{0.0, 1.0, 0.0};
  KillingField XJ{0.0, 0.0, 1.0};
};

inline KillingBasis killing_basis(Curvature /*kappa*/) { return {}; }

inline FieldJet evaluate(const KillingField& x, Curvature k, const PolarPoint& p) {
  const double r = p.r();
  if (!(r > 0.0)) throw DegenerateCoordinateError("Killing field components need r > 0");
  const double kv = k.value();
  const double u = conformal_factor(k, r);
  const double c = std::cos(p.phi()), s = std::sin(p.phi());
  const double ang_f = x.c1 * c + x.c2 * s;    // f / u
  const double ang_h = -x.c1 * s + x.c2 * c;   // (h - c3) r
  FieldJet j;
  j.f = u * ang_f;
  j.h = ang_h / r + x.c3;
  j.f_r = 2.0 * kv * r * ang_f;
  j.f_phi = u * (-x.c1 * s + x.c2 * c);
  j.h_r = -ang_h / (r * r);
  j.h_phi = (-x.c1 * c - x.c2 * s) / r;
  return j;
}

/// Lie bracket on coefficient triples, from the structure constants.
inline KillingField bracket(const KillingField& a, const KillingField& b, Curvature k) {
  return {-(a.c2 * b.c3 - a.c3 * b.c2), a.c1 * b.c3 - a.c3 * b.c1,
          -k.value() * (a.c1 * b.c2 - a.c2 * b.c1)};
}

/// Arbitrary vector field on the chart. Partials are analytic when supplied,
/// otherwise central differences with step 1e-6 max(1, r).
class GeneralField {
 public:
  using ComponentFn = std::function<std::pair<double, double>(double r, double phi)>;
  using JetFn = std::function<FieldJet(double r, double phi)>;

  static GeneralField analytic(Curvature k, JetFn fn) {
    GeneralField g(k);
    g.jet_ = std::move(fn);
    return g;
  }

  static GeneralField from_components(Curvature k, ComponentFn fn) {
    GeneralField g(k);
    g.components_ = std::move(fn);
    return g;
  }

  static GeneralField from_killing(const KillingField& x, Curvature k) {
    return analytic(k, [x, k](double r, double phi) { return evaluate(x, k, PolarPoint(r, phi)); });
  }

  /// Same field but with partials forced through finite differences.
  static GeneralField numeric_from_killing(const KillingField& x, Curvature k) {
    return from_components(k, [x, k](double r, double phi) {
      const FieldJet j = evaluate(x, k, PolarPoint(r, phi));
      return std::pair{j.f, j.h};
    });
  }

  bool analytic_partials() const noexcept { return static_cast<bool>(jet_); }
  Curvature curvature() const noexcept { return kappa_; }

  FieldJet jet(const PolarPoint& p) const {
    if (jet_) return jet_(p.r(), p.phi());
    const double r = p.r(), phi = p.phi();
    const double step = 1e-6 * std::max(1.0, r);
    if (r - step <= 0.0 || !in_domain(kappa_, r + step)) {
      throw DomainError("finite-difference stencil leaves the chart domain");
    }
    const auto [f, h] = components_(r, phi);
    const auto [fp, hp] = components_(r + step, phi);
    const auto [fm, hm] = components_(r - step, phi);
    const auto [fa, ha] = components_(r, phi + step);
    const auto [fb, hb] = components_(r, phi - step);
    FieldJet j;
    j.f = f;
    j.h = h;
    j.f_r = (fp - fm) / (2.0 * step);
    j.h_r = (hp - hm) / (2.0 * step);
    j.f_phi = (fa - fb) / (2.0 * step);
    j.h_phi = (ha - hb) / (2.0 * step);
    return j;
  }

 private:
  explicit GeneralField(Curvature k) : kappa_(k) {}

  Curvature kappa_;
  JetFn jet_;
  ComponentFn components_;
};

/// Independent components of L_X g for the diagonal projective metric.
struct LieDerivative {
  double rr = 0.0;
  double rphi = 0.0;
  double phiphi = 0.0;
};

inline LieDerivative lie_derivative_metric(const GeneralField& x, Curvature k, const PolarPoint& p) {
  const double r = p.r();
  if (!(r > 0.0)) throw DegenerateCoordinateError("lie_derivative_metric needs r > 0");
  const double kv = k.value();
  const double u = conformal_factor(k, r);
  const FieldJet j = x.jet(p);
  const double g_rr = 1.0 / (u * u);
  const double g_pp = r * r / u;
  const double dg_rr = -4.0 * kv * r / (u * u * u);
  const double dg_pp = 2.0 * r / (u * u);
  return {j.f * dg_rr + 2.0 * g_rr * j.f_r, g_rr * j.f_phi + g_pp * j.h_r,
          j.f * dg_pp + 2.0 * g_pp * j.h_phi};
}

/// Residuals of the first-order Killing system in (f, h).
inline std::array<double, 3> killing_residual(const GeneralField& x, Curvature k, const PolarPoint& p) {
  const double r = p.r();
  if (!(r > 0.0)) throw DegenerateCoordinateError("killing_residual needs r > 0");
  const double kv = k.value();
  const double u = conformal_factor(k, r);
  const FieldJet j = x.jet(p);
  return {j.f_r - 2.0 * kv * r * j.f / u, j.f_phi + r * r * u * j.h_r, r * u * j.h_phi + j.f};
}

/// d_r(w f) + d_phi(w h) for the invariant measure density w.
inline double measure_divergence(const GeneralField& x, Curvature k, const PolarPoint& p) {
  const double r = p.r();
  if (!(r > 0.0)) throw DegenerateCoordinateError("measure_divergence needs r > 0");
  const FieldJet j = x.jet(p);
  const double w = measure_weight(k, r);
  return measure_weight_derivative(k, r) * j.f + w * j.f_r + w * j.h_phi;
}

/// Pointwise commutator [A, B] = (A(B^i) - B(A^i)) d_i from the partials of
/// both fields.
inline std::pair<double, double> commutator(const GeneralField& a, const GeneralField& b,
                                            const PolarPoint& p) {
  const FieldJet ja = a.jet(p);
  const FieldJet jb = b.jet(p);
  const double fr = ja.f * jb.f_r + ja.h * jb.f_phi - (jb.f * ja.f_r + jb.h * ja.f_phi);
  const double hr = ja.f * jb.h_r + ja.h * jb.h_phi - (jb.f * ja.h_r + jb.h * ja.h_phi);
  return {fr, hr};
}

}  // namespace curvaspec
