#pragma once

// Adaptive composite Gauss-Legendre quadrature.
//
// Each panel is integrated with an n-point Gauss-Legendre rule and with the
// same rule on both halves; the difference is the panel error estimate.
// Panels with the largest estimate are bisected until the total estimate
// meets max(abs_tol, rel_tol |I|). An infinite upper limit is mapped onto
// [0, 1) by x = lo + t / (1 - t).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"

namespace curvaspec {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre_rule(std::size_t n) {
  if (n == 0) throw ParameterError("gauss_legendre_rule: n must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double p2 = ((2.0 * jd - 1.0) * x * p1 - (jd - 1.0) * p0) / jd;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

inline const GaussRule& default_gauss_rule() {
  static const GaussRule rule = gauss_legendre_rule(10);
  return rule;
}

template <class F>
double gauss_panel(const F& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

/// Fixed composite rule with `panels` equal panels.
template <class F>
double composite_gauss_legendre(const F& f, double lo, double hi, std::size_t panels,
                                const GaussRule& rule = default_gauss_rule()) {
  const double width = (hi - lo) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + width * static_cast<double>(p);
    sum += gauss_panel(f, a, a + width, rule);
  }
  return sum;
}

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  std::size_t max_panels = 20000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

namespace detail {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel make_panel(const F& f, double a, double b) {
  const GaussRule& rule = default_gauss_rule();
  const double whole = gauss_panel(f, a, b, rule);
  const double mid = 0.5 * (a + b);
  const double halves = gauss_panel(f, a, mid, rule) + gauss_panel(f, mid, b, rule);
  return {a, b, halves, std::abs(halves - whole)};
}

template <class F>
QuadratureResult adaptive_finite(const F& f, double lo, double hi, const QuadratureOptions& opt) {
  std::priority_queue<Panel> queue;
  constexpr int initial = 8;
  for (int i = 0; i < initial; ++i) {
    const double a = lo + (hi - lo) * i / initial;
    const double b = i + 1 == initial ? hi : lo + (hi - lo) * (i + 1) / initial;
    queue.push(make_panel(f, a, b));
  }
  double total = 0.0, error = 0.0;
  auto recompute = [&] {
    total = 0.0;
    error = 0.0;
    auto copy = queue;
    while (!copy.empty()) {
      total += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
  };
  recompute();
  std::size_t iterations = 0;
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (queue.size() >= opt.max_panels) {
      throw ConvergenceError("quadrature: tolerance not met within " +
                             std::to_string(opt.max_panels) + " panels (estimate " +
                             std::to_string(error) + ")");
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = make_panel(f, worst.a, mid);
    const Panel right = make_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    // Running sums drift after many updates; refresh occasionally.
    if (++iterations % 256 == 0) recompute();
  }
  recompute();
  return {total, error, queue.size()};
}

}  // namespace detail

/// Integral of f over [lo, hi]; hi may be +infinity.
template <class F>
QuadratureResult integrate(const F& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  if (!std::isfinite(lo)) throw ParameterError("integrate: lower limit must be finite");
  if (!(hi >= lo)) throw ParameterError("integrate: need hi >= lo");
  if (hi == lo) return {};
  if (std::isinf(hi)) {
    auto mapped = [&](double t) {
      const double one_minus = 1.0 - t;
      if (one_minus <= 0.0) return 0.0;
      const double x = lo + t / one_minus;
      return f(x) / (one_minus * one_minus);
    };
    return detail::adaptive_finite(mapped, 0.0, 1.0, opt);
  }
  return detail::adaptive_finite(f, lo, hi, opt);
}

/// Integral of g(r) w(r) dr over the whole radial domain of the chart, where
/// w is the invariant measure density and g receives a RadialCoordinate.
/// Evaluated in the geodesic radius rho, where w(r) dr = S_k(rho) d rho. On the
/// hyperbolic plane the range is cut at sqrt(-k) rho = 700, where S_k is still
/// finite and any normalizable integrand is negligible.
template <class G>
QuadratureResult integrate_measure(Curvature k, const G& g, const QuadratureOptions& opt = {}) {
  auto integrand = [&](double rho) {
    const double s = s_kappa(k, rho);
    if (s == 0.0) return 0.0;
    return g(radial_from_geodesic(k, rho)) * s;
  };
  double upper = k.geodesic_extent();
  if (k.is_hyperbolic() && std::abs(k.value()) >= kFlatCrossover) {
    upper = 700.0 / std::sqrt(-k.value());
  }
  return integrate(integrand, 0.0, upper, opt);
}

/// Integral of a radial integrand f(r) over [r_lo, r_hi] inside the chart.
/// r_hi may be +infinity (k >= 0) or the hyperbolic boundary itself, which
/// the Gauss nodes never touch.
template <class F>
QuadratureResult radial_quadrature(const F& f, Curvature k, double r_lo, double r_hi,
                                   const QuadratureOptions& opt = {}) {
  if (!(r_lo >= 0.0)) throw DomainError("radial_quadrature: r_lo must be >= 0");
  if (k.is_hyperbolic() && !(r_hi <= k.radius_bound())) {
    throw DomainError("radial_quadrature: r_hi beyond the hyperbolic boundary");
  }
  return integrate(f, r_lo, r_hi, opt);
}

}  // namespace curvaspec
