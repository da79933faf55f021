#pragma once

// Classical particle on the constant-curvature surface in the projective
// chart, with the harmonic potential (1/2) alpha^2 r^2.
//
// Sign convention: the potential enters the Lagrangian as -(1/2) alpha^2 r^2
// and the Hamiltonian as +(1/2) alpha^2 r^2, so that both are related by the
// Legendre transform.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"

namespace curvaspec {

struct DynamicsParams {
  Curvature kappa;
  double alpha = 0.0;
  double mass = 1.0;

  void validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be >= 0");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw ParameterError("mass must be > 0");
  }
};

struct PhaseState {
  double r = 0.0;
  double phi = 0.0;
  double p_r = 0.0;
  double p_phi = 0.0;
};

struct CartesianPhaseState {
  double x = 0.0;
  double y = 0.0;
  double p_x = 0.0;
  double p_y = 0.0;
};

struct PolarVelocityState {
  double r = 0.0;
  double phi = 0.0;
  double v_r = 0.0;
  double v_phi = 0.0;
};

struct CartesianVelocityState {
  double x = 0.0;
  double y = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
};

struct NoetherMomenta {
  double P1 = 0.0;
  double P2 = 0.0;
  double J = 0.0;
};

// ---------------------------------------------------------------------------
// Coordinate maps

inline CartesianPhaseState to_cartesian(const PhaseState& s) {
  if (!(s.r > 0.0)) throw DegenerateCoordinateError("to_cartesian: momentum map needs r > 0");
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  return {s.r * c, s.r * sn, c * s.p_r - sn * s.p_phi / s.r, sn * s.p_r + c * s.p_phi / s.r};
}

inline PhaseState to_polar(const CartesianPhaseState& s) {
  const double r = std::hypot(s.x, s.y);
  if (!(r > 0.0)) throw DegenerateCoordinateError("to_polar: origin has no polar angle");
  const double phi = PolarPoint::normalize_angle(std::atan2(s.y, s.x));
  return {r, phi, (s.x * s.p_x + s.y * s.p_y) / r, s.x * s.p_y - s.y * s.p_x};
}

inline CartesianVelocityState to_cartesian(const PolarVelocityState& s) {
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  return {s.r * c, s.r * sn, c * s.v_r - s.r * sn * s.v_phi, sn * s.v_r + s.r * c * s.v_phi};
}

// ---------------------------------------------------------------------------
// Lagrangians and Legendre maps

inline double lagrangian_polar(const DynamicsParams& params, const PolarVelocityState& s) {
  params.validate();
  const double u = conformal_factor(params.kappa, s.r);
  const double kinetic = 0.5 * params.mass * (s.v_r * s.v_r / (u * u) + s.r * s.r * s.v_phi * s.v_phi / u);
  return kinetic - 0.5 * params.alpha * params.alpha * s.r * s.r;
}

inline double lagrangian_cartesian(const DynamicsParams& params, const CartesianVelocityState& s) {
  params.validate();
  const double r2 = s.x * s.x + s.y * s.y;
  const double u = conformal_factor(params.kappa, std::sqrt(r2));
  const double l = s.x * s.v_y - s.y * s.v_x;
  const double kinetic =
      0.5 * params.mass * (s.v_x * s.v_x + s.v_y * s.v_y + params.kappa.value() * l * l) / (u * u);
  return kinetic - 0.5 * params.alpha * params.alpha * r2;
}

inline PhaseState legendre_polar(const DynamicsParams& params, const PolarVelocityState& s) {
  params.validate();
  if (s.r == 0.0 && s.v_phi != 0.0) {
    throw DegenerateCoordinateError("legendre_polar: angular velocity at r = 0");
  }
  const double u = conformal_factor(params.kappa, s.r);
  return {s.r, s.phi, params.mass * s.v_r / (u * u), params.mass * s.r * s.r * s.v_phi / u};
}

inline PolarVelocityState inverse_legendre_polar(const DynamicsParams& params, const PhaseState& s) {
  params.validate();
  const double u = conformal_factor(params.kappa, s.r);
  if (s.r == 0.0) {
    if (s.p_phi != 0.0) throw DegenerateCoordinateError("inverse_legendre_polar: p_phi at r = 0");
    return {s.r, s.phi, u * u * s.p_r / params.mass, 0.0};
  }
  return {s.r, s.phi, u * u * s.p_r / params.mass, u * s.p_phi / (s.r * s.r * params.mass)};
}

inline CartesianPhaseState legendre_cartesian(const DynamicsParams& params,
                                              const CartesianVelocityState& s) {
  params.validate();
  const double kv = params.kappa.value();
  const double u = conformal_factor(params.kappa, std::hypot(s.x, s.y));
  const double l = s.x * s.v_y - s.y * s.v_x;
  const double scale = params.mass / (u * u);
  return {s.x, s.y, scale * (s.v_x - kv * s.y * l), scale * (s.v_y + kv * s.x * l)};
}

inline CartesianVelocityState inverse_legendre_cartesian(const DynamicsParams& params,
                                                         const CartesianPhaseState& s) {
  params.validate();
  const double kv = params.kappa.value();
  const double u = conformal_factor(params.kappa, std::hypot(s.x, s.y));
  const double scale = u / params.mass;
  return {s.x, s.y, scale * ((1.0 + kv * s.x * s.x) * s.p_x + kv * s.x * s.y * s.p_y),
          scale * ((1.0 + kv * s.y * s.y) * s.p_y + kv * s.x * s.y * s.p_x)};
}

// ---------------------------------------------------------------------------
// Hamiltonians

inline double hamiltonian_polar(const DynamicsParams& params, const PhaseState& s) {
  params.validate();
  const double u = conformal_factor(params.kappa, s.r);
  double kinetic = u * u * s.p_r * s.p_r;
  if (s.p_phi != 0.0) {
    if (s.r == 0.0) throw DegenerateCoordinateError("hamiltonian_polar: p_phi at r = 0");
    kinetic += u * s.p_phi * s.p_phi / (s.r * s.r);
  }
  return 0.5 * kinetic / params.mass + 0.5 * params.alpha * params.alpha * s.r * s.r;
}

inline double hamiltonian_cartesian(const DynamicsParams& params, const CartesianPhaseState& s) {
  params.validate();
  const double r2 = s.x * s.x + s.y * s.y;
  const double u = conformal_factor(params.kappa, std::sqrt(r2));
  const double radial = s.x * s.p_x + s.y * s.p_y;
  const double kinetic =
      u * (s.p_x * s.p_x + s.p_y * s.p_y + params.kappa.value() * radial * radial);
  return 0.5 * kinetic / params.mass + 0.5 * params.alpha * params.alpha * r2;
}

inline NoetherMomenta noether_momenta(Curvature k, const PhaseState& s) {
  if (!(s.r > 0.0)) throw DegenerateCoordinateError("noether_momenta: need r > 0");
  const double u = conformal_factor(k, s.r);
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  return {u * c * s.p_r - sn * s.p_phi / s.r, u * sn * s.p_r + c * s.p_phi / s.r, s.p_phi};
}

/// H = (P1^2 + P2^2 + k J^2) / 2m + (1/2) alpha^2 r^2.
inline double hamiltonian_noether(const DynamicsParams& params, const NoetherMomenta& p, double r) {
  params.validate();
  const double casimir = p.P1 * p.P1 + p.P2 * p.P2 + params.kappa.value() * p.J * p.J;
  return 0.5 * casimir / params.mass + 0.5 * params.alpha * params.alpha * r * r;
}

// ---------------------------------------------------------------------------
// Observables and Poisson brackets

/// Value and gradient of a phase-space function. Gradient order is
/// (d/dr, d/dphi, d/dp_r, d/dp_phi).
struct PhaseJet {
  double value = 0.0;
  std::array<double, 4> grad{};
};

/// A phase-space function. Built either with analytic partials or from values
/// only, in which case partials come from central differences.
class Observable {
 public:
  using JetFn = std::function<PhaseJet(const PhaseState&)>;
  using ValueFn = std::function<double(const PhaseState&)>;

  static Observable analytic(std::string name, JetFn fn) {
    Observable o;
    o.name_ = std::move(name);
    o.jet_ = std::move(fn);
    return o;
  }

  static Observable from_values(std::string name, ValueFn fn) {
    Observable o;
    o.name_ = std::move(name);
    o.value_ = std::move(fn);
    return o;
  }

  const std::string& name() const noexcept { return name_; }
  bool has_gradient() const noexcept { return static_cast<bool>(jet_); }

  double value(const PhaseState& s) const { return jet_ ? jet_(s).value : value_(s); }

  PhaseJet evaluate(const PhaseState& s) const {
    if (jet_) return jet_(s);
    PhaseJet out;
    out.value = value_(s);
    for (std::size_t i = 0; i < 4; ++i) {
      const double x = component(s, i);
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      PhaseState plus = s, minus = s;
      component(plus, i) += h;
      component(minus, i) -= h;
      out.grad[i] = (value_(plus) - value_(minus)) / (2.0 * h);
    }
    return out;
  }

 private:
  static double component(const PhaseState& s, std::size_t i) {
    switch (i) {
      case 0: return s.r;
      case 1: return s.phi;
      case 2: return s.p_r;
      default: return s.p_phi;
    }
  }
  static double& component(PhaseState& s, std::size_t i) {
    switch (i) {
      case 0: return s.r;
      case 1: return s.phi;
      case 2: return s.p_r;
      default: return s.p_phi;
    }
  }

  std::string name_;
  JetFn jet_;
  ValueFn value_;
};

namespace observables {

inline Observable P1(Curvature k) {
  return Observable::analytic("P1", [k](const PhaseState& s) {
    if (!(s.r > 0.0)) throw DegenerateCoordinateError("P1 needs r > 0");
    const double kv = k.value();
    const double u = conformal_factor(k, s.r);
    const double c = std::cos(s.phi), sn = std::sin(s.phi);
    PhaseJet j;
    j.value = u * c * s.p_r - sn * s.p_phi / s.r;
    j.grad = {2.0 * kv * s.r * c * s.p_r + sn * s.p_phi / (s.r * s.r),
              -u * sn * s.p_r - c * s.p_phi / s.r, u * c, -sn / s.r};
    return j;
  });
}

inline Observable P2(Curvature k) {
  return Observable::analytic("P2", [k](const PhaseState& s) {
    if (!(s.r > 0.0)) throw DegenerateCoordinateError("P2 needs r > 0");
    const double kv = k.value();
    const double u = conformal_factor(k, s.r);
    const double c = std::cos(s.phi), sn = std::sin(s.phi);
    PhaseJet j;
    j.value = u * sn * s.p_r + c * s.p_phi / s.r;
    j.grad = {2.0 * kv * s.r * sn * s.p_r - c * s.p_phi / (s.r * s.r),
              u * c * s.p_r - sn * s.p_phi / s.r, u * sn, c / s.r};
    return j;
  });
}

inline Observable J() {
  return Observable::analytic("J", [](const PhaseState& s) {
    return PhaseJet{s.p_phi, {0.0, 0.0, 0.0, 1.0}};
  });
}

inline Observable H(const DynamicsParams& params) {
  params.validate();
  return Observable::analytic("H", [params](const PhaseState& s) {
    if (!(s.r > 0.0)) throw DegenerateCoordinateError("H gradient needs r > 0");
    const double kv = params.kappa.value();
    const double u = conformal_factor(params.kappa, s.r);
    const double m = params.mass;
    const double a2 = params.alpha * params.alpha;
    const double r2 = s.r * s.r;
    PhaseJet j;
    j.value = hamiltonian_polar(params, s);
    j.grad = {(2.0 * kv * s.r * u * s.p_r * s.p_r + kv * s.p_phi * s.p_phi / s.r -
               u * s.p_phi * s.p_phi / (r2 * s.r)) / m + a2 * s.r,
              0.0, u * u * s.p_r / m, u * s.p_phi / (r2 * m)};
    return j;
  });
}

inline Observable r() {
  return Observable::analytic("r", [](const PhaseState& s) { return PhaseJet{s.r, {1, 0, 0, 0}}; });
}
inline Observable phi() {
  return Observable::analytic("phi", [](const PhaseState& s) { return PhaseJet{s.phi, {0, 1, 0, 0}}; });
}
inline Observable p_r() {
  return Observable::analytic("p_r", [](const PhaseState& s) { return PhaseJet{s.p_r, {0, 0, 1, 0}}; });
}
inline Observable p_phi() {
  return Observable::analytic("p_phi",
                              [](const PhaseState& s) { return PhaseJet{s.p_phi, {0, 0, 0, 1}}; });
}

}  // namespace observables

struct BracketResult {
  double value = 0.0;
  /// True when at least one operand had no analytic gradient.
  bool finite_difference = false;
};

inline BracketResult poisson_bracket(const Observable& f, const Observable& g, const PhaseState& s) {
  const PhaseJet a = f.evaluate(s);
  const PhaseJet b = g.evaluate(s);
  const double v = a.grad[0] * b.grad[2] + a.grad[1] * b.grad[3] - a.grad[2] * b.grad[0] -
                   a.grad[3] * b.grad[1];
  return {v, !(f.has_gradient() && g.has_gradient())};
}

// ---------------------------------------------------------------------------
// Trajectories

struct TrajectorySample {
  double t = 0.0;
  PhaseState state;
  double H = 0.0;
  NoetherMomenta momenta;
};

enum class TrajectoryStatus {
  completed,
  domain_exit,        // approached the hyperbolic boundary
  chart_singularity,  // approached r = 0 where the polar chart degenerates
  step_rejected,      // per-step energy jump too large; retry with a smaller dt
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  TrajectoryStatus status = TrajectoryStatus::completed;
  std::string message;

  struct Drift {
    double H = 0.0, J = 0.0, P1 = 0.0, P2 = 0.0;
  };

  /// Maximum absolute deviation of each logged quantity from its initial value.
  Drift max_drift() const {
    Drift d;
    if (samples.empty()) return d;
    const auto& s0 = samples.front();
    for (const auto& s : samples) {
      d.H = std::max(d.H, std::abs(s.H - s0.H));
      d.J = std::max(d.J, std::abs(s.momenta.J - s0.momenta.J));
      d.P1 = std::max(d.P1, std::abs(s.momenta.P1 - s0.momenta.P1));
      d.P2 = std::max(d.P2, std::abs(s.momenta.P2 - s0.momenta.P2));
    }
    return d;
  }
};

namespace detail {

inline PhaseState hamilton_rhs(const DynamicsParams& params, const PhaseState& s) {
  const PhaseJet h = observables::H(params).evaluate(s);
  return {h.grad[2], h.grad[3], -h.grad[0], -h.grad[1]};
}

inline PhaseState axpy(const PhaseState& s, double a, const PhaseState& d) {
  return {s.r + a * d.r, s.phi + a * d.phi, s.p_r + a * d.p_r, s.p_phi + a * d.p_phi};
}

}  // namespace detail

/// Integrates Hamilton's equations with the classical fixed-step RK4 scheme,
/// logging H and the Noether momenta after every step.
inline Trajectory integrate_trajectory(const DynamicsParams& params, const PhaseState& state0,
                                       double t_end, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw ParameterError("integrate_trajectory: dt must be > 0");
  if (!(t_end >= 0.0)) throw ParameterError("integrate_trajectory: t_end must be >= 0");
  if (!(state0.r > 0.0)) throw DegenerateCoordinateError("integrate_trajectory: need r > 0");
  conformal_factor(params.kappa, state0.r);

  const Curvature k = params.kappa;
  const double r_bound = k.radius_bound();
  auto sample = [&](double t, const PhaseState& s) {
    return TrajectorySample{t, s, hamiltonian_polar(params, s), noether_momenta(k, s)};
  };

  Trajectory traj;
  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  traj.samples.reserve(steps + 1);
  PhaseState s = state0;
  traj.samples.push_back(sample(0.0, s));

  for (std::size_t i = 1; i <= steps; ++i) {
    const PhaseState k1 = detail::hamilton_rhs(params, s);
    const double speed = std::hypot(k1.r, s.r * k1.phi);
    const double margin = 10.0 * dt * speed;
    if (k.is_hyperbolic() && r_bound - s.r < margin) {
      traj.status = TrajectoryStatus::domain_exit;
      traj.message = "trajectory approached the hyperbolic boundary";
      break;
    }
    if (s.r < margin) {
      traj.status = TrajectoryStatus::chart_singularity;
      traj.message = "trajectory approached r = 0";
      break;
    }
    PhaseState next;
    try {
      const PhaseState k2 = detail::hamilton_rhs(params, detail::axpy(s, 0.5 * dt, k1));
      const PhaseState k3 = detail::hamilton_rhs(params, detail::axpy(s, 0.5 * dt, k2));
      const PhaseState k4 = detail::hamilton_rhs(params, detail::axpy(s, dt, k3));
      next = {s.r + dt / 6.0 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r),
              s.phi + dt / 6.0 * (k1.phi + 2 * k2.phi + 2 * k3.phi + k4.phi),
              s.p_r + dt / 6.0 * (k1.p_r + 2 * k2.p_r + 2 * k3.p_r + k4.p_r),
              s.p_phi + dt / 6.0 * (k1.p_phi + 2 * k2.p_phi + 2 * k3.p_phi + k4.p_phi)};
      if (!in_domain(k, next.r) || !(next.r > 0.0)) throw DomainError("step left the chart");
    } catch (const DomainError&) {
      traj.status = k.is_hyperbolic() ? TrajectoryStatus::domain_exit
                                      : TrajectoryStatus::chart_singularity;
      traj.message = "step left the coordinate domain";
      break;
    }
    next.phi = PolarPoint::normalize_angle(next.phi);
    const double h_prev = traj.samples.back().H;
    const double h_next = hamiltonian_polar(params, next);
    if (std::abs(h_next - h_prev) > 1e-3 * std::abs(h_prev)) {
      traj.status = TrajectoryStatus::step_rejected;
      traj.message = "energy jump per step exceeds 1e-3 |H|; use a smaller dt";
      break;
    }
    s = next;
    traj.samples.push_back(sample(static_cast<double>(i) * dt, s));
  }
  return traj;
}

}  // namespace curvaspec
