#pragma once

// Property suites. Each check records what was measured against which
// tolerance; a suite passes when every check does. All randomness comes from
// one seeded std::mt19937_64 per suite.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <locale>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "curvaspec/dynamics.hpp"
#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"
#include "curvaspec/oracle.hpp"
#include "curvaspec/quadrature.hpp"
#include "curvaspec/quantization.hpp"
#include "curvaspec/special_functions.hpp"
#include "curvaspec/spectrum.hpp"
#include "curvaspec/symmetry.hpp"

namespace curvaspec {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  /// Records measured < tolerance; a zero tolerance demands exact zero.
  void expect_below(std::string name, double measured, double tolerance) {
    const bool ok = std::isfinite(measured) &&
                    (measured < tolerance || (tolerance == 0.0 && measured == 0.0));
    checks.push_back({std::move(name), ok, measured, tolerance});
  }

  void expect_true(std::string name, bool ok) {
    checks.push_back({std::move(name), ok, ok ? 0.0 : 1.0, 0.0});
  }

  void append(const SuiteReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Level formula used by the spectrum checks.
  EnergyBranch branch = EnergyBranch::corrected;
};

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

  /// Radius in [0.1, r_hi] where r_hi stays well inside the hyperbolic disk.
  double radius(Curvature k, double r_hi = 3.0) {
    const double hi = k.is_hyperbolic() ? std::min(r_hi, 0.9 * k.radius_bound()) : r_hi;
    return uniform(0.1, hi);
  }

  PhaseState phase_state(Curvature k) { return {radius(k), angle(), uniform(-2, 2), uniform(-2, 2)}; }

 private:
  std::mt19937_64 rng_;
};

inline const std::vector<double>& probe_curvatures() {
  static const std::vector<double> k = {-0.5, 0.0, 0.7, 1.0};
  return k;
}

/// Catches library errors so a suite reports them as failed checks.
inline void guarded(SuiteReport& report, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report.checks.push_back({name + " [" + e.what() + "]", false,
                             std::numeric_limits<double>::infinity(), 0.0});
  }
}

inline std::string short_number(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(6) << x;
  return os.str();
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Analytic test functions for the operator checks: sums of
// c r^a exp(-g r^2) e^{i l phi}.
struct Term {
  complex coefficient;
  int power;
  double gauss;
  int l;
};

inline ScalarField separable_field(std::vector<Term> terms) {
  return ScalarField::analytic([terms = std::move(terms)](double r, double phi) {
    ScalarJet j;
    for (const Term& t : terms) {
      const double a = t.power, g = t.gauss;
      const double e = std::exp(-g * r * r);
      const double p0 = std::pow(r, a) * e;
      // d/dr [r^a e^{-g r^2}] = (a/r - 2 g r) p0
      const double L = a / r - 2.0 * g * r;
      const double dL = -a / (r * r) - 2.0 * g;
      const double p1 = L * p0;
      const double p2 = (L * L + dL) * p0;
      const complex ang = t.coefficient * std::polar(1.0, t.l * phi);
      const complex il{0.0, static_cast<double>(t.l)};
      j.value += p0 * ang;
      j.d_r += p1 * ang;
      j.d_phi += il * p0 * ang;
      j.d_rr += p2 * ang;
      j.d_rphi += il * p1 * ang;
      j.d_phiphi += -static_cast<double>(t.l * t.l) * p0 * ang;
    }
    return j;
  });
}

inline std::vector<ScalarField> smooth_test_fields() {
  return {
      separable_field({{1.0, 0, 1.0, 0}, {complex{0.3, 0.1}, 1, 1.0, 1}}),
      separable_field({{complex{0.5, -0.2}, 2, 0.5, 2}, {0.4, 1, 0.8, -1}, {0.2, 0, 0.3, 0}}),
      separable_field({{complex{0.0, 1.0}, 3, 1.2, 3}, {0.7, 0, 0.6, 0}}),
  };
}

/// ((r - lo)(hi - r))^6 times an angular factor; zero outside [lo, hi].
inline ScalarField bump_field(double lo, double hi, std::vector<std::pair<complex, int>> modes) {
  return ScalarField::analytic([=](double r, double phi) {
    ScalarJet j;
    if (r <= lo || r >= hi) return j;
    constexpr int p = 6;
    const double s = (r - lo) * (hi - r), ds = hi + lo - 2.0 * r, d2s = -2.0;
    const double b0 = std::pow(s, p);
    const double b1 = p * std::pow(s, p - 1) * ds;
    const double b2 = p * (p - 1) * std::pow(s, p - 2) * ds * ds + p * std::pow(s, p - 1) * d2s;
    for (const auto& [c, l] : modes) {
      const complex ang = c * std::polar(1.0, l * phi);
      const complex il{0.0, static_cast<double>(l)};
      j.value += b0 * ang;
      j.d_r += b1 * ang;
      j.d_phi += il * b0 * ang;
      j.d_rr += b2 * ang;
      j.d_rphi += il * b1 * ang;
      j.d_phiphi += -static_cast<double>(l * l) * b0 * ang;
    }
    return j;
  });
}

inline PhaseJet product_jet(const PhaseJet& a, const PhaseJet& b) {
  PhaseJet p;
  p.value = a.value * b.value;
  for (std::size_t i = 0; i < 4; ++i) p.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Geometry

inline SuiteReport verify_geometry(const VerifyOptions& opt = {}) {
  SuiteReport rep{"geometry", {}};
  detail::Sampler rng(opt.seed);

  detail::guarded(rep, "s_kappa continuity at |kappa| = 1e-8", [&] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(0.1, 5.0);
      for (double eps : {1e-8, -1e-8}) {
        worst = std::max(worst, std::abs(s_kappa(Curvature(eps), x) - x) / x);
        worst = std::max(worst, std::abs(c_kappa(Curvature(eps), x) - 1.0));
      }
    }
    rep.expect_below("s_kappa continuity at |kappa| = 1e-8", worst, 1e-6);
  });

  detail::guarded(rep, "geodesic/projective change of variables", [&] {
    double g_err = 0.0, jac_err = 0.0;
    for (double kv : {-0.5, 0.0, 0.7, 1.0}) {
      const Curvature k(kv);
      const double rho_hi = kv > 0 ? 0.9 * k.geodesic_extent() : 2.5;
      for (int i = 0; i < 50; ++i) {
        const double rho = rng.uniform(0.05, rho_hi);
        const double r = t_kappa(k, rho);
        g_err = std::max(g_err, detail::rel(metric_geodesic(k, rho).g_phiphi, metric_polar(k, r).g_phiphi));
        const double h = 1e-4 * std::max(1.0, rho);
        auto t = [&](double x) { return t_kappa(k, x); };
        const double drdrho =
            (-t(rho + 2 * h) + 8.0 * t(rho + h) - 8.0 * t(rho - h) + t(rho - 2 * h)) / (12.0 * h);
        jac_err = std::max(jac_err, std::abs(drdrho * drdrho * metric_polar(k, r).g_rr - 1.0));
      }
    }
    rep.expect_below("g_phiphi agrees between charts", g_err, 1e-12);
    rep.expect_below("(dr/drho)^2 g_rr = 1 with dr/drho = 1 + k r^2", jac_err, 1e-8);
  });

  detail::guarded(rep, "w (1 + k r^2)^{3/2} = r", [&] {
    double worst = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      for (int i = 0; i < 50; ++i) {
        const double r = rng.radius(k);
        const double u = 1.0 + kv * r * r;
        worst = std::max(worst, std::abs(measure_weight(k, r) * std::pow(u, 1.5) - r) / r);
      }
    }
    rep.expect_below("w (1 + k r^2)^{3/2} = r", worst, 1e-14);
  });

  detail::guarded(rep, "total measure 1/k on the sphere", [&] {
    double worst = 0.0;
    for (double kv : {0.5, 0.7, 1.0}) {
      const Curvature k(kv);
      const auto res = integrate([&](double r) { return measure_weight(k, r); }, 0.0,
                                 std::numeric_limits<double>::infinity());
      worst = std::max(worst, std::abs(res.value * kv - 1.0));
    }
    rep.expect_below("total measure 1/k on the sphere", worst, 1e-10);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Dynamics

/// Poisson-bracket algebra and the Casimir identity at `states` random states
/// per probe curvature.
inline SuiteReport verify_classical_algebra(const VerifyOptions& opt = {}, int states = 1000) {
  SuiteReport rep{"dynamics", {}};
  detail::Sampler rng(opt.seed);
  detail::guarded(rep, "Poisson algebra", [&] {
    double alg = 0.0, cas = 0.0, jh = 0.0, ph = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      const auto P1 = observables::P1(k), P2 = observables::P2(k), J = observables::J();
      const auto H0 = observables::H({k, 0.0, 1.0});
      const auto H1 = observables::H({k, 1.0, 1.0});
      for (int i = 0; i < states; ++i) {
        const PhaseState s = rng.phase_state(k);
        const NoetherMomenta m = noether_momenta(k, s);
        alg = std::max(alg, std::abs(poisson_bracket(P1, P2, s).value - kv * m.J));
        alg = std::max(alg, std::abs(poisson_bracket(P1, J, s).value + m.P2));
        alg = std::max(alg, std::abs(poisson_bracket(P2, J, s).value - m.P1));
        const double u = 1.0 + kv * s.r * s.r;
        const double lhs = m.P1 * m.P1 + m.P2 * m.P2 + kv * m.J * m.J;
        const double rhs = u * u * s.p_r * s.p_r + u * s.p_phi * s.p_phi / (s.r * s.r);
        cas = std::max(cas, detail::rel(lhs, rhs));
        jh = std::max(jh, std::abs(poisson_bracket(J, H0, s).value));
        jh = std::max(jh, std::abs(poisson_bracket(J, H1, s).value));
        ph = std::max(ph, std::abs(poisson_bracket(P1, H0, s).value));
        ph = std::max(ph, std::abs(poisson_bracket(P2, H0, s).value));
      }
    }
    rep.expect_below("{P1,P2} = k J, {P1,J} = -P2, {P2,J} = P1", alg, 1e-10);
    rep.expect_below("Casimir P1^2 + P2^2 + k J^2 (relative)", cas, 1e-12);
    rep.expect_below("{J,H} = 0 for alpha in {0,1}", jh, 1e-10);
    rep.expect_below("{P1,H} = {P2,H} = 0 for alpha = 0", ph, 1e-10);
  });
  return rep;
}

/// Fixed-step trajectories: conservation and two exactly solvable orbits.
inline SuiteReport verify_trajectories() {
  SuiteReport rep{"dynamics", {}};
  constexpr double t_end = 10.0, dt = 1e-3;

  detail::guarded(rep, "circular orbit", [&] {
    const Trajectory tr = integrate_trajectory({Curvature(0.0), 1.0, 1.0}, {1.0, 0.0, 0.0, 1.0}, t_end, dt);
    double worst = 0.0;
    for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.state.r - 1.0));
    rep.expect_true("circular orbit completes", tr.status == TrajectoryStatus::completed);
    rep.expect_below("circular orbit |r - 1|", worst, 1e-8);
  });

  detail::guarded(rep, "free flat motion", [&] {
    const PhaseState s0{1.0, 0.0, 0.3, 0.5};
    const CartesianPhaseState c0 = to_cartesian(s0);
    const Trajectory tr = integrate_trajectory({Curvature(0.0), 0.0, 1.0}, s0, t_end, dt);
    double worst = 0.0;
    for (const auto& s : tr.samples) {
      const CartesianPhaseState c = to_cartesian(s.state);
      worst = std::max(worst, std::hypot(c.x - (c0.x + c0.p_x * s.t), c.y - (c0.y + c0.p_y * s.t)));
    }
    rep.expect_true("free flat motion completes", tr.status == TrajectoryStatus::completed);
    rep.expect_below("free flat motion x0 + v t", worst, 1e-8);
  });

  detail::guarded(rep, "conservation", [&] {
    double hj = 0.0, p = 0.0;
    bool completed = true;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      // Small momenta keep spherical geodesics inside the chart hemisphere.
      const PhaseState free0{0.5, 0.3, 0.01, 0.05};
      const PhaseState bound0{0.5, 0.3, 0.1, 0.2};
      const Trajectory a = integrate_trajectory({k, 0.0, 1.0}, free0, t_end, dt);
      const Trajectory b = integrate_trajectory({k, 1.0, 1.0}, bound0, t_end, dt);
      completed = completed && a.status == TrajectoryStatus::completed &&
                  b.status == TrajectoryStatus::completed;
      const auto da = a.max_drift(), db = b.max_drift();
      hj = std::max({hj, da.H, da.J, db.H, db.J});
      p = std::max({p, da.P1, da.P2});
    }
    rep.expect_true("conservation trajectories complete", completed);
    rep.expect_below("drift of H and J (alpha in {0,1}), t = 10, dt = 1e-3", hj, 1e-8);
    rep.expect_below("drift of P1 and P2 (alpha = 0), t = 10, dt = 1e-3", p, 1e-8);
  });
  return rep;
}

inline SuiteReport verify_dynamics(const VerifyOptions& opt = {}) {
  SuiteReport rep{"dynamics", {}};
  detail::Sampler rng(opt.seed + 1);

  detail::guarded(rep, "kinetic identity and transforms", [&] {
    double kin = 0.0, leg = 0.0, ham = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      const DynamicsParams params{k, 0.7, 1.0};
      for (int i = 0; i < 100; ++i) {
        const PolarVelocityState v{rng.radius(k), rng.angle(), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const CartesianVelocityState c = to_cartesian(v);
        const double u = 1.0 + kv * v.r * v.r;
        const double ang = c.x * c.v_y - c.y * c.v_x;
        const double lhs = c.v_x * c.v_x + c.v_y * c.v_y + kv * ang * ang;
        const double rhs = v.v_r * v.v_r + v.r * v.r * u * v.v_phi * v.v_phi;
        kin = std::max(kin, std::abs(lhs - rhs));

        const PolarVelocityState back = inverse_legendre_polar(params, legendre_polar(params, v));
        leg = std::max({leg, std::abs(back.v_r - v.v_r), std::abs(back.v_phi - v.v_phi)});
        const CartesianVelocityState cb =
            inverse_legendre_cartesian(params, legendre_cartesian(params, c));
        leg = std::max({leg, std::abs(cb.v_x - c.v_x), std::abs(cb.v_y - c.v_y)});

        const PhaseState s = rng.phase_state(k);
        ham = std::max(ham, std::abs(hamiltonian_cartesian(params, to_cartesian(s)) -
                                     hamiltonian_polar(params, s)));
      }
    }
    rep.expect_below("Cartesian kinetic identity", kin, 1e-12);
    rep.expect_below("Legendre round trips (polar and Cartesian)", leg, 1e-12);
    rep.expect_below("Cartesian and polar Hamiltonians agree", ham, 1e-10);
  });

  rep.append(verify_classical_algebra(opt));

  detail::guarded(rep, "bracket antisymmetry and Leibniz rule", [&] {
    double worst = 0.0;
    const Curvature k(0.7);
    const auto P1 = observables::P1(k), P2 = observables::P2(k), J = observables::J();
    const auto H = observables::H({k, 1.0, 1.0});
    const Observable P2J = Observable::analytic("P2*J", [&](const PhaseState& s) {
      return detail::product_jet(P2.evaluate(s), J.evaluate(s));
    });
    for (int i = 0; i < 100; ++i) {
      const PhaseState s = rng.phase_state(k);
      worst = std::max(worst, std::abs(poisson_bracket(P1, H, s).value + poisson_bracket(H, P1, s).value));
      const double lhs = poisson_bracket(P1, P2J, s).value;
      const double rhs = poisson_bracket(P1, P2, s).value * J.value(s) +
                         P2.value(s) * poisson_bracket(P1, J, s).value;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.expect_below("bracket antisymmetry and Leibniz rule", worst, 1e-10);
  });

  rep.append(verify_trajectories());
  return rep;
}

// ---------------------------------------------------------------------------
// Symmetry

inline SuiteReport verify_symmetry(const VerifyOptions& opt = {}) {
  SuiteReport rep{"symmetry", {}};
  detail::Sampler rng(opt.seed + 2);

  detail::guarded(rep, "Killing fields", [&] {
    double res_fd = 0.0, lie_fd = 0.0, res_an = 0.0, lie_an = 0.0, div = 0.0, general = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      const KillingBasis basis = killing_basis(k);
      for (const KillingField& x : {basis.X1, basis.X2, basis.XJ}) {
        const GeneralField fd = GeneralField::numeric_from_killing(x, k);
        const GeneralField an = GeneralField::from_killing(x, k);
        for (int i = 0; i < 50; ++i) {
          const PolarPoint p(rng.radius(k), rng.angle());
          for (double v : killing_residual(fd, k, p)) res_fd = std::max(res_fd, std::abs(v));
          for (double v : killing_residual(an, k, p)) res_an = std::max(res_an, std::abs(v));
          const LieDerivative a = lie_derivative_metric(fd, k, p);
          const LieDerivative b = lie_derivative_metric(an, k, p);
          lie_fd = std::max({lie_fd, std::abs(a.rr), std::abs(a.rphi), std::abs(a.phiphi)});
          lie_an = std::max({lie_an, std::abs(b.rr), std::abs(b.rphi), std::abs(b.phiphi)});
          div = std::max(div, std::abs(measure_divergence(fd, k, p)));
        }
      }
      for (int i = 0; i < 20; ++i) {
        const KillingField x{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const GeneralField fd = GeneralField::numeric_from_killing(x, k);
        const PolarPoint p(rng.radius(k), rng.angle());
        for (double v : killing_residual(fd, k, p)) general = std::max(general, std::abs(v));
      }
    }
    rep.expect_below("Killing residuals, basis fields (finite differences)", res_fd, 1e-7);
    rep.expect_below("Lie derivative of the metric, basis fields (finite differences)", lie_fd, 1e-7);
    rep.expect_below("Killing residuals, basis fields (analytic)", res_an, 1e-12);
    rep.expect_below("Lie derivative of the metric, basis fields (analytic)", lie_an, 1e-12);
    rep.expect_below("measure divergence of basis fields", div, 1e-7);
    rep.expect_below("Killing residuals, random combinations", general, 1e-7);
  });

  detail::guarded(rep, "structure constants", [&] {
    double worst = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      for (int i = 0; i < 50; ++i) {
        const KillingField a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const KillingField b{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const PolarPoint p(rng.radius(k), rng.angle());
        const auto [f, h] = commutator(GeneralField::numeric_from_killing(a, k),
                                       GeneralField::numeric_from_killing(b, k), p);
        const FieldJet expect = evaluate(bracket(a, b, k), k, p);
        worst = std::max({worst, std::abs(f - expect.f), std::abs(h - expect.h)});
      }
    }
    rep.expect_below("numeric commutator matches the structure constants", worst, 1e-6);
  });

  detail::guarded(rep, "Jacobi identity", [&] {
    double worst = 0.0;
    for (double kv : {-0.5, 0.0, 0.75, 1.0}) {
      const Curvature k(kv);
      for (int i = 0; i < 100; ++i) {
        auto draw = [&] {
          return KillingField{double(rng.integer(-9, 9)), double(rng.integer(-9, 9)), double(rng.integer(-9, 9))};
        };
        const KillingField a = draw(), b = draw(), c = draw();
        const KillingField s = bracket(a, bracket(b, c, k), k) + bracket(b, bracket(c, a, k), k) +
                               bracket(c, bracket(a, b, k), k);
        worst = std::max({worst, std::abs(s.c1), std::abs(s.c2), std::abs(s.c3)});
      }
    }
    rep.expect_below("Jacobi identity (exact)", worst, 0.0);
  });

  detail::guarded(rep, "flat algebra", [&] {
    const KillingBasis b = killing_basis(Curvature(0.0));
    rep.expect_true("[X1, X2] = 0 at k = 0", bracket(b.X1, b.X2, Curvature(0.0)) == KillingField{});
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Quantization

/// Operator identities on smooth test functions.
inline SuiteReport verify_quantum_operators(const VerifyOptions& opt = {}) {
  SuiteReport rep{"quantization", {}};
  detail::Sampler rng(opt.seed + 3);
  const auto fields = detail::smooth_test_fields();

  detail::guarded(rep, "Casimir operator and commutators", [&] {
    double casimir = 0.0, jh = 0.0, pp = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      for (const ScalarField& psi : fields) {
        const ScalarField p1 = momentum_field(Momentum::P1, k, psi);
        const ScalarField p2 = momentum_field(Momentum::P2, k, psi);
        const ScalarField jj = momentum_field(Momentum::J, k, psi);
        for (int i = 0; i < 10; ++i) {
          const double r = rng.radius(k, 2.0), phi = rng.angle();
          const complex composed =
              0.5 * (apply_momentum_operator(Momentum::P1, k, p1, r, phi) +
                     apply_momentum_operator(Momentum::P2, k, p2, r, phi) +
                     kv * apply_momentum_operator(Momentum::J, k, jj, r, phi));
          casimir = std::max(casimir, std::abs(composed - apply_hamiltonian(k, 0.0, psi, r, phi)));

          for (double alpha : {0.0, 1.0}) {
            const complex a = apply_momentum_operator(Momentum::J, k, hamiltonian_field(k, alpha, psi), r, phi);
            const complex b = apply_hamiltonian(k, alpha, jj, r, phi);
            jh = std::max(jh, std::abs(a - b));
          }
          const complex c12 = apply_momentum_operator(Momentum::P1, k, p2, r, phi) -
                              apply_momentum_operator(Momentum::P2, k, p1, r, phi);
          const complex ij = complex{0.0, kv} * apply_momentum_operator(Momentum::J, k, psi, r, phi);
          pp = std::max(pp, std::abs(c12 - ij));
        }
      }
    }
    rep.expect_below("H(alpha = 0) = (P1^2 + P2^2 + k J^2)/2 by composition", casimir, 1e-6);
    rep.expect_below("[J, H] = 0 for alpha in {0,1}", jh, 1e-6);
    rep.expect_below("[P1, P2] = i k J", pp, 1e-6);
  });

  detail::guarded(rep, "formal symmetry of the momenta", [&] {
    double worst = 0.0;
    for (double kv : detail::probe_curvatures()) {
      const Curvature k(kv);
      const double hi = k.is_hyperbolic() ? 0.9 * k.radius_bound() : 2.0;
      const double lo = 0.2;
      const ScalarField u = detail::bump_field(lo, hi, {{1.0, 0}, {complex{0.3, 0.2}, 1}, {0.1, -2}});
      const ScalarField v = detail::bump_field(lo, hi, {{complex{0.5, -0.4}, 1}, {0.8, 0}, {complex{0, 0.3}, 3}});
      for (Momentum m : {Momentum::P1, Momentum::P2, Momentum::J}) {
        const ScalarField pu = ScalarField::analytic([&, m](double r, double phi) {
          ScalarJet j;
          j.value = r <= lo || r >= hi ? complex{} : apply_momentum_operator(m, k, u, r, phi);
          return j;
        });
        const ScalarField pv = ScalarField::analytic([&, m](double r, double phi) {
          ScalarJet j;
          j.value = r <= lo || r >= hi ? complex{} : apply_momentum_operator(m, k, v, r, phi);
          return j;
        });
        const complex a = inner_product(k, pu, v, lo, hi);
        const complex b = inner_product(k, u, pv, lo, hi);
        worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
      }
    }
    rep.expect_below("<P u, v> = <u, P v> under the invariant measure (relative)", worst, 1e-6);
  });
  return rep;
}

/// Stationary-equation residual of assembled, normalized eigenstates.
inline SuiteReport verify_eigenstate_residuals(const VerifyOptions& opt = {}) {
  SuiteReport rep{"quantization", {}};
  detail::Sampler rng(opt.seed + 4);
  detail::guarded(rep, "eigenstate residuals", [&] {
    double worst = 0.0;
    for (double kv : {-0.5, 0.0, 0.5, 1.0}) {
      const Curvature k(kv);
      for (const Level& lv : first_levels(k, 6)) {
        const Eigenstate st = Eigenstate(k, lv).normalized();
        const ScalarField f = st.field();
        for (int i = 0; i < 100; ++i) {
          const double r = rng.radius(k, 3.0), phi = rng.angle();
          worst = std::max(worst, std::abs(schrodinger_residual(k, lv.energy, f, r, phi)));
        }
      }
    }
    rep.expect_below("eigenstate residual of the stationary equation", worst, 1e-6);
  });
  return rep;
}

inline SuiteReport verify_quantization(const VerifyOptions& opt = {}) {
  SuiteReport rep{"quantization", {}};
  detail::Sampler rng(opt.seed + 5);

  detail::guarded(rep, "Gaussian ground state", [&] {
    const ScalarField g = detail::separable_field({{1.0, 0, 0.5, 0}});
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double r = rng.uniform(0.1, 4.0), phi = rng.angle();
      worst = std::max(worst, std::abs(schrodinger_residual(Curvature(0.0), 1.0, g, r, phi)));
    }
    rep.expect_below("exp(-r^2/2) solves the flat equation with E = 1", worst, 1e-8);
  });

  rep.append(verify_quantum_operators(opt));
  rep.append(verify_eigenstate_residuals(opt));

  detail::guarded(rep, "units", [&] {
    double trip = 0.0, inv = 0.0;
    for (int i = 0; i < 50; ++i) {
      const PhysicalScales s(rng.uniform(0.1, 10), rng.uniform(0.1, 10), rng.uniform(0.1, 10));
      const double kphys = rng.uniform(-2, 2), rphys = rng.uniform(0, 3);
      for (Quantity q : {Quantity::length, Quantity::curvature, Quantity::energy}) {
        const double x = rng.uniform(-5, 5);
        trip = std::max(trip, std::abs(from_dimensionless(s, q, to_dimensionless(s, q, x)) - x) /
                                  std::max(1.0, std::abs(x)));
      }
      const double kbar = to_dimensionless(s, Quantity::curvature, kphys);
      const double rbar = to_dimensionless(s, Quantity::length, rphys);
      inv = std::max(inv, detail::rel(kbar * rbar * rbar, kphys * rphys * rphys));
    }
    rep.expect_below("unit conversion round trip", trip, 1e-15);
    rep.expect_below("k r^2 is scale invariant", inv, 1e-14);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Spectrum

/// Closed-form levels at k = 0 are 2 N_r + |m| + 1, and the oracle agrees.
inline SuiteReport verify_euclidean_limit(const VerifyOptions& opt = {}) {
  SuiteReport rep{"spectrum", {}};
  detail::guarded(rep, "Euclidean limit (closed form)", [&] {
    double worst = 0.0;
    for (int radial = 0; radial <= 5; ++radial) {
      for (int m = -10; m <= 10; ++m) {
        const int n = 2 * radial + std::abs(m);
        if (n > 10) continue;
        worst = std::max(worst, std::abs(energy_dimensionless(Curvature(0.0), radial, m, opt.branch) - (n + 1)));
      }
    }
    rep.expect_below("closed form at k = 0 equals n + 1, n <= 10", worst, 1e-12);
  });
  detail::guarded(rep, "Euclidean limit (oracle)", [&] {
    double worst = 0.0;
    for (int beta = 0; beta <= 2; ++beta) {
      const SpectrumComparison c = compare_spectra(Curvature(0.0), beta, 3, std::nullopt, opt.branch);
      worst = std::max(worst, c.max_rel_error);
    }
    rep.expect_below("oracle at k = 0, beta in {0,1,2}, 8000 points (relative)", worst, 1e-4);
  });
  return rep;
}

/// Oracle agreement on curved surfaces, first three radial levels (or all
/// admissible ones) for beta in {0, 1}.
inline SuiteReport verify_curved_spectra(const VerifyOptions& opt = {}) {
  SuiteReport rep{"spectrum", {}};
  for (double kv : {-0.5, -0.1, 0.5, 1.0}) {
    const Curvature k(kv);
    for (int beta : {0, 1}) {
      const std::string tag = "k = " + detail::short_number(kv) + ", beta = " + std::to_string(beta);
      detail::guarded(rep, "oracle " + tag, [&] {
        std::size_t count = 0;
        while (count < 3 && is_admissible(k, 2 * static_cast<int>(count) + beta)) ++count;
        const SpectrumComparison c = compare_spectra(k, beta, count, std::nullopt, opt.branch);
        rep.expect_below("oracle " + tag + " (relative, fine grid)", c.max_rel_error, 1e-4);
        rep.expect_below("oracle " + tag + " (relative, Richardson)", c.max_rel_error_extrapolated, 1e-6);
      });
    }
  }
  return rep;
}

inline SuiteReport verify_bound_set(const VerifyOptions& opt = {}) {
  SuiteReport rep{"spectrum", {}};
  detail::guarded(rep, "hyperbolic bound set", [&] {
    const Curvature k(-0.5);
    const SpectrumComparison c = compare_spectra(k, 0, kAllBound, std::nullopt, opt.branch);
    rep.expect_true("oracle finds exactly one beta = 0 bound state at k = -0.5",
                    c.oracle_bound_count && *c.oracle_bound_count == 1);
    rep.expect_below("that state matches the closed form (relative)", c.max_rel_error, 1e-4);
    const auto levels = admissible_levels(k, 100);
    bool ok = levels.size() == 3;
    for (const Level& lv : levels) ok = ok && lv.n() <= 1;
    rep.expect_true("admissible_levels(-0.5) is exactly n in {0,1} (3 states)", ok);
    const auto l01 = admissible_levels(Curvature(-0.1), 100);
    rep.expect_true("admissible_levels(-0.1) has max n = 9", !l01.empty() && l01.back().n() == 9);
  });
  return rep;
}

inline SuiteReport verify_special_functions(const VerifyOptions& opt = {}) {
  SuiteReport rep{"spectrum", {}};
  detail::Sampler rng(opt.seed + 6);

  detail::guarded(rep, "recursion vs Gauss series", [&] {
    double worst = 0.0;
    for (double kv : {-0.5, 0.5, 1.0}) {
      const Curvature k(kv);
      for (int radial = 0; radial <= 5; ++radial) {
        for (int beta = 0; beta <= 4; ++beta) {
          const int n = 2 * radial + beta;
          const double e = 0.5 * (n + 1) * ((n + 1) * kv + std::sqrt(kv * kv + 4.0));
          const SeriesPolynomial p = radial_polynomial(k, beta, radial, e, q_of_level(k, n));
          const HypergeometricParams h = formal_hypergeometric_params(k, radial, beta);
          const auto t = gauss_2f1_coefficients(radial, h.b, h.c);
          for (int j = 0; j <= radial; ++j) {
            const double expect = t[j] * std::pow(-kv, j);
            const double got = p.coefficients[2 * j];
            worst = std::max(worst, std::abs(got - expect) / std::max(std::abs(expect), 1e-300));
          }
        }
      }
    }
    rep.expect_below("recursion coefficients equal 2F1(-N_r, b; beta+1; -k r^2) (relative)", worst, 1e-10);
  });

  detail::guarded(rep, "continuity in k at 0", [&] {
    double worst = 0.0;
    for (int radial = 0; radial <= 3; ++radial) {
      for (int m = 0; m <= 2; ++m) {
        const Eigenstate flat(Curvature(0.0), radial, m);
        std::vector<double> grid;
        for (int i = 0; i <= 400; ++i) grid.push_back(4.0 * i / 400.0);
        double sup = 0.0;
        for (double r : grid) sup = std::max(sup, std::abs(flat.radial(r)));
        for (double eps : {1e-6, -1e-6}) {
          const Eigenstate near(Curvature(eps), radial, m);
          for (double r : grid) worst = std::max(worst, std::abs(near.radial(r) - flat.radial(r)) / sup);
        }
      }
    }
    rep.expect_below("wavefunctions at k = +-1e-6 vs k = 0 on [0, 4] (relative to sup)", worst, 1e-4);
  });

  detail::guarded(rep, "flat branch is Kummer M", [&] {
    double params = 0.0, value = 0.0;
    for (int radial = 0; radial <= 4; ++radial) {
      for (int beta = 0; beta <= 3; ++beta) {
        const Level lv = make_level(Curvature(0.0), radial, beta);
        params = std::max({params, std::abs(lv.kummer->a - 0.5 * (1 + beta - lv.energy)),
                           std::abs(lv.kummer->c - (beta + 1.0))});
        const SeriesPolynomial p = radial_polynomial(Curvature(0.0), lv);
        for (int i = 0; i < 20; ++i) {
          const double r = rng.uniform(0.0, 3.0);
          const double m = kummer_m(lv.kummer->a, lv.kummer->c, r * r);
          value = std::max(value, std::abs(p.value(r) - m) / std::max(1.0, std::abs(m)));
        }
      }
    }
    rep.expect_below("k = 0 parameters a = (1 + beta - E)/2, c = beta + 1", params, 1e-15);
    rep.expect_below("k = 0 recursion polynomial equals M(a, c, r^2)", value, 1e-12);
  });
  return rep;
}

inline SuiteReport verify_orthonormality(const VerifyOptions& = {}) {
  SuiteReport rep{"spectrum", {}};
  for (double kv : {-0.5, 0.0, 1.0}) {
    const std::string name = "Gram matrix of the first 6 admissible states, k = " + detail::short_number(kv);
    detail::guarded(rep, name, [&] {
      const Curvature k(kv);
      std::vector<Eigenstate> states;
      for (const Level& lv : first_levels(k, 6)) states.push_back(Eigenstate(k, lv).normalized());
      const auto g = gram_matrix(states);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
          worst = std::max(worst, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
        }
      }
      rep.expect_below(name, worst, 1e-6);
    });
  }
  return rep;
}

inline SuiteReport verify_spectrum(const VerifyOptions& opt = {}) {
  SuiteReport rep{"spectrum", {}};
  rep.append(verify_euclidean_limit(opt));

  detail::guarded(rep, "level bookkeeping", [&] {
    double qerr = 0.0;
    bool degenerate = true, quantized = true;
    for (double kv : {-0.5, -0.1, 0.0, 0.5, 1.0}) {
      const Curvature k(kv);
      for (const Level& lv : admissible_levels(k, 10)) {
        const double e = energy_dimensionless(k, lv.radial, lv.m, opt.branch);
        qerr = std::max(qerr, std::abs(q_parameter(k, e) - q_of_level(k, lv.n())));
        for (const Level& other : admissible_levels(k, lv.n())) {
          if (other.n() == lv.n()) {
            degenerate = degenerate && energy_dimensionless(k, other.radial, other.m, opt.branch) == e;
          }
        }
        if (lv.hyper) quantized = quantized && lv.hyper->a == -lv.radial && lv.hyper->c == lv.beta() + 1;
      }
    }
    rep.expect_below("q from the energy equals 2k(n+1) + sqrt(k^2+4)", qerr, 1e-12);
    rep.expect_true("energies depend on (N_r, m) only through n", degenerate);
    rep.expect_true("a = -N_r and c = beta + 1", quantized);
  });

  rep.append(verify_curved_spectra(opt));
  rep.append(verify_bound_set(opt));
  rep.append(verify_special_functions(opt));
  rep.append(verify_orthonormality(opt));
  return rep;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"geometry", "dynamics", "symmetry", "quantization",
                                                 "spectrum"};
  return names;
}

/// Runs one suite by name, or every suite for "all".
inline std::vector<SuiteReport> run_suites(std::string_view name, const VerifyOptions& opt = {}) {
  std::vector<SuiteReport> out;
  auto want = [&](std::string_view s) { return name == "all" || name == s; };
  if (want("geometry")) out.push_back(verify_geometry(opt));
  if (want("dynamics")) out.push_back(verify_dynamics(opt));
  if (want("symmetry")) out.push_back(verify_symmetry(opt));
  if (want("quantization")) out.push_back(verify_quantization(opt));
  if (want("spectrum")) out.push_back(verify_spectrum(opt));
  if (out.empty()) throw ParameterError("unknown suite '" + std::string(name) + "'");
  return out;
}

}  // namespace curvaspec
