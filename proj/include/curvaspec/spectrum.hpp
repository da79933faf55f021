#pragma once

// Closed-form bound states of the dimensionless oscillator on the
// constant-curvature surface.
//
// With n = 2 N_r + |m| the levels are
//   E = (1/2)(n + 1)[(n + 1) k + sqrt(k^2 + 4)],
//   q = sqrt(k^2 + 8 k E + 4) = 2 k (n + 1) + sqrt(k^2 + 4),
// and the radial functions
//   R(r) = r^|m| (1 + k r^2)^s 2F1(-N_r, b; |m| + 1; -k r^2),  s = 1/4 - q/(4k),
// with b = |m| + 1 + N_r - q/(2k). At k = 0 the factor (1 + k r^2)^s becomes
// exp(-r^2/2) and the polynomial is M(-N_r, |m| + 1, r^2).
//
// On the hyperbolic plane only levels with q > 0 vanish at the boundary,
// which leaves the finite set n + 1 < sqrt(k^2 + 4) / (2|k|).

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"
#include "curvaspec/quadrature.hpp"
#include "curvaspec/quantization.hpp"
#include "curvaspec/special_functions.hpp"

namespace curvaspec {

/// Sign in front of sqrt(k^2 + 4) in the level formula. `as_printed` is the
/// negative root, which does not reduce to the planar oscillator at k = 0;
/// it exists so the verification suites can demonstrate that they reject it.
enum class EnergyBranch { corrected, as_printed };

struct HypergeometricParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Parameters of M(a, c, r^2) on the flat branch.
struct KummerParams {
  double a = 0.0;
  double c = 0.0;
};

/// Strict upper bound on n + 1 for bound states; infinite for k >= 0.
inline double admissibility_bound(Curvature k) {
  if (!k.is_hyperbolic()) return std::numeric_limits<double>::infinity();
  const double kv = k.value();
  return std::sqrt(kv * kv + 4.0) / (2.0 * std::abs(kv));
}

/// 2 k (n + 1) + sqrt(k^2 + 4); positive exactly for admissible levels.
inline double q_of_level(Curvature k, int n) {
  const double kv = k.value();
  return 2.0 * kv * (n + 1) + std::sqrt(kv * kv + 4.0);
}

inline bool is_admissible(Curvature k, int n) { return n >= 0 && q_of_level(k, n) > 0.0; }

inline double q_parameter(Curvature k, double energy) {
  const double kv = k.value();
  const double radicand = kv * kv + 8.0 * kv * energy + 4.0;
  if (radicand < 0.0) {
    throw DomainError("q_parameter: k^2 + 8 k E + 4 < 0 for k = " + std::to_string(kv) +
                      ", E = " + std::to_string(energy));
  }
  return std::sqrt(radicand);
}

namespace detail {

inline void check_quantum_numbers(int radial, int m) {
  if (radial < 0) throw ParameterError("radial quantum number must be >= 0");
  if (m == std::numeric_limits<int>::min()) throw ParameterError("angular quantum number out of range");
}

inline void check_admissible(Curvature k, int n) {
  if (!is_admissible(k, n)) {
    const double bound = admissibility_bound(k);
    throw NotAdmissible("level with n = " + std::to_string(n) +
                            " is not a bound state for kappa = " + std::to_string(k.value()) +
                            " (requires n + 1 < " + std::to_string(bound) + ")",
                        bound);
  }
}

}  // namespace detail

inline double energy_dimensionless(Curvature k, int radial, int m,
                                   EnergyBranch branch = EnergyBranch::corrected) {
  detail::check_quantum_numbers(radial, m);
  const int n = 2 * radial + std::abs(m);
  detail::check_admissible(k, n);
  const double kv = k.value();
  const double root = std::sqrt(kv * kv + 4.0);
  const double np1 = n + 1;
  const double sign = branch == EnergyBranch::corrected ? 1.0 : -1.0;
  return 0.5 * np1 * (np1 * kv + sign * root);
}

/// A bound state (N_r, m) with its derived closed-form data.
struct Level {
  int radial = 0;  // N_r
  int m = 0;
  double energy = 0.0;
  double q = 0.0;
  /// Exponent of (1 + k r^2); unused (NaN) at k = 0.
  double s = std::numeric_limits<double>::quiet_NaN();
  std::optional<HypergeometricParams> hyper;  // k != 0
  std::optional<KummerParams> kummer;         // k == 0

  int beta() const { return std::abs(m); }
  int n() const { return 2 * radial + beta(); }
};

/// (a, b, c) from the level formula without the admissibility check, so the
/// algebra can also be exercised on the hyperbolic levels that are not bound.
inline HypergeometricParams formal_hypergeometric_params(Curvature k, int radial, int beta) {
  if (k.is_flat()) throw BranchError("hypergeometric parameters need kappa != 0");
  const double q = q_of_level(k, 2 * radial + beta);
  return {-static_cast<double>(radial), beta + 1.0 + radial - q / (2.0 * k.value()), beta + 1.0};
}

inline Level make_level(Curvature k, int radial, int m) {
  Level lv;
  lv.radial = radial;
  lv.m = m;
  lv.energy = energy_dimensionless(k, radial, m);
  const int n = lv.n();
  const double beta = lv.beta();
  lv.q = q_of_level(k, n);
  if (k.is_flat()) {
    lv.kummer = KummerParams{0.5 * (1.0 + beta - lv.energy), beta + 1.0};
  } else {
    lv.s = 0.25 - lv.q / (4.0 * k.value());
    lv.hyper = formal_hypergeometric_params(k, radial, lv.beta());
  }
  return lv;
}

inline HypergeometricParams hypergeometric_params(Curvature k, const Level& level) {
  if (k.is_flat() || !level.hyper) {
    throw BranchError("hypergeometric_params: kappa = 0 has no Gauss form; use kummer_m");
  }
  return *level.hyper;
}

/// Admissible levels with n <= max_n, ordered by n, then N_r, then +m before -m.
inline std::vector<Level> admissible_levels(Curvature k, int max_n) {
  std::vector<Level> out;
  for (int n = 0; n <= max_n && is_admissible(k, n); ++n) {
    for (int radial = 0; 2 * radial <= n; ++radial) {
      const int beta = n - 2 * radial;
      out.push_back(make_level(k, radial, beta));
      if (beta > 0) out.push_back(make_level(k, radial, -beta));
    }
  }
  return out;
}

/// The first `count` admissible levels (fewer if the set is finite).
inline std::vector<Level> first_levels(Curvature k, std::size_t count) {
  std::vector<Level> out;
  for (int n = 0; out.size() < count && is_admissible(k, n); ++n) {
    for (const Level& lv : admissible_levels(k, n)) {
      if (lv.n() == n && out.size() < count) out.push_back(lv);
    }
  }
  return out;
}

/// Even polynomial f(r) = sum a_j r^j of degree 2 N_r from the two-step
/// recursion
///   a_{j+2} = [(j + beta + 1) q - (j + beta + 1)^2 k - 2E] a_j / [(j + 2)(j + 2 beta + 2)].
struct SeriesPolynomial {
  std::vector<double> coefficients;

  double value(double r) const {
    double sum = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) sum = sum * r + *it;
    return sum;
  }
  double derivative(double r) const {
    double sum = 0.0;
    for (std::size_t j = coefficients.size(); j-- > 1;) sum = sum * r + j * coefficients[j];
    return sum;
  }
  double second_derivative(double r) const {
    double sum = 0.0;
    for (std::size_t j = coefficients.size(); j-- > 2;) {
      sum = sum * r + static_cast<double>(j * (j - 1)) * coefficients[j];
    }
    return sum;
  }
};

/// Builds the series for explicit (beta, N_r, E). Throws ConsistencyError if
/// the numerator does not vanish at j = 2 N_r, i.e. E is not the level energy.
/// As below with q given explicitly (it may be negative off the bound set).
inline SeriesPolynomial radial_polynomial(Curvature k, int beta, int radial, double energy,
                                          double q) {
  if (beta < 0 || radial < 0) throw ParameterError("radial_polynomial: negative quantum number");
  const double kv = k.value();
  SeriesPolynomial p;
  p.coefficients.assign(2 * static_cast<std::size_t>(radial) + 1, 0.0);
  p.coefficients[0] = 1.0;
  for (int j = 0;; j += 2) {
    const double l = j + beta + 1;
    const double terms[] = {l * q, l * l * kv, 2.0 * energy};
    const double numerator = terms[0] - terms[1] - terms[2];
    if (j == 2 * radial) {
      const double scale = std::abs(terms[0]) + std::abs(terms[1]) + std::abs(terms[2]);
      if (std::abs(numerator) > 1e-9 * scale) {
        throw ConsistencyError("radial_polynomial: series does not terminate at degree " +
                               std::to_string(2 * radial) + " (E is not an eigenvalue)");
      }
      break;
    }
    p.coefficients[j + 2] = numerator * p.coefficients[j] / ((j + 2.0) * (j + 2.0 * beta + 2.0));
  }
  return p;
}

inline SeriesPolynomial radial_polynomial(Curvature k, int beta, int radial, double energy) {
  return radial_polynomial(k, beta, radial, energy, q_parameter(k, energy));
}

inline SeriesPolynomial radial_polynomial(Curvature k, const Level& level) {
  return radial_polynomial(k, level.beta(), level.radial, level.energy);
}

/// Closed-form eigenfunction R(r) e^{i m phi}, optionally normalized in
/// L^2(d mu).
class Eigenstate {
 public:
  Eigenstate(Curvature k, const Level& level) : kappa_(k), level_(level) {
    if (!k.is_flat()) polynomial_ = radial_polynomial(k, level);
  }

  Eigenstate(Curvature k, int radial, int m) : Eigenstate(k, make_level(k, radial, m)) {}

  Curvature curvature() const noexcept { return kappa_; }
  const Level& level() const noexcept { return level_; }
  double scale() const noexcept { return scale_; }

  /// Returns a copy scaled so that the state has unit norm.
  Eigenstate normalized() const;

  double radial(const RadialCoordinate& c) const {
    const double r = c.r;
    const int beta = level_.beta();
    const double rb = beta == 0 ? 1.0 : std::pow(r, beta);
    if (kappa_.is_flat()) {
      const auto& km = *level_.kummer;
      return scale_ * rb * std::exp(-0.5 * r * r) * kummer_m(km.a, km.c, r * r);
    }
    return scale_ * rb * std::exp(level_.s * c.log_u) * polynomial_.value(r);
  }

  double radial(double r) const { return radial(radial_from_projective(kappa_, r)); }

  /// R, R', R'' at r with analytic derivatives.
  std::array<double, 3> radial_jet(double r) const {
    if (!(r >= 0.0)) throw DomainError("radial_jet: r must be >= 0");
    const double kv = kappa_.value();
    const int beta = level_.beta();
    // P(r) = r^beta f(r) and the envelope g(r) with g'/g = L(r).
    double f, df, d2f, g, L, dL;
    if (kappa_.is_flat()) {
      const auto& km = *level_.kummer;
      const double t = r * r;
      const double m0 = kummer_m(km.a, km.c, t);
      const double m1 = km.a / km.c * kummer_m(km.a + 1.0, km.c + 1.0, t);
      const double m2 = km.a * (km.a + 1.0) / (km.c * (km.c + 1.0)) *
                        kummer_m(km.a + 2.0, km.c + 2.0, t);
      f = m0;
      df = 2.0 * r * m1;
      d2f = 2.0 * m1 + 4.0 * t * m2;
      g = std::exp(-0.5 * t);
      L = -r;
      dL = -1.0;
    } else {
      const double u = conformal_factor(kappa_, r);
      const double s = level_.s;
      f = polynomial_.value(r);
      df = polynomial_.derivative(r);
      d2f = polynomial_.second_derivative(r);
      g = std::exp(s * std::log1p(kv * r * r));
      L = 2.0 * kv * s * r / u;
      dL = 2.0 * kv * s / u - 4.0 * kv * kv * s * r * r / (u * u);
    }
    auto rpow = [r](int e) { return e == 0 ? 1.0 : std::pow(r, e); };
    const double P = rpow(beta) * f;
    const double dP = (beta >= 1 ? beta * rpow(beta - 1) * f : 0.0) + rpow(beta) * df;
    const double d2P = (beta >= 2 ? beta * (beta - 1) * rpow(beta - 2) * f : 0.0) +
                       (beta >= 1 ? 2.0 * beta * rpow(beta - 1) * df : 0.0) + rpow(beta) * d2f;
    const double R = P * g;
    const double dR = g * (dP + P * L);
    const double d2R = g * (d2P + 2.0 * dP * L + P * (L * L + dL));
    return {scale_ * R, scale_ * dR, scale_ * d2R};
  }

  complex value(double r, double phi) const {
    return radial(r) * std::polar(1.0, level_.m * phi);
  }

  /// The eigenfunction as a field with analytic derivatives.
  ScalarField field() const {
    return ScalarField::analytic([state = *this](double r, double phi) {
      const auto [R, dR, d2R] = state.radial_jet(r);
      const double mm = state.level_.m;
      const complex e = std::polar(1.0, mm * phi);
      const complex im{0.0, mm};
      ScalarJet j;
      j.value = R * e;
      j.d_r = dR * e;
      j.d_phi = im * R * e;
      j.d_rr = d2R * e;
      j.d_rphi = im * dR * e;
      j.d_phiphi = -mm * mm * R * e;
      return j;
    });
  }

 private:
  Curvature kappa_;
  Level level_;
  SeriesPolynomial polynomial_;
  double scale_ = 1.0;
};

inline QuadratureOptions spectrum_quadrature_options() {
  QuadratureOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-12;
  return opt;
}

/// <a, b> under d mu; the angular integral gives 2 pi when m agrees, else 0.
inline complex overlap(const Eigenstate& a, const Eigenstate& b) {
  if (a.curvature().value() != b.curvature().value()) {
    throw ParameterError("overlap: states belong to different curvatures");
  }
  if (a.level().m != b.level().m) return {0.0, 0.0};
  const auto res = integrate_measure(
      a.curvature(), [&](const RadialCoordinate& c) { return a.radial(c) * b.radial(c); },
      spectrum_quadrature_options());
  return {2.0 * std::numbers::pi * res.value, 0.0};
}

/// C with int |C Psi|^2 d mu = 1 for the unnormalized closed form.
inline double normalization_constant(Curvature k, const Level& level) {
  const Eigenstate raw(k, level);
  const double norm2 = overlap(raw, raw).real();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw ConvergenceError("normalization_constant: norm integral diverged");
  }
  return 1.0 / std::sqrt(norm2);
}

inline Eigenstate Eigenstate::normalized() const {
  Eigenstate out = *this;
  out.scale_ = 1.0;
  out.scale_ = normalization_constant(kappa_, level_);
  return out;
}

inline complex wavefunction(Curvature k, const Level& level, double r, double phi,
                            bool normalized = false) {
  const Eigenstate state(k, level);
  return normalized ? state.normalized().value(r, phi) : state.value(r, phi);
}

/// Gram matrix <Psi_i, Psi_j> of the given states.
inline std::vector<std::vector<complex>> gram_matrix(const std::vector<Eigenstate>& states) {
  const std::size_t n = states.size();
  std::vector<std::vector<complex>> g(n, std::vector<complex>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g[i][j] = overlap(states[i], states[j]);
      g[j][i] = std::conj(g[i][j]);
    }
  }
  return g;
}

/// Physical energy hbar omega E(k', N_r, m) for a physical curvature.
inline double energy_physical(const PhysicalScales& scales, double kappa_physical, int radial, int m) {
  const Curvature k(to_dimensionless(scales, Quantity::curvature, kappa_physical));
  return from_dimensionless(scales, Quantity::energy, energy_dimensionless(k, radial, m));
}

}  // namespace curvaspec
