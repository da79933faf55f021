#pragma once

// Finite-difference reference solver for the radial problem, independent of
// the closed-form spectrum.
//
// The radial operator (for angular number beta)
//   H R = -(1/2) u [u R'' + (1 + 2 k r^2) R'/r - beta^2 R / r^2] + (1/2) r^2 R,
//   u = 1 + k r^2,
// is the Laplace-Beltrami operator plus potential. In the geodesic radius rho
// (r = T_k(rho)) it takes the Sturm-Liouville form
//   -(1/2) (1/S) (S R')' + [beta^2 / (2 S^2) + (1/2) T^2] R = E R,  S = S_k(rho),
// with weight S d rho = w(r) dr. It is discretized with the conservative
// three-point stencil on the cell-centred grid rho_i = (i + 1/2) h, i < N:
//   * the flux through rho = 0 vanishes because S(0) = 0 (regularity);
//   * a ghost value R_N = -R_{N-1} imposes R = 0 at rho = N h.
// Symmetrizing with the weight gives a symmetric tridiagonal matrix whose
// lowest eigenvalues are found by Sturm bisection.
//
// The projective chart covers rho < pi/(2 sqrt k) on the sphere, where the
// potential diverges; the grid spans exactly that interval. On the plane and
// the hyperbolic plane the grid is a finite box. On the hyperbolic plane the
// potential tends to 1/(2|k|) and the Laplacian adds |k|/8 at infinity, so
// bound states are the eigenvalues below 1/(2|k|) + |k|/8.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvaspec/errors.hpp"
#include "curvaspec/geometry.hpp"
#include "curvaspec/spectrum.hpp"
#include "curvaspec/tridiagonal.hpp"

namespace curvaspec {

/// Uniform cell-centred grid in the geodesic radius: nodes (i + 1/2) h for
/// i < points, Dirichlet at extent = points * h.
struct RadialGrid {
  double extent = 12.0;
  std::size_t points = 8000;

  double spacing() const { return extent / static_cast<double>(points); }
  double node(std::size_t i) const { return (static_cast<double>(i) + 0.5) * spacing(); }
  double first_node() const { return 0.5 * spacing(); }

  /// The same box with twice as many cells.
  RadialGrid refined() const { return {extent, 2 * points}; }
  RadialGrid coarsened() const { return {extent, points / 2}; }

  void validate(Curvature k) const {
    if (points < 64) throw ParameterError("RadialGrid: need at least 64 points");
    if (!(extent > 0.0) || !std::isfinite(extent)) throw ParameterError("RadialGrid: bad extent");
    if (k.is_spherical() && extent > k.geodesic_extent() * (1.0 + 1e-14)) {
      throw DomainError("RadialGrid: extent beyond the chart hemisphere");
    }
  }
};

/// Lower edge of the continuous spectrum on the hyperbolic plane; infinite
/// otherwise.
inline double continuum_threshold(Curvature k) {
  if (!k.is_hyperbolic()) return std::numeric_limits<double>::infinity();
  const double a = std::abs(k.value());
  return 0.5 / a + a / 8.0;
}

/// Requests every eigenvalue below the continuum threshold (hyperbolic only).
inline constexpr std::size_t kAllBound = std::numeric_limits<std::size_t>::max();

struct RadialEigenResult {
  RadialGrid grid;
  std::vector<double> eigenvalues;  // ascending, on `grid`
  /// Eigenvalues on the grid with half as many cells.
  std::vector<double> coarse_eigenvalues;
  /// (4 E_h - E_2h) / 3.
  std::vector<double> extrapolated;
  /// |E_h - extrapolated|, a second-order error estimate.
  std::vector<double> error_estimate;
  /// eigenvectors[j][i] = R_j(rho_i), normalized by sum_i S(rho_i) h R^2 = 1.
  std::vector<std::vector<double>> eigenvectors;
  bool grid_too_coarse = false;

  /// Projective radius of node i.
  double r_at(std::size_t i, Curvature k) const { return t_kappa(k, grid.node(i)); }
};

/// Weight S(rho_i) at each node of the grid.
inline std::vector<double> grid_weights(Curvature k, const RadialGrid& grid) {
  std::vector<double> w(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) w[i] = s_kappa(k, grid.node(i));
  return w;
}

/// The symmetrized discrete operator W^{-1/2} A W^{-1/2}.
inline SymmetricTridiagonal assemble_radial_operator(Curvature k, int beta, const RadialGrid& grid) {
  if (beta < 0) throw ParameterError("assemble_radial_operator: beta must be >= 0");
  grid.validate(k);
  const std::size_t n = grid.points;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double b2 = static_cast<double>(beta) * beta;

  std::vector<double> face(n + 1);  // S at i h
  for (std::size_t i = 0; i <= n; ++i) face[i] = s_kappa(k, static_cast<double>(i) * h);
  face[0] = 0.0;

  SymmetricTridiagonal t;
  t.diagonal.resize(n);
  t.off_diagonal.resize(n - 1);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = grid.node(i);
    const RadialCoordinate c = radial_from_geodesic(k, rho);
    const double s = s_kappa(k, rho);
    w[i] = s;
    const double potential = 0.5 * b2 / (s * s) + 0.5 * c.r * c.r;
    const double right = i + 1 == n ? 2.0 * face[n] : face[i + 1];
    t.diagonal[i] = 0.5 * (face[i] + right) * inv_h2 / s + potential;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    t.off_diagonal[i] = -0.5 * face[i + 1] * inv_h2 / std::sqrt(w[i] * w[i + 1]);
  }
  return t;
}

namespace detail {

inline std::vector<double> lowest_eigenvalues(const SymmetricTridiagonal& t, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = bisect_eigenvalue(t, j);
  return out;
}

inline std::size_t resolve_count(Curvature k, const SymmetricTridiagonal& t, std::size_t count) {
  if (count != kAllBound) {
    if (count == 0 || count > t.size()) throw ParameterError("radial_eigensolve: bad count");
    return count;
  }
  if (!k.is_hyperbolic()) {
    throw ParameterError("radial_eigensolve: 'all bound states' needs kappa < 0");
  }
  return t.count_below(continuum_threshold(k));
}

}  // namespace detail

struct EigensolveOptions {
  bool eigenvectors = true;
  /// Flag the result when any error estimate exceeds this (relative).
  double tolerance = 1e-4;
};

/// Lowest `count` eigenvalues (or all bound states, kAllBound) on `grid`,
/// with a Richardson estimate from the grid with half as many cells.
inline RadialEigenResult radial_eigensolve(Curvature k, int beta, std::size_t count,
                                           const RadialGrid& grid,
                                           const EigensolveOptions& options = {}) {
  const SymmetricTridiagonal fine = assemble_radial_operator(k, beta, grid);
  const std::size_t n_eig = detail::resolve_count(k, fine, count);

  RadialEigenResult res;
  res.grid = grid;
  res.eigenvalues = detail::lowest_eigenvalues(fine, n_eig);
  if (grid.points / 2 >= 64 && n_eig > 0) {
    const SymmetricTridiagonal coarse = assemble_radial_operator(k, beta, grid.coarsened());
    res.coarse_eigenvalues = detail::lowest_eigenvalues(coarse, n_eig);
    for (std::size_t j = 0; j < n_eig; ++j) {
      const double x = (4.0 * res.eigenvalues[j] - res.coarse_eigenvalues[j]) / 3.0;
      res.extrapolated.push_back(x);
      res.error_estimate.push_back(std::abs(res.eigenvalues[j] - x));
      if (res.error_estimate.back() > options.tolerance * std::max(1.0, std::abs(x))) {
        res.grid_too_coarse = true;
      }
    }
  }
  if (options.eigenvectors) {
    const std::vector<double> w = grid_weights(k, grid);
    const double h = grid.spacing();
    for (std::size_t j = 0; j < n_eig; ++j) {
      std::vector<double> y = inverse_iteration(fine, res.eigenvalues[j], res.eigenvectors);
      // y is orthonormal in the Euclidean sense; keep a copy for deflation,
      // then convert to R = y / sqrt(w h).
      res.eigenvectors.push_back(y);
    }
    for (auto& v : res.eigenvectors) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] /= std::sqrt(w[i] * h);
    }
  }
  return res;
}

/// Default box for the given curvature and request: the whole hemisphere on
/// the sphere, max(12, 3 sqrt(2 E)) on the plane (E from the harmonic
/// estimate), and on the hyperbolic plane the smallest box from 24/sqrt|k|
/// doubling whose top eigenvalue (and bound-state count) is stable to
/// `tolerance`, at spacing `hyperbolic_spacing`.
struct GridPolicy {
  std::size_t points = 8000;
  double hyperbolic_spacing = 0.004;
  double tolerance = 1e-11;
  double max_extent_scaled = 700.0;  // bound on sqrt|k| * extent
};

inline RadialGrid default_grid(Curvature k, int beta, std::size_t count, const GridPolicy& policy = {}) {
  if (k.is_spherical()) return {k.geodesic_extent(), policy.points};
  if (k.is_flat()) {
    const double levels = count == kAllBound ? 1.0 : static_cast<double>(count);
    const double e_est = 2.0 * (levels - 1.0) + beta + 1.0;
    return {std::max(12.0, 3.0 * std::sqrt(2.0 * e_est)), policy.points};
  }
  const double a = std::sqrt(-k.value());
  const double h = policy.hyperbolic_spacing;
  auto grid_for = [&](double extent) {
    return RadialGrid{extent, static_cast<std::size_t>(std::ceil(extent / h))};
  };
  double extent = std::max(24.0, 24.0 / a);
  auto top = [&](const RadialGrid& g) -> std::pair<std::size_t, double> {
    const SymmetricTridiagonal t = assemble_radial_operator(k, beta, g);
    const std::size_t n = detail::resolve_count(k, t, count);
    if (count == kAllBound) {
      return {n, n == 0 ? 0.0 : bisect_eigenvalue(t, n - 1)};
    }
    return {n, bisect_eigenvalue(t, n - 1)};
  };
  RadialGrid grid = grid_for(extent);
  auto prev = top(grid);
  while (2.0 * extent * a <= policy.max_extent_scaled) {
    const RadialGrid next_grid = grid_for(2.0 * extent);
    const auto next = top(next_grid);
    const bool stable = next.first == prev.first &&
                        std::abs(next.second - prev.second) <=
                            policy.tolerance * std::max(1.0, std::abs(next.second));
    extent *= 2.0;
    grid = next_grid;
    if (stable) break;
    prev = next;
  }
  return grid;
}

struct RichardsonResult {
  double extrapolated = 0.0;
  /// Observed order of convergence; NaN when it cannot be determined.
  std::optional<double> order;
};

/// Extrapolates a second-order quantity from spacings h and h/2.
inline RichardsonResult richardson(double coarse, double fine) {
  return {(4.0 * fine - coarse) / 3.0, std::nullopt};
}

/// As above, with the observed order from three successive halvings.
inline RichardsonResult richardson(double coarse, double fine, double finest) {
  RichardsonResult r{(4.0 * finest - fine) / 3.0, std::nullopt};
  const double d1 = coarse - fine;
  const double d2 = fine - finest;
  if (d1 != 0.0 && d2 != 0.0 && d1 / d2 > 0.0) r.order = std::log2(d1 / d2);
  return r;
}

struct SpectrumRow {
  int radial = 0;
  int n = 0;
  double closed = 0.0;
  double oracle = 0.0;
  double extrapolated = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double rel_error_extrapolated = 0.0;
};

struct SpectrumComparison {
  Curvature kappa;
  int beta = 0;
  RadialGrid grid;
  std::vector<SpectrumRow> rows;
  /// Number of closed-form levels with this beta that were requested.
  std::size_t closed_count = 0;
  /// Bound states found by the oracle (hyperbolic "all" requests only).
  std::optional<std::size_t> oracle_bound_count;
  double max_rel_error = 0.0;
  double max_rel_error_extrapolated = 0.0;
};

/// Closed-form energies for angular number beta and N_r = 0, 1, ... against
/// the finite-difference oracle. `count` = kAllBound compares every bound
/// state on the hyperbolic plane.
inline SpectrumComparison compare_spectra(Curvature k, int beta, std::size_t count,
                                          std::optional<RadialGrid> grid = std::nullopt,
                                          EnergyBranch branch = EnergyBranch::corrected) {
  if (beta < 0) throw ParameterError("compare_spectra: beta must be >= 0");
  SpectrumComparison cmp;
  cmp.kappa = k;
  cmp.beta = beta;

  std::vector<double> closed;
  for (int radial = 0; count == kAllBound || closed.size() < count; ++radial) {
    if (!is_admissible(k, 2 * radial + beta)) break;
    closed.push_back(energy_dimensionless(k, radial, beta, branch));
  }
  if (count != kAllBound && closed.size() < count && !k.is_hyperbolic()) {
    throw ParameterError("compare_spectra: not enough closed-form levels");
  }
  cmp.closed_count = closed.size();

  const std::size_t request = count == kAllBound ? kAllBound : closed.size();
  if (request == 0) {
    cmp.grid = grid.value_or(RadialGrid{});
    return cmp;
  }
  cmp.grid = grid ? *grid : default_grid(k, beta, request);
  EigensolveOptions opt;
  opt.eigenvectors = false;
  const RadialEigenResult res = radial_eigensolve(k, beta, request, cmp.grid, opt);
  if (count == kAllBound) cmp.oracle_bound_count = res.eigenvalues.size();

  const std::size_t rows = std::min(closed.size(), res.eigenvalues.size());
  for (std::size_t j = 0; j < rows; ++j) {
    SpectrumRow row;
    row.radial = static_cast<int>(j);
    row.n = 2 * row.radial + beta;
    row.closed = closed[j];
    row.oracle = res.eigenvalues[j];
    row.extrapolated = res.extrapolated.empty() ? row.oracle : res.extrapolated[j];
    row.abs_error = std::abs(row.oracle - row.closed);
    const double denom = std::max(std::abs(row.closed), std::numeric_limits<double>::min());
    row.rel_error = row.abs_error / denom;
    row.rel_error_extrapolated = std::abs(row.extrapolated - row.closed) / denom;
    cmp.max_rel_error = std::max(cmp.max_rel_error, row.rel_error);
    cmp.max_rel_error_extrapolated =
        std::max(cmp.max_rel_error_extrapolated, row.rel_error_extrapolated);
    cmp.rows.push_back(row);
  }
  // A count mismatch on an "all bound" request is a disagreement in itself.
  if (cmp.oracle_bound_count && *cmp.oracle_bound_count != cmp.closed_count) {
    cmp.max_rel_error = std::numeric_limits<double>::infinity();
    cmp.max_rel_error_extrapolated = std::numeric_limits<double>::infinity();
  }
  return cmp;
}

}  // namespace curvaspec
