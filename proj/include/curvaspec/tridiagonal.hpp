#pragma once

// Symmetric tridiagonal eigenproblems: Sturm-sequence bisection for selected
// eigenvalues and inverse iteration for their eigenvectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "curvaspec/errors.hpp"

namespace curvaspec {

struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size n - 1

  std::size_t size() const noexcept { return diagonal.size(); }

  void validate() const {
    if (diagonal.empty() || off_diagonal.size() + 1 != diagonal.size()) {
      throw ParameterError("SymmetricTridiagonal: inconsistent sizes");
    }
  }

  /// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
  std::size_t count_below(double x) const {
    const std::size_t n = size();
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    std::size_t count = 0;
    double q = diagonal[0] - x;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(q) < tiny) q = -tiny;
      q = diagonal[i] - x - off_diagonal[i - 1] * off_diagonal[i - 1] / q;
      if (q < 0.0) ++count;
    }
    return count;
  }

  /// Interval containing the spectrum (Gershgorin).
  std::pair<double, double> gershgorin_bounds() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      const double radius = (i > 0 ? std::abs(off_diagonal[i - 1]) : 0.0) +
                            (i + 1 < n ? std::abs(off_diagonal[i]) : 0.0);
      lo = std::min(lo, diagonal[i] - radius);
      hi = std::max(hi, diagonal[i] + radius);
    }
    return {lo, hi};
  }
};

/// The index-th smallest eigenvalue (0-based) by bisection to full precision.
inline double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t index) {
  t.validate();
  if (index >= t.size()) throw ParameterError("bisect_eigenvalue: index out of range");
  auto [lo, hi] = t.gershgorin_bounds();
  const double span = hi - lo;
  lo -= 1e-12 * span + std::numeric_limits<double>::min();
  hi += 1e-12 * span + std::numeric_limits<double>::min();
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (t.count_below(mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace detail {

/// Solves (T - shift I) x = b in place by Gaussian elimination with partial
/// pivoting (U has two super-diagonals).
inline void solve_shifted(const SymmetricTridiagonal& t, double shift, std::span<double> b) {
  const std::size_t n = t.size();
  std::vector<double> dl(t.off_diagonal), d(n), du(t.off_diagonal), du2(n, 0.0);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diagonal[i] - shift;
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, std::abs(t.gershgorin_bounds().second));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  // Forward: L y = P b.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= dl[i] * b[i];
  }
  // Back: U x = y.
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t i = n >= 3 ? n - 2 : 0; i-- > 0;) {
    b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
  }
}

}  // namespace detail

/// Unit-norm eigenvector for an eigenvalue from bisect_eigenvalue, orthogonal
/// to the vectors in `previous` (used when eigenvalues cluster).
inline std::vector<double> inverse_iteration(const SymmetricTridiagonal& t, double eigenvalue,
                                             std::span<const std::vector<double>> previous = {}) {
  t.validate();
  const std::size_t n = t.size();
  const auto [glo, ghi] = t.gershgorin_bounds();
  const double scale = std::max(std::abs(glo), std::abs(ghi));
  const double shift = eigenvalue + 4.0 * std::numeric_limits<double>::epsilon() * scale;
  std::vector<double> x(n);
  // Deterministic start vector with no special symmetry.
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.1 * std::sin(1.7 * static_cast<double>(i));
  auto orthonormalize = [&] {
    for (const auto& v : previous) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += v[i] * x[i];
      for (std::size_t i = 0; i < n; ++i) x[i] -= dot * v[i];
    }
    double norm = 0.0;
    for (double xi : x) norm += xi * xi;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ConvergenceError("inverse_iteration: iterate vanished or overflowed");
    }
    for (double& xi : x) xi /= norm;
  };
  orthonormalize();
  for (int iter = 0; iter < 6; ++iter) {
    detail::solve_shifted(t, shift, x);
    orthonormalize();
  }
  // Sign convention: largest-magnitude component positive.
  const auto it = std::max_element(x.begin(), x.end(),
                                   [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*it < 0.0) {
    for (double& xi : x) xi = -xi;
  }
  return x;
}

}  // namespace curvaspec
