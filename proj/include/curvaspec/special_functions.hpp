#pragma once

// Terminating Gauss hypergeometric series and the confluent (Kummer) M.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "curvaspec/errors.hpp"

namespace curvaspec {

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

}  // namespace detail

/// Coefficients t_k of 2F1(-N, b; c; z) = sum_k t_k z^k, k = 0..N.
inline std::vector<double> gauss_2f1_coefficients(int minus_a, double b, double c) {
  if (minus_a < 0) throw ParameterError("gauss_2f1: first parameter must be a nonpositive integer");
  if (detail::is_nonpositive_integer(c)) {
    throw ParameterError("gauss_2f1: c must not be a nonpositive integer");
  }
  std::vector<double> t(static_cast<std::size_t>(minus_a) + 1);
  t[0] = 1.0;
  const double a = -static_cast<double>(minus_a);
  for (int k = 0; k < minus_a; ++k) {
    const double kd = k;
    t[k + 1] = t[k] * (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0));
  }
  return t;
}

/// 2F1(a, b; c; z) for a = -N, evaluated as the finite sum.
inline double gauss_2f1_polynomial(int a, double b, double c, double z) {
  if (a > 0) throw ParameterError("gauss_2f1_polynomial: a must be a nonpositive integer");
  const auto t = gauss_2f1_coefficients(-a, b, c);
  double sum = 0.0;
  for (auto it = t.rbegin(); it != t.rend(); ++it) sum = sum * z + *it;
  return sum;
}

/// Kummer's confluent function M(a, c, z) = sum (a)_k / (c)_k z^k / k!.
/// Polynomial when a is a nonpositive integer. For z < 0 and non-terminating
/// a the Kummer transformation M(a, c, z) = e^z M(c - a, c, -z) avoids
/// cancellation.
inline double kummer_m(double a, double c, double z) {
  if (detail::is_nonpositive_integer(c)) {
    throw ParameterError("kummer_m: c must not be a nonpositive integer");
  }
  const bool terminating = detail::is_nonpositive_integer(a);
  if (!terminating && z < 0.0) return std::exp(z) * kummer_m(c - a, c, -z);

  constexpr int kMaxTerms = 10000;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double kd = k;
    if (terminating && kd >= -a) return sum;
    term *= (a + kd) / (c + kd) * z / (kd + 1.0);
    sum += term;
    if (!terminating && std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum) &&
        kd > z) {
      return sum;
    }
  }
  if (terminating) return sum;
  throw ConvergenceError("kummer_m: series did not converge within " + std::to_string(kMaxTerms) +
                         " terms");
}

}  // namespace curvaspec
