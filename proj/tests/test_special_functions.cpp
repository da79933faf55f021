#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "curvaspec/special_functions.hpp"

using namespace curvaspec;

TEST(Gauss2F1, Coefficients) {
  // 2F1(-2, 3; 4; z) = 1 - (3/2) z + (3/5) z^2
  const auto t = gauss_2f1_coefficients(2, 3.0, 4.0);
  ASSERT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t[0], 1.0);
  EXPECT_DOUBLE_EQ(t[1], -1.5);
  EXPECT_DOUBLE_EQ(t[2], 0.6);
}

TEST(Gauss2F1, ReferenceValue) {
  // mpmath: hyp2f1(-1, b, 1, -0.25) with b = 2 - (6 + sqrt 5)/2
  const double b = -2.11803398874989484820;
  EXPECT_NEAR(gauss_2f1_polynomial(-1, b, 1.0, -0.25), 0.470491502812526287949, 1e-15);
}

TEST(Gauss2F1, Chebyshev) {
  // T_3(x) = 2F1(-3, 3; 1/2; (1 - x)/2)
  for (double x : {-0.7, 0.1, 0.9}) {
    EXPECT_NEAR(gauss_2f1_polynomial(-3, 3.0, 0.5, 0.5 * (1 - x)), 4 * x * x * x - 3 * x, 1e-13);
  }
}

TEST(Gauss2F1, RejectsBadParameters) {
  EXPECT_THROW(gauss_2f1_coefficients(-1, 1.0, 1.0), ParameterError);
  EXPECT_THROW(gauss_2f1_coefficients(2, 1.0, -1.0), ParameterError);
  EXPECT_THROW(gauss_2f1_polynomial(1, 1.0, 1.0, 0.5), ParameterError);
}

TEST(Kummer, Exponential) {
  for (double z : {-20.0, -1.0, 0.0, 2.5, 30.0}) {
    EXPECT_NEAR(kummer_m(2.0, 2.0, z) / std::exp(z), 1.0, 1e-13) << z;
  }
}

TEST(Kummer, Laguerre) {
  // M(-2, 1, x) = L_2(x) = 1 - 2x + x^2/2
  for (double x : {0.0, 0.5, 3.0, 9.0}) {
    EXPECT_NEAR(kummer_m(-2.0, 1.0, x), 1 - 2 * x + 0.5 * x * x, 1e-12);
  }
}

TEST(Kummer, ErrorFunctionIdentity) {
  // M(1/2, 3/2, -x^2) = sqrt(pi) erf(x) / (2x)
  for (double x : {0.3, 1.0, 2.5}) {
    EXPECT_NEAR(kummer_m(0.5, 1.5, -x * x), std::sqrt(std::numbers::pi) * std::erf(x) / (2 * x), 1e-14);
  }
}

TEST(Kummer, RejectsPoleInC) {
  EXPECT_THROW(kummer_m(1.0, 0.0, 1.0), ParameterError);
}
