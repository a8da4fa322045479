#include "cubix/complex_branch.hpp"

#include <gtest/gtest.h>

#include "cubix/rng.hpp"

using namespace cubix;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(ComplexBranch, SqrtPrincipalRange) {
  Rng rng(101);
  for (int i = 0; i < 20000; ++i) {
    const Complex z = rng.in_annulus(1e-3, 1e3);
    const Complex s = principal_sqrt(z);
    const double a = std::arg(s);
    EXPECT_GT(a, -kPi / 2 - 1e-15);
    EXPECT_LE(a, kPi / 2 + 1e-15);
    // sqrt(z)^2 = z to 4 ulp-scale
    EXPECT_LE(std::abs(s * s - z), 4e-15 * std::abs(z));
  }
}

TEST(ComplexBranch, CbrtPrincipalRange) {
  Rng rng(102);
  for (int i = 0; i < 20000; ++i) {
    const Complex z = rng.in_annulus(1e-3, 1e3);
    const Complex c = principal_cbrt(z);
    const double a = std::arg(c);
    EXPECT_GT(a, -kPi / 3 - 1e-15);
    EXPECT_LE(a, kPi / 3 + 1e-15);
    EXPECT_LE(std::abs(c * c * c - z), 4e-15 * std::abs(z));
  }
}

TEST(ComplexBranch, NegativeRealAxisUsesUpperEdge) {
  // -0.0 imaginary parts must not flip onto the excluded lower edge
  const Complex minus_four(-4.0, -0.0);
  const Complex s = principal_sqrt(minus_four);
  EXPECT_NEAR(s.real(), 0.0, 1e-15);
  EXPECT_NEAR(s.imag(), 2.0, 1e-15);

  const Complex c = principal_cbrt(Complex(-8.0, -0.0));
  EXPECT_NEAR(std::arg(c), kPi / 3, 1e-15);
  EXPECT_NEAR(std::abs(c), 2.0, 1e-15);

  EXPECT_NEAR(principal_arg(Complex(-1.0, -0.0)), kPi, 0.0);
}

TEST(ComplexBranch, CbrtStaysRealOnPositiveReals) {
  const Complex c = principal_cbrt(Complex(27.0, 0.0));
  EXPECT_NEAR(c.real(), 3.0, 3.0 * 1e-15);
  EXPECT_EQ(c.imag(), 0.0);  // theta = 0 exactly, so sin(theta/3) = 0 exactly
  EXPECT_EQ(principal_cbrt(Complex(0.0, 0.0)), Complex(0.0, 0.0));
}

TEST(ComplexBranch, CubeRootsOfMinusOne) {
  const auto ms = cube_roots_of_minus_one<double>();
  for (const auto& m : ms) {
    EXPECT_LE(std::abs(m * m * m - Complex(-1.0, 0.0)), 4e-16);
    EXPECT_NEAR(std::abs(m), 1.0, 1e-15);
  }
  EXPECT_GT(std::abs(ms[0] - ms[1]), 1.0);
  EXPECT_GT(std::abs(ms[0] - ms[2]), 1.0);
  EXPECT_GT(std::abs(ms[1] - ms[2]), 1.0);
  // they sum to zero
  EXPECT_LE(std::abs(ms[0] + ms[1] + ms[2]), 1e-15);
}
