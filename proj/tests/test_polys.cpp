#include <gtest/gtest.h>

#include "whitney/polys.hpp"

using namespace whitney;

TEST(Polys, BasisSizeIsBinomial) {
  for (int d = 1; d <= 4; ++d)
    for (int k = 0; k <= 4; ++k) EXPECT_EQ(monomial_basis(d, k).size(), static_cast<std::size_t>(binomial(d + k, d))) << d << " " << k;
}

TEST(Polys, BasisIsGradedAndDistinct) {
  const auto b = monomial_basis(3, 3);
  for (std::size_t i = 1; i < b.size(); ++i) EXPECT_LE(total_degree(b[i - 1]), total_degree(b[i]));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) EXPECT_NE(b[i], b[j]);
}

TEST(Polys, Evaluation) {
  Poly p(2, 2);
  p.set({0, 0}, 1.0);
  p.set({1, 0}, -2.0);
  p.set({1, 1}, 3.0);
  p.set({0, 2}, 0.5);
  const Vec x{1.5, -2.0};
  const double expected = 1.0 - 2.0 * 1.5 + 3.0 * 1.5 * -2.0 + 0.5 * 4.0;
  EXPECT_NEAR(p(x), expected, 1e-14);
  EXPECT_NEAR(eval(p, x), expected, 1e-14);
  EXPECT_DOUBLE_EQ(monomial({2, 1}, Vec{3.0, 2.0}), 18.0);
}

TEST(Polys, JsonRoundTrip) {
  Poly p(3, 2);
  Rng rng(3);
  for (const auto& a : p.basis()) p.set(a, rng.normal());
  const Poly q = poly_from_json(to_json(p));
  EXPECT_EQ(q.coeffs(), p.coeffs());
}

TEST(Polys, HomogenizationMatrixInvertsVandermonde) {
  for (int m = 1; m <= 6; ++m) EXPECT_LT(homogenization_coeffs(m).residual(), 1e-9) << m;
}

TEST(Polys, HomogeneousComponentsOfAPolynomial) {
  // f = 2 + x - y + x y + 3 y^2 in P_2, m = 3
  Poly p(2, 2);
  p.set({0, 0}, 2.0);
  p.set({1, 0}, 1.0);
  p.set({0, 1}, -1.0);
  p.set({1, 1}, 1.0);
  p.set({0, 2}, 3.0);
  const ScalarFn f = [&](std::span<const double> x) { return p(x); };
  const Vec x{0.7, -0.4};
  EXPECT_NEAR(homogeneous_component(f, 0, 3)(x), 2.0, 1e-12);
  EXPECT_NEAR(homogeneous_component(f, 1, 3)(x), 0.7 + 0.4, 1e-12);
  EXPECT_NEAR(homogeneous_component(f, 2, 3)(x), 0.7 * -0.4 + 3.0 * 0.16, 1e-12);
}
