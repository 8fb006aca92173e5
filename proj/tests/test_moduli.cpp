#include <gtest/gtest.h>

#include "whitney/moduli.hpp"

using namespace whitney;

namespace {

SearchBudget small_budget(std::uint64_t seed = 1) {
  SearchBudget b;
  b.seed = seed;
  b.max_grid_points = 400;
  b.restarts = 4;
  b.threads = 1;
  return b;
}

}  // namespace

TEST(FiniteDifference, AnnihilatesLowDegreePolynomials) {
  const ScalarFn cubic = [](std::span<const double> x) { return x[0] * x[0] * x[0] - 2.0 * x[0] * x[1] + x[1]; };
  const Vec x{0.3, -0.2}, h{0.1, 0.05};
  EXPECT_NEAR(finite_difference(cubic, x, h, 4), 0.0, 1e-13);
  // Delta^3 of t^3 is 6 h^3 in one variable
  const ScalarFn t3 = [](std::span<const double> x) { return x[0] * x[0] * x[0]; };
  EXPECT_NEAR(finite_difference(t3, Vec{0.1}, Vec{0.2}, 3), 6.0 * 0.008, 1e-13);
  EXPECT_NEAR(finite_difference(t3, Vec{0.1}, Vec{0.2}, 1), 0.027 - 0.001, 1e-13);
}

TEST(Omega, QuadraticOnInterval) {
  // omega_2(t^2; [0,1]) = 2 h^2 with h = 1/2
  const ScalarFn f = [](std::span<const double> x) { return x[0] * x[0]; };
  const auto e = omega_m_estimate(f, ConvexBody::cube(1), 2, small_budget());
  EXPECT_NEAR(e.value, 0.5, 1e-9);
  EXPECT_TRUE(witness_feasible(ConvexBody::cube(1), e));
  EXPECT_NEAR(witness_value(f, e), e.value, 1e-12);
}

TEST(Omega, AffineFunctionHasZeroSecondModulus) {
  const ScalarFn f = [](std::span<const double> x) { return 3.0 * x[0] - x[1] + 2.0; };
  EXPECT_LT(omega_m_estimate(f, ConvexBody::cube(2), 2, small_budget()).value, 1e-12);
}

TEST(Omega, QuadraticOnSquare) {
  // |Delta^2_h (x^2 + y^2)| = 2|h|^2, largest along the diagonal: h = (1/2, 1/2)
  const ScalarFn f = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
  const auto e = omega_m_estimate(f, ConvexBody::cube(2), 2, small_budget());
  EXPECT_NEAR(e.value, 1.0, 1e-6);
}

TEST(Omega, DeterministicForFixedSeed) {
  const ScalarFn f = [](std::span<const double> x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  const auto a = omega_m_estimate(f, ConvexBody::lp_ball(2, 2.0), 2, small_budget(5));
  const auto b = omega_m_estimate(f, ConvexBody::lp_ball(2, 2.0), 2, small_budget(5));
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.h, b.h);
}

TEST(Omega, WitnessIsAValidProgression) {
  const ScalarFn f = [](std::span<const double> x) { return std::abs(x[0]) + x[1] * x[1] * x[2]; };
  const auto body = ConvexBody::lp_ball(3, 1.0);
  const auto e = omega_m_estimate(f, body, 3, small_budget(9));
  EXPECT_TRUE(witness_feasible(body, e));
  EXPECT_NEAR(witness_value(f, e), e.value, 1e-12);
}

TEST(Delta, ConvexFunctionOnSimplex) {
  // delta_2 of 1/2 sum u log2 u on S^2 is attained at a vertex and the opposite edge midpoint: 1/2
  const ScalarFn f = [](std::span<const double> u) {
    double s = 0.0;
    for (double v : u)
      if (v > 0.0) s += v * std::log2(v);
    return 0.5 * s;
  };
  const auto body = ConvexBody::simplex(2);
  const auto e = delta_m_estimate(f, body, 2, small_budget());
  EXPECT_NEAR(e.value, 0.5, 1e-6);
  EXPECT_TRUE(witness_feasible(body, e));
  EXPECT_NEAR(witness_value(f, e), e.value, 1e-12);
}

TEST(Delta, AffinityDefectOfAffineIsZero) {
  const ScalarFn f = [](std::span<const double> x) { return 2.0 * x[0] - x[1]; };
  const std::vector<Vec> pts = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  const Vec w = {0.2, 0.3, 0.5};
  EXPECT_NEAR(affinity_defect(f, pts, w), 0.0, 1e-15);
  EXPECT_LT(delta_m_estimate(f, ConvexBody::cube(2), 3, small_budget()).value, 1e-12);
}

TEST(Moduli, RejectsBadOrder) {
  const ScalarFn f = [](std::span<const double> x) { return x[0]; };
  EXPECT_THROW(omega_m_estimate(f, ConvexBody::cube(1), 0), Error);
  EXPECT_THROW(delta_m_estimate(f, ConvexBody::cube(1), 1), Error);
}
