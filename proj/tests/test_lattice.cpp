#include <gtest/gtest.h>

#include "oracles.hpp"
#include "whitney/lattice.hpp"

using namespace whitney;

TEST(Lattice, WeightedLpNormMatchesOracle) {
  const Vec a = {1.0, 2.0, 4.0};
  const auto X = LatticeNorm::lp(3, 3.0, a);
  const Vec x = {0.3, -0.7, 0.1};
  EXPECT_NEAR(lattice_norm(X, x), oracle::weighted_lp(x, 3.0, a), 1e-14);
}

TEST(Lattice, DualIsWeightedConjugate) {
  const Vec a = {1.0, 2.0, 4.0};
  const auto X = LatticeNorm::lp(3, 3.0, a);
  const auto Xs = dual_lattice(X);
  const Vec x = {0.3, -0.7, 0.1};
  const Vec inv = {1.0, 0.5, 0.25};
  EXPECT_NEAR(lattice_norm(Xs, x), oracle::weighted_lp(x, 1.5, inv), 1e-14);
}

TEST(Lattice, ClosedFormIndicator) {
  const Vec a = {1.0, 2.0, 0.5};
  const Vec u = {0.2, 0.5, 0.3};
  for (double p : {1.0, 1.5, 2.0, 7.0, kInf})
    EXPECT_NEAR(indicator(u, LatticeNorm::lp(3, p, a)), oracle::weighted_lp_indicator(u, p, a), 1e-13) << p;
}

TEST(Lattice, LozanovskiiClosedForm) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(3, s);
    const int d = 2 + static_cast<int>(rng.index(4));
    Vec a(static_cast<std::size_t>(d));
    for (auto& v : a) v = std::exp2(rng.uniform(-3.0, 3.0));
    const double p = rng.uniform(1.0, 10.0);
    const Vec u = rng.simplex_point(static_cast<std::size_t>(d));
    EXPECT_LE(std::abs(lozanovskii_residual(u, LatticeNorm::lp(d, p, a))), 1e-12);
  }
}

TEST(Lattice, NumericalIndicatorReproducesClosedForm) {
  const Vec a = {1.0, 3.0, 0.5};
  const auto closed = LatticeNorm::lp(3, 2.0, a);
  const auto X = LatticeNorm::oracle(3, [a](std::span<const double> x) { return oracle::weighted_lp(Vec(x.begin(), x.end()), 2.0, a); });
  Rng rng(4);
  for (int k = 0; k < 5; ++k) {
    const Vec u = rng.simplex_point(3);
    const auto v = indicator_value(u, X);
    EXPECT_FALSE(v.exact);
    EXPECT_NEAR(v.value, indicator(u, closed), 1e-6);
  }
}

TEST(Lattice, IndicatorOnFaceOfSimplex) {
  // u with a zero coordinate: the unused coordinate is set to 0
  const Vec u = {0.5, 0.5, 0.0};
  EXPECT_NEAR(indicator(u, LatticeNorm::lp(3, 2.0)), 0.5 * -1.0, 1e-14);
}

TEST(Lattice, CalderonNormMatchesClosedForm) {
  const auto n0 = LatticeNorm::lp(3, 1.0), n1 = LatticeNorm::lp(3, kInf);
  const double theta = 0.5;  // 1/p = 1/2
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    Vec x(3);
    for (auto& v : x) v = rng.normal();
    EXPECT_NEAR(calderon_norm(x, n0, n1, theta) / lp_norm(x, 2.0), 1.0, 1e-6);
  }
}

TEST(Lattice, CalderonIndicatorIsConvexCombination) {
  const auto n0 = LatticeNorm::lp(3, 1.5), n1 = LatticeNorm::lp(3, 4.0);
  const auto X = LatticeNorm::calderon(n0, n1, 0.25);
  const Vec u = {0.1, 0.6, 0.3};
  EXPECT_NEAR(indicator(u, X), 0.75 * indicator(u, n0) + 0.25 * indicator(u, n1), 1e-14);
  const NormFn numeric = [&](std::span<const double> x) { return calderon_norm(x, n0, n1, 0.25); };
  IndicatorOptions o;
  o.restarts = 2;
  EXPECT_NEAR(indicator_numeric(u, numeric, o).value, indicator(u, X), 1e-6);
}

TEST(Lattice, Validation) {
  EXPECT_THROW(LatticeNorm::lp(3, 0.5), Error);
  EXPECT_THROW(LatticeNorm::lp(2, 2.0, {1.0, -1.0}), Error);
  EXPECT_THROW(indicator(Vec{0.5, 0.6}, LatticeNorm::lp(2, 2.0)), Error);
}

TEST(Lattice, JsonRoundTrip) {
  const auto X = LatticeNorm::calderon(LatticeNorm::lp(2, 1.0, {1.0, 2.0}), LatticeNorm::lp(2, kInf), 0.3);
  const auto Y = lattice_from_json(to_json(X));
  EXPECT_EQ(to_json(Y), to_json(X));
  const Vec x = {0.4, -1.2};
  EXPECT_EQ(lattice_norm(X, x), lattice_norm(Y, x));
}
