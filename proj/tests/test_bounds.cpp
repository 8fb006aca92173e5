#include <gtest/gtest.h>

#include "oracles.hpp"
#include "whitney/bounds.hpp"

using namespace whitney;

TEST(Bounds, HatWitnessOnInterval) {
  for (double eps : {0.5, 0.1}) {
    const auto w = WitnessFn::piecewise_eps(eps);
    const auto b = lower_bound(w, w.body(), 2, 200);
    EXPECT_NEAR(b.e_m_lower, 0.5 * (1.0 - eps), 1e-9);
    EXPECT_TRUE(b.certified());
    EXPECT_EQ(b.omega_upper, 1.0);
  }
}

TEST(Bounds, SimplexEntropySmallCase) {
  const auto w = WitnessFn::entropy_simplex(2);
  const auto b = lower_bound(w, w.body(), 2, 12);
  EXPECT_GE(b.bound, 0.25 * std::log2(3.0) - 0.03);
  EXPECT_LE(b.bound, w2_upper_reference(2));
}

TEST(Bounds, MissingOmegaNeedsOptIn) {
  const auto w = WitnessFn::entropy_simplex(2);
  EXPECT_THROW(lower_bound(w, w.body(), 3, 6), Error);
  BoundOptions o;
  o.accept_searched = true;
  o.budget.max_grid_points = 200;
  o.budget.restarts = 2;
  const auto b = lower_bound(w, w.body(), 3, 6, o);
  EXPECT_FALSE(b.certified());
  EXPECT_EQ(b.provenance, OmegaProvenance::searched);
  EXPECT_GT(b.omega_upper, 0.0);
}

TEST(Bounds, WrongBodyIsRejected) {
  const auto w = WitnessFn::entropy_simplex(2);
  EXPECT_THROW(lower_bound(w, ConvexBody::cube(3), 2, 4), Error);
}

TEST(Bounds, ProductAcceptedOnSquare) {
  const auto w = product_witness(WitnessFn::piecewise_eps(0.1), WitnessFn::piecewise_eps(0.1));
  EXPECT_TRUE(bodies_equivalent(w.body(), ConvexBody::cube(2)));
  const auto b = lower_bound(w, ConvexBody::cube(2), 2, 40);
  EXPECT_NEAR(b.e_m_lower, 0.9, 1e-9);
}

TEST(Bounds, UpperReference) {
  EXPECT_DOUBLE_EQ(w2_upper_reference(1), 1.25);
  EXPECT_DOUBLE_EQ(w2_upper_reference(3), 1.75);
  EXPECT_DOUBLE_EQ(w2_upper_reference(4), 2.25);
}

TEST(Homogenize, OddPartIsOneHomogeneous) {
  const ScalarFn f = [](std::span<const double> x) { return std::exp(x[0]) + x[1] * x[1] * x[0]; };
  const auto g = homogenize_odd(f, body_norm(ConvexBody::lp_ball(2, kInf)));
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const Vec x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double c = rng.uniform(0.0, 3.0);
    EXPECT_NEAR(g(vec::scaled(x, c)), c * g(x), 1e-12);
    EXPECT_NEAR(g(vec::scaled(x, -1.0)), -g(x), 1e-12);
  }
  EXPECT_EQ(g(Vec{0.0, 0.0}), 0.0);
}

TEST(Chebyshev, ValuesAndTransfer) {
  EXPECT_NEAR(chebyshev(3, 0.5), 4 * 0.125 - 3 * 0.5, 1e-14);
  EXPECT_NEAR(chebyshev(2, 2.0), 2 * 4.0 - 1, 1e-12);
  EXPECT_NEAR(chebyshev(3, -1.5), -(4 * 3.375 - 4.5), 1e-12);
  // d = 1 gives 2 + (2 + w)
  EXPECT_NEAR(chebyshev_transfer(1.0, 1.0, 4), 5.0, 1e-14);
  EXPECT_THROW(chebyshev_transfer(1.0, 0.5, 2), Error);
}

TEST(Polarization, MatchesCoefficientExpansion) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng(13, s);
    const int m = 1 + static_cast<int>(rng.index(4));
    const int d = 1 + static_cast<int>(rng.index(4));
    auto p = std::make_shared<Poly>(d, m);
    oracle::Basis alphas;
    Vec coeffs;
    for (const auto& a : p->basis())
      if (total_degree(a) == m) {
        const double c = rng.normal();
        p->set(a, c);
        alphas.push_back(a);
        coeffs.push_back(c);
      }
    const ScalarFn f = [p](std::span<const double> x) { return (*p)(x); };
    std::vector<Vec> xs(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(d)));
    for (auto& x : xs)
      for (auto& v : x) v = rng.normal();
    EXPECT_NEAR(polarize(f, xs), oracle::polarization_by_coefficients(alphas, coeffs, xs), 1e-10) << s;
  }
}

TEST(Polarization, DiagonalRecoversFunction) {
  const ScalarFn f = [](std::span<const double> x) { return x[0] * x[0] * x[1] - 2.0 * x[1] * x[1] * x[1]; };
  const Vec x = {0.7, -1.3};
  EXPECT_NEAR(polarize(f, {x, x, x}), f(x), 1e-12);
}

TEST(Lift, EntropyOnL1Ball) {
  const auto w = WitnessFn::entropy_l1ball(3);
  const auto r = simplex_lift_check(w.function(), 3, 12, w.analytic_omega()->value);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_error, r.e2_face + 1.5 * r.omega2);
}
