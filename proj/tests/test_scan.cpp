#include <gtest/gtest.h>

#include "whitney/scan.hpp"

using namespace whitney;

TEST(Scan, OneDimensionalRatiosStayBelowHalf) {
  Scan1dOptions o;
  o.trials = 500;
  o.seed = 3;
  const auto r = scan_1d(o);
  EXPECT_EQ(r.trials.size(), 500u);
  EXPECT_LE(r.max_ratio, 0.5 + 1e-9);
  EXPECT_GT(r.mean_ratio, 0.0);
}

TEST(Scan, Deterministic) {
  Scan1dOptions o;
  o.trials = 200;
  const auto a = scan_1d(o), b = scan_1d(o);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.argmax, b.argmax);
}

TEST(Scan, GridPairsOmegaOfPiecewiseLinear) {
  // hat with apex at 1/2: omega_2 = 2 (x = 0, h = 1/2)
  const ScalarFn f = [](std::span<const double> x) { return 1.0 - std::abs(2.0 * x[0] - 1.0); };
  EXPECT_NEAR(omega_on_grid_pairs(f, sample_grid(ConvexBody::cube(1), 8), 2), 2.0, 1e-14);
}

TEST(Scan, BodyScanOnSquare) {
  ScanOptions o;
  o.trials = 6;
  o.resolution = 12;
  o.budget.max_grid_points = 150;
  o.budget.restarts = 2;
  const auto r = scan_body(o);
  EXPECT_EQ(r.trials.size(), 6u);
  EXPECT_LE(r.max_ratio, 1.01);
  EXPECT_EQ(r.trials[0].family, Family::polynomial);
  EXPECT_EQ(r.trials[1].family, Family::max_affine);
}

TEST(Scan, HomogenizationTrial) {
  SearchBudget b;
  b.max_grid_points = 200;
  b.restarts = 2;
  const auto t = homogenization_trial(1, 0, 2, b);
  EXPECT_GT(t.omega_f, 0.0);
  EXPECT_LT(t.homogeneity, 1e-12);
  EXPECT_LE(t.omega_g, 4.01);
}
