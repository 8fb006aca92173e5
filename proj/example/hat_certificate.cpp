// Best affine approximation of the hat function max(1 - t/eps, 0) on [0,1]
// together with the two convex combinations that certify its error.

#include <cstdio>

#include "whitney.hpp"

int main() {
  using namespace whitney;
  const double eps = 0.1;
  const WitnessFn w = WitnessFn::piecewise_eps(eps);
  const PointSet grid = sample_grid(w.body(), 200);
  Vec f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = eval_witness(w, grid.points[i]);

  const MinimaxResult r = best_minimax(grid, f, monomial_basis(1, 1));
  std::printf("E_2 = %.12f (expected %.12f)\n", r.error, 0.5 * (1.0 - eps));
  std::printf("p(t) = %.6f + %.6f t\n", r.coeffs.coeff({0}), r.coeffs.coeff({1}));

  const DualCertificate c = dual_certificate(r, std::span<const Vec>(grid.points), f);
  std::printf("certificate value %.12f, barycenter gap %.2e\n", c.value, c.barycenter_gap());
  for (const auto& [x, a] : c.plus) std::printf("  + %.4f at t = %.4f\n", a, x[0]);
  for (const auto& [x, a] : c.minus) std::printf("  - %.4f at t = %.4f\n", a, x[0]);
}
