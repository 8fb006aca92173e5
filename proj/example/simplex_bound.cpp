// Lower bounds for w_2 of the simplices S^2..S^5 from the entropy witness.

#include <cstdio>

#include "whitney.hpp"

int main() {
  using namespace whitney;
  std::printf("%3s %10s %10s %10s %10s\n", "n", "E_2", "omega_2", "bound", "upper");
  for (int n = 2; n <= 5; ++n) {
    const WitnessFn w = WitnessFn::entropy_simplex(n);
    const WhitneyBound b = lower_bound(w, w.body(), 2, n == 4 ? 25 : 24);
    std::printf("%3d %10.6f %10.6f %10.6f %10.6f\n", n, b.e_m_lower, b.omega_upper, b.bound, w2_upper_reference(n));
  }
}
