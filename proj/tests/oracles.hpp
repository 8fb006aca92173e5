#pragma once

// Reference computations that share no code with the library solvers.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Basis = std::vector<std::vector<int>>;

inline double monomial(const std::vector<int>& a, const Vec& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i]; ++k) v *= x[i];
  return v;
}

inline int rank(const Eigen::MatrixXd& m) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<int>(lu.rank());
}

/// min_c max_i |f_i - sum_j c_j phi_j(x_i)| by enumerating every vertex of
/// {(c,t) : |f_i - phi_i c| <= t}: each choice of k+1 tight constraints
/// (point, sign) is solved and kept if feasible. Needs phi of full column rank.
inline double minimax_by_vertices(const std::vector<Vec>& pts, const Vec& f, const Basis& basis) {
  const int n = static_cast<int>(pts.size());
  const int k = static_cast<int>(basis.size());
  Eigen::MatrixXd phi(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) phi(i, j) = monomial(basis[static_cast<std::size_t>(j)], pts[static_cast<std::size_t>(i)]);
  // constraint r = 2i + s:  s=0: phi_i c + t >= f_i ; s=1: -phi_i c + t >= -f_i
  const int nc = 2 * n;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(k + 1));
  std::function<void(int, int)> rec = [&](int depth, int start) {
    if (depth == k + 1) {
      Eigen::MatrixXd a(k + 1, k + 1);
      Eigen::VectorXd b(k + 1);
      for (int r = 0; r <= k; ++r) {
        const int c = pick[static_cast<std::size_t>(r)];
        const int i = c / 2;
        const double s = c % 2 == 0 ? 1.0 : -1.0;
        a.row(r).head(k) = s * phi.row(i);
        a(r, k) = 1.0;
        b(r) = s * f[static_cast<std::size_t>(i)];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < k + 1) return;
      const Eigen::VectorXd z = lu.solve(b);
      const Eigen::VectorXd c = z.head(k);
      const double t = z(k);
      const Eigen::VectorXd res = Eigen::Map<const Eigen::VectorXd>(f.data(), n) - phi * c;
      if (res.cwiseAbs().maxCoeff() <= t + 1e-10 * (1.0 + std::abs(t))) best = std::min(best, t);
      return;
    }
    for (int c = start; c < nc; ++c) {
      pick[static_cast<std::size_t>(depth)] = c;
      rec(depth + 1, c + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Best affine approximation error of 1-D samples: ternary search on the
/// slope of the convex function a -> (max(f - a x) - min(f - a x)) / 2.
inline double affine_error_1d(const Vec& x, const Vec& f) {
  auto spread = [&](double a) {
    double hi = -std::numeric_limits<double>::infinity(), lo = -hi;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = f[i] - a * x[i];
      hi = std::max(hi, r);
      lo = std::min(lo, r);
    }
    return 0.5 * (hi - lo);
  };
  double lo = -1e3, hi = 1e3;
  for (int it = 0; it < 400; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (spread(m1) < spread(m2)) hi = m2;
    else lo = m1;
  }
  return spread(0.5 * (lo + hi));
}

/// Symmetric m-linear form of sum_alpha c_alpha x^alpha (all |alpha| = m),
/// expanded term by term over permutations of the variable slots.
inline double polarization_by_coefficients(const Basis& alphas, const Vec& coeffs, const std::vector<Vec>& xs) {
  const std::size_t m = xs.size();
  double total = 0.0;
  for (std::size_t t = 0; t < alphas.size(); ++t) {
    std::vector<int> slots;
    for (std::size_t i = 0; i < alphas[t].size(); ++i)
      for (int k = 0; k < alphas[t][i]; ++k) slots.push_back(static_cast<int>(i));
    if (slots.size() != m) continue;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    double s = 0.0;
    int count = 0;
    do {
      double prod = 1.0;
      for (std::size_t k = 0; k < m; ++k) prod *= xs[k][static_cast<std::size_t>(slots[static_cast<std::size_t>(perm[k])])];
      s += prod;
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += coeffs[t] * s / count;
  }
  return total;
}

/// (sum (a_i |x_i|)^p)^(1/p)
inline double weighted_lp(const Vec& x, double p, const Vec& a) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, a[i] * std::abs(x[i]));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(a[i] * std::abs(x[i]), p);
  return std::pow(s, 1.0 / p);
}

/// sum u_i log2 u_i / p - sum u_i log2 a_i: indicator of weighted l_p, derived
/// from the maximizer x_i proportional to u_i^(1/p) / a_i.
inline double weighted_lp_indicator(const Vec& u, double p, const Vec& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > 0.0) s += u[i] * ((std::isinf(p) ? 0.0 : std::log2(u[i]) / p) - std::log2(a[i]));
  return s;
}

}  // namespace oracle
