#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "whitney/common.hpp"

namespace whitney::opt {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
  int max_iterations = 500;
  double gradient_tol = 1e-10;
  double step_tol = 1e-14;
  /// Central-difference step, relative to max(1, |x_i|).
  double fd_step = 1e-6;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
};

inline Eigen::VectorXd numeric_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd y = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x(i)));
    y(i) = x(i) + h;
    const double fp = f(y);
    y(i) = x(i) - h;
    const double fm = f(y);
    y(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// Unconstrained minimization with BFGS and a backtracking Armijo line search.
inline BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x, const BfgsOptions& opt = {}) {
  const Eigen::Index n = x.size();
  BfgsResult res;
  double fx = f(x);
  if (n == 0) {
    res.x = x;
    res.value = fx;
    return res;
  }
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = numeric_gradient(f, x, opt.fd_step);
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) break;
    Eigen::VectorXd dir = -hinv * g;
    double slope = g.dot(dir);
    if (slope >= 0.0) {
      hinv.setIdentity();
      dir = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    Eigen::VectorXd xn;
    double fn = fx;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = f(xn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * slope) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved || (step * dir).lpNorm<Eigen::Infinity>() < opt.step_tol) break;
    const Eigen::VectorXd gn = numeric_gradient(f, xn, opt.fd_step);
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd yv = gn - g;
    const double sy = s.dot(yv);
    if (sy > 1e-16) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      hinv = (id - rho * s * yv.transpose()) * hinv * (id - rho * yv * s.transpose()) + rho * s * s.transpose();
    }
    x = xn;
    fx = fn;
    g = gn;
  }
  res.x = x;
  res.value = fx;
  res.iterations = it;
  res.gradient_norm = g.lpNorm<Eigen::Infinity>();
  return res;
}

/// Euclidean projection onto {w >= 0, sum w = 1} (sort-based).
inline Vec project_to_simplex(std::span<const double> v) {
  Vec u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::max(0.0, v[i] - theta);
  return w;
}

}  // namespace whitney::opt
