#pragma once

// Ratio scans E_m(f)/omega_m(f) over random function families.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "whitney/approx.hpp"
#include "whitney/bodies.hpp"
#include "whitney/bounds.hpp"
#include "whitney/common.hpp"
#include "whitney/moduli.hpp"
#include "whitney/parallel.hpp"
#include "whitney/polys.hpp"

namespace whitney {

enum class Family { piecewise_linear, polynomial, max_affine };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::piecewise_linear: return "piecewise_linear";
    case Family::polynomial: return "polynomial";
    case Family::max_affine: return "max_affine";
  }
  return "unknown";
}

/// Continuous piecewise-linear function on [0,1] with nodes k/r, k = 0..r.
inline ScalarFn random_piecewise_linear(Rng& rng, int r) {
  auto vals = std::make_shared<Vec>(static_cast<std::size_t>(r) + 1);
  for (auto& v : *vals) v = rng.normal();
  return [vals, r](std::span<const double> x) {
    const double t = std::clamp(x[0], 0.0, 1.0) * r;
    const auto k = std::min(static_cast<int>(std::floor(t)), r - 1);
    const double s = t - k;
    return (1.0 - s) * (*vals)[static_cast<std::size_t>(k)] + s * (*vals)[static_cast<std::size_t>(k) + 1];
  };
}

/// Random polynomial of total degree <= degree with normal coefficients.
inline ScalarFn random_polynomial(Rng& rng, int dim, int degree) {
  auto p = std::make_shared<Poly>(dim, degree);
  for (const auto& a : p->basis()) p->set(a, rng.normal());
  return [p](std::span<const double> x) { return (*p)(x); };
}

/// max of `pieces` random affine functions.
inline ScalarFn random_max_affine(Rng& rng, int dim, int pieces) {
  auto rows = std::make_shared<std::vector<Vec>>();
  for (int k = 0; k < pieces; ++k) {
    Vec r(static_cast<std::size_t>(dim) + 1);
    for (auto& v : r) v = rng.normal();
    rows->push_back(std::move(r));
  }
  return [rows](std::span<const double> x) {
    double best = -kInf;
    for (const auto& r : *rows) {
      double v = r.back();
      for (std::size_t i = 0; i < x.size(); ++i) v += r[i] * x[i];
      best = std::max(best, v);
    }
    return best;
  };
}

/// Exact max |Delta^m_{(y-x)/m} f(x)| over all grid pairs (no refinement).
inline double omega_on_grid_pairs(const ScalarFn& f, const PointSet& grid, int m) {
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j)
      best = std::max(best, detail::progression_value(f, grid.points[i], grid.points[j], m));
  return best;
}

struct ScanTrial {
  std::size_t trial = 0;
  Family family = Family::polynomial;
  double e = 0.0;
  double omega = 0.0;
  double ratio = 0.0;
};

struct ScanResult {
  std::vector<ScanTrial> trials;
  double max_ratio = 0.0;
  std::size_t argmax = 0;
  double mean_ratio = 0.0;
};

inline ScanResult summarize(std::vector<ScanTrial> trials) {
  ScanResult r;
  r.trials = std::move(trials);
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < r.trials.size(); ++t) {
    const auto& tr = r.trials[t];
    if (tr.omega <= 0.0) continue;
    sum += tr.ratio;
    ++counted;
    if (tr.ratio > r.max_ratio) {
      r.max_ratio = tr.ratio;
      r.argmax = t;
    }
  }
  r.mean_ratio = counted ? sum / static_cast<double>(counted) : 0.0;
  return r;
}

struct Scan1dOptions {
  int m = 2;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  int min_nodes = 2;
  int max_nodes = 32;
  unsigned threads = 0;
};

/// Piecewise-linear functions with nodes on the 1/r lattice. With r the grid
/// resolution, both E_2 (error is piecewise linear between nodes) and omega_2
/// (|Delta^2| is piecewise linear in (x, x+2h) with vertices on the lattice)
/// are attained at grid points, so the grid ratio equals the continuous one.
inline ScanResult scan_1d(const Scan1dOptions& opt) {
  require(opt.m >= 1, "invalid_argument", "m must be >= 1");
  require(opt.min_nodes >= 1 && opt.max_nodes >= opt.min_nodes, "invalid_argument", "bad node range");
  std::vector<ScanTrial> trials(opt.trials);
  const auto basis = monomial_basis(1, opt.m - 1);
  parallel_for(opt.trials, [&](std::size_t t) {
    Rng rng(opt.seed, t);
    const int r = opt.min_nodes + static_cast<int>(rng.index(static_cast<std::size_t>(opt.max_nodes - opt.min_nodes + 1)));
    const ScalarFn f = random_piecewise_linear(rng, r);
    const PointSet grid = sample_grid(ConvexBody::cube(1), r);
    Vec v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.points[i]);
    ScanTrial& tr = trials[t];
    tr.trial = t;
    tr.family = Family::piecewise_linear;
    tr.e = best_minimax(grid, v, basis).error;
    tr.omega = omega_on_grid_pairs(f, grid, opt.m);
    tr.ratio = tr.omega > 0.0 ? tr.e / tr.omega : 0.0;
  }, opt.threads ? opt.threads : thread_count());
  return summarize(std::move(trials));
}

struct ScanOptions {
  ConvexBody body = ConvexBody::cube(2);
  int m = 2;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  int resolution = 40;  // E_m grid
  int max_degree = 3;
  SearchBudget budget;
};

/// Draws a function of the mixed n-D family for trial t: even trials are
/// polynomials of degree 2..max_degree, odd trials max-affine with 2..5 pieces.
inline std::pair<Family, ScalarFn> random_family_member(std::uint64_t seed, std::size_t t, int dim, int max_degree) {
  Rng rng(seed, t);
  if (t % 2 == 0) {
    const int deg = 2 + static_cast<int>(rng.index(static_cast<std::size_t>(std::max(1, max_degree - 1))));
    return {Family::polynomial, random_polynomial(rng, dim, deg)};
  }
  const int pieces = 2 + static_cast<int>(rng.index(4));
  return {Family::max_affine, random_max_affine(rng, dim, pieces)};
}

/// Ratio scan on an arbitrary body; omega_m is searched, so each ratio is advisory.
inline ScanResult scan_body(const ScanOptions& opt) {
  const int dim = opt.body.ambient_dim();
  const PointSet grid = sample_grid(opt.body, opt.resolution);
  const auto basis = monomial_basis(dim, opt.m - 1);
  std::vector<ScanTrial> trials(opt.trials);
  SearchBudget budget = opt.budget;
  budget.threads = 1;
  parallel_for(opt.trials, [&](std::size_t t) {
    auto [fam, f] = random_family_member(opt.seed, t, dim, opt.max_degree);
    Vec v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.points[i]);
    ScanTrial& tr = trials[t];
    tr.trial = t;
    tr.family = fam;
    tr.e = best_minimax(grid, v, basis).error;
    SearchBudget b = budget;
    b.seed = mix_seed(opt.seed, t);
    tr.omega = omega_m_estimate(f, opt.body, opt.m, b).value;
    tr.ratio = tr.omega > 1e-9 ? tr.e / tr.omega : 0.0;
  }, thread_count());
  return summarize(std::move(trials));
}

struct HomogenizationTrial {
  std::size_t trial = 0;
  Family family = Family::polynomial;
  double omega_f = 0.0;       // measured before normalization
  double omega_g = 0.0;       // of g built from f / omega_f
  double homogeneity = 0.0;   // max |g(c x) - c g(x)| over samples
};

/// Random f on the l_inf ball normalized to measured omega_2 = 1, homogenized
/// with the l_inf gauge; reports the measured omega_2 of g.
inline HomogenizationTrial homogenization_trial(std::uint64_t seed, std::size_t t, int dim, const SearchBudget& budget) {
  const ConvexBody ball = ConvexBody::lp_ball(dim, kInf);
  HomogenizationTrial out;
  out.trial = t;
  SearchBudget b = budget;
  b.seed = mix_seed(seed, t);
  ScalarFn raw;
  // Draws that are affine on the ball (a single dominant piece) are redrawn.
  for (std::uint64_t attempt = 0;; ++attempt) {
    require(attempt < 64, "degenerate_witness", "no random function with nonzero second modulus");
    auto [fam, cand] = random_family_member(mix_seed(seed, attempt), t, dim, 3);
    out.omega_f = omega_m_estimate(cand, ball, 2, b).value;
    if (out.omega_f > 1e-6) {
      out.family = fam;
      raw = std::move(cand);
      break;
    }
  }
  const double s = 1.0 / out.omega_f;
  ScalarFn f = [raw, s](std::span<const double> x) { return s * raw(x); };
  const ScalarFn g = homogenize_odd(f, body_norm(ball));
  out.omega_g = omega_m_estimate(g, ball, 2, b).value;
  Rng rng(seed ^ 0x40b0ULL, t);
  for (int k = 0; k < 64; ++k) {
    Vec x(static_cast<std::size_t>(dim));
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(0.0, 1.0);
    out.homogeneity = std::max(out.homogeneity, std::abs(g(vec::scaled(x, c)) - c * g(x)));
  }
  return out;
}

}  // namespace whitney
