#pragma once

// Lower bounds on Whitney constants w_m(K) = sup { E_m(f;K) : omega_m(f;K) <= 1 }
// from explicit witnesses, and the constructive reductions used to move such
// bounds between bodies.

#include "json.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "whitney/approx.hpp"
#include "whitney/bodies.hpp"
#include "whitney/common.hpp"
#include "whitney/extremals.hpp"
#include "whitney/lattice.hpp"
#include "whitney/moduli.hpp"

namespace whitney {

enum class OmegaProvenance { analytic, searched };

struct WhitneyBound {
  int m = 2;
  ConvexBody body = ConvexBody::cube(1);
  std::string witness;
  double e_m_lower = 0.0;
  double omega_upper = 0.0;
  OmegaProvenance provenance = OmegaProvenance::analytic;
  std::string citation;
  double bound = 0.0;
  int resolution = 0;
  std::uint64_t seed = 0;
  std::size_t grid_points = 0;
  int lp_iterations = 0;

  /// Only an analytic omega bound makes e_m_lower / omega_upper a certified lower bound.
  bool certified() const { return provenance == OmegaProvenance::analytic; }
};

/// General upper bound for m = 2 on convex bodies of dimension n: floor(log2 n)/2 + 5/4.
inline double w2_upper_reference(int n) {
  require(n >= 1, "invalid_argument", "dimension must be >= 1");
  return 0.5 * std::floor(std::log2(static_cast<double>(n))) + 1.25;
}

/// Rewrites products of cubes as one cube so equal point sets compare equal.
inline ConvexBody canonical_body(const ConvexBody& body) {
  if (const auto* k = std::get_if<ProductKind>(&body.kind())) {
    const ConvexBody a = canonical_body(*k->first);
    const ConvexBody b = canonical_body(*k->second);
    const auto* ca = std::get_if<CubeKind>(&a.kind());
    const auto* cb = std::get_if<CubeKind>(&b.kind());
    if (ca && cb) return ConvexBody::cube(ca->n + cb->n).with_tolerance(body.tol());
    return ConvexBody::product(a, b).with_tolerance(body.tol());
  }
  return body;
}

inline bool bodies_equivalent(const ConvexBody& a, const ConvexBody& b) {
  return same_body(canonical_body(a), canonical_body(b));
}

struct BoundOptions {
  /// Fall back to a searched omega (ADVISORY bound) when no analytic value exists.
  bool accept_searched = false;
  SearchBudget budget;
  MinimaxOptions minimax;
};

inline WhitneyBound lower_bound(const WitnessFn& witness, const ConvexBody& body, int m, int resolution,
                                const BoundOptions& opt = {}) {
  require(bodies_equivalent(witness.body(), body), "invalid_argument",
          "witness " + witness.name() + " is defined on " + witness.body().name() + ", not " + body.name());
  require(m >= 1, "invalid_argument", "m must be >= 1");
  const ScalarFn f = witness.function();
  WhitneyBound b;
  b.m = m;
  b.body = body;
  b.witness = witness.name();
  b.resolution = resolution;
  b.seed = opt.budget.seed;
  const MinimaxResult e = e_m_on_body(f, body, m, resolution, opt.minimax);
  b.e_m_lower = e.error;
  b.lp_iterations = e.iterations;
  b.grid_points = sample_grid(body, resolution).size();

  const auto& om = witness.analytic_omega();
  if (om && om->m == m) {
    b.omega_upper = om->value;
    b.provenance = OmegaProvenance::analytic;
    b.citation = om->citation;
  } else {
    require(opt.accept_searched, "missing_omega",
            "no analytic omega_" + std::to_string(m) + " bound for witness " + witness.name() +
                "; pass accept_searched for an advisory bound");
    b.omega_upper = omega_m_estimate(f, body, m, opt.budget).value;
    b.provenance = OmegaProvenance::searched;
    b.citation = "searched omega (lower estimate of the supremum; advisory only)";
  }
  require(b.omega_upper > 0.0, "degenerate_witness", "omega bound is zero; ratio undefined");
  b.bound = b.e_m_lower / b.omega_upper;
  return b;
}

inline nlohmann::json to_json(const WhitneyBound& b) {
  return {{"m", b.m},
          {"body", to_json(b.body)},
          {"witness", b.witness},
          {"e_m_lower", b.e_m_lower},
          {"omega_upper", b.omega_upper},
          {"omega_provenance", b.provenance == OmegaProvenance::analytic ? "analytic" : "searched"},
          {"certified", b.certified()},
          {"citation", b.citation},
          {"bound", b.bound},
          {"resolution", b.resolution},
          {"seed", b.seed}};
}

// ---- homogenization ---------------------------------------------------------

/// g(x) = 1/2 ||x|| (f(x/||x||) - f(-x/||x||)), g(0) = 0.
inline ScalarFn homogenize_odd(ScalarFn f, NormFn norm) {
  return [f = std::move(f), norm = std::move(norm)](std::span<const double> x) {
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    Vec u(x.size()), v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      u[i] = x[i] / r;
      v[i] = -u[i];
    }
    return 0.5 * r * (f(u) - f(v));
  };
}

inline ScalarFn homogenize_odd(ScalarFn f, const LatticeNorm& X) {
  return homogenize_odd(std::move(f), NormFn([X](std::span<const double> x) { return lattice_norm(X, x); }));
}

/// Gauge of a centrally symmetric l_p ball (p >= 1).
inline NormFn body_norm(const ConvexBody& body) {
  const auto* k = std::get_if<LpBallKind>(&body.kind());
  require(k != nullptr && k->p >= 1.0, "invalid_argument", "body_norm needs an l_p ball with p >= 1");
  const double p = k->p;
  return [p](std::span<const double> x) { return lp_norm(x, p); };
}

// ---- Chebyshev transfer -----------------------------------------------------

inline double chebyshev(int k, double t) {
  require(k >= 0, "invalid_argument", "Chebyshev degree must be >= 0");
  if (std::abs(t) <= 1.0) return std::cos(k * std::acos(t));
  const double v = std::cosh(k * std::acosh(std::abs(t)));
  return (t < 0.0 && k % 2 == 1) ? -v : v;
}

/// 2 + T_(m-1)(d) (2 + w): bound for a space at Banach-Mazur distance d from one with constant w.
inline double chebyshev_transfer(double w_known, double d, int m) {
  require(d >= 1.0, "invalid_argument", "distance d must be >= 1");
  require(m >= 2, "invalid_argument", "m must be >= 2");
  require(w_known >= 0.0, "invalid_argument", "known constant must be >= 0");
  return 2.0 + chebyshev(m - 1, d) * (2.0 + w_known);
}

// ---- polarization -----------------------------------------------------------

/// F(x_1..x_m) = 1/(2^m m!) sum_eps eps_1...eps_m f(sum eps_i x_i), evaluated on
/// x_i / |x_i|_2 and extended by homogeneity.
inline double polarize(const ScalarFn& f, const std::vector<Vec>& xs) {
  const int m = static_cast<int>(xs.size());
  require(m >= 1, "invalid_argument", "polarize needs at least one argument");
  require(m <= 10, "invalid_argument", "polarize supports m <= 10");
  const std::size_t d = xs.front().size();
  std::vector<Vec> u;
  double scale = 1.0;
  for (const auto& x : xs) {
    require_dim(x.size(), d, "polarize argument");
    const double r = vec::norm2(x);
    if (r == 0.0) return 0.0;
    scale *= r;
    u.push_back(vec::scaled(x, 1.0 / r));
  }
  double s = 0.0;
  Vec p(d);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::fill(p.begin(), p.end(), 0.0);
    int sign = 1;
    for (int i = 0; i < m; ++i) {
      const bool neg = (mask >> i) & 1u;
      if (neg) sign = -sign;
      for (std::size_t c = 0; c < d; ++c) p[c] += neg ? -u[static_cast<std::size_t>(i)][c] : u[static_cast<std::size_t>(i)][c];
    }
    s += sign * f(p);
  }
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  return scale * s / (std::ldexp(1.0, m) * fact);
}

// ---- simplex-to-l1-ball lift --------------------------------------------------

struct LiftReport {
  int n = 0;
  int resolution = 0;
  double e2_face = 0.0;
  double omega2 = 0.0;
  double max_error = 0.0;
  double allowed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::size_t grid_points = 0;
  Vec linear;  // coefficients of the linear part
};

/// Builds the approximant l(x) + f(0), where l is the linear extension of the
/// best affine approximation to the odd part of f on the positive face of the
/// l1 ball, and checks its error on the ball grid against E_2(face) + 3/2 omega_2.
inline LiftReport simplex_lift_check(const ScalarFn& f, int n, int resolution, double omega2, double tolerance = 0.02,
                                     const MinimaxOptions& mopt = {}) {
  require(n >= 1, "invalid_argument", "n must be >= 1");
  require(omega2 >= 0.0, "invalid_argument", "omega_2 must be >= 0");
  LiftReport rep;
  rep.n = n;
  rep.resolution = resolution;
  rep.omega2 = omega2;
  rep.tolerance = tolerance;

  auto odd = [&](std::span<const double> x) {
    const Vec mx = vec::scaled(x, -1.0);
    return 0.5 * (f(x) - f(mx));
  };
  const PointSet face = sample_grid(ConvexBody::simplex(n - 1), resolution);
  Vec fv(face.size());
  for (std::size_t i = 0; i < face.size(); ++i) fv[i] = odd(face.points[i]);
  const MinimaxResult g = best_minimax(face, fv, monomial_basis(n, 1), mopt);
  rep.e2_face = g.error;
  // On the face sum x_i = 1, so c0 + sum c_i x_i = sum (c_i + c0) x_i.
  const double c0 = g.coeffs.coeff(MultiIndex(static_cast<std::size_t>(n), 0));
  rep.linear.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    MultiIndex e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    rep.linear[static_cast<std::size_t>(i)] = g.coeffs.coeff(e) + c0;
  }
  const double f0 = f(Vec(static_cast<std::size_t>(n), 0.0));
  const PointSet ball = sample_grid(ConvexBody::lp_ball(n, 1.0), resolution);
  rep.grid_points = ball.size();
  for (const auto& x : ball.points)
    rep.max_error = std::max(rep.max_error, std::abs(f(x) - vec::dot(rep.linear, x) - f0));
  rep.allowed = rep.e2_face + 1.5 * omega2 + tolerance;
  rep.passed = rep.max_error <= rep.allowed;
  return rep;
}

}  // namespace whitney
