#pragma once

// Convex (and quasi-convex l_p, p < 1) bodies: membership, deterministic
// lattices, and the admissible step range of an arithmetic progression.

#include <Eigen/Dense>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "whitney/common.hpp"
#include "whitney/lp.hpp"

namespace whitney {

class ConvexBody;
using BodyPtr = std::shared_ptr<const ConvexBody>;

/// S^n = {u in R^{n+1} : u >= 0, sum u = 1}.
struct SimplexKind {
  int n;
};
/// {x in R^n : ||x||_p <= 1}; p may be +inf or in (0, 1).
struct LpBallKind {
  int n;
  double p;
};
/// [0, 1]^n.
struct CubeKind {
  int n;
};
struct PolytopeKind {
  int n;
  std::vector<Vec> vertices;
};
struct ProductKind {
  BodyPtr first;
  BodyPtr second;
};
/// {A y + b : y in base}; A must have full column rank.
struct AffineKind {
  BodyPtr base;
  Eigen::MatrixXd matrix;
  Eigen::VectorXd offset;
};

class ConvexBody {
 public:
  using Kind = std::variant<SimplexKind, LpBallKind, CubeKind, PolytopeKind, ProductKind, AffineKind>;

  static ConvexBody simplex(int n) {
    require(n >= 0, "invalid_body", "simplex dimension must be >= 0");
    return ConvexBody(SimplexKind{n});
  }
  static ConvexBody lp_ball(int n, double p) {
    require(n >= 1, "invalid_body", "l_p ball dimension must be >= 1");
    require(p > 0.0, "invalid_body", "l_p ball needs p > 0");
    return ConvexBody(LpBallKind{n, p});
  }
  static ConvexBody cube(int n) {
    require(n >= 1, "invalid_body", "cube dimension must be >= 1");
    return ConvexBody(CubeKind{n});
  }
  static ConvexBody polytope(std::vector<Vec> vertices) {
    require(!vertices.empty(), "invalid_body", "polytope needs at least one vertex");
    const int n = static_cast<int>(vertices.front().size());
    for (const auto& v : vertices) require_dim(v.size(), static_cast<std::size_t>(n), "polytope vertex");
    return ConvexBody(PolytopeKind{n, std::move(vertices)});
  }
  static ConvexBody product(const ConvexBody& a, const ConvexBody& b) {
    return ConvexBody(ProductKind{std::make_shared<const ConvexBody>(a), std::make_shared<const ConvexBody>(b)});
  }
  static ConvexBody affine_image(const ConvexBody& base, Eigen::MatrixXd matrix, Eigen::VectorXd offset) {
    require_dim(static_cast<std::size_t>(matrix.cols()), static_cast<std::size_t>(base.ambient_dim()),
                "affine image matrix columns");
    require_dim(static_cast<std::size_t>(offset.size()), static_cast<std::size_t>(matrix.rows()),
                "affine image offset");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(matrix);
    require(qr.rank() == matrix.cols(), "invalid_body", "affine image matrix must have full column rank");
    return ConvexBody(AffineKind{std::make_shared<const ConvexBody>(base), std::move(matrix), std::move(offset)});
  }

  const Kind& kind() const { return kind_; }
  double tol() const { return tol_; }
  ConvexBody with_tolerance(double tol) const {
    require(tol >= 0.0, "invalid_body", "membership tolerance must be nonnegative");
    ConvexBody b = *this;
    b.tol_ = tol;
    return b;
  }

  int ambient_dim() const {
    return std::visit(
        [](const auto& k) -> int {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexKind>) return k.n + 1;
          else if constexpr (std::is_same_v<K, ProductKind>) return k.first->ambient_dim() + k.second->ambient_dim();
          else if constexpr (std::is_same_v<K, AffineKind>) return static_cast<int>(k.matrix.rows());
          else return k.n;
        },
        kind_);
  }

  /// Dimension of the affine hull (n for S^n); polytopes report the ambient dimension.
  int intrinsic_dim() const {
    return std::visit(
        [](const auto& k) -> int {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexKind>) return k.n;
          else if constexpr (std::is_same_v<K, ProductKind>)
            return k.first->intrinsic_dim() + k.second->intrinsic_dim();
          else if constexpr (std::is_same_v<K, AffineKind>) return k.base->intrinsic_dim();
          else return k.n;
        },
        kind_);
  }

  bool is_convex() const {
    return std::visit(
        [](const auto& k) -> bool {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, LpBallKind>) return k.p >= 1.0;
          else if constexpr (std::is_same_v<K, ProductKind>) return k.first->is_convex() && k.second->is_convex();
          else if constexpr (std::is_same_v<K, AffineKind>) return k.base->is_convex();
          else return true;
        },
        kind_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexKind>) return "simplex";
          else if constexpr (std::is_same_v<K, LpBallKind>) return "lp_ball";
          else if constexpr (std::is_same_v<K, CubeKind>) return "cube";
          else if constexpr (std::is_same_v<K, PolytopeKind>) return "polytope";
          else if constexpr (std::is_same_v<K, ProductKind>) return "product";
          else return "affine";
        },
        kind_);
  }

 private:
  explicit ConvexBody(Kind k) : kind_(std::move(k)) {}

  Kind kind_;
  double tol_ = 1e-12;
};

/// Quasi-norm ||x||_p; max-scaled so huge p does not overflow.
inline double lp_norm(std::span<const double> x, double p) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (std::isinf(p) || m == 0.0) return m;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

namespace detail {

inline bool polytope_contains(const PolytopeKind& k, std::span<const double> x, double tol) {
  const auto nv = static_cast<Eigen::Index>(k.vertices.size());
  Eigen::MatrixXd a(k.n + 1, nv);
  Eigen::VectorXd b(k.n + 1);
  for (Eigen::Index j = 0; j < nv; ++j) {
    for (int i = 0; i < k.n; ++i) a(i, j) = k.vertices[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    a(k.n, j) = 1.0;
  }
  for (int i = 0; i < k.n; ++i) b(i) = x[static_cast<std::size_t>(i)];
  b(k.n) = 1.0;
  return lp::feasible(a, b, std::max(tol, 1e-11));
}

// Preimage y with A y + b = x, or nullopt when x is off the image plane.
inline std::optional<Vec> affine_preimage(const AffineKind& k, std::span<const double> x, double tol) {
  Eigen::VectorXd rhs(k.matrix.rows());
  for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs(i) = x[static_cast<std::size_t>(i)] - k.offset(i);
  const Eigen::VectorXd y = k.matrix.colPivHouseholderQr().solve(rhs);
  if ((k.matrix * y - rhs).cwiseAbs().maxCoeff() > std::max(tol, 1e-12) * (1.0 + rhs.cwiseAbs().maxCoeff()))
    return std::nullopt;
  return Vec(y.data(), y.data() + y.size());
}

}  // namespace detail

/// x in K within the body's membership tolerance.
inline bool contains(const ConvexBody& body, std::span<const double> x) {
  require_dim(x.size(), static_cast<std::size_t>(body.ambient_dim()), "contains");
  const double tol = body.tol();
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SimplexKind>) {
          double s = 0.0;
          for (double v : x) {
            if (v < -tol) return false;
            s += v;
          }
          return std::abs(s - 1.0) <= tol;
        } else if constexpr (std::is_same_v<K, LpBallKind>) {
          return lp_norm(x, k.p) <= 1.0 + tol;
        } else if constexpr (std::is_same_v<K, CubeKind>) {
          for (double v : x)
            if (v < -tol || v > 1.0 + tol) return false;
          return true;
        } else if constexpr (std::is_same_v<K, PolytopeKind>) {
          return detail::polytope_contains(k, x, tol);
        } else if constexpr (std::is_same_v<K, ProductKind>) {
          const auto d1 = static_cast<std::size_t>(k.first->ambient_dim());
          return contains(k.first->with_tolerance(tol), x.subspan(0, d1)) &&
                 contains(k.second->with_tolerance(tol), x.subspan(d1));
        } else {
          const auto y = detail::affine_preimage(k, x, tol);
          return y && contains(k.base->with_tolerance(tol), *y);
        }
      },
      body.kind());
}

/// Finite point set drawn from a body.
struct PointSet {
  int dim = 0;
  std::vector<Vec> points;
  ConvexBody body = ConvexBody::cube(1);

  std::size_t size() const { return points.size(); }
};

namespace detail {

// All alpha in Z_+^parts with sum alpha = total, lexicographically descending.
inline void compositions(int parts, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    cur.push_back(first);
    compositions(parts - 1, total - first, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Vec> barycentric_lattice(int parts, int resolution) {
  std::vector<std::vector<int>> alphas;
  std::vector<int> cur;
  compositions(parts, resolution, cur, alphas);
  std::vector<Vec> pts;
  pts.reserve(alphas.size());
  for (const auto& a : alphas) {
    Vec p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = static_cast<double>(a[i]) / resolution;
    pts.push_back(std::move(p));
  }
  return pts;
}

// Integer points of [-r, r]^n (or [0, r]^n), odometer order.
template <class Visit>
void integer_box(int n, int lo, int hi, Visit&& visit) {
  std::vector<int> a(static_cast<std::size_t>(n), lo);
  for (;;) {
    visit(a);
    int i = n - 1;
    while (i >= 0 && a[static_cast<std::size_t>(i)] == hi) a[static_cast<std::size_t>(i--)] = lo;
    if (i < 0) return;
    ++a[static_cast<std::size_t>(i)];
  }
}

inline std::vector<Vec> lp_ball_grid(const LpBallKind& k, int r) {
  std::vector<Vec> pts;
  if (k.p == 1.0) {
    integer_box(k.n, -r, r, [&](const std::vector<int>& a) {
      int s = 0;
      for (int v : a) s += std::abs(v);
      if (s > r) return;
      Vec p(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) p[i] = static_cast<double>(a[i]) / r;
      pts.push_back(std::move(p));
    });
    return pts;
  }
  if (std::isinf(k.p)) {
    integer_box(k.n, -r, r, [&](const std::vector<int>& a) {
      Vec p(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) p[i] = static_cast<double>(a[i]) / r;
      pts.push_back(std::move(p));
    });
    return pts;
  }
  // Radial shells k/r times the boundary of the cube lattice normalized to the unit l_p sphere.
  std::vector<Vec> dirs;
  integer_box(k.n, -r, r, [&](const std::vector<int>& a) {
    int m = 0;
    for (int v : a) m = std::max(m, std::abs(v));
    if (m != r) return;
    Vec d(a.begin(), a.end());
    const double nrm = lp_norm(d, k.p);
    for (auto& v : d) v /= nrm;
    dirs.push_back(std::move(d));
  });
  pts.emplace_back(static_cast<std::size_t>(k.n), 0.0);
  for (int shell = 1; shell <= r; ++shell) {
    const double s = static_cast<double>(shell) / r;
    for (const auto& d : dirs) pts.push_back(vec::scaled(d, s));
  }
  return pts;
}

}  // namespace detail

/// Deterministic lattice of the body; see README for the per-kind layout.
inline PointSet sample_grid(const ConvexBody& body, int resolution) {
  require(resolution >= 1, "invalid_resolution", "grid resolution must be >= 1");
  PointSet out;
  out.dim = body.ambient_dim();
  out.body = body;
  out.points = std::visit(
      [&](const auto& k) -> std::vector<Vec> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SimplexKind>) {
          return detail::barycentric_lattice(k.n + 1, resolution);
        } else if constexpr (std::is_same_v<K, LpBallKind>) {
          return detail::lp_ball_grid(k, resolution);
        } else if constexpr (std::is_same_v<K, CubeKind>) {
          std::vector<Vec> pts;
          detail::integer_box(k.n, 0, resolution, [&](const std::vector<int>& a) {
            Vec p(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) p[i] = static_cast<double>(a[i]) / resolution;
            pts.push_back(std::move(p));
          });
          return pts;
        } else if constexpr (std::is_same_v<K, PolytopeKind>) {
          std::vector<Vec> pts;
          for (const auto& w : detail::barycentric_lattice(static_cast<int>(k.vertices.size()), resolution)) {
            Vec p(static_cast<std::size_t>(k.n), 0.0);
            for (std::size_t j = 0; j < w.size(); ++j)
              for (std::size_t i = 0; i < p.size(); ++i) p[i] += w[j] * k.vertices[j][i];
            pts.push_back(std::move(p));
          }
          return pts;
        } else if constexpr (std::is_same_v<K, ProductKind>) {
          const auto a = sample_grid(*k.first, resolution);
          const auto b = sample_grid(*k.second, resolution);
          std::vector<Vec> pts;
          pts.reserve(a.size() * b.size());
          for (const auto& p : a.points)
            for (const auto& q : b.points) {
              Vec z = p;
              z.insert(z.end(), q.begin(), q.end());
              pts.push_back(std::move(z));
            }
          return pts;
        } else {
          const auto base = sample_grid(*k.base, resolution);
          std::vector<Vec> pts;
          pts.reserve(base.size());
          for (const auto& y : base.points) {
            const Eigen::VectorXd z = k.matrix * Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())) + k.offset;
            pts.emplace_back(z.data(), z.data() + z.size());
          }
          return pts;
        }
      },
      body.kind());
  return out;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

namespace detail {

// Largest s >= 0 with |x + s h| <= 1 coordinatewise-style constraints handled by caller.
inline double max_step_box(std::span<const double> x, std::span<const double> h, double lo, double hi) {
  double s = kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (h[i] > 0) s = std::min(s, (hi - x[i]) / h[i]);
    else if (h[i] < 0) s = std::min(s, (lo - x[i]) / h[i]);
  }
  return std::max(0.0, s);
}

// Largest s >= 0 with ||x + s h||_1 <= 1 (convex piecewise-linear in s).
inline double max_step_l1(std::span<const double> x, std::span<const double> h) {
  std::vector<double> breaks;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (h[i] != 0.0) {
      const double b = -x[i] / h[i];
      if (b > 0) breaks.push_back(b);
    }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(kInf);
  auto phi = [&](double s) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) v += std::abs(x[i] + s * h[i]);
    return v;
  };
  double s0 = 0.0;
  double f0 = phi(0.0);
  for (double b : breaks) {
    // slope on (s0, b)
    const double mid = std::isinf(b) ? s0 + 1.0 : 0.5 * (s0 + b);
    double slope = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = x[i] + mid * h[i];
      slope += (v > 0 ? h[i] : (v < 0 ? -h[i] : 0.0));
    }
    if (slope > 0) {
      const double s = s0 + (1.0 - f0) / slope;
      if (s <= b) return std::max(s0, s);
    }
    if (std::isinf(b)) return kInf;
    s0 = b;
    f0 = phi(b);
  }
  return kInf;
}

inline double max_step_l2(std::span<const double> x, std::span<const double> h) {
  const double a = vec::dot(h, h);
  const double b = 2.0 * vec::dot(x, h);
  const double c = vec::dot(x, x) - 1.0;
  if (a == 0.0) return kInf;
  const double sq = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
  // larger root without cancellation (c <= 0 since x is in the ball)
  const double root = b <= 0.0 ? (-b + sq) / (2.0 * a) : (2.0 * c) / (-b - sq);
  return std::max(0.0, root);
}

// Largest t in [0, cap] such that feasible(t') for all t' in [0, t] (probing grid then bisection).
template <class Pred>
double bisect_step(Pred&& feasible, bool convex) {
  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 80) return lo;
  }
  if (!convex) {
    // the feasible set need not be an interval: locate the first infeasible probe
    const int probes = 1024;
    double prev = 0.0;
    for (int i = 1; i <= probes; ++i) {
      const double t = hi * i / probes;
      if (!feasible(t)) {
        lo = prev;
        hi = t;
        break;
      }
      prev = t;
    }
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi) && hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) lo = mid;
    else hi = mid;
  }
  return lo;
}

// Largest s >= 0 with x + s h in K (convex K), or the progression-aware variant for p < 1.
inline double max_step(const ConvexBody& body, std::span<const double> x, std::span<const double> h, int m);

}  // namespace detail

/// Largest t-interval around 0 with x + t*j*h in K for every j = 0..m.
inline Interval segment_range(const ConvexBody& body, std::span<const double> x, std::span<const double> h, int m) {
  const auto d = static_cast<std::size_t>(body.ambient_dim());
  require_dim(x.size(), d, "segment_range point");
  require_dim(h.size(), d, "segment_range step");
  require(m >= 1, "invalid_argument", "segment_range needs m >= 1");
  require(vec::norm_inf(h) > 0.0, "invalid_argument", "segment_range needs h != 0");
  require(contains(body, x), "not_in_body", "segment_range: x is not in the body");
  const Vec neg = vec::scaled(h, -1.0);
  const double up = detail::max_step(body, x, h, m);
  const double down = detail::max_step(body, x, neg, m);
  return {-down, up};
}

namespace detail {

inline double max_step(const ConvexBody& body, std::span<const double> x, std::span<const double> h, int m) {
  const double tol = body.tol();
  // For convex bodies only the far end x + t*m*h matters.
  auto scaled_result = [m](double s) { return s / m; };
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, CubeKind>) {
          return scaled_result(max_step_box(x, h, 0.0, 1.0));
        } else if constexpr (std::is_same_v<K, SimplexKind>) {
          if (std::abs(vec::sum(h)) > tol) return 0.0;
          return scaled_result(max_step_box(x, h, 0.0, kInf));
        } else if constexpr (std::is_same_v<K, LpBallKind>) {
          if (std::isinf(k.p)) return scaled_result(max_step_box(x, h, -1.0, 1.0));
          if (k.p == 1.0) return scaled_result(max_step_l1(x, h));
          if (k.p == 2.0) return scaled_result(max_step_l2(x, h));
          if (k.p > 1.0) {
            return scaled_result(bisect_step(
                [&](double s) { return lp_norm(vec::axpy(x, s, h), k.p) <= 1.0; }, true));
          }
          return bisect_step(
              [&](double t) {
                for (int j = 1; j <= m; ++j)
                  if (lp_norm(vec::axpy(x, t * j, h), k.p) > 1.0 + tol) return false;
                return true;
              },
              false);
        } else if constexpr (std::is_same_v<K, ProductKind>) {
          const auto d1 = static_cast<std::size_t>(k.first->ambient_dim());
          double s = kInf;
          if (vec::norm_inf(h.subspan(0, d1)) > 0)
            s = std::min(s, max_step(*k.first, x.subspan(0, d1), h.subspan(0, d1), m));
          if (vec::norm_inf(h.subspan(d1)) > 0)
            s = std::min(s, max_step(*k.second, x.subspan(d1), h.subspan(d1), m));
          return s;
        } else {
          const bool convex = body.is_convex();
          return bisect_step(
              [&](double t) {
                if (convex) return contains(body, vec::axpy(x, t * m, h));
                for (int j = 1; j <= m; ++j)
                  if (!contains(body, vec::axpy(x, t * j, h))) return false;
                return true;
              },
              convex);
        }
      },
      body.kind());
}

}  // namespace detail

/// Pattern-search moves that stay inside the body's affine hull.
inline std::vector<Vec> search_directions(const ConvexBody& body) {
  return std::visit(
      [&](const auto& k) -> std::vector<Vec> {
        using K = std::decay_t<decltype(k)>;
        const auto d = static_cast<std::size_t>(body.ambient_dim());
        std::vector<Vec> dirs;
        if constexpr (std::is_same_v<K, SimplexKind>) {
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
              Vec v(d, 0.0);
              v[i] = 1.0;
              v[j] = -1.0;
              dirs.push_back(std::move(v));
            }
        } else if constexpr (std::is_same_v<K, ProductKind>) {
          const auto d1 = static_cast<std::size_t>(k.first->ambient_dim());
          for (const auto& v : search_directions(*k.first)) {
            Vec w(d, 0.0);
            std::copy(v.begin(), v.end(), w.begin());
            dirs.push_back(std::move(w));
          }
          for (const auto& v : search_directions(*k.second)) {
            Vec w(d, 0.0);
            std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(d1));
            dirs.push_back(std::move(w));
          }
        } else if constexpr (std::is_same_v<K, AffineKind>) {
          for (const auto& v : search_directions(*k.base)) {
            const Eigen::VectorXd w = k.matrix * Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
            dirs.emplace_back(w.data(), w.data() + w.size());
          }
        } else {
          for (std::size_t i = 0; i < d; ++i) {
            Vec v(d, 0.0);
            v[i] = 1.0;
            dirs.push_back(std::move(v));
          }
        }
        return dirs;
      },
      body.kind());
}

/// Extreme points for kinds where they are few and explicit; empty otherwise.
inline std::vector<Vec> extreme_points(const ConvexBody& body) {
  return std::visit(
      [&](const auto& k) -> std::vector<Vec> {
        using K = std::decay_t<decltype(k)>;
        std::vector<Vec> pts;
        if constexpr (std::is_same_v<K, SimplexKind>) {
          for (int i = 0; i <= k.n; ++i) {
            Vec v(static_cast<std::size_t>(k.n + 1), 0.0);
            v[static_cast<std::size_t>(i)] = 1.0;
            pts.push_back(std::move(v));
          }
        } else if constexpr (std::is_same_v<K, PolytopeKind>) {
          pts = k.vertices;
        } else if constexpr (std::is_same_v<K, CubeKind>) {
          if (k.n <= 10) detail::integer_box(k.n, 0, 1, [&](const std::vector<int>& a) { pts.emplace_back(a.begin(), a.end()); });
        } else if constexpr (std::is_same_v<K, LpBallKind>) {
          if (k.p == 1.0) {
            for (int i = 0; i < k.n; ++i)
              for (double s : {1.0, -1.0}) {
                Vec v(static_cast<std::size_t>(k.n), 0.0);
                v[static_cast<std::size_t>(i)] = s;
                pts.push_back(std::move(v));
              }
          } else if (std::isinf(k.p) && k.n <= 10) {
            detail::integer_box(k.n, -1, 1, [&](const std::vector<int>& a) {
              for (int v : a)
                if (v == 0) return;
              pts.emplace_back(a.begin(), a.end());
            });
          }
        }
        return pts;
      },
      body.kind());
}

// ---- JSON descriptors -------------------------------------------------------

inline nlohmann::json to_json(const ConvexBody& body) {
  using nlohmann::json;
  json j = std::visit(
      [](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SimplexKind>) {
          return {{"kind", "simplex"}, {"dim", k.n}};
        } else if constexpr (std::is_same_v<K, LpBallKind>) {
          json p = std::isinf(k.p) ? json("inf") : json(k.p);
          return {{"kind", "lp_ball"}, {"dim", k.n}, {"p", p}};
        } else if constexpr (std::is_same_v<K, CubeKind>) {
          return {{"kind", "cube"}, {"dim", k.n}};
        } else if constexpr (std::is_same_v<K, PolytopeKind>) {
          return {{"kind", "polytope"}, {"dim", k.n}, {"vertices", k.vertices}};
        } else if constexpr (std::is_same_v<K, ProductKind>) {
          return {{"kind", "product"}, {"factors", {to_json(*k.first), to_json(*k.second)}}};
        } else {
          std::vector<Vec> rows;
          for (Eigen::Index i = 0; i < k.matrix.rows(); ++i) {
            Vec r(static_cast<std::size_t>(k.matrix.cols()));
            for (Eigen::Index c = 0; c < k.matrix.cols(); ++c) r[static_cast<std::size_t>(c)] = k.matrix(i, c);
            rows.push_back(std::move(r));
          }
          Vec off(k.offset.data(), k.offset.data() + k.offset.size());
          return {{"kind", "affine"}, {"dim", k.matrix.rows()}, {"matrix", rows}, {"offset", off}, {"factors", {to_json(*k.base)}}};
        }
      },
      body.kind());
  if (body.tol() != 1e-12) j["tol"] = body.tol();
  return j;
}

inline ConvexBody body_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("kind"), "invalid_body", "body descriptor needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  auto dim = [&] {
    require(j.contains("dim"), "invalid_body", "body descriptor needs \"dim\"");
    return j.at("dim").get<int>();
  };
  ConvexBody body = ConvexBody::cube(1);
  if (kind == "simplex") {
    body = ConvexBody::simplex(dim());
  } else if (kind == "lp_ball" || kind == "ball") {
    double p = 2.0;
    if (j.contains("p")) {
      const auto& pj = j.at("p");
      if (pj.is_string()) {
        const auto s = pj.get<std::string>();
        require(s == "inf" || s == "infinity", "invalid_body", "p must be a number or \"inf\"");
        p = kInf;
      } else {
        p = pj.get<double>();
      }
    }
    body = ConvexBody::lp_ball(dim(), p);
  } else if (kind == "cube") {
    body = ConvexBody::cube(dim());
  } else if (kind == "polytope") {
    body = ConvexBody::polytope(j.at("vertices").get<std::vector<Vec>>());
  } else if (kind == "product") {
    const auto& f = j.at("factors");
    require(f.is_array() && f.size() == 2, "invalid_body", "product needs two factors");
    body = ConvexBody::product(body_from_json(f[0]), body_from_json(f[1]));
  } else if (kind == "affine") {
    const auto rows = j.at("matrix").get<std::vector<Vec>>();
    const auto off = j.at("offset").get<Vec>();
    require(!rows.empty(), "invalid_body", "affine matrix is empty");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      require_dim(rows[r].size(), rows[0].size(), "affine matrix row");
      for (std::size_t c = 0; c < rows[r].size(); ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(off.data(), static_cast<Eigen::Index>(off.size()));
    const auto& f = j.at("factors");
    require(f.is_array() && f.size() == 1, "invalid_body", "affine image needs one factor");
    body = ConvexBody::affine_image(body_from_json(f[0]), std::move(a), std::move(b));
  } else {
    throw Error("invalid_body", "unknown body kind \"" + kind + "\"");
  }
  if (j.contains("tol")) body = body.with_tolerance(j.at("tol").get<double>());
  return body;
}

inline bool same_body(const ConvexBody& a, const ConvexBody& b) { return to_json(a) == to_json(b); }

}  // namespace whitney
