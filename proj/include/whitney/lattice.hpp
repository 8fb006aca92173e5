#pragma once

// Norms on R^d that are lattice norms (|x| <= |y| coordinatewise implies
// ||x|| <= ||y||) and their indicator functions
//
//   Phi_X(u) = sup_{||x|| <= 1} sum_i u_i log2 |x_i|,   u in the simplex.
//
// Closed forms exist for weighted l_p norms and for Calderon products of
// them; arbitrary monotone norms go through a numerical maximization in log
// coordinates.

#include <Eigen/Dense>

#include "json.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include "whitney/bodies.hpp"
#include "whitney/common.hpp"
#include "whitney/optimize.hpp"

namespace whitney {

class LatticeNorm;
using LatticePtr = std::shared_ptr<const LatticeNorm>;
using NormFn = std::function<double(std::span<const double>)>;

/// ||x|| = (sum_i (a_i |x_i|)^p)^(1/p); p = inf gives max_i a_i |x_i|.
struct LpWeighted {
  double p = 2.0;
  Vec a;
};

/// X0^(1-theta) X1^theta
struct Calderon {
  LatticePtr x0, x1;
  double theta = 0.5;
};

/// Arbitrary monotone norm; `dual` is optional and only needed for duality residuals.
struct OracleNorm {
  NormFn norm;
  NormFn dual;
};

class LatticeNorm {
 public:
  using Kind = std::variant<LpWeighted, Calderon, OracleNorm>;

  static LatticeNorm lp(int dim, double p, Vec weights = {}) {
    require(dim >= 1, "invalid_argument", "lattice dimension must be >= 1");
    require(p >= 1.0, "invalid_argument", "weighted l_p lattice needs p >= 1");
    if (weights.empty()) weights.assign(static_cast<std::size_t>(dim), 1.0);
    require_dim(weights.size(), static_cast<std::size_t>(dim), "lattice weights");
    for (double w : weights) require(w > 0.0 && std::isfinite(w), "invalid_argument", "lattice weights must be positive");
    return LatticeNorm(dim, LpWeighted{p, std::move(weights)});
  }
  static LatticeNorm calderon(const LatticeNorm& x0, const LatticeNorm& x1, double theta) {
    require(theta > 0.0 && theta < 1.0, "invalid_argument", "Calderon theta must lie in (0,1)");
    require(x0.dim() == x1.dim(), "dimension_mismatch", "Calderon factors must have equal dimension");
    return LatticeNorm(x0.dim(), Calderon{std::make_shared<LatticeNorm>(x0), std::make_shared<LatticeNorm>(x1), theta});
  }
  static LatticeNorm oracle(int dim, NormFn norm, NormFn dual = {}) {
    require(dim >= 1, "invalid_argument", "lattice dimension must be >= 1");
    require(static_cast<bool>(norm), "invalid_argument", "oracle lattice needs a norm evaluator");
    return LatticeNorm(dim, OracleNorm{std::move(norm), std::move(dual)});
  }

  int dim() const { return dim_; }
  const Kind& kind() const { return kind_; }

 private:
  LatticeNorm(int dim, Kind kind) : dim_(dim), kind_(std::move(kind)) {}
  int dim_;
  Kind kind_;
};

/// Lambda(u) = sum u_i log2 u_i with 0 log 0 = 0.
inline double entropy_lambda(std::span<const double> u) {
  double s = 0.0;
  for (double v : u)
    if (v > 0.0) s += v * std::log2(v);
  return s;
}

inline void require_simplex_point(std::span<const double> u, double tol = 1e-9) {
  double s = 0.0;
  for (double v : u) {
    require(v >= -tol, "not_in_body", "u must have nonnegative coordinates");
    s += v;
  }
  require(std::abs(s - 1.0) <= tol, "not_in_body", "u must sum to 1");
}

struct CalderonOptions {
  int restarts = 4;
  std::uint64_t seed = 11;
};

inline double lattice_norm(const LatticeNorm& X, std::span<const double> x);

/// inf { ||x0||_0^(1-theta) ||x1||_1^theta : |x| = |x0|^(1-theta) |x1|^theta }.
/// Free parameters are the per-coordinate log-splits s_i with
/// |x0_i| = |x_i| e^(theta s_i), |x1_i| = |x_i| e^(-(1-theta) s_i).
inline double calderon_norm(std::span<const double> x, const LatticeNorm& n0, const LatticeNorm& n1, double theta,
                            const CalderonOptions& opt = {}) {
  require(theta > 0.0 && theta < 1.0, "invalid_argument", "Calderon theta must lie in (0,1)");
  require_dim(x.size(), static_cast<std::size_t>(n0.dim()), "calderon_norm vector");
  require_dim(x.size(), static_cast<std::size_t>(n1.dim()), "calderon_norm vector");
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) supp.push_back(i);
  if (supp.empty()) return 0.0;
  // Weighted l_inf endpoint: by monotonicity the optimal factor saturates it,
  // |x1_i| = 1/b_i, leaving ||(|x_i| b_i^theta)^(1/(1-theta))||_0^(1-theta).
  auto linf_weights = [](const LatticeNorm& n) -> const Vec* {
    const auto* k = std::get_if<LpWeighted>(&n.kind());
    return k && std::isinf(k->p) ? &k->a : nullptr;
  };
  if (const Vec* b = linf_weights(n1)) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(std::abs(x[i]) * std::pow((*b)[i], theta), 1.0 / (1.0 - theta));
    return std::pow(lattice_norm(n0, y), 1.0 - theta);
  }
  if (linf_weights(n0)) return calderon_norm(x, n1, n0, 1.0 - theta, opt);
  Vec ax(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) ax[i] = std::abs(x[i]);
  const auto k = static_cast<Eigen::Index>(supp.size());
  Vec x0(x.size(), 0.0), x1(x.size(), 0.0);
  auto objective = [&](const Eigen::VectorXd& s) {
    for (Eigen::Index c = 0; c < k; ++c) {
      const std::size_t i = supp[static_cast<std::size_t>(c)];
      x0[i] = ax[i] * std::exp(theta * s(c));
      x1[i] = ax[i] * std::exp(-(1.0 - theta) * s(c));
    }
    return (1.0 - theta) * std::log(lattice_norm(n0, x0)) + theta * std::log(lattice_norm(n1, x1));
  };
  opt::BfgsOptions bo;
  bo.fd_step = 1e-5;
  double best = objective(Eigen::VectorXd::Zero(k));
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    Eigen::VectorXd start = Eigen::VectorXd::Zero(k);
    if (r > 0) {
      Rng rng(opt.seed, static_cast<std::uint64_t>(r));
      for (Eigen::Index c = 0; c < k; ++c) start(c) = rng.normal();
    }
    best = std::min(best, opt::bfgs_minimize(objective, start, bo).value);
  }
  return std::exp(best);
}

inline double lattice_norm(const LatticeNorm& X, std::span<const double> x) {
  require_dim(x.size(), static_cast<std::size_t>(X.dim()), "lattice norm argument");
  return std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LpWeighted>) {
          Vec y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) y[i] = k.a[i] * x[i];
          return lp_norm(y, k.p);
        } else if constexpr (std::is_same_v<K, Calderon>) {
          return calderon_norm(x, *k.x0, *k.x1, k.theta);
        } else {
          return k.norm(x);
        }
      },
      X.kind());
}

/// Dual lattice: l_q(1/a) for l_p(a); the Calderon product of the duals; the
/// supplied dual evaluator for oracle norms.
inline LatticeNorm dual_lattice(const LatticeNorm& X) {
  return std::visit(
      [&](const auto& k) -> LatticeNorm {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LpWeighted>) {
          const double q = std::isinf(k.p) ? 1.0 : (k.p == 1.0 ? kInf : k.p / (k.p - 1.0));
          Vec inv(k.a.size());
          for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / k.a[i];
          return LatticeNorm::lp(X.dim(), q, inv);
        } else if constexpr (std::is_same_v<K, Calderon>) {
          return LatticeNorm::calderon(dual_lattice(*k.x0), dual_lattice(*k.x1), k.theta);
        } else {
          require(static_cast<bool>(k.dual), "missing_dual", "oracle lattice has no dual-norm evaluator");
          return LatticeNorm::oracle(X.dim(), k.dual, k.norm);
        }
      },
      X.kind());
}

struct IndicatorOptions {
  int restarts = 64;
  std::uint64_t seed = 5;
  /// Reported optimizer tolerance for numerical indicators.
  double tolerance = 1e-7;
};

struct IndicatorValue {
  double value = 0.0;
  bool exact = true;
  /// Optimizer tolerance when !exact (the value is a lower estimate).
  double tolerance = 0.0;
};

/// Numerical sup over the unit sphere restricted to the positive orthant.
/// With x_i = exp(s_i) on supp(u) and 0 elsewhere, the objective
/// sum u_i log2 x_i - log2 ||x|| is scale invariant, so no projection is needed.
inline IndicatorValue indicator_numeric(std::span<const double> u, const NormFn& norm, const IndicatorOptions& opt = {}) {
  require_simplex_point(u);
  std::vector<std::size_t> supp;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > 0.0) supp.push_back(i);
  const auto k = static_cast<Eigen::Index>(supp.size());
  Vec x(u.size(), 0.0);
  auto neg = [&](const Eigen::VectorXd& s) {
    double lin = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) {
      const std::size_t i = supp[static_cast<std::size_t>(c)];
      x[i] = std::exp(s(c));
      lin += u[i] * s(c);
    }
    return -(lin / std::numbers::ln2 - std::log2(norm(x)));
  };
  opt::BfgsOptions bo;
  bo.fd_step = 1e-5;
  double best = kInf;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    Eigen::VectorXd start = Eigen::VectorXd::Zero(k);
    if (r > 0) {
      Rng rng(opt.seed, static_cast<std::uint64_t>(r));
      for (Eigen::Index c = 0; c < k; ++c) start(c) = rng.normal();
    }
    best = std::min(best, opt::bfgs_minimize(neg, start, bo).value);
  }
  return {-best, false, opt.tolerance};
}

inline IndicatorValue indicator_value(std::span<const double> u, const LatticeNorm& X, const IndicatorOptions& opt = {}) {
  require_dim(u.size(), static_cast<std::size_t>(X.dim()), "indicator argument");
  require_simplex_point(u);
  return std::visit(
      [&](const auto& k) -> IndicatorValue {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LpWeighted>) {
          double s = 0.0;
          for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] > 0.0) s += u[i] * std::log2(k.a[i]);
          const double scale = std::isinf(k.p) ? 0.0 : 1.0 / k.p;
          return {scale * entropy_lambda(u) - s, true, 0.0};
        } else if constexpr (std::is_same_v<K, Calderon>) {
          const auto a = indicator_value(u, *k.x0, opt);
          const auto b = indicator_value(u, *k.x1, opt);
          return {(1.0 - k.theta) * a.value + k.theta * b.value, a.exact && b.exact, std::max(a.tolerance, b.tolerance)};
        } else {
          return indicator_numeric(u, k.norm, opt);
        }
      },
      X.kind());
}

inline double indicator(std::span<const double> u, const LatticeNorm& X, const IndicatorOptions& opt = {}) {
  return indicator_value(u, X, opt).value;
}

/// Phi_X(u) + Phi_X*(u) - Lambda(u)
inline double lozanovskii_residual(std::span<const double> u, const LatticeNorm& X, const IndicatorOptions& opt = {}) {
  const LatticeNorm Xs = dual_lattice(X);
  return indicator(u, X, opt) + indicator(u, Xs, opt) - entropy_lambda(u);
}

/// Largest violations of positive homogeneity and lattice monotonicity on random samples.
struct LatticeCheck {
  double homogeneity = 0.0;
  double monotonicity = 0.0;
};

inline LatticeCheck check_lattice(const LatticeNorm& X, int samples, std::uint64_t seed) {
  LatticeCheck out;
  const auto d = static_cast<std::size_t>(X.dim());
  for (int t = 0; t < samples; ++t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    Vec x(d), y(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = rng.normal();
      y[i] = (x[i] < 0 ? -1.0 : 1.0) * std::abs(x[i]) * (1.0 + rng.uniform());
    }
    const double c = rng.uniform(0.1, 5.0);
    const double nx = lattice_norm(X, x);
    out.homogeneity = std::max(out.homogeneity, std::abs(lattice_norm(X, vec::scaled(x, c)) - c * nx) / (c * nx));
    out.monotonicity = std::max(out.monotonicity, nx - lattice_norm(X, y));
  }
  return out;
}

inline nlohmann::json to_json(const LatticeNorm& X) {
  return std::visit(
      [&](const auto& k) -> nlohmann::json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LpWeighted>) {
          nlohmann::json p = std::isinf(k.p) ? nlohmann::json("inf") : nlohmann::json(k.p);
          return {{"kind", "lp"}, {"dim", X.dim()}, {"p", p}, {"weights", k.a}};
        } else if constexpr (std::is_same_v<K, Calderon>) {
          return {{"kind", "calderon"}, {"dim", X.dim()}, {"theta", k.theta}, {"x0", to_json(*k.x0)}, {"x1", to_json(*k.x1)}};
        } else {
          return {{"kind", "oracle"}, {"dim", X.dim()}};
        }
      },
      X.kind());
}

inline LatticeNorm lattice_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "lp") {
    const auto& pj = j.at("p");
    const double p = pj.is_string() ? kInf : pj.get<double>();
    Vec w = j.contains("weights") ? j.at("weights").get<Vec>() : Vec{};
    return LatticeNorm::lp(j.at("dim").get<int>(), p, std::move(w));
  }
  if (kind == "calderon")
    return LatticeNorm::calderon(lattice_from_json(j.at("x0")), lattice_from_json(j.at("x1")), j.at("theta").get<double>());
  throw Error("invalid_config", "lattice kind \"" + kind + "\" cannot be built from JSON");
}

}  // namespace whitney
