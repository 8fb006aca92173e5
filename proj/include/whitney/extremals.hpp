#pragma once

// Extremal functions for Whitney-type constants and the dyadic splitting of
// simplex points into midpoints of sparser points.

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "whitney/bodies.hpp"
#include "whitney/common.hpp"
#include "whitney/lattice.hpp"

namespace whitney {

enum class WitnessId { entropy_simplex, entropy_l1ball, piecewise_eps, quadlog, product, zero, custom };

inline std::string to_string(WitnessId id) {
  switch (id) {
    case WitnessId::entropy_simplex: return "entropy_simplex";
    case WitnessId::entropy_l1ball: return "entropy_l1ball";
    case WitnessId::piecewise_eps: return "piecewise_eps";
    case WitnessId::quadlog: return "quadlog";
    case WitnessId::product: return "product";
    case WitnessId::zero: return "zero";
    case WitnessId::custom: return "custom";
  }
  return "unknown";
}

/// Known upper bound omega_m(f; K) <= value.
struct AnalyticOmega {
  int m = 2;
  double value = 0.0;
  std::string citation;
};

class WitnessFn;
using WitnessPtr = std::shared_ptr<const WitnessFn>;

class WitnessFn {
 public:
  /// f_n(u) = 1/2 sum u_i log2 u_i on the simplex S^n (n+1 coordinates).
  static WitnessFn entropy_simplex(int n) {
    require(n >= 1, "invalid_argument", "entropy_simplex needs n >= 1");
    WitnessFn w(WitnessId::entropy_simplex, ConvexBody::simplex(n));
    w.convex_ = true;
    w.omega_ = AnalyticOmega{2, 1.0, "second modulus of the halved simplex entropy is at most 1"};
    return w;
  }
  /// 1/2 sum x_i log2 |x_i| on the l1 ball of R^n.
  static WitnessFn entropy_l1ball(int n) {
    require(n >= 1, "invalid_argument", "entropy_l1ball needs n >= 1");
    WitnessFn w(WitnessId::entropy_l1ball, ConvexBody::lp_ball(n, 1.0));
    w.omega_ = AnalyticOmega{2, std::log2(1.0 + std::sqrt(2.0)),
                             "second modulus of the signed entropy on the l1 ball is at most log2(1+sqrt 2)"};
    return w;
  }
  /// max(1 - t/eps, 0) on [0,1].
  static WitnessFn piecewise_eps(double eps) {
    require(eps > 0.0 && eps <= 1.0, "invalid_argument", "piecewise_eps needs 0 < eps <= 1");
    WitnessFn w(WitnessId::piecewise_eps, ConvexBody::cube(1));
    w.eps_ = eps;
    w.convex_ = true;
    w.omega_ = AnalyticOmega{2, 1.0, "one-dimensional hat witness has second modulus 1"};
    return w;
  }
  /// sum x_i^2 ln |x_i| on the Euclidean ball of R^n.
  static WitnessFn quadlog(int n) {
    require(n >= 1, "invalid_argument", "quadlog needs n >= 1");
    WitnessFn w(WitnessId::quadlog, ConvexBody::lp_ball(n, 2.0));
    w.omega_ = AnalyticOmega{3, 6.0, "third modulus of the quadratic-log function on the Euclidean ball is below 6"};
    return w;
  }
  static WitnessFn zero(const ConvexBody& body) {
    WitnessFn w(WitnessId::zero, body);
    w.convex_ = true;
    w.omega_ = AnalyticOmega{2, 0.0, "zero function"};
    return w;
  }
  static WitnessFn custom(const ConvexBody& body, ScalarFn f, std::string name = "custom", bool convex = false,
                          std::optional<AnalyticOmega> omega = std::nullopt) {
    require(static_cast<bool>(f), "invalid_argument", "custom witness needs a function");
    WitnessFn w(WitnessId::custom, body);
    w.fn_ = std::move(f);
    w.name_ = std::move(name);
    w.convex_ = convex;
    w.omega_ = std::move(omega);
    return w;
  }

  WitnessId id() const { return id_; }
  std::string name() const {
    switch (id_) {
      case WitnessId::piecewise_eps: return "piecewise_eps(" + format_eps() + ")";
      case WitnessId::product: return "product(" + f1_->name() + "," + f2_->name() + ")";
      case WitnessId::custom: return name_;
      default: return to_string(id_);
    }
  }
  /// Natural body; the witness is defined there.
  const ConvexBody& body() const { return body_; }
  int dim() const { return body_.ambient_dim(); }
  double eps() const { return eps_; }
  bool convex() const { return convex_; }
  const std::optional<AnalyticOmega>& analytic_omega() const { return omega_; }
  const WitnessPtr& first() const { return f1_; }
  const WitnessPtr& second() const { return f2_; }

  /// Evaluator without membership checks (hot loops inside searches).
  ScalarFn function() const {
    switch (id_) {
      case WitnessId::entropy_simplex:
      case WitnessId::entropy_l1ball:
        return [](std::span<const double> x) {
          double s = 0.0;
          for (double v : x)
            if (v != 0.0) s += v * std::log2(std::abs(v));
          return 0.5 * s;
        };
      case WitnessId::piecewise_eps:
        return [eps = eps_](std::span<const double> x) { return std::max(1.0 - x[0] / eps, 0.0); };
      case WitnessId::quadlog:
        return [](std::span<const double> x) {
          double s = 0.0;
          for (double v : x)
            if (v != 0.0) s += v * v * std::log(std::abs(v));
          return s;
        };
      case WitnessId::product: {
        const auto d1 = static_cast<std::size_t>(f1_->dim());
        return [g1 = f1_->function(), g2 = f2_->function(), d1](std::span<const double> x) {
          return g1(x.subspan(0, d1)) - g2(x.subspan(d1));
        };
      }
      case WitnessId::zero:
        return [](std::span<const double>) { return 0.0; };
      case WitnessId::custom:
        return fn_;
    }
    return fn_;
  }

  friend WitnessFn product_witness(const WitnessFn& f1, const WitnessFn& f2);

 private:
  WitnessFn(WitnessId id, ConvexBody body) : id_(id), body_(std::move(body)) {}

  std::string format_eps() const {
    nlohmann::json j = eps_;
    return j.dump();
  }

  WitnessId id_;
  ConvexBody body_;
  double eps_ = 0.0;
  bool convex_ = false;
  std::optional<AnalyticOmega> omega_;
  WitnessPtr f1_, f2_;
  ScalarFn fn_;
  std::string name_;
};

/// g(x, y) = f1(x) - f2(y) on K1 x K2. When both factors are convex,
/// Delta^2 g = Delta^2 f1 - Delta^2 f2 is a difference of nonnegative terms,
/// so omega_2(g) <= max(omega_2(f1), omega_2(f2)); otherwise the sum bounds it.
inline WitnessFn product_witness(const WitnessFn& f1, const WitnessFn& f2) {
  WitnessFn w(WitnessId::product, ConvexBody::product(f1.body(), f2.body()));
  w.f1_ = std::make_shared<WitnessFn>(f1);
  w.f2_ = std::make_shared<WitnessFn>(f2);
  const auto& o1 = f1.analytic_omega();
  const auto& o2 = f2.analytic_omega();
  if (o1 && o2 && o1->m == 2 && o2->m == 2) {
    if (f1.convex() && f2.convex())
      w.omega_ = AnalyticOmega{2, std::max(o1->value, o2->value),
                               "difference of convex witnesses: omega_2 bounded by the larger factor bound"};
    else
      w.omega_ = AnalyticOmega{2, o1->value + o2->value, "difference of witnesses: omega_2 bounded by the sum"};
  }
  return w;
}

/// Exact formula value; throws when x is outside the natural body.
inline double eval_witness(const WitnessFn& w, std::span<const double> x) {
  require_dim(x.size(), static_cast<std::size_t>(w.dim()), "witness argument");
  require(contains(w.body(), x), "not_in_body", "witness " + w.name() + " evaluated outside its body");
  return w.function()(x);
}

inline nlohmann::json to_json(const WitnessFn& w) {
  nlohmann::json j = {{"id", to_string(w.id())}, {"dim", w.dim()}, {"name", w.name()}, {"body", to_json(w.body())}};
  if (w.id() == WitnessId::piecewise_eps) j["eps"] = w.eps();
  if (w.id() == WitnessId::product) j["factors"] = {to_json(*w.first()), to_json(*w.second())};
  if (const auto& o = w.analytic_omega())
    j["analytic_omega"] = {{"m", o->m}, {"value", o->value}, {"citation", o->citation}};
  return j;
}

/// Inverse of to_json for the named witnesses. `n` is the body parameter:
/// S^n for entropy_simplex, R^n otherwise.
inline WitnessFn witness_from_json(const nlohmann::json& j) {
  const std::string id = j.at("id").get<std::string>();
  if (id == "piecewise_eps") return WitnessFn::piecewise_eps(j.at("eps").get<double>());
  if (id == "product") {
    const auto& f = j.at("factors");
    return product_witness(witness_from_json(f.at(0)), witness_from_json(f.at(1)));
  }
  if (id == "zero") return WitnessFn::zero(body_from_json(j.at("body")));
  const int dim = j.at("dim").get<int>();
  if (id == "entropy_simplex") return WitnessFn::entropy_simplex(dim - 1);
  if (id == "entropy_l1ball") return WitnessFn::entropy_l1ball(dim);
  if (id == "quadlog") return WitnessFn::quadlog(dim);
  throw Error("invalid_config", "unknown witness id \"" + id + "\"");
}

// ---- dyadic splitting -------------------------------------------------------

template <class T>
struct DyadicSplit {
  std::vector<T> y, z;
  /// Coordinate order used (ascending values, ties by index).
  std::vector<std::size_t> order;
  /// eps_k for the pairs (order[2k], order[2k+1]).
  std::vector<int> signs;
  T a{};
};

/// Writes x in S^(2m) (2m+1 coordinates) as x = (y + z)/2 with y, z in S^(2m),
/// each having at most m+1 nonzero coordinates.
///
/// Coordinates are sorted ascending and paired, d_k = xi_(2k) - xi_(2k-1) >= 0.
/// With sigma_k = -eps_k the quantity a = sum sigma_k d_k is built greedily:
/// subtract d_k while the running sum allows it, otherwise flip every earlier
/// sign and add d_k. The running sum then stays in [0, max d_k].
template <class T>
DyadicSplit<T> dyadic_split(std::span<const T> x) {
  require(x.size() % 2 == 1, "invalid_argument", "dyadic_split needs an odd number of coordinates (a point of S^(2m))");
  const std::size_t npairs = x.size() / 2;
  DyadicSplit<T> out;
  out.order.resize(x.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](std::size_t i, std::size_t j) { return x[i] < x[j]; });

  std::vector<int> sigma(npairs, 1);
  T s{};
  for (std::size_t k = 0; k < npairs; ++k) {
    const T d = x[out.order[2 * k + 1]] - x[out.order[2 * k]];
    if (s >= d) {
      sigma[k] = -1;
      s = s - d;
    } else {
      for (std::size_t l = 0; l < k; ++l) sigma[l] = -sigma[l];
      sigma[k] = 1;
      s = d - s;
    }
  }
  out.a = s;
  out.signs.resize(npairs);
  out.y.assign(x.begin(), x.end());
  out.z.assign(x.begin(), x.end());
  const T two = T(2);
  for (std::size_t k = 0; k < npairs; ++k) {
    const int eps = -sigma[k];
    out.signs[k] = eps;
    const std::size_t lo = out.order[2 * k], hi = out.order[2 * k + 1];
    // eps = +1: y doubles the smaller coordinate and drops the larger; z the reverse.
    if (eps > 0) {
      out.y[lo] = two * x[lo];
      out.y[hi] = T(0);
      out.z[lo] = T(0);
      out.z[hi] = two * x[hi];
    } else {
      out.y[lo] = T(0);
      out.y[hi] = two * x[hi];
      out.z[lo] = two * x[lo];
      out.z[hi] = T(0);
    }
  }
  const std::size_t last = out.order.back();
  out.y[last] = x[last] - s;
  out.z[last] = x[last] + s;
  return out;
}

template <class T>
DyadicSplit<T> dyadic_split(const std::vector<T>& x) {
  return dyadic_split<T>(std::span<const T>(x));
}

}  // namespace whitney
