#pragma once

// Best uniform approximation on finite point sets.
//
// The minimax problem  min_c max_i |f_i - sum_a c_a phi_a(x_i)|  is solved
// through its LP dual
//
//     max  sum_i f_i (lam_i - mu_i)
//     s.t. sum_i phi_a(x_i) (lam_i - mu_i) = 0   for every basis function a,
//          sum_i (lam_i + mu_i) = 1,   lam, mu >= 0,
//
// which has only (basis size + 1) rows. The simplex multipliers of the moment
// rows are the polynomial coefficients, and the multiplier of the last row is
// the minimax error. The optimal basic (lam, mu) is a signed discrete measure
// annihilating the basis: for the affine basis it is exactly the pair of
// convex combinations with equal barycenters that certifies the error.

#include <Eigen/Dense>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "whitney/bodies.hpp"
#include "whitney/common.hpp"
#include "whitney/lp.hpp"
#include "whitney/polys.hpp"

namespace whitney {

struct MinimaxOptions {
  /// |residual| >= error - active_tol marks a point active.
  double active_tol = 1e-9;
  double rank_tol = 1e-10;
  lp::Options lp;
};

struct SignedAtom {
  std::size_t index;  // point index
  double weight;      // raw LP weight (each side sums to 1/2)
};

struct MinimaxResult {
  Poly coeffs;
  double error = 0.0;
  /// LP optimum t*; `error` is the measured max residual of `coeffs`.
  double lp_value = 0.0;
  std::vector<std::size_t> active_points;
  int iterations = 0;
  std::vector<SignedAtom> plus;
  std::vector<SignedAtom> minus;
  std::vector<MultiIndex> basis;
};

namespace detail {

// Columns of the dual: j < N is lam_j with [phi(x_j); 1], j >= N is mu_{j-N} with [-phi(x_j); 1].
struct MinimaxColumns {
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>& phi;  // N x k
  std::span<const double> f;

  std::size_t npts() const { return static_cast<std::size_t>(phi.rows()); }
  std::size_t rows() const { return static_cast<std::size_t>(phi.cols()) + 1; }
  std::size_t cols() const { return 2 * npts(); }
  double cost(std::size_t j) const { return j < npts() ? f[j] : -f[j - npts()]; }
  void column(std::size_t j, Eigen::VectorXd& out) const {
    const std::size_t i = j < npts() ? j : j - npts();
    const double s = j < npts() ? 1.0 : -1.0;
    out.resize(static_cast<Eigen::Index>(rows()));
    out.head(phi.cols()) = s * phi.row(static_cast<Eigen::Index>(i)).transpose();
    out(phi.cols()) = 1.0;
  }
  void reduced_costs(const Eigen::VectorXd& y, std::span<double> reduced, bool with_cost) const {
    const Eigen::VectorXd v = phi * y.head(phi.cols());
    const double yt = y(phi.cols());
    const std::size_t n = npts();
    for (std::size_t i = 0; i < n; ++i) {
      const double vi = v(static_cast<Eigen::Index>(i));
      reduced[i] = (with_cost ? f[i] : 0.0) - (vi + yt);
      reduced[n + i] = (with_cost ? -f[i] : 0.0) - (-vi + yt);
    }
  }
};

}  // namespace detail

/// Best sup-norm approximation of `values` on `points` from span(basis).
inline MinimaxResult best_minimax(std::span<const Vec> points, std::span<const double> values,
                                  const std::vector<MultiIndex>& basis, const MinimaxOptions& opt = {}) {
  require(!points.empty(), "invalid_argument", "best_minimax needs at least one point");
  require(!basis.empty(), "invalid_argument", "best_minimax needs a nonempty basis");
  require_dim(values.size(), points.size(), "best_minimax values");
  const auto dim = points.front().size();
  int max_deg = 0;
  for (const auto& a : basis) {
    require_dim(a.size(), dim, "basis multi-index");
    max_deg = std::max(max_deg, total_degree(a));
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd full(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    require_dim(points[static_cast<std::size_t>(i)].size(), dim, "best_minimax point");
    for (Eigen::Index a = 0; a < k; ++a)
      full(i, a) = monomial(basis[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(i)]);
  }

  // Keep a maximal independent subset of basis columns on this point set.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(full);
  qr.setThreshold(opt.rank_tol);
  const Eigen::Index rank = std::max<Eigen::Index>(qr.rank(), 1);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index r = 0; r < rank; ++r) kept.push_back(qr.colsPermutation().indices()(r));
  std::sort(kept.begin(), kept.end());
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> phi(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) phi.col(static_cast<Eigen::Index>(c)) = full.col(kept[c]);

  detail::MinimaxColumns cols{phi, values};
  Eigen::VectorXd b = Eigen::VectorXd::Zero(phi.cols() + 1);
  b(phi.cols()) = 1.0;
  const lp::Solution sol = lp::solve(cols, b, opt.lp);
  require(sol.status == lp::Status::optimal, "lp_failure", "minimax LP did not reach optimality");

  MinimaxResult res;
  res.basis = basis;
  res.iterations = sol.iterations;
  res.lp_value = sol.objective;
  res.coeffs = Poly(static_cast<int>(dim), max_deg);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k);
  for (std::size_t j = 0; j < kept.size(); ++j) c(kept[j]) = sol.duals(static_cast<Eigen::Index>(j));
  for (Eigen::Index a = 0; a < k; ++a) res.coeffs.add(basis[static_cast<std::size_t>(a)], c(a));

  const Eigen::VectorXd fitted = full * c;
  Vec resid(points.size());
  double err = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    resid[i] = values[i] - fitted(static_cast<Eigen::Index>(i));
    err = std::max(err, std::abs(resid[i]));
  }
  res.error = err;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(resid[i]) >= err - opt.active_tol * (1.0 + err)) res.active_points.push_back(i);
  for (const auto& [j, w] : sol.primal) {
    if (j < points.size()) res.plus.push_back({j, w});
    else res.minus.push_back({j - points.size(), w});
  }
  return res;
}

inline MinimaxResult best_minimax(const PointSet& pts, std::span<const double> values,
                                  const std::vector<MultiIndex>& basis, const MinimaxOptions& opt = {}) {
  return best_minimax(std::span<const Vec>(pts.points), values, basis, opt);
}

/// Two convex combinations with equal barycenters; value = (sum a f(x) - sum b f(y)) / 2.
struct DualCertificate {
  std::vector<std::pair<Vec, double>> plus;
  std::vector<std::pair<Vec, double>> minus;
  std::vector<std::size_t> plus_index;
  std::vector<std::size_t> minus_index;
  double value = 0.0;

  std::size_t support() const { return plus.size() + minus.size(); }

  /// max |sum a_i x_i - sum b_j y_j|
  double barycenter_gap() const {
    if (plus.empty() || minus.empty()) return 0.0;
    Vec g(plus.front().first.size(), 0.0);
    for (const auto& [x, a] : plus)
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += a * x[i];
    for (const auto& [y, b] : minus)
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= b * y[i];
    return vec::norm_inf(g);
  }
};

/// Reduce a signed measure (atoms with sign +-1, positive weights) that satisfies
///   sum_{+} w = sum_{-} w = 1,   sum_k s_k w_k z_k = 0
/// to at most rank(constraints) atoms by moving along null-space directions of
/// the constraint matrix until a weight vanishes. The direction is oriented so
/// that sum_k s_k w_k v_k (v = values) never decreases.
inline void caratheodory_reduce(const std::vector<Vec>& coords, const std::vector<int>& sign,
                                std::span<const double> values, std::vector<double>& weight) {
  const std::size_t natoms = coords.size();
  if (natoms == 0) return;
  const std::size_t d = coords.front().size();
  std::vector<std::size_t> alive;
  for (std::size_t k = 0; k < natoms; ++k)
    if (weight[k] > 0.0) alive.push_back(k);
  for (;;) {
    const auto na = static_cast<Eigen::Index>(alive.size());
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d) + 2, na);
    for (Eigen::Index c = 0; c < na; ++c) {
      const std::size_t k = alive[static_cast<std::size_t>(c)];
      for (std::size_t i = 0; i < d; ++i) m(static_cast<Eigen::Index>(i), c) = sign[k] * coords[k][i];
      m(static_cast<Eigen::Index>(d), c) = sign[k] > 0 ? 1.0 : 0.0;
      m(static_cast<Eigen::Index>(d) + 1, c) = sign[k] < 0 ? 1.0 : 0.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() >= na) return;
    Eigen::VectorXd v = lu.kernel().col(0);
    double gain = 0.0;
    for (Eigen::Index c = 0; c < na; ++c) {
      const std::size_t k = alive[static_cast<std::size_t>(c)];
      gain += sign[k] * v(c) * values[k];
    }
    if (gain < 0.0) v = -v;
    // largest step keeping weights nonnegative: w + tau v >= 0
    double tau = kInf;
    Eigen::Index hit = -1;
    for (Eigen::Index c = 0; c < na; ++c)
      if (v(c) < -1e-14) {
        const double t = weight[alive[static_cast<std::size_t>(c)]] / -v(c);
        if (t < tau) {
          tau = t;
          hit = c;
        }
      }
    if (hit < 0) return;  // kernel direction without a negative entry: nothing to remove
    for (Eigen::Index c = 0; c < na; ++c) {
      auto& w = weight[alive[static_cast<std::size_t>(c)]];
      w = std::max(0.0, w + tau * v(c));
    }
    weight[alive[static_cast<std::size_t>(hit)]] = 0.0;
    std::vector<std::size_t> next;
    for (std::size_t k : alive)
      if (weight[k] > 1e-15) next.push_back(k);
      else weight[k] = 0.0;
    alive.swap(next);
  }
}

/// Affine-case certificate from the LP dual, reduced to at most n+2 atoms.
inline DualCertificate dual_certificate(const MinimaxResult& result, std::span<const Vec> points,
                                        std::span<const double> values) {
  for (const auto& a : result.basis)
    require(total_degree(a) <= 1, "invalid_argument", "dual_certificate is defined for the affine basis only");
  DualCertificate cert;
  if (result.error <= 1e-12 || result.plus.empty() || result.minus.empty()) return cert;

  std::vector<Vec> coords;
  std::vector<int> sign;
  std::vector<double> weight;
  std::vector<double> vals;
  std::vector<std::size_t> index;
  auto push = [&](const SignedAtom& atom, int s) {
    coords.push_back(points[atom.index]);
    sign.push_back(s);
    weight.push_back(2.0 * atom.weight);
    vals.push_back(values[atom.index]);
    index.push_back(atom.index);
  };
  for (const auto& a : result.plus) push(a, +1);
  for (const auto& a : result.minus) push(a, -1);
  caratheodory_reduce(coords, sign, vals, weight);

  double sp = 0.0, sm = 0.0;
  for (std::size_t k = 0; k < weight.size(); ++k) (sign[k] > 0 ? sp : sm) += weight[k];
  for (std::size_t k = 0; k < weight.size(); ++k) {
    if (weight[k] <= 0.0) continue;
    if (sign[k] > 0) {
      cert.plus.emplace_back(coords[k], weight[k] / sp);
      cert.plus_index.push_back(index[k]);
    } else {
      cert.minus.emplace_back(coords[k], weight[k] / sm);
      cert.minus_index.push_back(index[k]);
    }
  }
  double v = 0.0;
  for (std::size_t k = 0; k < cert.plus.size(); ++k) v += cert.plus[k].second * values[cert.plus_index[k]];
  for (std::size_t k = 0; k < cert.minus.size(); ++k) v -= cert.minus[k].second * values[cert.minus_index[k]];
  cert.value = 0.5 * v;
  return cert;
}

inline DualCertificate dual_certificate(const MinimaxResult& result, const PointSet& pts,
                                        std::span<const double> values) {
  return dual_certificate(result, std::span<const Vec>(pts.points), values);
}

/// Grid E_m(f; K): best approximation from P_{m-1} on sample_grid(body, resolution).
inline MinimaxResult e_m_on_body(const ScalarFn& f, const ConvexBody& body, int m, int resolution,
                                 const MinimaxOptions& opt = {}) {
  require(m >= 1, "invalid_argument", "E_m needs m >= 1");
  const PointSet grid = sample_grid(body, resolution);
  Vec values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid.points[i]);
  return best_minimax(grid, values, monomial_basis(grid.dim, m - 1), opt);
}

// ---- CSV / JSON --------------------------------------------------------------

struct SampleTable {
  std::vector<Vec> points;
  Vec values;
};

/// Reads columns x1..xn,f (header row required).
inline SampleTable read_samples_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "invalid_input", "CSV input is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(std::remove_if(cell.begin(), cell.end(), [](unsigned char c) { return std::isspace(c); }), cell.end());
      header.push_back(cell);
    }
  }
  require(header.size() >= 2 && header.back() == "f", "invalid_input", "CSV header must be x1,...,xn,f");
  for (std::size_t i = 0; i + 1 < header.size(); ++i)
    require(header[i] == "x" + std::to_string(i + 1), "invalid_input", "CSV header must be x1,...,xn,f");
  SampleTable t;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    Vec vals;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error("invalid_input", "CSV row " + std::to_string(row) + ": bad number \"" + cell + "\"");
      }
    }
    require(vals.size() == header.size(), "invalid_input", "CSV row " + std::to_string(row) + " has the wrong column count");
    t.values.push_back(vals.back());
    vals.pop_back();
    t.points.push_back(std::move(vals));
  }
  require(!t.points.empty(), "invalid_input", "CSV input has no data rows");
  return t;
}

inline nlohmann::json to_json(const DualCertificate& c) {
  nlohmann::json plus = nlohmann::json::array(), minus = nlohmann::json::array();
  for (const auto& [x, a] : c.plus) plus.push_back({{"x", x}, {"a", a}});
  for (const auto& [y, b] : c.minus) minus.push_back({{"y", y}, {"b", b}});
  return {{"plus", plus}, {"minus", minus}, {"value", c.value}};
}

inline nlohmann::json to_json(const MinimaxResult& r, const DualCertificate* cert = nullptr) {
  nlohmann::json j = {{"error", r.error}, {"lp_value", r.lp_value}, {"iterations", r.iterations},
                      {"active_points", r.active_points}, {"coeffs", to_json(r.coeffs)}};
  j["certificate"] = cert ? to_json(*cert) : nlohmann::json(nullptr);
  return j;
}

}  // namespace whitney
