#pragma once

#include <Eigen/Dense>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "whitney/common.hpp"

namespace whitney {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

/// Multi-indices of total degree <= max_total_degree in graded-lex order:
/// by degree, then lexicographically descending ((1,0) before (0,1)).
inline std::vector<MultiIndex> monomial_basis(int dim, int max_total_degree) {
  require(dim >= 1, "invalid_argument", "monomial_basis needs dim >= 1");
  require(max_total_degree >= 0, "invalid_argument", "monomial_basis needs degree >= 0");
  std::vector<MultiIndex> out;
  MultiIndex cur;
  auto rec = [&](auto&& self, int parts, int total) -> void {
    if (parts == 1) {
      cur.push_back(total);
      out.push_back(cur);
      cur.pop_back();
      return;
    }
    for (int first = total; first >= 0; --first) {
      cur.push_back(first);
      self(self, parts - 1, total - first);
      cur.pop_back();
    }
  };
  for (int d = 0; d <= max_total_degree; ++d) rec(rec, dim, d);
  return out;
}

inline double monomial(const MultiIndex& alpha, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int e = 0; e < alpha[i]; ++e) v *= x[i];
  return v;
}

/// Dense polynomial over monomial_basis(dim, max_total_degree).
class Poly {
 public:
  Poly() = default;
  Poly(int dim, int max_total_degree)
      : dim_(dim), degree_(max_total_degree), basis_(monomial_basis(dim, max_total_degree)),
        coeffs_(basis_.size(), 0.0) {}

  int dim() const { return dim_; }
  int max_total_degree() const { return degree_; }
  const std::vector<MultiIndex>& basis() const { return basis_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  std::size_t index_of(const MultiIndex& alpha) const {
    require_dim(alpha.size(), static_cast<std::size_t>(dim_), "multi-index");
    require(total_degree(alpha) <= degree_, "invalid_argument", "multi-index exceeds the polynomial's degree");
    const auto it = std::find(basis_.begin(), basis_.end(), alpha);
    return static_cast<std::size_t>(it - basis_.begin());
  }

  double coeff(const MultiIndex& alpha) const { return coeffs_[index_of(alpha)]; }
  void set(const MultiIndex& alpha, double c) { coeffs_[index_of(alpha)] = c; }
  void add(const MultiIndex& alpha, double c) { coeffs_[index_of(alpha)] += c; }

  double operator()(std::span<const double> x) const {
    require_dim(x.size(), static_cast<std::size_t>(dim_), "poly eval");
    double s = 0.0;
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (coeffs_[k] != 0.0) s += coeffs_[k] * monomial(basis_[k], x);
    return s;
  }

 private:
  int dim_ = 1;
  int degree_ = 0;
  std::vector<MultiIndex> basis_ = {{0}};
  std::vector<double> coeffs_ = {0.0};
};

inline double eval(const Poly& p, std::span<const double> x) { return p(x); }

inline nlohmann::json to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t k = 0; k < p.basis().size(); ++k)
    if (p.coeffs()[k] != 0.0) terms.push_back({{"alpha", p.basis()[k]}, {"c", p.coeffs()[k]}});
  return {{"dim", p.dim()}, {"degree", p.max_total_degree()}, {"terms", terms}};
}

inline Poly poly_from_json(const nlohmann::json& j) {
  Poly p(j.at("dim").get<int>(), j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) p.add(t.at("alpha").get<MultiIndex>(), t.at("c").get<double>());
  return p;
}

/// Coefficients c[i][j-1] with phi^(i)(0)/i! = sum_j c[i][j-1] phi(j/m) for
/// every univariate phi of degree <= m-1.
struct HomogenizationMatrix {
  int m = 1;
  Eigen::MatrixXd c;

  /// max |sum_j c_ij (j/m)^k - delta_ik| over 0 <= i,k <= m-1.
  double residual() const {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int j = 1; j <= m; ++j) s += c(i, j - 1) * std::pow(static_cast<double>(j) / m, k);
        worst = std::max(worst, std::abs(s - (i == k ? 1.0 : 0.0)));
      }
    return worst;
  }
};

inline HomogenizationMatrix homogenization_coeffs(int m) {
  require(m >= 1, "invalid_argument", "homogenization_coeffs needs m >= 1");
  // vt(j-1, k) = (j/m)^k; c * vt = I.
  Eigen::MatrixXd vt(m, m);
  for (int j = 1; j <= m; ++j)
    for (int k = 0; k < m; ++k) vt(j - 1, k) = std::pow(static_cast<double>(j) / m, k);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(vt.transpose());
  // c^T solves vt^T c^T = I
  const Eigen::MatrixXd ct = lu.solve(Eigen::MatrixXd::Identity(m, m));
  return {m, ct.transpose()};
}

/// psi(x) = sum_j c_{k,j} f(j x / m): the degree-k homogeneous part when f is in P_{m-1}.
inline ScalarFn homogeneous_component(ScalarFn f, int k, int m) {
  require(m >= 1 && k >= 0 && k <= m - 1, "invalid_argument", "homogeneous_component needs 0 <= k <= m-1");
  const HomogenizationMatrix h = homogenization_coeffs(m);
  Vec row(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] = h.c(k, j);
  return [f = std::move(f), row, m](std::span<const double> x) {
    double s = 0.0;
    Vec y(x.size());
    for (int j = 1; j <= m; ++j) {
      const double t = static_cast<double>(j) / m;
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = t * x[i];
      s += row[static_cast<std::size_t>(j - 1)] * f(y);
    }
    return s;
  };
}

}  // namespace whitney
