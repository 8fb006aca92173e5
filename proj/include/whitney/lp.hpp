#pragma once

// Revised primal simplex for standard-form programs
//
//     maximize  c^T y   subject to  A y = b,  y >= 0,
//
// with few rows and possibly very many columns. Columns come from a
// ColumnSource so callers can generate them on the fly; pricing is batched
// through the source for speed. Phase 1 starts from an artificial identity
// basis. Pricing is Dantzig (largest reduced cost) until a run of degenerate
// pivots is seen, after which Bland's rule is used for the rest of the solve.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "whitney/common.hpp"

namespace whitney::lp {

template <class S>
concept ColumnSource = requires(const S& s, std::size_t j, Eigen::VectorXd& out, const Eigen::VectorXd& y,
                                std::span<double> reduced, bool with_cost) {
  { s.rows() } -> std::convertible_to<std::size_t>;
  { s.cols() } -> std::convertible_to<std::size_t>;
  { s.cost(j) } -> std::convertible_to<double>;
  s.column(j, out);
  // reduced[j] = (with_cost ? cost(j) : 0) - y . A_j for every column j
  s.reduced_costs(y, reduced, with_cost);
};

struct Options {
  double optimality_tol = 1e-11;
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  int max_iterations = 200000;
  int refactor_every = 32;
  int degenerate_run_for_bland = 64;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::iteration_limit;
  double objective = 0.0;
  /// Nonzero original variables (column index, value).
  std::vector<std::pair<std::size_t, double>> primal;
  /// Simplex multipliers y = B^{-T} c_B at the final basis.
  Eigen::VectorXd duals;
  int iterations = 0;
  bool bland = false;
  /// Phase-1 infeasibility (sum of artificials) when status == infeasible.
  double infeasibility = 0.0;
};

/// Dense (A, c) pair.
struct DenseColumns {
  Eigen::MatrixXd a;
  Eigen::VectorXd c;

  std::size_t rows() const { return static_cast<std::size_t>(a.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(a.cols()); }
  double cost(std::size_t j) const { return c.size() ? c(static_cast<Eigen::Index>(j)) : 0.0; }
  void column(std::size_t j, Eigen::VectorXd& out) const { out = a.col(static_cast<Eigen::Index>(j)); }
  void reduced_costs(const Eigen::VectorXd& y, std::span<double> reduced, bool with_cost) const {
    const Eigen::VectorXd ya = a.transpose() * y;
    for (std::size_t j = 0; j < cols(); ++j)
      reduced[j] = (with_cost ? cost(j) : 0.0) - ya(static_cast<Eigen::Index>(j));
  }
};

namespace detail {

template <ColumnSource S>
class Simplex {
 public:
  Simplex(const S& source, const Eigen::VectorXd& b, const Options& opt)
      : src_(source), b_(b), opt_(opt), m_(source.rows()), n_(source.cols()) {
    sign_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) sign_[i] = b_(idx(i)) < 0 ? -1.0 : 1.0;
    basis_.resize(m_);
    is_basic_.assign(n_ + m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = true;
    }
    reduced_.resize(n_);
    refactor();
  }

  Solution solve() {
    Solution out;
    phase_ = 1;
    Status s = iterate();
    double infeas = 0.0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n_) infeas += std::max(0.0, xb_(idx(i)));
    if (s == Status::iteration_limit) {
      out.status = s;
      return out;
    }
    const double scale = 1.0 + b_.cwiseAbs().maxCoeff();
    if (infeas > opt_.feasibility_tol * scale) {
      out.status = Status::infeasible;
      out.infeasibility = infeas;
      out.iterations = iterations_;
      out.bland = bland_;
      return out;
    }
    drive_out_artificials();
    phase_ = 2;
    degenerate_run_ = 0;
    s = iterate();
    out.status = s;
    out.iterations = iterations_;
    out.bland = bland_;
    out.duals = multipliers();
    double obj = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = basis_[i];
      if (j < n_) {
        const double v = std::max(0.0, xb_(idx(i)));
        if (v > 0.0) out.primal.emplace_back(j, v);
        obj += src_.cost(j) * v;
      }
    }
    std::sort(out.primal.begin(), out.primal.end());
    out.objective = obj;
    return out;
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  double cost(std::size_t j) const {
    if (phase_ == 1) return j >= n_ ? -1.0 : 0.0;
    return j >= n_ ? 0.0 : src_.cost(j);
  }

  void column(std::size_t j, Eigen::VectorXd& out) const {
    if (j < n_) {
      src_.column(j, out);
    } else {
      out = Eigen::VectorXd::Zero(idx(m_));
      out(idx(j - n_)) = sign_[j - n_];
    }
  }

  void refactor() {
    Eigen::MatrixXd basis(idx(m_), idx(m_));
    Eigen::VectorXd col;
    for (std::size_t i = 0; i < m_; ++i) {
      column(basis_[i], col);
      basis.col(idx(i)) = col;
    }
    binv_ = basis.fullPivLu().inverse();
    xb_ = binv_ * b_;
    for (Eigen::Index i = 0; i < xb_.size(); ++i)
      if (xb_(i) < 0.0 && xb_(i) > -1e-12) xb_(i) = 0.0;
    since_refactor_ = 0;
  }

  Eigen::VectorXd multipliers() const {
    Eigen::VectorXd cb(idx(m_));
    for (std::size_t i = 0; i < m_; ++i) cb(idx(i)) = cost(basis_[i]);
    return binv_.transpose() * cb;
  }

  // Entering column, or n_ when optimal. Artificials never re-enter.
  std::size_t price() {
    const Eigen::VectorXd y = multipliers();
    src_.reduced_costs(y, reduced_, phase_ == 2);
    std::size_t best = n_;
    double best_val = opt_.optimality_tol;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_basic_[j]) continue;
      const double d = reduced_[j];
      if (d > best_val || (bland_ && d > opt_.optimality_tol)) {
        best = j;
        best_val = d;
        if (bland_) break;
      }
    }
    return best;
  }

  Status iterate() {
    for (;;) {
      if (iterations_ >= opt_.max_iterations) return Status::iteration_limit;
      const std::size_t q = price();
      if (q == n_) return Status::optimal;
      Eigen::VectorXd aq;
      column(q, aq);
      const Eigen::VectorXd w = binv_ * aq;

      std::size_t leave = m_;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double wi = w(idx(i));
        if (wi <= opt_.pivot_tol) continue;
        const double ratio = std::max(0.0, xb_(idx(i))) / wi;
        bool take = false;
        if (leave == m_ || ratio < best_ratio - 1e-13) {
          take = true;
        } else if (ratio <= best_ratio + 1e-13) {
          // ties: Bland picks the smallest variable index, otherwise the largest pivot
          take = bland_ ? basis_[i] < basis_[leave] : wi > w(idx(leave));
        }
        if (take) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
      if (leave == m_) return Status::unbounded;

      const double theta = std::max(0.0, xb_(idx(leave))) / w(idx(leave));
      xb_ -= theta * w;
      xb_(idx(leave)) = theta;
      for (Eigen::Index i = 0; i < xb_.size(); ++i)
        if (xb_(i) < 0.0) xb_(i) = 0.0;

      pivot(leave, q, w);
      ++iterations_;

      if (theta <= 1e-14) {
        if (++degenerate_run_ >= opt_.degenerate_run_for_bland) bland_ = true;
      } else {
        degenerate_run_ = 0;
      }
    }
  }

  void pivot(std::size_t leave, std::size_t q, const Eigen::VectorXd& w) {
    const double wp = w(idx(leave));
    const Eigen::RowVectorXd prow = binv_.row(idx(leave)) / wp;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == leave) continue;
      binv_.row(idx(i)) -= w(idx(i)) * prow;
    }
    binv_.row(idx(leave)) = prow;
    is_basic_[basis_[leave]] = false;
    basis_[leave] = q;
    is_basic_[q] = true;
    if (++since_refactor_ >= opt_.refactor_every) refactor();
  }

  // Artificials left basic at level zero are pivoted out against any original
  // column with a usable entry in their row; rows with no such column are
  // redundant and keep their artificial (it stays at zero).
  void drive_out_artificials() {
    std::vector<double> row_vals(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      const Eigen::VectorXd r = binv_.row(idx(i)).transpose();
      src_.reduced_costs(r, row_vals, false);
      std::size_t best = n_;
      double best_abs = 1e-7;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic_[j]) continue;
        if (std::abs(row_vals[j]) > best_abs) {
          best_abs = std::abs(row_vals[j]);
          best = j;
        }
      }
      if (best == n_) continue;
      Eigen::VectorXd aq;
      column(best, aq);
      const Eigen::VectorXd w = binv_ * aq;
      pivot(i, best, w);
      refactor();
    }
  }

  const S& src_;
  Eigen::VectorXd b_;
  Options opt_;
  std::size_t m_, n_;
  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<double> reduced_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int phase_ = 1;
  int iterations_ = 0;
  int since_refactor_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace detail

template <ColumnSource S>
Solution solve(const S& source, const Eigen::VectorXd& b, const Options& options = {}) {
  require_dim(static_cast<std::size_t>(b.size()), source.rows(), "lp right-hand side");
  detail::Simplex<S> simplex(source, b, options);
  return simplex.solve();
}

/// Is {y >= 0 : A y = b} nonempty? Runs phase 1 only in effect (c = 0).
inline bool feasible(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double tol = 1e-9) {
  DenseColumns src{a, Eigen::VectorXd::Zero(a.cols())};
  Options opt;
  opt.feasibility_tol = tol;
  return solve(src, b, opt).status == Status::optimal;
}

}  // namespace whitney::lp
