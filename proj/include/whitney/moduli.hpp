#pragma once

// Searched lower estimates of the moduli
//
//   omega_m(f;K) = sup |Delta_h^m f(x)|          over progressions x, x+h, ..., x+mh in K,
//   delta_m(f)   = sup |f(sum a_k x_k) - sum a_k f(x_k)|   over m atoms x_k in K, a in the simplex.
//
// Both searches sweep a grid of K first, keep the best `top_k` configurations,
// then refine each with a derivative-free pattern search. Random restarts use
// one RNG stream per restart index, so a larger restart budget only adds
// candidates and the estimate never decreases.

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "whitney/bodies.hpp"
#include "whitney/common.hpp"
#include "whitney/optimize.hpp"
#include "whitney/parallel.hpp"

namespace whitney {

/// Sum_j (-1)^(m-j) C(m,j) f(x + j h).
inline double finite_difference(const ScalarFn& f, std::span<const double> x, std::span<const double> h, int m) {
  require(m >= 0, "invalid_argument", "finite_difference needs m >= 0");
  require_dim(h.size(), x.size(), "finite_difference step");
  Vec p(x.begin(), x.end());
  double s = 0.0;
  for (int j = 0; j <= m; ++j) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x[i] + j * h[i];
    const double term = binomial(m, j) * f(p);
    s += ((m - j) % 2 == 0) ? term : -term;
  }
  return s;
}

struct SearchBudget {
  std::uint64_t seed = 1;
  /// Grid resolution for the sweep; 0 picks the largest resolution whose grid
  /// has at most max_grid_points points.
  int grid_resolution = 0;
  std::size_t max_grid_points = 1200;
  /// Pair sweeps larger than this are subsampled (seeded).
  std::size_t max_pairs = 4'000'000;
  int top_k = 32;
  int restarts = 16;
  double min_step = 1e-7;
  int max_pattern_iterations = 4000;
  /// delta_2 weight lattice a = j / weight_steps.
  int weight_steps = 8;
  /// delta_m, m > 2: random atom tuples drawn from the grid.
  int random_tuples = 4000;
  unsigned threads = 0;
};

enum class ModulusKind { omega, delta };

struct ModulusEstimate {
  ModulusKind kind = ModulusKind::omega;
  int m = 2;
  double value = 0.0;
  // omega witness
  Vec x, h;
  // delta witness
  std::vector<Vec> points;
  Vec weights;
  // search metadata
  std::uint64_t seed = 0;
  int grid_resolution = 0;
  std::size_t grid_points = 0;
  std::size_t candidates = 0;
  int refinements = 0;
  int restarts = 0;
  long long pattern_iterations = 0;
};

/// |f(sum a_k x_k) - sum a_k f(x_k)|
inline double affinity_defect(const ScalarFn& f, const std::vector<Vec>& points, std::span<const double> weights) {
  Vec c(points.front().size(), 0.0);
  double avg = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += weights[k] * points[k][i];
    avg += weights[k] * f(points[k]);
  }
  return std::abs(f(c) - avg);
}

/// Value implied by the stored witness.
inline double witness_value(const ScalarFn& f, const ModulusEstimate& e) {
  if (e.kind == ModulusKind::omega) return std::abs(finite_difference(f, e.x, e.h, e.m));
  return affinity_defect(f, e.points, e.weights);
}

/// Membership of every point the witness touches.
inline bool witness_feasible(const ConvexBody& body, const ModulusEstimate& e) {
  if (e.kind == ModulusKind::omega) {
    for (int j = 0; j <= e.m; ++j)
      if (!contains(body, vec::axpy(e.x, j, e.h))) return false;
    return true;
  }
  double s = 0.0;
  for (double w : e.weights) {
    if (w < -1e-12) return false;
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9) return false;
  for (const auto& p : e.points)
    if (!contains(body, p)) return false;
  return true;
}

inline nlohmann::json to_json(const ModulusEstimate& e) {
  nlohmann::json j = {{"kind", e.kind == ModulusKind::omega ? "omega" : "delta"},
                      {"m", e.m},
                      {"value", e.value},
                      {"seed", e.seed},
                      {"grid_resolution", e.grid_resolution},
                      {"grid_points", e.grid_points},
                      {"candidates", e.candidates},
                      {"refinements", e.refinements},
                      {"restarts", e.restarts},
                      {"pattern_iterations", e.pattern_iterations}};
  if (e.kind == ModulusKind::omega) {
    j["x"] = e.x;
    j["h"] = e.h;
  } else {
    j["points"] = e.points;
    j["weights"] = e.weights;
  }
  return j;
}

namespace detail {

inline int auto_resolution(const ConvexBody& body, const SearchBudget& b) {
  if (b.grid_resolution > 0) return b.grid_resolution;
  int best = 1;
  for (int r = 1; r <= 64; ++r) {
    if (sample_grid(body, r).size() > b.max_grid_points) break;
    best = r;
  }
  return best;
}

struct Scored {
  double value;
  std::size_t a, b;  // grid indices
  int extra;         // weight lattice index for delta_2
};

// Deterministic order: larger value first, then lexicographic indices.
inline bool better(const Scored& l, const Scored& r) {
  if (l.value != r.value) return l.value > r.value;
  if (l.a != r.a) return l.a < r.a;
  if (l.b != r.b) return l.b < r.b;
  return l.extra < r.extra;
}

class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}
  void offer(const Scored& s) {
    if (!std::isfinite(s.value)) return;
    if (heap_.size() < k_) {
      heap_.push_back(s);
      std::push_heap(heap_.begin(), heap_.end(), better);
    } else if (better(s, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), better);
      heap_.back() = s;
      std::push_heap(heap_.begin(), heap_.end(), better);
    }
  }
  void merge(const TopK& o) {
    for (const auto& s : o.heap_) offer(s);
  }
  std::vector<Scored> sorted() const {
    auto v = heap_;
    std::sort(v.begin(), v.end(), better);
    return v;
  }

 private:
  std::size_t k_;
  std::vector<Scored> heap_;  // heap ordered so front() is the worst kept entry
};

inline bool progression_inside(const ConvexBody& body, std::span<const double> x, std::span<const double> y, int m) {
  if (body.is_convex()) return contains(body, x) && contains(body, y);
  Vec h = vec::scaled(vec::sub(y, x), 1.0 / m);
  for (int j = 0; j <= m; ++j)
    if (!contains(body, vec::axpy(x, j, h))) return false;
  return true;
}

inline double progression_value(const ScalarFn& f, std::span<const double> x, std::span<const double> y, int m) {
  const Vec h = vec::scaled(vec::sub(y, x), 1.0 / m);
  return std::abs(finite_difference(f, x, h, m));
}

// Visits a (possibly subsampled) set of unordered index pairs i < j.
template <class Fn>
void for_each_pair(std::size_t n, const SearchBudget& b, unsigned threads, std::vector<TopK>& slots, Fn&& fn) {
  const std::size_t total = n < 2 ? 0 : n * (n - 1) / 2;
  if (total <= b.max_pairs) {
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) fn(slots[i], i, j);
    }, threads);
    return;
  }
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(n, 256));
  const std::size_t per = b.max_pairs / chunks + 1;
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(b.seed ^ 0x5eedULL, 1'000'000 + c);
    for (std::size_t t = 0; t < per; ++t) {
      std::size_t i = rng.index(n), j = rng.index(n);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      fn(slots[c], i, j);
    }
  }, threads);
}

// Pattern search over (x, y) maximizing |Delta^m_{(y-x)/m} f(x)|.
struct PairRefiner {
  const ScalarFn& f;
  const ConvexBody& body;
  const std::vector<Vec>& dirs;
  int m;
  double start_step;
  double min_step;
  int max_iterations;

  double run(Vec& x, Vec& y, long long& iterations) const {
    double best = progression_value(f, x, y, m);
    double step = start_step;
    int it = 0;
    while (step >= min_step && it < max_iterations) {
      bool improved = false;
      for (const auto& d : dirs) {
        for (double s : {step, -step}) {
          for (int mode = 0; mode < 3; ++mode) {
            Vec xc = x, yc = y;
            if (mode != 1)
              for (std::size_t i = 0; i < xc.size(); ++i) xc[i] += s * d[i];
            if (mode != 0)
              for (std::size_t i = 0; i < yc.size(); ++i) yc[i] += s * d[i];
            if (xc == yc || !progression_inside(body, xc, yc, m)) continue;
            const double v = progression_value(f, xc, yc, m);
            if (v > best) {
              best = v;
              x = std::move(xc);
              y = std::move(yc);
              improved = true;
            }
          }
        }
      }
      ++it;
      if (!improved) step *= 0.5;
    }
    iterations += it;
    return best;
  }
};

// Random member point: convex combination of three grid points for convex
// bodies, a grid point otherwise.
inline Vec random_member(const PointSet& grid, const ConvexBody& body, Rng& rng) {
  const Vec& a = grid.points[rng.index(grid.size())];
  if (!body.is_convex()) return a;
  const Vec& b = grid.points[rng.index(grid.size())];
  const Vec& c = grid.points[rng.index(grid.size())];
  const Vec w = rng.simplex_point(3);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = w[0] * a[i] + w[1] * b[i] + w[2] * c[i];
  return contains(body, out) ? out : a;
}

}  // namespace detail

/// Lower estimate of omega_m(f; K).
inline ModulusEstimate omega_m_estimate(const ScalarFn& f, const ConvexBody& body, int m, const SearchBudget& budget = {}) {
  require(m >= 1, "invalid_argument", "omega_m needs m >= 1");
  const unsigned threads = budget.threads ? budget.threads : thread_count();
  const int res = detail::auto_resolution(body, budget);
  const PointSet grid = sample_grid(body, res);
  const std::size_t n = grid.size();
  require(n >= 2, "degenerate_body", "omega_m search needs at least two grid points");
  const auto k = static_cast<std::size_t>(std::max(1, budget.top_k));

  std::vector<detail::TopK> slots(n, detail::TopK(k));
  detail::for_each_pair(n, budget, threads, slots, [&](detail::TopK& top, std::size_t i, std::size_t j) {
    const auto& x = grid.points[i];
    const auto& y = grid.points[j];
    if (!body.is_convex() && !detail::progression_inside(body, x, y, m)) return;
    top.offer({detail::progression_value(f, x, y, m), i, j, 0});
  });
  detail::TopK top(k);
  for (const auto& s : slots) top.merge(s);
  const auto seeds = top.sorted();

  const std::vector<Vec> dirs = search_directions(body);
  const detail::PairRefiner refiner{f, body, dirs, m, 1.0 / res, budget.min_step, budget.max_pattern_iterations};

  const std::size_t nstarts = seeds.size() + static_cast<std::size_t>(std::max(0, budget.restarts));
  std::vector<Vec> xs(nstarts), ys(nstarts);
  std::vector<double> vals(nstarts, -1.0);
  std::vector<long long> iters(nstarts, 0);
  parallel_for(nstarts, [&](std::size_t s) {
    Vec x, y;
    if (s < seeds.size()) {
      x = grid.points[seeds[s].a];
      y = grid.points[seeds[s].b];
    } else {
      Rng rng(budget.seed, s - seeds.size());
      x = detail::random_member(grid, body, rng);
      y = detail::random_member(grid, body, rng);
      if (x == y || !detail::progression_inside(body, x, y, m)) return;
    }
    vals[s] = refiner.run(x, y, iters[s]);
    xs[s] = std::move(x);
    ys[s] = std::move(y);
  }, threads);

  ModulusEstimate est;
  est.kind = ModulusKind::omega;
  est.m = m;
  est.seed = budget.seed;
  est.grid_resolution = res;
  est.grid_points = n;
  est.candidates = seeds.size();
  est.refinements = static_cast<int>(seeds.size());
  est.restarts = std::max(0, budget.restarts);
  std::size_t best = nstarts;
  for (std::size_t s = 0; s < nstarts; ++s) {
    est.pattern_iterations += iters[s];
    if (vals[s] >= 0.0 && (best == nstarts || vals[s] > vals[best])) best = s;
  }
  if (best == nstarts) {
    est.x = grid.points[0];
    est.h = Vec(grid.points[0].size(), 0.0);
    est.value = 0.0;
    return est;
  }
  est.x = xs[best];
  est.h = vec::scaled(vec::sub(ys[best], xs[best]), 1.0 / m);
  est.value = witness_value(f, est);
  return est;
}

namespace detail {

inline double delta_value(const ScalarFn& f, const ConvexBody& body, const std::vector<Vec>& pts, std::span<const double> w) {
  if (!body.is_convex()) {
    Vec c(pts.front().size(), 0.0);
    for (std::size_t k = 0; k < pts.size(); ++k)
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += w[k] * pts[k][i];
    if (!contains(body, c)) return -1.0;
  }
  return affinity_defect(f, pts, w);
}

// Alternates a pattern search on the atoms with projected-gradient ascent on the weights.
inline double refine_delta(const ScalarFn& f, const ConvexBody& body, const std::vector<Vec>& dirs, std::vector<Vec>& pts,
                           Vec& w, double start_step, const SearchBudget& b, long long& iterations) {
  double best = delta_value(f, body, pts, w);
  double step = start_step;
  int it = 0;
  while (step >= b.min_step && it < b.max_pattern_iterations) {
    bool improved = false;
    for (std::size_t k = 0; k < pts.size(); ++k)
      for (const auto& d : dirs)
        for (double s : {step, -step}) {
          Vec cand = pts[k];
          for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += s * d[i];
          if (!contains(body, cand)) continue;
          std::swap(pts[k], cand);
          const double v = delta_value(f, body, pts, w);
          if (v > best) {
            best = v;
            improved = true;
          } else {
            std::swap(pts[k], cand);
          }
        }
    // projected gradient on the weights
    {
      const double hstep = 1e-7;
      Vec g(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) {
        Vec wp = w, wm = w;
        wp[k] += hstep;
        wm[k] -= hstep;
        g[k] = (delta_value(f, body, pts, wp) - delta_value(f, body, pts, wm)) / (2 * hstep);
      }
      double lr = step;
      for (int ls = 0; ls < 30; ++ls, lr *= 0.5) {
        Vec cand(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) cand[k] = w[k] + lr * g[k];
        cand = opt::project_to_simplex(cand);
        const double v = delta_value(f, body, pts, cand);
        if (v > best) {
          best = v;
          w = std::move(cand);
          improved = true;
          break;
        }
      }
    }
    ++it;
    if (!improved) step *= 0.5;
  }
  iterations += it;
  return best;
}

}  // namespace detail

/// Lower estimate of delta_m(f) over m-atom convex combinations in K.
inline ModulusEstimate delta_m_estimate(const ScalarFn& f, const ConvexBody& body, int m, const SearchBudget& budget = {}) {
  require(m >= 2, "invalid_argument", "delta_m needs m >= 2 atoms");
  const unsigned threads = budget.threads ? budget.threads : thread_count();
  const int res = detail::auto_resolution(body, budget);
  const PointSet grid = sample_grid(body, res);
  const std::size_t n = grid.size();
  require(n >= 1, "degenerate_body", "delta_m search needs grid points");
  const auto k = static_cast<std::size_t>(std::max(1, budget.top_k));
  const int wsteps = std::max(2, budget.weight_steps);

  // Candidate configurations as (atoms, weights).
  std::vector<std::pair<std::vector<Vec>, Vec>> cands;
  if (m == 2) {
    std::vector<detail::TopK> slots(n, detail::TopK(k));
    detail::for_each_pair(n, budget, threads, slots, [&](detail::TopK& top, std::size_t i, std::size_t j) {
      std::vector<Vec> pts = {grid.points[i], grid.points[j]};
      for (int s = 1; s < wsteps; ++s) {
        const double a = static_cast<double>(s) / wsteps;
        const Vec w = {a, 1.0 - a};
        top.offer({detail::delta_value(f, body, pts, w), i, j, s});
      }
    });
    detail::TopK top(k);
    for (const auto& s : slots) top.merge(s);
    for (const auto& s : top.sorted()) {
      const double a = static_cast<double>(s.extra) / wsteps;
      cands.push_back({{grid.points[s.a], grid.points[s.b]}, {a, 1.0 - a}});
    }
  } else {
    struct Cand {
      double value;
      std::size_t order;
      std::vector<Vec> pts;
      Vec w;
    };
    std::vector<Cand> pool;
    const auto ext = extreme_points(body);
    const Vec uniform(static_cast<std::size_t>(m), 1.0 / m);
    if (ext.size() >= static_cast<std::size_t>(m)) {
      std::vector<Vec> pts(ext.begin(), ext.begin() + m);
      pool.push_back({detail::delta_value(f, body, pts, uniform), pool.size(), pts, uniform});
    }
    const auto ntuples = static_cast<std::size_t>(std::max(0, budget.random_tuples));
    std::vector<Cand> drawn(ntuples);
    parallel_for(ntuples, [&](std::size_t t) {
      Rng rng(budget.seed ^ 0xde17aULL, t);
      std::vector<Vec> pts;
      const bool from_ext = ext.size() >= 2 && t % 4 == 3;
      for (int a = 0; a < m; ++a)
        pts.push_back(from_ext ? ext[rng.index(ext.size())] : grid.points[rng.index(n)]);
      Vec w = (t % 2 == 0) ? uniform : rng.simplex_point(static_cast<std::size_t>(m));
      drawn[t] = {detail::delta_value(f, body, pts, w), 0, std::move(pts), std::move(w)};
    }, threads);
    for (auto& d : drawn) {
      d.order = pool.size();
      pool.push_back(std::move(d));
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Cand& l, const Cand& r) { return l.value > r.value; });
    for (std::size_t i = 0; i < pool.size() && i < k; ++i) cands.push_back({pool[i].pts, pool[i].w});
  }

  const std::size_t nseeded = cands.size();
  for (int r = 0; r < budget.restarts; ++r) {
    Rng rng(budget.seed, static_cast<std::uint64_t>(r));
    std::vector<Vec> pts;
    for (int a = 0; a < m; ++a) pts.push_back(detail::random_member(grid, body, rng));
    cands.push_back({std::move(pts), rng.simplex_point(static_cast<std::size_t>(m))});
  }

  const std::vector<Vec> dirs = search_directions(body);
  std::vector<double> vals(cands.size(), -1.0);
  std::vector<long long> iters(cands.size(), 0);
  parallel_for(cands.size(), [&](std::size_t s) {
    vals[s] = detail::refine_delta(f, body, dirs, cands[s].first, cands[s].second, 1.0 / res, budget, iters[s]);
  }, threads);

  ModulusEstimate est;
  est.kind = ModulusKind::delta;
  est.m = m;
  est.seed = budget.seed;
  est.grid_resolution = res;
  est.grid_points = n;
  est.candidates = nseeded;
  est.refinements = static_cast<int>(nseeded);
  est.restarts = std::max(0, budget.restarts);
  std::size_t best = cands.size();
  for (std::size_t s = 0; s < cands.size(); ++s) {
    est.pattern_iterations += iters[s];
    if (vals[s] >= 0.0 && (best == cands.size() || vals[s] > vals[best])) best = s;
  }
  require(best < cands.size(), "degenerate_body", "delta_m search found no feasible configuration");
  est.points = cands[best].first;
  est.weights = cands[best].second;
  est.value = witness_value(f, est);
  return est;
}

}  // namespace whitney
