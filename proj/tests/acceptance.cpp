// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and runtime limits are fixed here and must not be relaxed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "whitney.hpp"

using namespace whitney;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("violated: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Criterion {
  std::string name;
  double seconds_limit;
  std::function<void(Outcome&)> body;
};

// ---- 1 -------------------------------------------------------------------

void simplex_entropy(Outcome& o) {
  constexpr double kSlack = 0.03;
  for (int n = 2; n <= 5; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const int res = n == 4 ? 25 : 24;
    const auto w = WitnessFn::entropy_simplex(n);
    const auto b = lower_bound(w, w.body(), 2, res);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double lo = 0.25 * std::log2(n + 1.0) - kSlack;
    const double hi = w2_upper_reference(n);
    o.note("n=" + std::to_string(n) + " bound=" + fmt("%.4f", b.bound) + " in [" + fmt("%.4f", lo) + "," + fmt("%.4f", hi) +
           "] " + fmt("%.1fs", secs));
    o.check(b.certified(), "analytic omega for n=" + std::to_string(n));
    o.check(b.bound >= lo && b.bound <= hi, "bound range n=" + std::to_string(n));
    o.check(secs <= 60.0, "60 s per n");
  }
}

// ---- 2 -------------------------------------------------------------------

void interval_constant(Outcome& o) {
  constexpr double kTol = 1e-6;
  constexpr double kScanMax = 0.51;
  for (double eps : {0.5, 0.1, 0.01}) {
    const auto w = WitnessFn::piecewise_eps(eps);
    const auto b = lower_bound(w, w.body(), 2, 200);
    const double err = std::abs(b.e_m_lower - 0.5 * (1.0 - eps));
    o.note("eps=" + fmt("%g", eps) + " |E2-(1-eps)/2|=" + fmt("%.1e", err));
    o.check(err <= kTol, "E_2 of hat at eps=" + fmt("%g", eps));
  }
  Scan1dOptions s;
  s.trials = 10000;
  s.seed = 1;
  const auto r = scan_1d(s);
  o.note("scan max=" + fmt("%.4f", r.max_ratio));
  o.check(r.trials.size() == 10000, "10^4 trials");
  o.check(r.max_ratio <= kScanMax, "scan ratio <= 0.51");
}

// ---- 3 -------------------------------------------------------------------

void square_witness(Outcome& o) {
  constexpr double kMinE2 = 0.98;
  constexpr double kScanMax = 1.01;
  const auto w = product_witness(WitnessFn::piecewise_eps(0.01), WitnessFn::piecewise_eps(0.01));
  const auto b = lower_bound(w, ConvexBody::cube(2), 2, 200);
  o.note("E2=" + fmt("%.6f", b.e_m_lower) + " omega<=" + fmt("%g", b.omega_upper));
  o.check(b.e_m_lower >= kMinE2, "E_2 >= 0.98");
  o.check(b.certified() && b.omega_upper <= 1.0, "analytic omega_2 <= 1");
  ScanOptions s;
  s.body = ConvexBody::cube(2);
  s.trials = 500;
  s.resolution = 30;
  s.budget.max_grid_points = 500;
  s.budget.restarts = 4;
  const auto r = scan_body(s);
  o.note("scan max=" + fmt("%.4f", r.max_ratio) + " over " + std::to_string(r.trials.size()) + " trials");
  o.check(r.max_ratio <= kScanMax, "scan ratio <= 1.01");
}

// ---- 4 -------------------------------------------------------------------

void l1_ball(Outcome& o) {
  constexpr double kOmegaTol = 1e-6;
  constexpr double kSlack = 0.03;
  const double omega_bound = std::log2(1.0 + std::sqrt(2.0));
  for (int n = 3; n <= 5; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const auto w = WitnessFn::entropy_l1ball(n);
    SearchBudget budget;
    budget.seed = static_cast<std::uint64_t>(n);
    const double measured = omega_m_estimate(w.function(), w.body(), 2, budget).value;
    const auto b = lower_bound(w, w.body(), 2, n == 5 ? 10 : 12);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double lo = 0.25 * std::log2(static_cast<double>(n)) / omega_bound - kSlack;
    o.note("n=" + std::to_string(n) + " omega=" + fmt("%.6f", measured) + " bound=" + fmt("%.4f", b.bound) + ">=" +
           fmt("%.4f", lo) + " " + fmt("%.1fs", secs));
    o.check(measured <= omega_bound + kOmegaTol, "measured omega_2 n=" + std::to_string(n));
    o.check(b.bound >= lo, "bound n=" + std::to_string(n));
    o.check(secs <= 120.0, "120 s per n");
  }
}

// ---- 5 -------------------------------------------------------------------

void quadlog(Outcome& o) {
  constexpr double kOmegaMax = 6.0;
  constexpr double kSlack = 0.05;
  for (int n = 3; n <= 4; ++n) {
    const auto w = WitnessFn::quadlog(n);
    SearchBudget budget;
    budget.seed = static_cast<std::uint64_t>(n);
    const double omega = omega_m_estimate(w.function(), w.body(), 3, budget).value;
    const double e3 = e_m_on_body(w.function(), w.body(), 3, n == 3 ? 16 : 10).error;
    const double lo = std::log(static_cast<double>(n)) / 8.0 - kSlack;
    o.note("n=" + std::to_string(n) + " omega3=" + fmt("%.4f", omega) + " E3=" + fmt("%.4f", e3) + ">=" + fmt("%.4f", lo));
    o.check(omega < kOmegaMax, "omega_3 < 6 n=" + std::to_string(n));
    o.check(e3 >= lo, "E_3 n=" + std::to_string(n));
  }
}

// ---- 6 -------------------------------------------------------------------

void duality(Outcome& o) {
  constexpr double kClosedTol = 1e-9;
  constexpr double kOracleTol = 1e-6;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(2024, s);
    const int d = 2 + static_cast<int>(rng.index(5));
    const double p = rng.uniform(1.0, 8.0);
    Vec a(static_cast<std::size_t>(d));
    for (auto& v : a) v = std::exp2(rng.uniform(-2.0, 2.0));
    const Vec u = rng.simplex_point(static_cast<std::size_t>(d));
    worst = std::max(worst, std::abs(lozanovskii_residual(u, LatticeNorm::lp(d, p, a))));
  }
  double gap = 0.0, oracle_resid = 0.0;
  const auto closed = LatticeNorm::lp(3, 2.0);
  const auto X = LatticeNorm::oracle(
      3, [](std::span<const double> x) { return lp_norm(x, 2.0); }, [](std::span<const double> x) { return lp_norm(x, 2.0); });
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(77, s);
    const Vec u = rng.simplex_point(3);
    gap = std::max(gap, std::abs(indicator(u, X) - indicator(u, closed)));
    oracle_resid = std::max(oracle_resid, std::abs(lozanovskii_residual(u, X)));
  }
  o.note("closed max|res|=" + fmt("%.1e", worst) + " oracle gap=" + fmt("%.1e", gap) + " oracle res=" + fmt("%.1e", oracle_resid));
  o.check(worst <= kClosedTol, "closed-form residual");
  o.check(gap <= kOracleTol, "oracle l_2 indicator vs closed form");
  o.check(oracle_resid <= kOracleTol, "oracle l_2 duality residual");
}

// ---- 7 -------------------------------------------------------------------

void calderon(Outcome& o) {
  constexpr double kRelTol = 1e-6;
  constexpr double kPhiTol = 1e-6;
  double worst = 0.0, worst_phi = 0.0;
  struct Case {
    double p0, p1, theta;
  };
  const std::vector<Case> cases = {{1.0, 3.0, 0.5}, {1.5, 6.0, 0.3}, {2.0, kInf, 0.4}, {1.0, 2.0, 0.8}};
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(31, s);
    const Case& c = cases[s % cases.size()];
    const int d = 2 + static_cast<int>(rng.index(3));
    Vec a0(static_cast<std::size_t>(d)), a1(static_cast<std::size_t>(d));
    for (auto& v : a0) v = std::exp2(rng.uniform(-1.0, 1.0));
    for (auto& v : a1) v = std::exp2(rng.uniform(-1.0, 1.0));
    const auto n0 = LatticeNorm::lp(d, c.p0, a0), n1 = LatticeNorm::lp(d, c.p1, a1);
    Vec x(static_cast<std::size_t>(d));
    for (auto& v : x) v = rng.normal();
    // closed form: l_p with 1/p = (1-theta)/p0 + theta/p1 and weights a0^(1-theta) a1^theta
    const double p = 1.0 / ((1.0 - c.theta) / c.p0 + c.theta / c.p1);
    Vec a(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(a0[i], 1.0 - c.theta) * std::pow(a1[i], c.theta);
    const double exact = oracle::weighted_lp(x, p, a);
    worst = std::max(worst, std::abs(calderon_norm(x, n0, n1, c.theta) - exact) / exact);
    if (s % 5 == 0) {
      const NormFn interp = [&](std::span<const double> y) { return calderon_norm(y, n0, n1, c.theta); };
      IndicatorOptions io;
      io.restarts = 2;
      const Vec u = rng.simplex_point(static_cast<std::size_t>(d));
      const double phi = indicator_numeric(u, interp, io).value;
      worst_phi = std::max(worst_phi, std::abs(phi - (1.0 - c.theta) * indicator(u, n0) - c.theta * indicator(u, n1)));
    }
  }
  o.note("max rel norm err=" + fmt("%.1e", worst) + " max Phi residual=" + fmt("%.1e", worst_phi));
  o.check(worst <= kRelTol, "interpolation norm vs closed form");
  o.check(worst_phi <= kPhiTol, "Phi additivity");
}

// ---- 8 -------------------------------------------------------------------

void dyadic(Outcome& o) {
  constexpr double kIdTol = 1e-12;
  double worst_id = 0.0, worst_sum = 0.0, min_coord = 0.0;
  bool support_ok = true;
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::uint64_t s = 0; s < 10000; ++s) {
      Rng rng(100 + m, s);
      const Vec x = rng.simplex_point(2 * m + 1);
      const auto sp = dyadic_split(x);
      std::size_t ny = 0, nz = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst_id = std::max(worst_id, std::abs(x[i] - 0.5 * (sp.y[i] + sp.z[i])));
        min_coord = std::min({min_coord, sp.y[i], sp.z[i]});
        ny += sp.y[i] != 0.0;
        nz += sp.z[i] != 0.0;
      }
      support_ok = support_ok && ny <= m + 1 && nz <= m + 1;
      worst_sum = std::max({worst_sum, std::abs(vec::sum(sp.y) - 1.0), std::abs(vec::sum(sp.z) - 1.0)});
    }
  o.note("max identity err=" + fmt("%.1e", worst_id) + " max |sum-1|=" + fmt("%.1e", worst_sum));
  o.check(worst_id <= kIdTol, "midpoint identity");
  o.check(support_ok, "supports <= m+1");
  o.check(min_coord >= 0.0 && worst_sum <= kIdTol, "outputs in the simplex");
}

// ---- 9 -------------------------------------------------------------------

void lp_correctness(Outcome& o) {
  constexpr double kLpTol = 1e-8;
  constexpr double kCertTol = 1e-7;
  const std::vector<std::pair<int, std::vector<MultiIndex>>> bases = {
      {1, {{0}}},          {1, {{0}, {1}}},       {1, {{0}, {1}, {2}}},       {1, {{1}, {2}}},
      {2, {{0, 0}, {1, 0}}}, {2, {{0, 0}, {1, 0}, {0, 1}}}, {2, {{1, 1}, {2, 0}, {0, 0}}}, {3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
  double worst_lp = 0.0, worst_cert = 0.0;
  std::size_t instances = 0, certs = 0;
  bool support_ok = true;
  for (std::uint64_t s = 0; s < 400; ++s) {
    Rng rng(9, s);
    const auto& [dim, basis] = bases[s % bases.size()];
    const std::size_t k = basis.size();
    const std::size_t n = k + rng.index(12 - k + 1);
    std::vector<Vec> pts;
    Vec f;
    for (std::size_t i = 0; i < n; ++i) {
      Vec x(static_cast<std::size_t>(dim));
      for (auto& v : x) v = rng.uniform(-1.0, 1.0);
      pts.push_back(std::move(x));
      f.push_back(rng.normal());
    }
    const auto r = best_minimax(std::span<const Vec>(pts), f, basis);
    const double ref = oracle::minimax_by_vertices(pts, f, basis);
    worst_lp = std::max({worst_lp, std::abs(r.lp_value - ref), std::abs(r.error - ref)});
    ++instances;
    bool affine = basis.size() == static_cast<std::size_t>(dim) + 1;
    for (const auto& a : basis) affine = affine && total_degree(a) <= 1;
    if (affine) {
      const auto c = dual_certificate(r, std::span<const Vec>(pts), f);
      if (r.error > 1e-12) {
        worst_cert = std::max(worst_cert, std::abs(c.value - r.error));
        support_ok = support_ok && c.support() <= static_cast<std::size_t>(dim) + 2 && c.barycenter_gap() <= 1e-9;
        ++certs;
      }
    }
  }
  o.note(std::to_string(instances) + " instances max|LP-brute|=" + fmt("%.1e", worst_lp) + "; " + std::to_string(certs) +
         " certificates max|value-error|=" + fmt("%.1e", worst_cert));
  o.check(worst_lp <= kLpTol, "LP vs vertex enumeration");
  o.check(worst_cert <= kCertTol, "certificate value");
  o.check(support_ok, "certificate support <= n+2 with equal barycenters");
}

// ---- 10 ------------------------------------------------------------------

void polarization(Outcome& o) {
  constexpr double kTol = 1e-9;
  double worst_sym = 0.0, worst_coef = 0.0, worst_diag = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(55, s);
    const int m = 1 + static_cast<int>(s % 4);
    const int d = 1 + static_cast<int>(rng.index(4));
    auto p = std::make_shared<Poly>(d, m);
    oracle::Basis alphas;
    Vec coeffs;
    for (const auto& a : p->basis())
      if (total_degree(a) == m) {
        const double c = rng.normal();
        p->set(a, c);
        alphas.push_back(a);
        coeffs.push_back(c);
      }
    const ScalarFn f = [p](std::span<const double> x) { return (*p)(x); };
    std::vector<Vec> xs(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(d)));
    for (auto& x : xs)
      for (auto& v : x) v = rng.normal();
    const double F = polarize(f, xs);
    const double scale = 1.0 + std::abs(F);
    std::vector<Vec> perm = xs;
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    worst_sym = std::max(worst_sym, std::abs(polarize(f, perm) - F) / scale);
    std::vector<Vec> rev(xs.rbegin(), xs.rend());
    worst_sym = std::max(worst_sym, std::abs(polarize(f, rev) - F) / scale);
    worst_coef = std::max(worst_coef, std::abs(F - oracle::polarization_by_coefficients(alphas, coeffs, xs)) / scale);
    const double fx = f(xs[0]);
    worst_diag = std::max(worst_diag, std::abs(polarize(f, std::vector<Vec>(static_cast<std::size_t>(m), xs[0])) - fx) /
                                          (1.0 + std::abs(fx)));
  }
  o.note("symmetry=" + fmt("%.1e", worst_sym) + " coefficient form=" + fmt("%.1e", worst_coef) + " diagonal=" +
         fmt("%.1e", worst_diag));
  o.check(worst_sym <= kTol, "symmetry");
  o.check(worst_coef <= kTol, "multilinear form matches coefficient polarization");
  o.check(worst_diag <= kTol, "diagonal reconstruction");
}

// ---- 11 ------------------------------------------------------------------

void homogenization(Outcome& o) {
  constexpr double kHomTol = 1e-12;
  constexpr double kOmegaMax = 4.01;
  SearchBudget budget;
  budget.max_grid_points = 300;
  budget.restarts = 4;
  budget.top_k = 16;
  std::vector<HomogenizationTrial> trials(100);
  parallel_for(trials.size(), [&](std::size_t t) {
    SearchBudget b = budget;
    b.threads = 1;
    trials[t] = homogenization_trial(11, t, 2 + static_cast<int>(t % 3), b);
  }, thread_count());
  double worst_hom = 0.0, worst_omega = 0.0;
  for (const auto& t : trials) {
    worst_hom = std::max(worst_hom, t.homogeneity);
    worst_omega = std::max(worst_omega, t.omega_g);
  }
  o.note("100 trials max homogeneity defect=" + fmt("%.1e", worst_hom) + " max omega2(g)=" + fmt("%.4f", worst_omega));
  o.check(worst_hom <= kHomTol, "1-homogeneity");
  o.check(worst_omega <= kOmegaMax, "omega_2(g) <= 4.01");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"simplex_entropy_lower_bound", 240.0, simplex_entropy},
      {"interval_constant_one_half", 30.0, interval_constant},
      {"square_product_witness", 120.0, square_witness},
      {"l1_ball_signed_entropy", 360.0, l1_ball},
      {"quadratic_log_third_modulus", 300.0, quadlog},
      {"lozanovskii_duality", 30.0, duality},
      {"calderon_interpolation", 60.0, calderon},
      {"dyadic_split", 10.0, dyadic},
      {"lp_against_brute_force", 30.0, lp_correctness},
      {"polarization", 30.0, polarization},
      {"odd_homogenization", 120.0, homogenization},
  };
  // optional filter: run only criteria whose name contains argv[1]
  const std::string filter = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    if (!filter.empty() && c.name.find(filter) == std::string::npos) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.check(secs <= c.seconds_limit, "runtime limit " + fmt("%.0f s", c.seconds_limit));
    std::printf("%s %2zu %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
