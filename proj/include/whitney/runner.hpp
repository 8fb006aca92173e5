#pragma once

// Subcommand implementations shared by the command-line tool and the tests.
// Each command writes one CSV table (header + rows) and logs the claim it
// exercises to the log stream.

#include "json.hpp"

#include <cmath>
#include <concepts>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "whitney/approx.hpp"
#include "whitney/bodies.hpp"
#include "whitney/bounds.hpp"
#include "whitney/config.hpp"
#include "whitney/extremals.hpp"
#include "whitney/lattice.hpp"
#include "whitney/moduli.hpp"
#include "whitney/scan.hpp"

namespace whitney {

inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join(std::span<const double> v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += format_double(v[i]);
  }
  return s;
}

/// Minimal CSV table writer; cells containing separators are quoted.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), width_(header.size()) {
    write_row(header);
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w) {}
    Row& operator()(const std::string& v) {
      cells_.push_back(v);
      return *this;
    }
    Row& operator()(const char* v) { return (*this)(std::string(v)); }
    Row& operator()(double v) { return (*this)(format_double(v)); }
    Row& operator()(bool v) { return (*this)(std::string(v ? "true" : "false")); }
    template <std::integral I>
    Row& operator()(I v) {
      return (*this)(std::to_string(v));
    }
    ~Row() { w_.write_row(cells_); }

   private:
    CsvWriter& w_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }

 private:
  void write_row(const std::vector<std::string>& cells) {
    require(cells.size() == width_, "internal", "CSV row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      const auto& c = cells[i];
      if (c.find_first_of(",\"\n") != std::string::npos) {
        out_ << '"';
        for (char ch : c) {
          if (ch == '"') out_ << '"';
          out_ << ch;
        }
        out_ << '"';
      } else {
        out_ << c;
      }
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::size_t width_;
};

struct RunContext {
  std::ostream& out;
  std::ostream& log;
};

namespace detail {

inline SearchBudget budget_from(const ExperimentConfig& c) {
  SearchBudget b;
  b.seed = c.seed;
  b.restarts = c.restarts;
  b.top_k = c.top_k;
  b.grid_resolution = c.grid_resolution;
  b.max_grid_points = c.max_grid_points;
  return b;
}

inline ConvexBody body_from_kind(const std::string& kind, int dim, double p) {
  require(dim >= 1, "invalid_config", "dim must be >= 1");
  if (kind == "simplex") return ConvexBody::simplex(dim);
  if (kind == "cube") return ConvexBody::cube(dim);
  if (kind == "l1") return ConvexBody::lp_ball(dim, 1.0);
  if (kind == "l2") return ConvexBody::lp_ball(dim, 2.0);
  if (kind == "linf") return ConvexBody::lp_ball(dim, kInf);
  if (kind == "lp") return ConvexBody::lp_ball(dim, p);
  throw Error("invalid_config", "unknown body kind \"" + kind + "\" (simplex, cube, l1, l2, linf, lp)");
}

/// Explicit body from the config, or nullopt when the witness should decide.
inline std::optional<ConvexBody> configured_body(const ExperimentConfig& c) {
  if (!c.body.is_null()) return body_from_json(c.body);
  if (!c.body_kind.empty()) return body_from_kind(c.body_kind, c.dim, c.p);
  return std::nullopt;
}

inline bool is_simplex(const std::optional<ConvexBody>& b) {
  return b && std::holds_alternative<SimplexKind>(b->kind());
}

/// Witness by name. `dim` is n for S^n (entropy on the simplex) and R^n otherwise.
inline WitnessFn make_witness(const ExperimentConfig& c, const std::optional<ConvexBody>& body) {
  const std::string& w = c.witness;
  if (w == "entropy") {
    if (!body || is_simplex(body)) return WitnessFn::entropy_simplex(body ? body->intrinsic_dim() : c.dim);
    const auto* k = std::get_if<LpBallKind>(&body->kind());
    require(k && k->p == 1.0, "invalid_config", "entropy witness lives on the simplex or the l1 ball");
    return WitnessFn::entropy_l1ball(k->n);
  }
  if (w == "entropy_simplex") return WitnessFn::entropy_simplex(c.dim);
  if (w == "entropy_l1ball") return WitnessFn::entropy_l1ball(c.dim);
  if (w == "eps" || w == "piecewise_eps") return WitnessFn::piecewise_eps(c.eps);
  if (w == "quadlog") return WitnessFn::quadlog(c.dim);
  if (w == "product_eps") return product_witness(WitnessFn::piecewise_eps(c.eps), WitnessFn::piecewise_eps(c.eps));
  if (w == "product_entropy")
    return product_witness(WitnessFn::entropy_simplex(c.dim), WitnessFn::entropy_simplex(c.dim));
  throw Error("invalid_config", "unknown witness \"" + w +
                                    "\" (entropy, entropy_simplex, entropy_l1ball, eps, quadlog, product_eps, product_entropy)");
}

inline std::string provenance_of(const std::optional<AnalyticOmega>& om, int m) {
  return om && om->m == m ? "analytic" : "none";
}

// Plain-language descriptions of the claims each command exercises.
inline std::string claim_for_bound(const WitnessFn& w) {
  switch (w.id()) {
    case WitnessId::entropy_simplex:
      return "simplex entropy witness: E_2 >= log2(n+1)/4 with omega_2 <= 1";
    case WitnessId::entropy_l1ball:
      return "signed entropy on the l1 ball: E_2 >= log2(n)/4 with omega_2 <= log2(1+sqrt2)";
    case WitnessId::piecewise_eps:
      return "one-dimensional hat witness: E_2 = (1-eps)/2 with omega_2 = 1; w_2 of an interval is 1/2";
    case WitnessId::quadlog:
      return "quadratic-log witness on the Euclidean ball: E_3 >= log(n)/8 with omega_3 < 6";
    case WitnessId::product:
      return "difference of convex witnesses on a product body: E_2 adds, omega_2 does not";
    default:
      return "Whitney constant lower bound E_m/omega_m";
  }
}

inline std::string upper_reference_cell(const ConvexBody& body, int m) {
  if (m != 2) return "";
  return format_double(w2_upper_reference(body.intrinsic_dim()));
}

inline void open_output(const ExperimentConfig& c, std::ofstream& file) {
  if (c.output.empty()) return;
  file.open(c.output);
  require(static_cast<bool>(file), "io_error", "cannot open output file " + c.output);
}

// ---- commands ----------------------------------------------------------------

inline int cmd_bound(const ExperimentConfig& c, RunContext& ctx) {
  const auto body_opt = configured_body(c);
  const WitnessFn w = make_witness(c, body_opt);
  const ConvexBody body = body_opt ? *body_opt : w.body();
  BoundOptions opt;
  opt.accept_searched = c.accept_searched;
  opt.budget = budget_from(c);
  const WhitneyBound b = lower_bound(w, body, c.m, c.resolution, opt);
  const std::string claim = claim_for_bound(w);
  ctx.log << "claim: " << claim << "\n";
  CsvWriter csv(ctx.out, {"m", "body", "dim", "witness", "e_m_lower", "omega_upper", "omega_provenance", "bound",
                          "resolution", "seed", "grid_points", "upper_reference", "paper_ref", "provenance"});
  csv.row()(b.m)(body.name())(body.intrinsic_dim())(b.witness)(b.e_m_lower)(b.omega_upper)(
      b.provenance == OmegaProvenance::analytic ? "analytic" : "searched")(b.bound)(b.resolution)(b.seed)(b.grid_points)(
      upper_reference_cell(body, b.m))(claim)(b.certified() ? "certified" : "advisory");
  return 0;
}

inline int cmd_minimax(const ExperimentConfig& c, RunContext& ctx) {
  require(!c.input.empty(), "invalid_config", "minimax needs --input (CSV with columns x1..xn,f; '-' for stdin)");
  SampleTable t;
  if (c.input == "-") {
    t = read_samples_csv(std::cin);
  } else {
    std::ifstream in(c.input);
    require(static_cast<bool>(in), "io_error", "cannot open " + c.input);
    t = read_samples_csv(in);
  }
  require(c.m >= 1, "invalid_config", "m must be >= 1");
  const int dim = static_cast<int>(t.points.front().size());
  const MinimaxResult r = best_minimax(std::span<const Vec>(t.points), t.values, monomial_basis(dim, c.m - 1));
  std::optional<DualCertificate> cert;
  if (c.m == 2) cert = dual_certificate(r, std::span<const Vec>(t.points), t.values);
  const std::string claim = "best uniform approximation from polynomials of degree < m; for m = 2 the error equals half the "
                            "gap of two convex combinations with equal barycenters";
  ctx.log << "claim: " << claim << "\n";
  if (!c.json_output.empty()) {
    std::ofstream js(c.json_output);
    require(static_cast<bool>(js), "io_error", "cannot open " + c.json_output);
    js << to_json(r, cert ? &*cert : nullptr).dump(2) << "\n";
  }
  CsvWriter csv(ctx.out, {"points", "dim", "m", "error", "lp_value", "iterations", "active_points", "certificate_value",
                          "certificate_support", "paper_ref", "provenance"});
  csv.row()(t.points.size())(dim)(c.m)(r.error)(r.lp_value)(r.iterations)(r.active_points.size())(
      cert ? format_double(cert->value) : std::string())(cert ? std::to_string(cert->support()) : std::string())(claim)(
      "exact LP on the samples");
  return 0;
}

inline int cmd_modulus(const ExperimentConfig& c, RunContext& ctx, bool delta) {
  const auto body_opt = configured_body(c);
  const WitnessFn w = make_witness(c, body_opt);
  const ConvexBody body = body_opt ? *body_opt : w.body();
  require(bodies_equivalent(w.body(), body), "invalid_config", "witness " + w.name() + " is not defined on " + body.name());
  const SearchBudget b = budget_from(c);
  const ModulusEstimate e = delta ? delta_m_estimate(w.function(), body, c.m, b) : omega_m_estimate(w.function(), body, c.m, b);
  const std::string claim = delta ? "deviation from affinity over m-atom convex combinations (lower estimate)"
                                  : "modulus of smoothness sup |Delta_h^m f| over progressions in K (lower estimate)";
  ctx.log << "claim: " << claim << "\n";
  const auto& om = w.analytic_omega();
  std::string witness_a, witness_b;
  if (delta) {
    for (std::size_t k = 0; k < e.points.size(); ++k) {
      if (k) witness_a += '|';
      witness_a += join(e.points[k]);
    }
    witness_b = join(e.weights);
  } else {
    witness_a = join(e.x);
    witness_b = join(e.h);
  }
  CsvWriter csv(ctx.out, {"kind", "m", "witness", "body", "value", "analytic_upper", "witness_points", "witness_step_or_weights",
                          "seed", "grid_resolution", "restarts", "paper_ref", "provenance"});
  csv.row()(delta ? "delta" : "omega")(c.m)(w.name())(body.name())(e.value)(
      !delta && om && om->m == c.m ? format_double(om->value) : std::string())(witness_a)(witness_b)(e.seed)(
      e.grid_resolution)(e.restarts)(claim)("searched lower estimate");
  return 0;
}

inline int cmd_duality(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "Lozanovskii duality: Phi_X + Phi_X* = Lambda on the simplex";
  ctx.log << "claim: " << claim << "\n";
  CsvWriter csv(ctx.out, {"norm", "dim", "p", "weights", "samples", "max_abs_residual", "max_closed_form_gap", "paper_ref",
                          "provenance"});
  double worst = 0.0, gap = 0.0;
  int dim = c.dim;
  if (c.norm == "lp") {
    const bool fixed = !c.weights.empty();
    if (fixed) dim = static_cast<int>(c.weights.size());
    for (std::size_t s = 0; s < c.samples; ++s) {
      Rng rng(c.seed, s);
      double p = c.p;
      Vec a = c.weights;
      int d = dim;
      if (!fixed) {
        d = 2 + static_cast<int>(rng.index(5));
        p = rng.uniform(1.0, 8.0);
        a.resize(static_cast<std::size_t>(d));
        for (auto& v : a) v = std::exp2(rng.uniform(-2.0, 2.0));
      }
      const Vec u = rng.simplex_point(static_cast<std::size_t>(d));
      worst = std::max(worst, std::abs(lozanovskii_residual(u, LatticeNorm::lp(d, p, a))));
    }
    csv.row()("lp")(fixed ? std::to_string(dim) : std::string("random"))(fixed ? format_double(c.p) : std::string("random"))(
        fixed ? join(c.weights) : std::string("random"))(c.samples)(worst)("")(claim)("closed form");
  } else if (c.norm == "oracle") {
    const double p = c.p;
    const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? kInf : p / (p - 1.0));
    const LatticeNorm closed = LatticeNorm::lp(dim, p);
    const LatticeNorm X = LatticeNorm::oracle(
        dim, [p](std::span<const double> x) { return lp_norm(x, p); }, [q](std::span<const double> x) { return lp_norm(x, q); });
    for (std::size_t s = 0; s < c.samples; ++s) {
      Rng rng(c.seed, s);
      const Vec u = rng.simplex_point(static_cast<std::size_t>(dim));
      worst = std::max(worst, std::abs(lozanovskii_residual(u, X)));
      gap = std::max(gap, std::abs(indicator(u, X) - indicator(u, closed)));
    }
    csv.row()("oracle")(dim)(format_double(p))("")(c.samples)(worst)(gap)(claim)("numerical lower estimate");
  } else {
    throw Error("invalid_config", "unknown norm \"" + c.norm + "\" (lp, oracle)");
  }
  return 0;
}

inline int cmd_calderon(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "Calderon product of l_p0 and l_p1 is l_p with 1/p = (1-theta)/p0 + theta/p1; its indicator is "
                            "(1-theta) Phi_0 + theta Phi_1";
  ctx.log << "claim: " << claim << "\n";
  require(c.theta > 0.0 && c.theta < 1.0, "invalid_config", "theta must lie in (0,1)");
  const int d = c.dim;
  const LatticeNorm n0 = LatticeNorm::lp(d, c.p0), n1 = LatticeNorm::lp(d, c.p1);
  const double inv = (1.0 - c.theta) / c.p0 + c.theta / c.p1;
  const double p = 1.0 / inv;
  const NormFn interpolated = [&](std::span<const double> x) { return calderon_norm(x, n0, n1, c.theta); };
  IndicatorOptions iopt;
  // log of a lattice norm of exp(s) is convex in s, so few starts suffice
  iopt.restarts = 2;
  iopt.seed = c.seed;
  double worst_norm = 0.0, worst_phi = 0.0;
  for (std::size_t s = 0; s < c.samples; ++s) {
    Rng rng(c.seed, s);
    Vec x(static_cast<std::size_t>(d));
    for (auto& v : x) v = rng.normal();
    const double exact = lp_norm(x, p);
    worst_norm = std::max(worst_norm, std::abs(calderon_norm(x, n0, n1, c.theta) - exact) / exact);
    const Vec u = rng.simplex_point(static_cast<std::size_t>(d));
    const double phi = indicator_numeric(u, interpolated, iopt).value;
    worst_phi = std::max(worst_phi, std::abs(phi - (1.0 - c.theta) * indicator(u, n0) - c.theta * indicator(u, n1)));
  }
  CsvWriter csv(ctx.out, {"dim", "p0", "p1", "theta", "p", "samples", "max_rel_norm_error", "max_phi_residual", "paper_ref",
                          "provenance"});
  csv.row()(d)(format_double(c.p0))(format_double(c.p1))(c.theta)(p)(c.samples)(worst_norm)(worst_phi)(claim)(
      "numerical infimum vs closed form");
  return 0;
}

inline int cmd_split(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "every point of S^(2m) is the midpoint of two points with at most m+1 nonzero coordinates";
  ctx.log << "claim: " << claim << "\n";
  CsvWriter csv(ctx.out, {"m", "samples", "x", "y", "z", "a", "max_identity_error", "max_support", "min_coordinate",
                          "max_sum_error", "paper_ref", "provenance"});
  auto support = [](const Vec& v) {
    int s = 0;
    for (double t : v) s += t != 0.0;
    return s;
  };
  auto check = [&](const Vec& x, const DyadicSplit<double>& sp, double& id_err, int& supp, double& min_c, double& sum_err) {
    for (std::size_t i = 0; i < x.size(); ++i) id_err = std::max(id_err, std::abs(x[i] - 0.5 * (sp.y[i] + sp.z[i])));
    supp = std::max({supp, support(sp.y), support(sp.z)});
    for (std::size_t i = 0; i < x.size(); ++i) min_c = std::min({min_c, sp.y[i], sp.z[i]});
    sum_err = std::max({sum_err, std::abs(vec::sum(sp.y) - 1.0), std::abs(vec::sum(sp.z) - 1.0)});
  };
  double id_err = 0.0, min_c = kInf, sum_err = 0.0;
  int supp = 0;
  if (!c.point.empty()) {
    require_simplex_point(c.point);
    const auto sp = dyadic_split(c.point);
    check(c.point, sp, id_err, supp, min_c, sum_err);
    csv.row()(static_cast<int>(c.point.size() / 2))(1)(join(c.point))(join(sp.y))(join(sp.z))(sp.a)(id_err)(supp)(min_c)(
        sum_err)(claim)("constructive");
    return 0;
  }
  require(c.dim >= 1 && c.dim % 2 == 1, "invalid_config", "split needs --point or an odd --dim (2m+1 coordinates)");
  for (std::size_t s = 0; s < c.samples; ++s) {
    Rng rng(c.seed, s);
    const Vec x = rng.simplex_point(static_cast<std::size_t>(c.dim));
    check(x, dyadic_split(x), id_err, supp, min_c, sum_err);
  }
  csv.row()(c.dim / 2)(c.samples)("")("")("")("")(id_err)(supp)(c.samples ? min_c : 0.0)(sum_err)(claim)("constructive");
  return 0;
}

inline int cmd_polarize(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "signed 2^m-term average recovers the symmetric multilinear form of an m-homogeneous function";
  ctx.log << "claim: " << claim << "\n";
  const int m = c.m, d = c.dim;
  require(m >= 1 && m <= 10, "invalid_config", "polarize needs 1 <= m <= 10");
  double sym = 0.0, diag = 0.0, add = 0.0;
  for (std::size_t s = 0; s < c.samples; ++s) {
    Rng rng(c.seed, s);
    auto p = std::make_shared<Poly>(d, m);
    for (const auto& a : p->basis())
      if (total_degree(a) == m) p->set(a, rng.normal());
    const ScalarFn f = [p](std::span<const double> x) { return (*p)(x); };
    std::vector<Vec> xs(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(d)));
    for (auto& x : xs)
      for (auto& v : x) v = rng.normal();
    const double F = polarize(f, xs);
    std::vector<Vec> rev(xs.rbegin(), xs.rend());
    sym = std::max(sym, std::abs(polarize(f, rev) - F));
    const Vec& x0 = xs[0];
    diag = std::max(diag, std::abs(polarize(f, std::vector<Vec>(static_cast<std::size_t>(m), x0)) - f(x0)));
    Vec extra(static_cast<std::size_t>(d));
    for (auto& v : extra) v = rng.normal();
    std::vector<Vec> sum_args = xs, alt = xs;
    sum_args[0] = vec::add(xs[0], extra);
    alt[0] = extra;
    add = std::max(add, std::abs(polarize(f, sum_args) - F - polarize(f, alt)));
  }
  CsvWriter csv(ctx.out, {"m", "dim", "samples", "max_symmetry_error", "max_diagonal_error", "max_additivity_error",
                          "paper_ref", "provenance"});
  csv.row()(m)(d)(c.samples)(sym)(diag)(add)(claim)("exact formula");
  return 0;
}

inline int cmd_transfer(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "constant of a space at Banach-Mazur distance d: at most 2 + T_(m-1)(d)(2 + w)";
  ctx.log << "claim: " << claim << "\n";
  const double v = chebyshev_transfer(c.w, c.d, c.m);
  CsvWriter csv(ctx.out, {"w", "d", "m", "chebyshev", "value", "paper_ref", "provenance"});
  csv.row()(c.w)(c.d)(c.m)(chebyshev(c.m - 1, c.d))(v)(claim)("closed form");
  return 0;
}

inline int cmd_scan1d(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "on an interval w_2 = 1/2: E_2 <= omega_2 / 2 for every continuous function";
  ctx.log << "claim: " << claim << "\n";
  Scan1dOptions o;
  o.m = c.m;
  o.trials = c.trials;
  o.seed = c.seed;
  const ScanResult r = scan_1d(o);
  CsvWriter csv(ctx.out, {"m", "trials", "seed", "max_ratio", "mean_ratio", "argmax_trial", "paper_ref", "provenance"});
  csv.row()(c.m)(c.trials)(c.seed)(r.max_ratio)(r.mean_ratio)(r.argmax)(claim)("grid-exact (nodes on the grid)");
  return 0;
}

inline int cmd_scan(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "random-function ratios E_m/omega_m stay below the Whitney constant of the body";
  ctx.log << "claim: " << claim << "\n";
  ScanOptions o;
  const auto body = configured_body(c);
  o.body = body ? *body : ConvexBody::cube(c.dim);
  o.m = c.m;
  o.trials = c.trials;
  o.seed = c.seed;
  o.resolution = c.resolution;
  o.budget = budget_from(c);
  const ScanResult r = scan_body(o);
  CsvWriter csv(ctx.out, {"body", "m", "trials", "seed", "resolution", "max_ratio", "mean_ratio", "argmax_trial",
                          "argmax_family", "paper_ref", "provenance"});
  csv.row()(o.body.name())(c.m)(c.trials)(c.seed)(c.resolution)(r.max_ratio)(r.mean_ratio)(r.argmax)(
      r.trials.empty() ? std::string() : to_string(r.trials[r.argmax].family))(claim)("advisory (searched omega)");
  return 0;
}

inline int cmd_lift(const ExperimentConfig& c, RunContext& ctx) {
  const std::string claim = "l1 ball from its simplex face: error <= E_2(odd part on the face) + 3/2 omega_2";
  ctx.log << "claim: " << claim << "\n";
  const int n = c.dim;
  ScalarFn f;
  double omega = 0.0;
  std::string prov;
  if (c.witness == "entropy" || c.witness == "entropy_l1ball") {
    const WitnessFn w = WitnessFn::entropy_l1ball(n);
    f = w.function();
    omega = w.analytic_omega()->value;
    prov = "analytic omega";
  } else {
    const auto body = ConvexBody::lp_ball(n, 1.0);
    const WitnessFn w = make_witness(c, body);
    require(bodies_equivalent(w.body(), body), "invalid_config", "lift-check witness must live on the l1 ball");
    f = w.function();
    omega = omega_m_estimate(f, body, 2, budget_from(c)).value;
    prov = "searched omega";
  }
  const LiftReport r = simplex_lift_check(f, n, c.resolution, omega);
  CsvWriter csv(ctx.out, {"dim", "resolution", "e2_face", "omega2", "max_error", "allowed", "passed", "paper_ref",
                          "provenance"});
  csv.row()(n)(c.resolution)(r.e2_face)(r.omega2)(r.max_error)(r.allowed)(r.passed)(claim)(prov);
  return r.passed ? 0 : 1;
}

}  // namespace detail

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"bound",  "minimax", "modulus", "delta",  "duality", "calderon",
                                                 "split",  "polarize", "transfer", "scan1d", "scan",    "lift-check"};
  return names;
}

/// Runs one experiment; CSV goes to `out` (or config.output when set), the
/// claim and diagnostics to `log`. Returns the process exit status. Invalid
/// configurations throw whitney::Error.
inline int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  std::ofstream file;
  detail::open_output(config, file);
  RunContext ctx{config.output.empty() ? out : file, log};
  const std::string& cmd = config.command;
  if (cmd == "bound") return detail::cmd_bound(config, ctx);
  if (cmd == "minimax") return detail::cmd_minimax(config, ctx);
  if (cmd == "modulus") return detail::cmd_modulus(config, ctx, false);
  if (cmd == "delta") return detail::cmd_modulus(config, ctx, true);
  if (cmd == "duality") return detail::cmd_duality(config, ctx);
  if (cmd == "calderon") return detail::cmd_calderon(config, ctx);
  if (cmd == "split") return detail::cmd_split(config, ctx);
  if (cmd == "polarize") return detail::cmd_polarize(config, ctx);
  if (cmd == "transfer") return detail::cmd_transfer(config, ctx);
  if (cmd == "scan1d") return detail::cmd_scan1d(config, ctx);
  if (cmd == "scan") return detail::cmd_scan(config, ctx);
  if (cmd == "lift-check") return detail::cmd_lift(config, ctx);
  throw Error("invalid_config", "unknown command \"" + cmd + "\"");
}

inline std::string error_json(const std::string& code, const std::string& message) {
  return nlohmann::json{{"error", code}, {"message", message}}.dump();
}

}  // namespace whitney
