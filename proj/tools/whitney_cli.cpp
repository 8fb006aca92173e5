// whitney: command-line runner for the experiments in include/whitney/runner.hpp.
//
//   whitney bound --witness entropy --body simplex --dim 3 --m 2 --resolution 24 --seed 7
//   whitney duality --norm lp --p 3 --weights 1,2,4 --samples 100
//   whitney scan1d --m 2 --trials 10000 --seed 1
//
// CSV goes to standard output (or --output), the exercised claim to standard
// error. Values from --config file.json override command-line flags.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "whitney.hpp"

namespace {

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return whitney::kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  whitney::require(used == s.size() && used > 0, "invalid_config", "not a number: \"" + s + "\"");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  using whitney::ExperimentConfig;
  ExperimentConfig cfg;
  std::string config_file, body_json, p = "2", p0 = "1", p1 = "3";

  CLI::App app{"Whitney constant experiments: bounds, moduli, lattice identities and ratio scans"};
  app.set_help_flag("-h,--help", "Print help and exit");
  std::string commands;
  for (const auto& c : whitney::command_names()) commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", cfg.command, "One of: " + commands)->required();

  app.add_option("--config", config_file, "JSON file whose fields override the flags");
  app.add_option("--body", cfg.body_kind, "Body kind: simplex, cube, l1, l2, linf, lp");
  app.add_option("--body-json", body_json, "Full JSON body descriptor");
  app.add_option("--dim", cfg.dim, "Dimension n")->capture_default_str();
  app.add_option("--p", p, "Exponent of the lp body or norm (number or inf)")->capture_default_str();
  app.add_option("--witness", cfg.witness, "entropy, eps, quadlog, product_eps, product_entropy")->capture_default_str();
  app.add_option("--eps", cfg.eps, "Epsilon of the hat witness")->capture_default_str();
  app.add_option("--m", cfg.m, "Order m")->capture_default_str();
  app.add_option("--resolution", cfg.resolution, "Grid resolution for E_m")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "Local search restarts")->capture_default_str();
  app.add_option("--top-k", cfg.top_k, "Candidates refined after the grid sweep")->capture_default_str();
  app.add_option("--grid-resolution", cfg.grid_resolution, "Search grid resolution (0 = automatic)")->capture_default_str();
  app.add_option("--max-grid-points", cfg.max_grid_points, "Cap on search grid size")->capture_default_str();
  app.add_flag("--accept-searched", cfg.accept_searched, "Allow advisory bounds with a searched omega");
  app.add_option("--trials", cfg.trials, "Scan trials")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Random samples")->capture_default_str();
  app.add_option("--norm", cfg.norm, "Lattice norm: lp or oracle")->capture_default_str();
  app.add_option("--weights", cfg.weights, "Comma-separated lattice weights")->delimiter(',');
  app.add_option("--p0", p0, "Calderon endpoint exponent p0")->capture_default_str();
  app.add_option("--p1", p1, "Calderon endpoint exponent p1")->capture_default_str();
  app.add_option("--theta", cfg.theta, "Interpolation parameter")->capture_default_str();
  app.add_option("--point", cfg.point, "Comma-separated simplex point for split")->delimiter(',');
  app.add_option("--w", cfg.w, "Known constant for transfer")->capture_default_str();
  app.add_option("--d", cfg.d, "Banach-Mazur distance for transfer")->capture_default_str();
  app.add_option("--input", cfg.input, "Samples CSV for minimax (x1..xn,f; '-' for stdin)");
  app.add_option("--json", cfg.json_output, "Write the minimax certificate as JSON");
  app.add_option("--output", cfg.output, "CSV output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << whitney::error_json("invalid_arguments", e.what()) << "\n";
    return 2;
  }

  try {
    cfg.p = parse_exponent(p);
    cfg.p0 = parse_exponent(p0);
    cfg.p1 = parse_exponent(p1);
    if (!body_json.empty()) {
      try {
        cfg.body = nlohmann::json::parse(body_json);
      } catch (const nlohmann::json::exception& e) {
        throw whitney::Error("invalid_config", std::string("--body-json: ") + e.what());
      }
    }
    if (!config_file.empty()) whitney::apply_json(cfg, whitney::read_json_file(config_file));
    return whitney::run(cfg, std::cout, std::cerr);
  } catch (const whitney::Error& e) {
    std::cerr << whitney::error_json(e.code(), e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << whitney::error_json("internal", e.what()) << "\n";
    return 1;
  }
}
