#pragma once

#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "whitney/common.hpp"

namespace whitney {

/// One experiment. Every field has a default, so a config file only needs
/// the fields it changes.
struct ExperimentConfig {
  std::string command;

  // body: either a full JSON descriptor or (body_kind, dim, p)
  nlohmann::json body;
  std::string body_kind;  // simplex | cube | l1 | l2 | linf | lp; empty = witness default
  int dim = 3;
  double p = 2.0;

  std::string witness = "entropy";
  double eps = 0.1;
  int m = 2;
  int resolution = 24;
  std::uint64_t seed = 1;

  // search budget
  int restarts = 16;
  int top_k = 32;
  int grid_resolution = 0;
  std::size_t max_grid_points = 1200;
  bool accept_searched = false;

  std::size_t trials = 10000;
  std::size_t samples = 100;

  // lattices
  std::string norm = "lp";  // lp | oracle
  std::vector<double> weights;
  double p0 = 1.0;
  double p1 = 3.0;
  double theta = 0.5;

  // split / transfer / polarize
  std::vector<double> point;
  double w = 0.0;
  double d = 1.0;

  // files; empty output = standard output
  std::string input;
  std::string json_output;
  std::string output;

  bool operator==(const ExperimentConfig&) const = default;
};

inline nlohmann::json exponent_json(double p) { return std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p); }

inline nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"command", c.command},
          {"body", c.body},
          {"body_kind", c.body_kind},
          {"dim", c.dim},
          {"p", exponent_json(c.p)},
          {"witness", c.witness},
          {"eps", c.eps},
          {"m", c.m},
          {"resolution", c.resolution},
          {"seed", c.seed},
          {"restarts", c.restarts},
          {"top_k", c.top_k},
          {"grid_resolution", c.grid_resolution},
          {"max_grid_points", c.max_grid_points},
          {"accept_searched", c.accept_searched},
          {"trials", c.trials},
          {"samples", c.samples},
          {"norm", c.norm},
          {"weights", c.weights},
          {"p0", exponent_json(c.p0)},
          {"p1", exponent_json(c.p1)},
          {"theta", c.theta},
          {"point", c.point},
          {"w", c.w},
          {"d", c.d},
          {"input", c.input},
          {"json_output", c.json_output},
          {"output", c.output}};
}

/// Overwrites the fields present in `j`; unknown keys are an error.
inline void apply_json(ExperimentConfig& c, const nlohmann::json& j) {
  require(j.is_object(), "invalid_config", "config must be a JSON object");
  auto num_p = [](const nlohmann::json& v) {
    if (v.is_string()) {
      require(v.get<std::string>() == "inf", "invalid_config", "p must be a number or \"inf\"");
      return kInf;
    }
    return v.get<double>();
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "body") c.body = v;
      else if (key == "body_kind") c.body_kind = v.get<std::string>();
      else if (key == "dim") c.dim = v.get<int>();
      else if (key == "p") c.p = num_p(v);
      else if (key == "witness") c.witness = v.get<std::string>();
      else if (key == "eps") c.eps = v.get<double>();
      else if (key == "m") c.m = v.get<int>();
      else if (key == "resolution") c.resolution = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "restarts") c.restarts = v.get<int>();
      else if (key == "top_k") c.top_k = v.get<int>();
      else if (key == "grid_resolution") c.grid_resolution = v.get<int>();
      else if (key == "max_grid_points") c.max_grid_points = v.get<std::size_t>();
      else if (key == "accept_searched") c.accept_searched = v.get<bool>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "samples") c.samples = v.get<std::size_t>();
      else if (key == "norm") c.norm = v.get<std::string>();
      else if (key == "weights") c.weights = v.get<std::vector<double>>();
      else if (key == "p0") c.p0 = num_p(v);
      else if (key == "p1") c.p1 = num_p(v);
      else if (key == "theta") c.theta = v.get<double>();
      else if (key == "point") c.point = v.get<std::vector<double>>();
      else if (key == "w") c.w = v.get<double>();
      else if (key == "d") c.d = v.get<double>();
      else if (key == "input") c.input = v.get<std::string>();
      else if (key == "json_output") c.json_output = v.get<std::string>();
      else if (key == "output") c.output = v.get<std::string>();
      else throw Error("invalid_config", "unknown config key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid_config", std::string("config value has the wrong type: ") + e.what());
  }
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  apply_json(c, j);
  return c;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "io_error", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("invalid_config", path + ": " + e.what());
  }
}

}  // namespace whitney
