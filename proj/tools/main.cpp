// Copyright 2026 The covelim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "covelim_cli.hpp"

namespace {

using covelim::cli::ScenarioConfig;

struct Flags {
  std::string config_path;
  std::string scenario;
  std::string theta;
  std::string theta_min;
  std::string theta_max;
  std::optional<std::size_t> n;
  std::optional<std::size_t> big_n;
  std::optional<std::size_t> points;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> state;
  std::string out_path;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON ScenarioConfig file");
  cmd->add_option("--scenario", f.scenario,
                  "trine | two_qubit | three_qubit_pairs | four_qubit_quads | n_qubit | d3 | failure_two_qubit");
  cmd->add_option("--theta", f.theta, "angle in radians or e.g. piOver8");
  cmd->add_option("--n", f.n, "qubit count (n_qubit)");
  cmd->add_option("--big-n", f.big_n, "states per qubit, Z_N extension (default 2)");
  cmd->add_option("--out", f.out_path, "write output to this file instead of stdout");
}

ScenarioConfig resolve(const Flags& f) {
  ScenarioConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw covelim::Error(covelim::ErrorCode::invalid_parameter, "cannot open " + f.config_path);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw covelim::Error(covelim::ErrorCode::invalid_parameter, std::string("bad JSON: ") + e.what());
    }
    covelim::cli::apply_json(cfg, doc);
  }
  if (!f.scenario.empty()) cfg.scenario = covelim::cli::scenario_from_string(f.scenario);
  if (!f.theta.empty()) cfg.theta = covelim::cli::parse_angle(f.theta);
  if (!f.theta_min.empty()) cfg.theta_min = covelim::cli::parse_angle(f.theta_min);
  if (!f.theta_max.empty()) cfg.theta_max = covelim::cli::parse_angle(f.theta_max);
  if (f.n) cfg.n = *f.n;
  if (f.big_n) cfg.big_n = *f.big_n;
  if (f.points) cfg.points = *f.points;
  if (f.shots) cfg.shots = *f.shots;
  if (f.seed) cfg.seed = *f.seed;
  if (f.state) cfg.state = *f.state;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Covariant state-elimination measurements for qubit sequences"};
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "build a scenario POVM and print a JSON RunReport");
  add_common(verify, f);

  auto* sweep = app.add_subcommand("sweep", "CSV of solvability and residuals over a theta grid");
  add_common(sweep, f);
  sweep->add_option("--theta-min", f.theta_min, "lower end of the grid (default 0)");
  sweep->add_option("--theta-max", f.theta_max, "upper end of the grid (default pi/4)");
  sweep->add_option("--points", f.points, "grid points (default 50)");

  auto* figure1 = app.add_subcommand("figure1", "CSV of the four-qubit entropy gap versus s");
  figure1->add_option("--points", f.points, "grid points on [0, 1/2] (default 200)");
  figure1->add_option("--out", f.out_path, "write output to this file instead of stdout");

  auto* sample = app.add_subcommand("sample", "Monte Carlo outcome counts as JSON");
  add_common(sample, f);
  sample->add_option("--shots", f.shots, "shots per state (default 100000)");
  sample->add_option("--seed", f.seed, "RNG seed (default 1)");
  sample->add_option("--state", f.state, "sample only this orbit state index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : covelim::cli::kConfigError;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!f.out_path.empty()) {
    file.open(f.out_path);
    if (!file) {
      std::cerr << "error: cannot write " << f.out_path << "\n";
      return covelim::cli::kConfigError;
    }
    out = &file;
  }

  if (*figure1) return covelim::cli::cmd_figure1(f.points.value_or(200), *out, std::cerr);

  ScenarioConfig cfg;
  try {
    cfg = resolve(f);
  } catch (const covelim::Error& e) {
    covelim::cli::report_error(e, std::cerr);
    return covelim::cli::kConfigError;
  }
  if (*verify) return covelim::cli::cmd_verify(cfg, *out, std::cerr);
  if (*sweep) return covelim::cli::cmd_sweep(cfg, *out, std::cerr);
  return covelim::cli::cmd_sample(cfg, *out, std::cerr);
}
