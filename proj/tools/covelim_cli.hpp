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


// Subcommands of the covelim tool. Kept in a header so tests can drive them
// in-process with string streams.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "covelim.hpp"

namespace covelim::cli {

using nlohmann::json;

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kConfigError = 2 };

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::trine;
  std::optional<double> theta;
  std::size_t n = 0;  // qubit count, n_qubit only
  std::size_t big_n = 2;  // states per qubit
  std::uint64_t seed = 1;
  std::uint64_t shots = 100000;
  std::optional<std::size_t> state;  // sample a single orbit state
  double theta_min = 0.0;
  double theta_max = std::numbers::pi / 4.0;
  std::size_t points = 0;
};

/// Radians, or "pi", "piOverK", "JpiOverK" (e.g. "3piOver16").
inline double parse_angle(const std::string& text) {
  static const std::regex pattern(R"(^\s*(\d+)?pi(?:Over(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, pattern)) {
    const double num = m[1].matched ? std::stod(m[1].str()) : 1.0;
    const double den = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (den == 0.0) throw Error(ErrorCode::invalid_parameter, "zero denominator in angle " + text);
    return num * std::numbers::pi / den;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_parameter, "cannot parse angle '" + text + "'");
  }
  if (used != text.size()) throw Error(ErrorCode::invalid_parameter, "cannot parse angle '" + text + "'");
  return value;
}

inline double angle_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle(j.get<std::string>());
  throw Error(ErrorCode::invalid_parameter, "angle must be a number or string");
}

inline ScenarioKind scenario_from_string(const std::string& name) {
  const auto kind = parse_scenario_kind(name);
  if (!kind) throw Error(ErrorCode::invalid_parameter, "unknown scenario '" + name + "'");
  return *kind;
}

/// Fills `cfg` from a ScenarioConfig JSON document; absent keys keep their value.
inline void apply_json(ScenarioConfig& cfg, const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::invalid_parameter, "config must be a JSON object");
  try {
    if (doc.contains("scenario")) cfg.scenario = scenario_from_string(doc.at("scenario").get<std::string>());
    if (doc.contains("theta")) cfg.theta = angle_from_json(doc.at("theta"));
    if (doc.contains("n")) cfg.n = doc.at("n").get<std::size_t>();
    if (doc.contains("N")) cfg.big_n = doc.at("N").get<std::size_t>();
    if (doc.contains("big_n")) cfg.big_n = doc.at("big_n").get<std::size_t>();
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("shots")) cfg.shots = doc.at("shots").get<std::uint64_t>();
    if (doc.contains("state")) cfg.state = doc.at("state").get<std::size_t>();
    if (doc.contains("theta_min")) cfg.theta_min = angle_from_json(doc.at("theta_min"));
    if (doc.contains("theta_max")) cfg.theta_max = angle_from_json(doc.at("theta_max"));
    if (doc.contains("points")) cfg.points = doc.at("points").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_parameter, std::string("bad config field: ") + e.what());
  }
}

inline bool uses_theta(ScenarioKind k) { return k != ScenarioKind::trine && k != ScenarioKind::d3; }

inline bool is_coset_scenario(ScenarioKind k) {
  return k == ScenarioKind::three_qubit_pairs || k == ScenarioKind::four_qubit_quads;
}

/// Parameter consistency; throws invalid-parameter.
inline void validate(const ScenarioConfig& cfg, bool need_theta = true) {
  if (need_theta && uses_theta(cfg.scenario) && !cfg.theta)
    throw Error(ErrorCode::invalid_parameter, std::string(to_string(cfg.scenario)) + " needs theta");
  if (cfg.scenario == ScenarioKind::n_qubit && cfg.n == 0)
    throw Error(ErrorCode::invalid_parameter, "n_qubit needs n >= 1");
  if (cfg.big_n < 2) throw Error(ErrorCode::invalid_parameter, "N must be >= 2");
  if (!uses_theta(cfg.scenario) && cfg.big_n != 2)
    throw Error(ErrorCode::invalid_parameter, "trine and d3 have no Z_N extension");
  if (is_coset_scenario(cfg.scenario) && cfg.big_n % 2 != 0)
    throw Error(ErrorCode::invalid_parameter, "N needs to be even for coset elimination");
  if (cfg.shots == 0) throw Error(ErrorCode::invalid_parameter, "shots must be >= 1");
}

inline json config_echo(const ScenarioConfig& cfg) {
  json j;
  j["scenario"] = std::string(to_string(cfg.scenario));
  if (cfg.theta && uses_theta(cfg.scenario)) j["theta"] = *cfg.theta;
  if (cfg.scenario == ScenarioKind::n_qubit) j["n"] = cfg.n;
  j["N"] = cfg.big_n;
  return j;
}

inline PhaseSolution solve(const ScenarioConfig& cfg, double theta) {
  switch (cfg.scenario) {
    case ScenarioKind::trine: return solve_trine();
    case ScenarioKind::d3: return solve_d3();
    case ScenarioKind::two_qubit: return solve_two_qubit(ThetaParam(theta));
    case ScenarioKind::three_qubit_pairs: return solve_three_qubit_pairs(ThetaParam(theta));
    case ScenarioKind::four_qubit_quads: return solve_four_qubit_quads(ThetaParam(theta));
    case ScenarioKind::n_qubit: return solve_n_qubit(ThetaParam(theta), cfg.n);
    case ScenarioKind::failure_two_qubit: break;
  }
  throw Error(ErrorCode::invalid_parameter, "failure scenario has no phase solution");
}

/// The POVM and state set a config describes, whichever solver builds it.
struct BuiltScenario {
  std::optional<ScenarioInstance> exact;
  std::optional<FailurePovm> failure;

  const Povm& povm() const { return exact ? exact->povm : failure->povm; }
  const EliminationScenario& scenario() const { return exact ? exact->scenario : *failure->scenario; }
};

inline BuiltScenario build(const ScenarioConfig& cfg, double theta) {
  BuiltScenario b;
  if (cfg.scenario == ScenarioKind::failure_two_qubit) {
    b.failure = failure_povm_two_qubit(ThetaParam(theta), cfg.big_n);
  } else {
    b.exact = extend_to_ZN(solve(cfg, theta), cfg.big_n);
  }
  return b;
}

inline json entropy_json(const EntropyReport& r) {
  return json{{"s_rho", r.s_rho}, {"s_sets", r.s_sets}, {"holevo_gap", r.holevo_gap},
              {"bound", r.bound}, {"feasible", r.feasible}};
}

/// RunReport for a config; `pass` reflects every residual check.
inline json run_report(const ScenarioConfig& cfg) {
  validate(cfg);
  const double theta = cfg.theta.value_or(0.0);
  const BuiltScenario b = build(cfg, theta);
  const PovmReport pr = verify_povm(b.povm());
  const EliminationReport er = verify_elimination(b.povm(), b.scenario());
  bool pass = pr.pass && er.pass;

  json report;
  report["scenario"] = config_echo(cfg);
  report["povm"] = {{"outcomes", b.povm().size()}, {"ranks", b.povm().ranks()}, {"labels", b.povm().labels()}};
  report["residuals"] = {{"completeness", pr.completeness_residual},
                         {"min_eigenvalue", pr.min_eigenvalue},
                         {"elimination", er.max_probability}};
  if (b.exact) {
    report["residuals"]["condition"] = b.exact->solution.residual;
    report["solution"] = {{"parameters", b.exact->solution.parameters},
                          {"basis_phases", b.exact->solution.basis_phases}};
    pass = pass && b.exact->solution.residual <= kPovmTolerance;
  }
  if (b.failure) {
    report["failure_probability"] = {{"closed_form", b.failure->failure_probability},
                                     {"direct", b.failure->failure_probability_direct}};
    pass = pass && std::abs(b.failure->failure_probability - b.failure->failure_probability_direct) <=
                       kPovmTolerance;
  }
  if (is_coset_scenario(cfg.scenario)) {
    const EntropyReport ent = holevo_check(coset_state_sets(b.scenario()));
    report["entropy"] = entropy_json(ent);
    pass = pass && ent.feasible;
  }
  report["pass"] = pass;
  return report;
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::completeness_failure:
    case ErrorCode::numerical_failure:
      return kVerificationFailure;
    default:
      return kConfigError;
  }
}

inline void report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (e.code() == ErrorCode::no_exact_solution)
    err << "hint: no exact elimination measurement at this theta; try scenario failure_two_qubit "
           "for two qubits\n";
}

inline int cmd_verify(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const json report = run_report(cfg);
    out << report.dump(2) << "\n";
    return report["pass"].get<bool>() ? kPass : kVerificationFailure;
  } catch (const Error& e) {
    report_error(e, err);
    return exit_code_for(e);
  }
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kSweepHeader =
    "theta,solvable,outcomes,completeness_residual,min_eigenvalue,elimination_residual,"
    "condition_residual,failure_probability,failure_probability_closed_form,pass";

/// One CSV row per theta on a uniform grid; unsolvable rows leave residuals empty.
inline int cmd_sweep(const ScenarioConfig& cfg_in, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = cfg_in;
  if (cfg.points == 0) cfg.points = 50;
  try {
    validate(cfg, false);
    if (!uses_theta(cfg.scenario))
      throw Error(ErrorCode::invalid_parameter, "sweep needs a theta-dependent scenario");
    if (cfg.points < 2) throw Error(ErrorCode::invalid_parameter, "sweep needs points >= 2");
    if (!(cfg.theta_min >= 0.0 && cfg.theta_max <= std::numbers::pi / 4.0 + 1e-15 &&
          cfg.theta_min <= cfg.theta_max))
      throw Error(ErrorCode::invalid_parameter, "theta range must lie in [0, pi/4]");
  } catch (const Error& e) {
    report_error(e, err);
    return kConfigError;
  }
  out << kSweepHeader << "\n";
  for (double theta : linear_grid(cfg.theta_min, cfg.theta_max, cfg.points)) {
    out << fmt17(theta) << ",";
    try {
      const BuiltScenario b = build(cfg, theta);
      const PovmReport pr = verify_povm(b.povm());
      const EliminationReport er = verify_elimination(b.povm(), b.scenario());
      bool pass = pr.pass && er.pass;
      out << "1," << b.povm().size() << "," << fmt17(pr.completeness_residual) << ","
          << fmt17(pr.min_eigenvalue) << "," << fmt17(er.max_probability) << ",";
      if (b.exact) {
        out << fmt17(b.exact->solution.residual) << ",,,";
        pass = pass && b.exact->solution.residual <= kPovmTolerance;
      } else {
        out << "," << fmt17(b.failure->failure_probability_direct) << ","
            << fmt17(b.failure->failure_probability) << ",";
      }
      out << (pass ? 1 : 0) << "\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_exact_solution && e.code() != ErrorCode::exact_regime) {
        report_error(e, err);
        return exit_code_for(e);
      }
      out << "0,,,,,,,,0\n";
    }
  }
  return kPass;
}

/// (s, gap, bound) rows on [0, 1/2] followed by a threshold comment line.
inline int cmd_figure1(std::size_t points, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<Figure1Row> rows = figure1_data(linear_grid(0.0, 0.5, points));
    const double s_star = threshold_s(4);
    out << "s,gap,bound\n";
    for (const Figure1Row& r : rows) out << fmt17(r.s) << "," << fmt17(r.gap) << "," << fmt17(r.bound) << "\n";
    const double degrees = std::asin(std::sqrt(s_star)) * 180.0 / std::numbers::pi;
    out << "# threshold_s," << fmt17(s_star) << ",theta_degrees," << fmt17(degrees) << "\n";
    return kPass;
  } catch (const Error& e) {
    report_error(e, err);
    return exit_code_for(e);
  }
}

/// Outcomes whose eliminated set contains orbit state g.
inline std::vector<std::size_t> eliminating_outcomes(const Povm& povm, const EliminationScenario& sc,
                                                     Element g) {
  const CosetPartition p = left_cosets(*sc.group(), sc.eliminated_subgroup());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const auto& rep = povm.elements[i].representative;
    if (rep && p.coset_of[*rep] == p.coset_of[g]) out.push_back(i);
  }
  return out;
}

/// Monte Carlo counts per orbit state. State g is sampled with seed + g.
inline int cmd_sample(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    const BuiltScenario b = build(cfg, cfg.theta.value_or(0.0));
    const EliminationScenario& sc = b.scenario();
    const std::size_t order = sc.group()->order();
    std::vector<Element> states;
    if (cfg.state) {
      if (*cfg.state >= order) throw Error(ErrorCode::invalid_parameter, "state index out of range");
      states.push_back(*cfg.state);
    } else {
      for (Element g = 0; g < order; ++g) states.push_back(g);
    }
    json report;
    report["scenario"] = config_echo(cfg);
    report["shots"] = cfg.shots;
    report["seed"] = cfg.seed;
    report["labels"] = b.povm().labels();
    bool pass = true;
    json per_state = json::array();
    for (Element g : states) {
      const OutcomeSample s = sample_outcomes(b.povm(), sc.state(g), cfg.shots, cfg.seed + g);
      const std::vector<std::size_t> elim = eliminating_outcomes(b.povm(), sc, g);
      std::uint64_t elim_count = 0;
      json elim_labels = json::array();
      for (std::size_t i : elim) {
        elim_count += s.counts[i];
        elim_labels.push_back(b.povm().elements[i].label);
      }
      pass = pass && elim_count == 0;
      per_state.push_back({{"index", g},
                           {"state", sc.group()->label(g)},
                           {"counts", s.counts},
                           {"eliminated", elim_labels},
                           {"eliminated_count", elim_count}});
    }
    report["states"] = std::move(per_state);
    report["pass"] = pass;
    out << report.dump(2) << "\n";
    return pass ? kPass : kVerificationFailure;
  } catch (const Error& e) {
    report_error(e, err);
    return exit_code_for(e);
  }
}

}  // namespace covelim::cli
