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


#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covelim/error.hpp"
#include "covelim/group.hpp"
#include "covelim/linalg.hpp"
#include "covelim/povm.hpp"
#include "covelim/representation.hpp"

namespace covelim {

enum class ScenarioKind {
  trine,
  two_qubit,
  three_qubit_pairs,
  four_qubit_quads,
  n_qubit,
  d3,
  failure_two_qubit,
};

constexpr std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::trine: return "trine";
    case ScenarioKind::two_qubit: return "two_qubit";
    case ScenarioKind::three_qubit_pairs: return "three_qubit_pairs";
    case ScenarioKind::four_qubit_quads: return "four_qubit_quads";
    case ScenarioKind::n_qubit: return "n_qubit";
    case ScenarioKind::d3: return "d3";
    case ScenarioKind::failure_two_qubit: return "failure_two_qubit";
  }
  return "unknown";
}

inline std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  for (ScenarioKind k : {ScenarioKind::trine, ScenarioKind::two_qubit, ScenarioKind::three_qubit_pairs,
                         ScenarioKind::four_qubit_quads, ScenarioKind::n_qubit, ScenarioKind::d3,
                         ScenarioKind::failure_two_qubit})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

/// Qubit-state angle in [0, pi/4].
class ThetaParam {
 public:
  explicit ThetaParam(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 4.0 + 1e-15))
      throw Error(ErrorCode::invalid_parameter, "theta must lie in [0, pi/4]");
  }
  double value() const noexcept { return theta_; }
  double tan() const { return std::tan(theta_); }

 private:
  double theta_;
};

/// Range comparisons accept boundary values up to rounding.
inline constexpr double kBoundarySlack = 1e-12;

/// |+-theta> = cos(theta)|0> +- sin(theta)|1> per qubit, tensored in order.
inline Vector fiducial_state(ThetaParam theta, const std::vector<int>& signs) {
  if (signs.empty()) throw Error(ErrorCode::invalid_parameter, "need at least one qubit");
  const double c = std::cos(theta.value());
  const double s = std::sin(theta.value());
  Vector out = Vector::Ones(1);
  for (int sign : signs) {
    if (sign != 1 && sign != -1) throw Error(ErrorCode::invalid_parameter, "signs must be +1 or -1");
    Vector q(2);
    q << c, sign * s;
    out = linalg::kron(out, q);
  }
  return out;
}

inline Vector fiducial_state(ThetaParam theta, std::size_t qubits) {
  return fiducial_state(theta, std::vector<int>(qubits, 1));
}

/// Phases of a seed vector. For qubit scenarios `basis_phases[x]` is phi_x on
/// the computational basis vector |x>; for trine and d3 it is the phase on
/// each invariant-subspace basis vector. Every basis vector carries amplitude
/// magnitude 1/sqrt(|G|).
struct PhaseSolution {
  ScenarioKind kind = ScenarioKind::trine;
  double theta = 0.0;
  std::size_t qubits = 0;
  std::map<std::string, double> parameters;
  std::vector<double> basis_phases;
  // residual of the defining orthogonality condition
  double residual = 0.0;
  std::pair<double, double> validity{0.0, std::numbers::pi / 4.0};
};

inline std::string bit_label(std::size_t x, std::size_t bits) {
  std::string out(bits, '0');
  for (std::size_t i = 0; i < bits; ++i)
    if ((x >> (bits - 1 - i)) & 1U) out[i] = '1';
  return out;
}

inline std::size_t hamming_weight(std::size_t x) {
  std::size_t w = 0;
  for (; x; x &= x - 1) ++w;
  return w;
}

namespace detail {

inline Complex expi(double phase) { return std::polar(1.0, phase); }

inline double clamped_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }

// sum_x e^{i phi_x} c^{n-|x|} (sign s)^{|x|} over the sign pattern, i.e. <psi|X>
// up to normalization, divided by cos^n.
inline Complex qubit_overlap(const std::vector<double>& phases, std::size_t n, double t,
                             const std::vector<int>& signs) {
  Complex acc{};
  for (std::size_t x = 0; x < phases.size(); ++x) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      if ((x >> (n - 1 - i)) & 1U) w *= signs[i] * t;
    acc += w * expi(phases[x]);
  }
  return acc;
}

}  // namespace detail

/// Phases (0, pi) on (|u+>, |u->).
inline PhaseSolution solve_trine() {
  PhaseSolution sol;
  sol.kind = ScenarioKind::trine;
  sol.qubits = 1;
  sol.basis_phases = {0.0, std::numbers::pi};
  sol.residual = std::abs(detail::expi(0.0) + detail::expi(std::numbers::pi));
  return sol;
}

/// Phases (0, pi, 0, pi) on (v1, v2, v3, v4), giving X = (2/sqrt6)|0>|-x>.
inline PhaseSolution solve_d3() {
  PhaseSolution sol;
  sol.kind = ScenarioKind::d3;
  sol.qubits = 2;
  const double pi = std::numbers::pi;
  sol.basis_phases = {0.0, pi, 0.0, pi};
  // |0>|+x> = (1/2) sum v_j
  Complex acc{};
  for (double p : sol.basis_phases) acc += detail::expi(p);
  sol.residual = std::abs(acc);
  return sol;
}

/// 1 - tan^2(theta) - 2 tan(theta) cos(phi)
inline double two_qubit_condition(double theta, double phi) {
  const double t = std::tan(theta);
  return 1.0 - t * t - 2.0 * t * std::cos(phi);
}

/// phi = arccos[(1 - tan^2)/(2 tan)] with phases phi00 = 0, phi01 = phi + pi,
/// phi10 = pi - phi, phi11 = pi. Requires tan(theta) >= sqrt2 - 1.
inline PhaseSolution solve_two_qubit(ThetaParam theta) {
  const double t = theta.tan();
  const double threshold = std::numbers::sqrt2 - 1.0;
  if (t < threshold - kBoundarySlack)
    throw Error(ErrorCode::no_exact_solution,
                "tan(theta) < sqrt(2) - 1; use the failure_two_qubit scenario");
  const double pi = std::numbers::pi;
  const double phi = detail::clamped_acos((1.0 - t * t) / (2.0 * t));
  PhaseSolution sol;
  sol.kind = ScenarioKind::two_qubit;
  sol.theta = theta.value();
  sol.qubits = 2;
  sol.parameters["phi"] = phi;
  sol.basis_phases = {0.0, phi + pi, pi - phi, pi};
  sol.residual = std::abs(detail::qubit_overlap(sol.basis_phases, 2, t, {1, 1}));
  sol.validity = {pi / 8.0, pi / 4.0};
  return sol;
}

/// alpha = arccos[(1/tan^2 - 1)/2], beta = arccos[(tan^2 - 1)/2] with the
/// phase pattern phi011 = alpha, phi110 = -alpha, phi001 = beta,
/// phi100 = -beta, phi101 = phi010 = 0, phi000 = phi111 = pi.
/// Requires 1/3 <= tan^2(theta) <= 3.
inline PhaseSolution solve_three_qubit_pairs(ThetaParam theta) {
  const double t = theta.tan();
  const double t2 = t * t;
  if (t2 < 1.0 / 3.0 - kBoundarySlack || t2 > 3.0 + kBoundarySlack)
    throw Error(ErrorCode::no_exact_solution, "pair elimination needs 1/3 <= tan^2(theta) <= 3");
  const double pi = std::numbers::pi;
  const double alpha = detail::clamped_acos((1.0 / t2 - 1.0) / 2.0);
  const double beta = detail::clamped_acos((t2 - 1.0) / 2.0);
  PhaseSolution sol;
  sol.kind = ScenarioKind::three_qubit_pairs;
  sol.theta = theta.value();
  sol.qubits = 3;
  sol.parameters["alpha"] = alpha;
  sol.parameters["beta"] = beta;
  //                 000  001   010  011    100    101  110     111
  sol.basis_phases = {pi, beta, 0.0, alpha, -beta, 0.0, -alpha, pi};
  sol.residual = std::max(std::abs(detail::qubit_overlap(sol.basis_phases, 3, t, {1, 1, 1})),
                          std::abs(detail::qubit_overlap(sol.basis_phases, 3, t, {-1, -1, -1})));
  sol.validity = {std::atan(std::sqrt(1.0 / 3.0)), pi / 4.0};
  return sol;
}

/// cos(alpha) = (1 - tan^4)/(2 tan^2); z = +1 on {1000, 0010, 0111, 1101,
/// 0101, 0110, 1111}, z0011 = e^{i alpha}, z1100 = e^{-i alpha}, else -1.
/// Requires sqrt2 - 1 <= tan^2(theta) <= 1.
inline PhaseSolution solve_four_qubit_quads(ThetaParam theta) {
  const double t = theta.tan();
  const double t2 = t * t;
  if (t2 < std::numbers::sqrt2 - 1.0 - kBoundarySlack || t2 > 1.0 + kBoundarySlack)
    throw Error(ErrorCode::no_exact_solution, "quad elimination needs sqrt(2)-1 <= tan^2(theta) <= 1");
  const double pi = std::numbers::pi;
  const double cos_alpha = (1.0 - t2 * t2) / (2.0 * t2);
  const double alpha = detail::clamped_acos(cos_alpha);
  PhaseSolution sol;
  sol.kind = ScenarioKind::four_qubit_quads;
  sol.theta = theta.value();
  sol.qubits = 4;
  sol.parameters["alpha"] = alpha;
  sol.parameters["cos_alpha"] = std::cos(alpha);
  sol.basis_phases.assign(16, pi);
  for (std::size_t x : {0b1000U, 0b0010U, 0b0111U, 0b1101U, 0b0101U, 0b0110U, 0b1111U})
    sol.basis_phases[x] = 0.0;
  sol.basis_phases[0b0011] = alpha;
  sol.basis_phases[0b1100] = -alpha;
  double worst = 0.0;
  for (const std::vector<int>& signs : std::vector<std::vector<int>>{
           {1, 1, 1, 1}, {-1, -1, -1, -1}, {1, 1, -1, -1}, {-1, -1, 1, 1}})
    worst = std::max(worst, std::abs(detail::qubit_overlap(sol.basis_phases, 4, t, signs)));
  sol.residual = worst;
  sol.validity = {std::atan(std::sqrt(std::numbers::sqrt2 - 1.0)), pi / 4.0};
  return sol;
}

/// |e^{i alpha} + (1 + e^{i beta} tan)^n - 1|
inline double n_qubit_condition(double theta, std::size_t n, double alpha, double beta) {
  const Complex w = std::pow(Complex(1.0) + detail::expi(beta) * std::tan(theta), static_cast<double>(n));
  return std::abs(detail::expi(alpha) + w - 1.0);
}

inline double n_qubit_threshold(std::size_t n) {
  return std::atan(std::pow(2.0, 1.0 / static_cast<double>(n)) - 1.0);
}

/// Single-state elimination on n qubits with phi_0 = alpha and
/// phi_x = |x| beta. beta solves |1 - (1 + e^{i beta} tan)^n| = 1 by bisection
/// on [0, pi]; alpha = arg[1 - (1 + e^{i beta} tan)^n].
inline PhaseSolution solve_n_qubit(ThetaParam theta, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::invalid_parameter, "need at least one qubit");
  if (n > 16) throw Error(ErrorCode::size_limit, "at most 16 qubits");
  const double t = theta.tan();
  const double dn = static_cast<double>(n);
  auto w_of = [&](double beta) { return std::pow(Complex(1.0) + detail::expi(beta) * t, dn); };
  auto f = [&](double beta) { return std::abs(1.0 - w_of(beta)) - 1.0; };

  const double f0 = f(0.0);
  if (std::pow(1.0 + t, dn) < 2.0 - kBoundarySlack)
    throw Error(ErrorCode::no_exact_solution, "theta below arctan(2^(1/n) - 1)");
  double beta = 0.0;
  if (f0 > 0.0) {
    double lo = 0.0, hi = std::numbers::pi;
    if (f(hi) > 0.0) throw Error(ErrorCode::numerical_failure, "no sign change on [0, pi]");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    beta = std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
  }
  const double alpha = std::arg(1.0 - w_of(beta));

  PhaseSolution sol;
  sol.kind = ScenarioKind::n_qubit;
  sol.theta = theta.value();
  sol.qubits = n;
  sol.parameters["alpha"] = alpha;
  sol.parameters["beta"] = beta;
  sol.basis_phases.resize(std::size_t{1} << n);
  for (std::size_t x = 0; x < sol.basis_phases.size(); ++x)
    sol.basis_phases[x] = x == 0 ? alpha : static_cast<double>(hamming_weight(x)) * beta;
  sol.residual = n_qubit_condition(theta.value(), n, alpha, beta);
  if (sol.residual > 1e-9)
    throw Error(ErrorCode::numerical_failure, "root finder residual " + std::to_string(sol.residual));
  sol.validity = {n_qubit_threshold(n), std::numbers::pi / 4.0};
  return sol;
}

/// A solved scenario: state set, its decomposition, the seed and the POVM.
struct ScenarioInstance {
  PhaseSolution solution;
  std::size_t states_per_qubit = 2;
  EliminationScenario scenario;
  IrrepDecomposition decomposition;
  SeedVector seed;
  // rank-one orbit POVM
  Povm orbit;
  // orbit merged over cosets of the eliminated subgroup (equal to `orbit`
  // for single-state elimination)
  Povm povm;
  CosetPartition cosets;
};

namespace detail {

// index of (j_1, ..., j_n) in Z_N^n
inline Element tuple_index(const std::vector<std::size_t>& digits, std::size_t n) {
  Element x = 0;
  for (std::size_t d : digits) x = x * n + d;
  return x;
}

inline std::vector<Element> qubit_subgroup(ScenarioKind kind, std::size_t n_states) {
  const std::size_t h = n_states / 2;
  switch (kind) {
    case ScenarioKind::three_qubit_pairs:
      return {0, tuple_index({h, h, h}, n_states)};
    case ScenarioKind::four_qubit_quads:
      return {0, tuple_index({h, h, h, h}, n_states), tuple_index({0, 0, h, h}, n_states),
              tuple_index({h, h, 0, 0}, n_states)};
    default:
      return {0};
  }
}

inline ScenarioInstance finish_instance(PhaseSolution solution, std::size_t n_states,
                                        EliminationScenario scenario, IrrepDecomposition decomp,
                                        const Vector& amplitudes) {
  SeedVector seed = build_seed(decomp, amplitudes);
  Povm orbit = covariant_povm(scenario, seed);
  CosetPartition cosets = left_cosets(*scenario.group(), scenario.eliminated_subgroup());
  Povm merged = scenario.eliminated_subgroup().order() == 1 ? orbit : merge_by_cosets(orbit, cosets);
  return ScenarioInstance{std::move(solution), n_states,    std::move(scenario), std::move(decomp),
                          std::move(seed),     std::move(orbit), std::move(merged), std::move(cosets)};
}

}  // namespace detail

/// Builds the scenario of a phase solution over Z_N^n (N = `states_per_qubit`)
/// with representation g^j -> diag(1, e^{2 pi i j/N}) per qubit. The seed keeps
/// its phases; normalization becomes N^{-n/2}.
inline ScenarioInstance extend_to_ZN(const PhaseSolution& solution, std::size_t states_per_qubit) {
  const std::size_t n_states = states_per_qubit;
  if (solution.kind == ScenarioKind::trine || solution.kind == ScenarioKind::d3) {
    if (n_states != 2)
      throw Error(ErrorCode::invalid_parameter, "trine and d3 scenarios have no Z_N extension");
    if (solution.kind == ScenarioKind::trine) {
      UnitaryRepresentation rep = rep_rotation_z3();
      EliminationScenario sc(rep, linalg::basis_vector(2, 0));
      Vector amps(2);
      for (Eigen::Index i = 0; i < 2; ++i) amps(i) = detail::expi(solution.basis_phases[i]) / std::sqrt(3.0);
      IrrepDecomposition decomp = decompose(rep, character_table(rep.group()));
      return detail::finish_instance(solution, 2, std::move(sc), std::move(decomp), amps);
    }
    const UnitaryRepresentation g3 = rep_d3_standard();
    UnitaryRepresentation rep = inner_tensor(g3, g3);
    Vector plus_x(2);
    plus_x << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    EliminationScenario sc(rep, linalg::kron(linalg::basis_vector(2, 0), plus_x));
    Vector amps(4);
    for (Eigen::Index i = 0; i < 4; ++i) amps(i) = detail::expi(solution.basis_phases[i]) / std::sqrt(6.0);
    IrrepDecomposition decomp = decompose(rep, character_table(rep.group()));
    return detail::finish_instance(solution, 2, std::move(sc), std::move(decomp), amps);
  }
  if (solution.kind == ScenarioKind::failure_two_qubit)
    throw Error(ErrorCode::invalid_parameter, "use failure_povm_two_qubit for the failure scenario");
  if (n_states < 2) throw Error(ErrorCode::invalid_parameter, "N must be >= 2");
  if ((solution.kind == ScenarioKind::three_qubit_pairs ||
       solution.kind == ScenarioKind::four_qubit_quads) &&
      n_states % 2 != 0)
    throw Error(ErrorCode::invalid_parameter, "N needs to be even for coset elimination");

  const std::size_t n = solution.qubits;
  UnitaryRepresentation rep = tensor_power(rep_cyclic_qubit(n_states), n);
  GroupPtr group = rep.group();
  Subgroup h(group, detail::qubit_subgroup(solution.kind, n_states));
  EliminationScenario sc(rep, fiducial_state(ThetaParam(solution.theta), n), std::move(h));

  const double norm = std::pow(static_cast<double>(n_states), -0.5 * static_cast<double>(n));
  Vector x(rep.dim());
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = norm * detail::expi(solution.basis_phases[k]);
  IrrepDecomposition decomp = decompose(sc.rep(), character_table(group));
  const Vector amps = decomp.coordinates(x);
  return detail::finish_instance(solution, n_states, std::move(sc), std::move(decomp), amps);
}

inline ScenarioInstance instantiate(const PhaseSolution& solution) { return extend_to_ZN(solution, 2); }

/// Two-qubit elimination with a failure outcome for tan(theta) <= sqrt2 - 1.
struct FailurePovm {
  double theta = 0.0;
  std::size_t states_per_qubit = 2;
  // c_jk in the order 00, 01, 10, 11 (before the 2/N rescaling for Z_N)
  std::vector<Complex> coefficients;
  Matrix failure_element;
  double failure_probability = 0.0;         // closed form
  double failure_probability_direct = 0.0;  // average of <psi|Pi_f|psi> over the states
  std::optional<EliminationScenario> scenario;
  // orbit elements followed by the failure element
  Povm povm;
};

/// 1 - 2 sin^2(theta) [1 + 2 cos(theta)(cos(theta) + sin(theta))]
inline double failure_probability_closed_form(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return 1.0 - 2.0 * s * s * (1.0 + 2.0 * c * (c + s));
}

/// c00 = tan + tan^2/2, c01 = c10 = c11 = -1/2, Pi_f = I - sum_g Pi_g.
inline FailurePovm failure_povm_two_qubit(ThetaParam theta, std::size_t states_per_qubit = 2) {
  const double t = theta.tan();
  if (t > std::numbers::sqrt2 - 1.0 + kBoundarySlack)
    throw Error(ErrorCode::exact_regime, "tan(theta) > sqrt(2) - 1; use the exact two_qubit scenario");
  if (states_per_qubit < 2) throw Error(ErrorCode::invalid_parameter, "N must be >= 2");
  FailurePovm out;
  out.theta = theta.value();
  out.states_per_qubit = states_per_qubit;
  out.coefficients = {t + 0.5 * t * t, -0.5, -0.5, -0.5};

  UnitaryRepresentation rep = tensor_power(rep_cyclic_qubit(states_per_qubit), 2);
  EliminationScenario sc(rep, fiducial_state(theta, 2));
  const double scale = 2.0 / static_cast<double>(states_per_qubit);
  Vector x(4);
  for (Eigen::Index k = 0; k < 4; ++k) x(k) = scale * out.coefficients[k];

  out.povm = orbit_povm(sc, x);
  out.failure_element = Matrix::Identity(4, 4) - out.povm.sum();
  PovmElement fail;
  fail.label = "fail";
  fail.dense = out.failure_element;
  fail.rank = linalg::hermitian_rank(fail.dense, kRankThreshold);
  out.povm.elements.push_back(std::move(fail));

  out.failure_probability = failure_probability_closed_form(theta.value());
  double acc = 0.0;
  const std::size_t order = sc.group()->order();
  for (Element g = 0; g < order; ++g) {
    const Vector s = sc.state(g);
    acc += s.dot(out.failure_element * s).real();
  }
  out.failure_probability_direct = acc / static_cast<double>(order);
  out.scenario = std::move(sc);
  return out;
}

}  // namespace covelim
