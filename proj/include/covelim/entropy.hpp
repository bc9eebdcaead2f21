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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "covelim/error.hpp"
#include "covelim/linalg.hpp"
#include "covelim/povm.hpp"
#include "covelim/representation.hpp"

namespace covelim {

// All entropies and informations are in bits.

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

/// Validated density matrix; eigenvalues are computed once on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m) : matrix_(std::move(m)) {
    if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
      throw Error(ErrorCode::invalid_density_matrix, "matrix must be square and non-empty");
    if (linalg::hermiticity_residual(matrix_) > 1e-12)
      throw Error(ErrorCode::invalid_density_matrix, "matrix is not Hermitian");
    if (std::abs(matrix_.trace() - 1.0) > 1e-12)
      throw Error(ErrorCode::invalid_density_matrix, "trace differs from 1");
    eigenvalues_ = linalg::hermitian_eigenvalues(matrix_);
    if (eigenvalues_.minCoeff() < -1e-10)
      throw Error(ErrorCode::invalid_density_matrix,
                  "negative eigenvalue " + std::to_string(eigenvalues_.minCoeff()));
  }

  const Matrix& matrix() const noexcept { return matrix_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  Matrix matrix_;
  Eigen::VectorXd eigenvalues_;
};

/// -sum lambda log2 lambda; eigenvalues in [-1e-10, 0) count as zero.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) s -= xlog2x(lambda);
  return s + 0.0;
}

/// Uniform mixture (1/K) sum |psi><psi|.
inline DensityMatrix mixed_state_of_set(const std::vector<Vector>& states) {
  if (states.empty()) throw Error(ErrorCode::invalid_parameter, "need at least one state");
  const Eigen::Index d = states.front().size();
  Matrix acc = Matrix::Zero(d, d);
  for (const Vector& s : states) {
    if (s.size() != d) throw Error(ErrorCode::invalid_parameter, "states differ in dimension");
    if (std::abs(s.norm() - 1.0) > 1e-10) throw Error(ErrorCode::invalid_parameter, "states must be unit vectors");
    acc.noalias() += s * s.adjoint();
  }
  acc /= static_cast<double>(states.size());
  return DensityMatrix(0.5 * (acc + acc.adjoint()));
}

/// I(X:Y) of a joint distribution p(x, y) = joint(x, y).
inline double mutual_information(const Eigen::MatrixXd& joint) {
  if (joint.size() == 0) throw Error(ErrorCode::invalid_parameter, "empty joint distribution");
  if (joint.minCoeff() < 0.0) throw Error(ErrorCode::invalid_parameter, "negative probability");
  if (std::abs(joint.sum() - 1.0) > 1e-12)
    throw Error(ErrorCode::invalid_parameter, "joint distribution must sum to 1");
  const Eigen::VectorXd px = joint.rowwise().sum();
  const Eigen::RowVectorXd py = joint.colwise().sum();
  double info = 0.0;
  for (Eigen::Index x = 0; x < joint.rows(); ++x)
    for (Eigen::Index y = 0; y < joint.cols(); ++y)
      if (joint(x, y) > 0.0) info += joint(x, y) * std::log2(joint(x, y) / (px(x) * py(y)));
  return std::max(0.0, info);
}

struct EntropyReport {
  double s_rho = 0.0;
  std::vector<double> s_sets;
  double holevo_gap = 0.0;  // S(rho) - (1/M) sum S(rho_x)
  double bound = 0.0;       // log2(M/(M-1))
  bool feasible = false;
};

inline double elimination_information(std::size_t m) {
  const double dm = static_cast<double>(m);
  return std::log2(dm / (dm - 1.0));
}

/// Necessary condition log2(M/(M-1)) <= S(rho) - (1/M) sum_x S(rho_x) for a
/// measurement eliminating one of M disjoint, equally likely sets.
inline EntropyReport holevo_check(const std::vector<std::vector<Vector>>& sets) {
  const std::size_t m = sets.size();
  if (m < 2) throw Error(ErrorCode::invalid_partition, "need at least two sets");
  const std::size_t k = sets.front().size();
  for (const auto& s : sets)
    if (s.size() != k || k == 0) throw Error(ErrorCode::invalid_partition, "sets must have equal nonzero size");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (const Vector& u : sets[a])
        for (const Vector& v : sets[b])
          if (std::abs(u.dot(v)) > 1.0 - 1e-12)
            throw Error(ErrorCode::invalid_partition, "sets share a state");

  EntropyReport report;
  std::vector<Vector> all;
  for (const auto& s : sets) {
    report.s_sets.push_back(von_neumann_entropy(mixed_state_of_set(s)));
    all.insert(all.end(), s.begin(), s.end());
  }
  report.s_rho = von_neumann_entropy(mixed_state_of_set(all));
  double mean = 0.0;
  for (double s : report.s_sets) mean += s;
  mean /= static_cast<double>(m);
  report.holevo_gap = report.s_rho - mean;
  report.bound = elimination_information(m);
  report.feasible = report.holevo_gap >= report.bound - 1e-12;
  return report;
}

/// Sets S_gH of a scenario, one per left coset.
inline std::vector<std::vector<Vector>> coset_state_sets(const EliminationScenario& scenario) {
  const CosetPartition p = left_cosets(*scenario.group(), scenario.eliminated_subgroup());
  std::vector<std::vector<Vector>> sets;
  for (Element rep : p.representatives) sets.push_back(scenario.eliminated_set(rep));
  return sets;
}

/// S(rho) of the orbit mixture from block norms:
/// -sum_p ||P_p psi_e||^2 log2(||P_p psi_e||^2 / d_p).
inline double entropy_rho_group(const EliminationScenario& scenario) {
  const IrrepDecomposition decomp = decompose(scenario.rep(), character_table(scenario.group()));
  const std::vector<double> norms = decomp.block_norms(scenario.fiducial());
  double s = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i)
    if (norms[i] > 0.0) s -= norms[i] * std::log2(norms[i] / decomp.components[i].dim);
  return s + 0.0;
}

/// Closed-form S(rho) and S(rho_e) of the four-qubit quad scenario, s = sin^2(theta).
inline std::pair<double, double> four_qubit_entropies(double s) {
  if (!(s >= 0.0 && s <= 0.5)) throw Error(ErrorCode::invalid_parameter, "s must lie in [0, 1/2]");
  static constexpr double binom[5] = {1, 4, 6, 4, 1};
  double s_rho = 0.0;
  for (int n = 0; n <= 4; ++n) s_rho -= binom[n] * xlog2x(std::pow(s, n) * std::pow(1.0 - s, 4 - n));
  const double v = 1.0 - 2.0 * s;
  const double v2 = v * v;
  const double s_rho_e = -0.5 * xlog2x(1.0 - v2 * v2) - 0.25 * xlog2x((1.0 + v2) * (1.0 + v2)) -
                         0.25 * xlog2x((1.0 - v2) * (1.0 - v2)) + 2.0;
  return {s_rho + 0.0, s_rho_e + 0.0};
}

inline double four_qubit_gap(double s) {
  const auto [a, b] = four_qubit_entropies(s);
  return a - b;
}

/// Smallest s = sin^2(theta) where the four-qubit Holevo gap reaches
/// log2(M/(M-1)); only M = 4 is defined.
inline double threshold_s(std::size_t m = 4) {
  if (m != 4) throw Error(ErrorCode::invalid_parameter, "threshold is defined for M = 4 only");
  const double bound = elimination_information(m);
  double lo = 1e-6, hi = 0.5;
  if (!(four_qubit_gap(lo) < bound && four_qubit_gap(hi) > bound))
    throw Error(ErrorCode::numerical_failure, "gap does not bracket the bound");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (four_qubit_gap(mid) < bound ? lo : hi) = mid;
  }
  return std::abs(four_qubit_gap(lo) - bound) < std::abs(four_qubit_gap(hi) - bound) ? lo : hi;
}

struct Figure1Row {
  double s;
  double gap;
  double bound;
};

inline std::vector<Figure1Row> figure1_data(const std::vector<double>& s_grid) {
  std::vector<Figure1Row> rows;
  rows.reserve(s_grid.size());
  const double bound = elimination_information(4);
  for (double s : s_grid) rows.push_back({s, four_qubit_gap(s), bound});
  return rows;
}

/// `points` equally spaced values covering [lo, hi].
inline std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw Error(ErrorCode::invalid_parameter, "grid needs at least 2 points");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = i + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return out;
}

/// p(y|x) = q(y, x) for y != x and 0 on the diagonal; columns sum to 1.
class ConditionalModel {
 public:
  explicit ConditionalModel(Eigen::MatrixXd q) : q_(std::move(q)) {
    const Eigen::Index m = q_.rows();
    if (m < 2 || q_.cols() != m) throw Error(ErrorCode::invalid_parameter, "need a square M x M model, M >= 2");
    for (Eigen::Index x = 0; x < m; ++x) {
      if (q_(x, x) != 0.0) throw Error(ErrorCode::invalid_parameter, "diagonal must be zero");
      if (std::abs(q_.col(x).sum() - 1.0) > 1e-12)
        throw Error(ErrorCode::invalid_parameter, "columns must sum to 1");
    }
    if (q_.minCoeff() < 0.0 || q_.maxCoeff() > 1.0)
      throw Error(ErrorCode::invalid_parameter, "entries must lie in [0, 1]");
  }

  static ConditionalModel uniform(std::size_t m) {
    const Eigen::Index n = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd q = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(m - 1));
    q.diagonal().setZero();
    return ConditionalModel(std::move(q));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  const Eigen::MatrixXd& q() const noexcept { return q_; }

  /// p(x, y) with p_X uniform
  Eigen::MatrixXd joint() const { return q_.transpose() / static_cast<double>(q_.rows()); }

  double mutual_information() const { return covelim::mutual_information(joint()); }

 private:
  Eigen::MatrixXd q_;
};

struct MinInformationResult {
  double analytic_minimum = 0.0;  // log2(M/(M-1))
  ConditionalModel uniform;
  // numerical cross-check over random starts
  std::vector<double> start_information;
  double max_q_deviation = 0.0;    // max |q - 1/(M-1)| over starts
  double max_info_deviation = 0.0; // max |I - analytic| over starts
  int max_iterations = 0;
};

/// Minimizes I(X:Y) over conditional models by exponentiated-gradient steps
/// q_yx <- q_yx (p_Y(y) / q_yx)^kappa, renormalized per column. The gradient of
/// I in q_yx is (1/M) log(q_yx / p_Y(y)), so this is mirror descent on each
/// column simplex.
inline ConditionalModel minimize_mutual_information(ConditionalModel start, int* iterations = nullptr,
                                                     double kappa = 0.5, int max_iterations = 100000) {
  const Eigen::Index m = static_cast<Eigen::Index>(start.size());
  Eigen::MatrixXd q = start.q();
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::VectorXd py = q.rowwise().sum() / static_cast<double>(m);
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index x = 0; x < m; ++x) {
      for (Eigen::Index y = 0; y < m; ++y)
        if (y != x && q(y, x) > 0.0) next(y, x) = q(y, x) * std::pow(py(y) / q(y, x), kappa);
      next.col(x) /= next.col(x).sum();
    }
    const double change = (next - q).cwiseAbs().maxCoeff();
    q = std::move(next);
    if (change < 1e-14) {
      if (iterations) *iterations = it + 1;
      return ConditionalModel(std::move(q));
    }
  }
  throw Error(ErrorCode::numerical_failure, "mutual information minimization did not converge");
}

/// Random column-stochastic start with zero diagonal (exponential variates
/// from the portable uniform draw of sample_outcomes).
inline ConditionalModel random_conditional_model(std::size_t m, std::mt19937_64& rng) {
  const Eigen::Index n = static_cast<Eigen::Index>(m);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y)
      if (y != x) q(y, x) = -std::log(1.0 - uniform_unit(rng)) + 1e-12;
    q.col(x) /= q.col(x).sum();
  }
  return ConditionalModel(std::move(q));
}

/// Analytic minimum log2(M/(M-1)) at q = 1/(M-1), cross-checked numerically
/// from `starts` random models.
inline MinInformationResult min_mutual_information(std::size_t m, std::size_t starts = 20,
                                                   std::uint64_t seed = 12345) {
  if (m < 2) throw Error(ErrorCode::invalid_parameter, "M must be >= 2");
  MinInformationResult result{elimination_information(m), ConditionalModel::uniform(m), {}};
  const double target_q = 1.0 / static_cast<double>(m - 1);
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < starts; ++s) {
    int iterations = 0;
    const ConditionalModel found = minimize_mutual_information(random_conditional_model(m, rng), &iterations);
    const double info = found.mutual_information();
    result.start_information.push_back(info);
    double dev = 0.0;
    for (Eigen::Index x = 0; x < found.q().cols(); ++x)
      for (Eigen::Index y = 0; y < found.q().rows(); ++y)
        if (y != x) dev = std::max(dev, std::abs(found.q()(y, x) - target_q));
    result.max_q_deviation = std::max(result.max_q_deviation, dev);
    result.max_info_deviation = std::max(result.max_info_deviation, std::abs(info - result.analytic_minimum));
    result.max_iterations = std::max(result.max_iterations, iterations);
  }
  return result;
}

}  // namespace covelim
