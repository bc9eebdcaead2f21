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
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "covelim/error.hpp"
#include "covelim/group.hpp"
#include "covelim/linalg.hpp"
#include "covelim/representation.hpp"

namespace covelim {

inline constexpr double kPovmTolerance = 1e-10;
inline constexpr double kRankThreshold = 1e-8;

/// States Gamma(g)|psi_e> for g in G, with the subgroup H whose cosets are the
/// sets to be eliminated ({e} for single-state elimination).
class EliminationScenario {
 public:
  EliminationScenario(UnitaryRepresentation rep, Vector fiducial, Subgroup eliminated)
      : rep_(std::move(rep)), fiducial_(std::move(fiducial)), eliminated_(std::move(eliminated)) {
    if (fiducial_.size() != rep_.dim())
      throw Error(ErrorCode::invalid_parameter, "fiducial dimension does not match representation");
    if (std::abs(fiducial_.norm() - 1.0) > 1e-12)
      throw Error(ErrorCode::invalid_parameter, "fiducial state must have unit norm");
    if (!(*eliminated_.parent() == *rep_.group()))
      throw Error(ErrorCode::invalid_subgroup, "subgroup belongs to another group");
  }

  EliminationScenario(UnitaryRepresentation rep, Vector fiducial)
      : EliminationScenario(rep, std::move(fiducial), Subgroup::trivial(rep.group())) {}

  const GroupPtr& group() const noexcept { return rep_.group(); }
  const UnitaryRepresentation& rep() const noexcept { return rep_; }
  const Vector& fiducial() const noexcept { return fiducial_; }
  const Subgroup& eliminated_subgroup() const noexcept { return eliminated_; }

  Vector state(Element g) const { return rep_.apply(g, fiducial_); }

  /// S_gH = {Gamma(gh)|psi_e> : h in H}
  std::vector<Vector> eliminated_set(Element g) const {
    std::vector<Vector> out;
    out.reserve(eliminated_.order());
    for (Element h : eliminated_.members()) out.push_back(state(group()->multiply(g, h)));
    return out;
  }

 private:
  UnitaryRepresentation rep_;
  Vector fiducial_;
  Subgroup eliminated_;
};

/// Seed |X> of a covariant POVM together with its irrep block norms.
struct SeedVector {
  Vector amplitudes;
  std::vector<double> block_norms;   // ||X_p||^2
  std::vector<double> target_norms;  // d_p / |G|
  bool exact = false;                // block norms match targets to 1e-10
};

/// Assembles X = sum_i a_i b_i over the concatenated invariant bases of
/// `decomp`. With `require_exact`, block norms must equal d_p / |G|.
inline SeedVector build_seed(const IrrepDecomposition& decomp, const Vector& component_amplitudes,
                             bool require_exact = true) {
  if (component_amplitudes.size() != decomp.basis_size())
    throw Error(ErrorCode::invalid_parameter, "need one amplitude per invariant basis vector");
  if (component_amplitudes.norm() == 0.0)
    throw Error(ErrorCode::seed_norm_violation, "seed vector is zero");
  SeedVector seed;
  seed.amplitudes = Vector::Zero(decomp.dim);
  const double order = static_cast<double>(decomp.group->order());
  seed.exact = true;
  Eigen::Index k = 0;
  for (const IrrepComponent& c : decomp.components) {
    const auto block = component_amplitudes.segment(k, c.basis.cols());
    seed.amplitudes += c.basis * block;
    seed.block_norms.push_back(block.squaredNorm());
    seed.target_norms.push_back(c.dim / order);
    if (std::abs(seed.block_norms.back() - seed.target_norms.back()) > kPovmTolerance)
      seed.exact = false;
    k += c.basis.cols();
  }
  if (require_exact && !seed.exact)
    throw Error(ErrorCode::seed_norm_violation, "block norms differ from d_p/|G|");
  return seed;
}

/// Element of a POVM. Orbit elements are stored as a factor F with
/// element = F F^dagger; others (failure operators) are stored densely.
struct PovmElement {
  std::string label;
  // group element (or coset representative) this outcome refers to;
  // unset for a failure outcome
  std::optional<Element> representative;
  Matrix factor;
  Matrix dense;
  int rank = 0;

  bool factored() const noexcept { return dense.size() == 0; }

  Matrix matrix() const { return factored() ? Matrix(factor * factor.adjoint()) : dense; }

  double probability(const Vector& state) const {
    if (factored()) return (factor.adjoint() * state).squaredNorm();
    return std::max(0.0, state.dot(dense * state).real());
  }
};

inline int factor_rank(const Matrix& factor) {
  return linalg::hermitian_rank(factor.adjoint() * factor, kRankThreshold);
}

struct Povm {
  Eigen::Index dim = 0;
  std::vector<PovmElement> elements;

  std::size_t size() const noexcept { return elements.size(); }

  Matrix sum() const {
    Matrix acc = Matrix::Zero(dim, dim);
    for (const PovmElement& e : elements) {
      if (e.factored()) {
        acc.noalias() += e.factor * e.factor.adjoint();
      } else {
        acc += e.dense;
      }
    }
    return acc;
  }

  std::vector<int> ranks() const {
    std::vector<int> out;
    for (const PovmElement& e : elements) out.push_back(e.rank);
    return out;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const PovmElement& e : elements) out.push_back(e.label);
    return out;
  }
};

/// Rank-one orbit Gamma(g)|X><X|Gamma(g)^dagger without a completeness check.
inline Povm orbit_povm(const EliminationScenario& scenario, const Vector& x) {
  const FiniteGroup& g = *scenario.group();
  Povm povm;
  povm.dim = scenario.rep().dim();
  povm.elements.reserve(g.order());
  for (Element e = 0; e < g.order(); ++e) {
    PovmElement el;
    el.label = g.label(e);
    el.representative = e;
    el.factor = scenario.rep().apply(e, x);
    el.rank = el.factor.norm() > 0.0 ? 1 : 0;
    povm.elements.push_back(std::move(el));
  }
  return povm;
}

/// Covariant POVM Pi_g = Gamma(g)|X><X|Gamma(g)^dagger.
inline Povm covariant_povm(const EliminationScenario& scenario, const SeedVector& seed) {
  Povm povm = orbit_povm(scenario, seed.amplitudes);
  if (const double r = linalg::identity_residual(povm.sum()); r > 1e-8)
    throw Error(ErrorCode::completeness_failure,
                "orbit sums to identity only within " + std::to_string(r));
  return povm;
}

/// Sums the elements of each coset into one element labeled by the coset
/// representative.
inline Povm merge_by_cosets(const Povm& povm, const CosetPartition& partition) {
  if (povm.size() != partition.coset_of.size())
    throw Error(ErrorCode::invalid_partition, "partition does not match POVM outcomes");
  for (std::size_t i = 0; i < povm.size(); ++i) {
    const PovmElement& e = povm.elements[i];
    if (!e.representative || *e.representative != i || !e.factored())
      throw Error(ErrorCode::invalid_partition, "POVM outcomes are not labeled by group elements");
  }
  Povm out;
  out.dim = povm.dim;
  for (std::size_t c = 0; c < partition.cosets.size(); ++c) {
    const std::vector<Element>& members = partition.cosets[c];
    Eigen::Index cols = 0;
    for (Element m : members) cols += povm.elements[m].factor.cols();
    PovmElement merged;
    merged.representative = partition.representatives[c];
    merged.label = povm.elements[*merged.representative].label;
    merged.factor.resize(povm.dim, cols);
    Eigen::Index k = 0;
    for (Element m : members) {
      const Matrix& f = povm.elements[m].factor;
      merged.factor.middleCols(k, f.cols()) = f;
      k += f.cols();
    }
    merged.rank = factor_rank(merged.factor);
    out.elements.push_back(std::move(merged));
  }
  return out;
}

struct PovmReport {
  double completeness_residual = 0.0;  // |sum - I|_max
  double min_eigenvalue = 0.0;         // smallest eigenvalue over all elements
  bool pass = false;
};

/// Elements of dimension up to this use a full Hermitian eigensolve for the
/// positivity check; larger factored elements use the spectrum of F^dagger F.
inline constexpr Eigen::Index kDenseSpectrumLimit = 64;

inline double min_eigenvalue(const PovmElement& e, Eigen::Index dim) {
  if (!e.factored() || dim <= kDenseSpectrumLimit) return linalg::hermitian_eigenvalues(e.matrix()).minCoeff();
  // F F^dagger shares its nonzero spectrum with F^dagger F; the rest is zero.
  double lo = linalg::hermitian_eigenvalues(e.factor.adjoint() * e.factor).minCoeff();
  if (e.factor.cols() < dim) lo = std::min(lo, 0.0);
  return lo;
}

inline PovmReport verify_povm(const Povm& povm) {
  PovmReport report;
  report.completeness_residual = linalg::identity_residual(povm.sum());
  report.min_eigenvalue = povm.elements.empty() ? 0.0 : 1.0;
  for (const PovmElement& e : povm.elements)
    report.min_eigenvalue = std::min(report.min_eigenvalue, min_eigenvalue(e, povm.dim));
  report.pass = report.completeness_residual <= kPovmTolerance &&
                report.min_eigenvalue >= -kPovmTolerance;
  return report;
}

struct EliminationReport {
  double max_probability = 0.0;  // worst <psi|Pi|psi> over eliminated sets
  std::vector<double> per_outcome;
  bool pass = false;
};

/// Checks that every outcome labeled gH gives zero probability to every state
/// of S_gH. Failure outcomes are skipped.
inline EliminationReport verify_elimination(const Povm& povm, const EliminationScenario& scenario) {
  EliminationReport report;
  for (const PovmElement& e : povm.elements) {
    double worst = 0.0;
    if (e.representative) {
      for (const Vector& s : scenario.eliminated_set(*e.representative))
        worst = std::max(worst, e.probability(s));
    }
    report.per_outcome.push_back(worst);
    report.max_probability = std::max(report.max_probability, worst);
  }
  report.pass = report.max_probability <= kPovmTolerance;
  return report;
}

/// Born rule p(label) = <psi|Pi_label|psi>.
inline std::vector<double> born_probabilities(const Povm& povm, const Vector& state) {
  if (state.size() != povm.dim) throw Error(ErrorCode::invalid_parameter, "state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > kPovmTolerance)
    throw Error(ErrorCode::invalid_parameter, "state must have unit norm");
  std::vector<double> out;
  out.reserve(povm.size());
  for (const PovmElement& e : povm.elements) out.push_back(e.probability(state));
  return out;
}

struct OutcomeSample {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Draws `shots` outcomes from the Born distribution.
///
/// Reproducible across platforms and ports: std::mt19937_64 seeded with
/// `seed`, u = (draw >> 11) * 2^-53, and the outcome is the first index whose
/// running sum of probabilities (in element order) exceeds u. If rounding
/// leaves u above the total, the last outcome with nonzero probability is
/// taken.
inline OutcomeSample sample_outcomes(const Povm& povm, const Vector& state, std::uint64_t shots,
                                     std::uint64_t seed) {
  if (shots == 0) throw Error(ErrorCode::invalid_parameter, "shots must be >= 1");
  const std::vector<double> probs = born_probabilities(povm, state);
  std::vector<double> cumulative(probs.size());
  double running = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += probs[i];
    cumulative[i] = running;
    if (probs[i] > 0.0) last_nonzero = i;
  }
  OutcomeSample sample;
  sample.labels = povm.labels();
  sample.counts.assign(probs.size(), 0);
  sample.shots = shots;
  sample.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t k = it == cumulative.end() ? last_nonzero
                                                 : static_cast<std::size_t>(it - cumulative.begin());
    ++sample.counts[k];
  }
  return sample;
}

}  // namespace covelim
