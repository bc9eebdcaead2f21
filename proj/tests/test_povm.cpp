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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "covelim/povm.hpp"
#include "covelim/solvers.hpp"
#include "oracles.hpp"

namespace covelim {
namespace {

const double kPi = std::numbers::pi;

struct Trine {
  UnitaryRepresentation rep = rep_rotation_z3();
  IrrepDecomposition dec = decompose(rep, character_table(rep.group()));
  EliminationScenario scenario{rep, linalg::basis_vector(2, 0)};

  SeedVector seed() const {
    Vector a(2);
    a << 1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0);
    return build_seed(dec, a);
  }
};

double distance_up_to_phase(const Vector& a, const Vector& b) {
  const Complex ov = b.dot(a);
  if (std::abs(ov) == 0.0) return (a - b).norm();
  return (a * (std::abs(ov) / ov) - b).norm();
}

TEST(BuildSeed, TrineSeed) {
  Trine t;
  const SeedVector s = t.seed();
  EXPECT_TRUE(s.exact);
  Vector expect = Vector::Zero(2);
  expect(1) = Complex(0.0, std::sqrt(2.0 / 3.0));
  EXPECT_LE(distance_up_to_phase(s.amplitudes, expect), 1e-12);
  EXPECT_NEAR(std::abs(s.amplitudes(0)), 0.0, 1e-15);
}

TEST(BuildSeed, D3Seed) {
  const UnitaryRepresentation g3 = rep_d3_standard();
  const UnitaryRepresentation rep = inner_tensor(g3, g3);
  const IrrepDecomposition dec = decompose(rep, character_table(rep.group()));
  Vector a(4);
  a << 1.0, -1.0, 1.0, -1.0;
  a /= std::sqrt(6.0);
  const SeedVector s = build_seed(dec, a);
  Vector minus_x(2);
  minus_x << 1.0, -1.0;
  minus_x /= std::sqrt(2.0);
  const Vector expect = (2.0 / std::sqrt(6.0)) * oracle::kron(oracle::M(linalg::basis_vector(2, 0)), oracle::M(minus_x)).col(0);
  EXPECT_LE(distance_up_to_phase(s.amplitudes, expect), 1e-12);
}

TEST(BuildSeed, ZeroAmplitudes) {
  Trine t;
  try {
    build_seed(t.dec, Vector::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::seed_norm_violation);
  }
}

TEST(BuildSeed, WrongNormsRejectedOnlyWhenExact) {
  Trine t;
  Vector a(2);
  a << 0.5, 0.5;
  EXPECT_THROW(build_seed(t.dec, a), Error);
  const SeedVector loose = build_seed(t.dec, a, false);
  EXPECT_FALSE(loose.exact);
  EXPECT_NEAR(loose.block_norms[0], 0.25, 1e-15);
}

TEST(CovariantPovm, TrineAntiTrineProjectors) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  ASSERT_EQ(povm.size(), 3u);
  EXPECT_EQ(povm.ranks(), (std::vector<int>{1, 1, 1}));
  for (Element g = 0; g < 3; ++g) {
    const Vector psi = t.scenario.state(g);
    Vector anti(2);
    anti << -psi(1), psi(0);
    const Matrix expect = (2.0 / 3.0) * anti * anti.adjoint();
    EXPECT_LE(linalg::max_abs(povm.elements[g].matrix() - expect), 1e-12);
  }
  const PovmReport r = verify_povm(povm);
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.completeness_residual, 1e-12);
  const EliminationReport el = verify_elimination(povm, t.scenario);
  EXPECT_TRUE(el.pass);
  EXPECT_LE(el.max_probability, 1e-15);
}

TEST(CovariantPovm, CovarianceProperty) {
  const ScenarioInstance inst = instantiate(solve_two_qubit(ThetaParam(0.6)));
  const FiniteGroup& g = *inst.scenario.group();
  const UnitaryRepresentation& rep = inst.scenario.rep();
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const Matrix lhs = inst.orbit.elements[g.multiply(a, b)].matrix();
      const Matrix rhs = rep.matrix(a) * inst.orbit.elements[b].matrix() * rep.matrix(a).adjoint();
      EXPECT_LE(linalg::max_abs(lhs - rhs), 1e-10);
    }
}

TEST(CovariantPovm, PiOver8EntangledProjectors) {
  const ScenarioInstance inst = instantiate(solve_two_qubit(ThetaParam(kPi / 8)));
  ASSERT_EQ(inst.povm.size(), 4u);
  for (const PovmElement& e : inst.povm.elements) {
    EXPECT_EQ(e.rank, 1);
    // element is (1/4-normalized) projector: Tr = 1 and Pi^2 = Pi
    const Matrix m = e.matrix();
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-12);
    EXPECT_LE(linalg::max_abs(m * m - m), 1e-12);
    // entangled: reduced state is mixed
    Matrix reduced = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) reduced(i, j) += m(2 * i + k, 2 * j + k);
    EXPECT_LT((reduced * reduced).trace().real(), 1.0 - 1e-6);
  }
  EXPECT_TRUE(verify_elimination(inst.povm, inst.scenario).pass);
}

TEST(CovariantPovm, BadSeedIsCompletenessFailure) {
  Trine t;
  SeedVector bad = t.seed();
  bad.amplitudes *= 1.1;
  try {
    covariant_povm(t.scenario, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::completeness_failure);
  }
}

TEST(CovariantPovm, BalancedAbelianSeedIsResolution) {
  UnitaryRepresentation rep = tensor_power(rep_reflection_qubit(), 3);
  EliminationScenario sc(rep, Vector::Constant(8, 1.0 / std::sqrt(8.0)));
  const IrrepDecomposition dec = decompose(rep, character_table(rep.group()));
  const SeedVector seed = build_seed(dec, Vector::Constant(8, 1.0 / std::sqrt(8.0)));
  const Povm povm = covariant_povm(sc, seed);
  Matrix direct = Matrix::Zero(8, 8);
  for (Element g = 0; g < 8; ++g) direct += rep.matrix(g) * seed.amplitudes * seed.amplitudes.adjoint() * rep.matrix(g).adjoint();
  EXPECT_LE(linalg::identity_residual(direct), 1e-12);
  EXPECT_TRUE(verify_povm(povm).pass);
}

TEST(MergeByCosets, TrivialSubgroupUnchanged) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  const Povm merged = merge_by_cosets(povm, left_cosets(*t.scenario.group(), Subgroup::trivial(t.scenario.group())));
  ASSERT_EQ(merged.size(), povm.size());
  for (std::size_t i = 0; i < povm.size(); ++i)
    EXPECT_LE(linalg::max_abs(merged.elements[i].matrix() - povm.elements[i].matrix()), 1e-15);
}

TEST(MergeByCosets, PairRanks) {
  const ScenarioInstance inst = instantiate(solve_three_qubit_pairs(ThetaParam(kPi / 4)));
  EXPECT_EQ(inst.povm.ranks(), (std::vector<int>{2, 2, 2, 2}));
}

TEST(MergeByCosets, QuadRanks) {
  const ScenarioInstance inst = instantiate(solve_four_qubit_quads(ThetaParam(kPi / 4)));
  EXPECT_EQ(inst.povm.ranks(), (std::vector<int>{4, 4, 4, 4}));
}

TEST(MergeByCosets, MismatchRejected) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  GroupPtr z2 = build_cyclic(2);
  try {
    merge_by_cosets(povm, left_cosets(*z2, Subgroup::trivial(z2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_partition);
  }
}

TEST(VerifyPovm, DeletedElementFails) {
  Trine t;
  Povm povm = covariant_povm(t.scenario, t.seed());
  const double norm = linalg::hermitian_eigenvalues(povm.elements[1].matrix()).maxCoeff();
  povm.elements.erase(povm.elements.begin() + 1);
  const PovmReport r = verify_povm(povm);
  EXPECT_FALSE(r.pass);
  EXPECT_GE(r.completeness_residual, 0.5 * norm);
  EXPECT_GT(r.completeness_residual, kPovmTolerance);
}

TEST(VerifyPovm, NegativeElementFails) {
  Povm povm;
  povm.dim = 2;
  PovmElement a, b;
  a.dense = Matrix::Identity(2, 2) * 1.5;
  b.dense = Matrix::Identity(2, 2) * -0.5;
  povm.elements = {a, b};
  const PovmReport r = verify_povm(povm);
  EXPECT_LE(r.completeness_residual, 1e-15);
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-15);
  EXPECT_FALSE(r.pass);
}

TEST(VerifyPovm, FailurePovmIncludingFailureElement) {
  const FailurePovm f = failure_povm_two_qubit(ThetaParam(kPi / 12));
  const PovmReport r = verify_povm(f.povm);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(f.povm.size(), 5u);
  EXPECT_TRUE(verify_elimination(f.povm, *f.scenario).pass);
}

TEST(Born, TrineZeroState) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  const std::vector<double> p = born_probabilities(povm, linalg::basis_vector(2, 0));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0], 0.0, 1e-15);
  EXPECT_NEAR(p[1], 0.5, 1e-12);
  EXPECT_NEAR(p[2], 0.5, 1e-12);
}

TEST(Born, IdentityPovm) {
  Povm povm;
  povm.dim = 3;
  PovmElement e;
  e.label = "I";
  e.dense = Matrix::Identity(3, 3);
  povm.elements = {e};
  Vector s(3);
  s << 0.6, Complex(0.0, 0.8), 0.0;
  const std::vector<double> p = born_probabilities(povm, s);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
}

TEST(Born, QuadCosetStates) {
  const ScenarioInstance inst = instantiate(solve_four_qubit_quads(ThetaParam(0.7)));
  for (std::size_t c = 0; c < inst.cosets.cosets.size(); ++c) {
    for (Element g : inst.cosets.cosets[c]) {
      const std::vector<double> p = born_probabilities(inst.povm, inst.scenario.state(g));
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (k == c) {
          EXPECT_LE(p[k], 1e-12);
        } else {
          EXPECT_GT(p[k], 1e-6);
        }
      }
    }
  }
}

TEST(Born, RejectsNonUnitState) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  EXPECT_THROW(born_probabilities(povm, Vector::Ones(2)), Error);
}

TEST(Sample, TrineCountsWithinBands) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  const std::uint64_t shots = 100000;
  const OutcomeSample s = sample_outcomes(povm, linalg::basis_vector(2, 0), shots, 7);
  EXPECT_EQ(s.counts[0], 0u);
  const double sigma = std::sqrt(shots * 0.25);
  EXPECT_NEAR(static_cast<double>(s.counts[1]), 50000.0, 3 * sigma);
  EXPECT_NEAR(static_cast<double>(s.counts[2]), 50000.0, 3 * sigma);
  EXPECT_EQ(s.counts[0] + s.counts[1] + s.counts[2], shots);
}

TEST(Sample, FixedSeedReproduces) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  const OutcomeSample a = sample_outcomes(povm, t.scenario.state(1), 5000, 99);
  const OutcomeSample b = sample_outcomes(povm, t.scenario.state(1), 5000, 99);
  const OutcomeSample c = sample_outcomes(povm, t.scenario.state(1), 5000, 100);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(a.counts[1], 0u);
}

TEST(Sample, PortableUniform) {
  // first draw of mt19937_64 with the default seed is 14514284786278117030
  std::mt19937_64 rng(5489u);
  EXPECT_EQ(uniform_unit(rng), static_cast<double>(14514284786278117030ull >> 11) * 0x1.0p-53);
}

TEST(Sample, ZeroShotsRejected) {
  Trine t;
  const Povm povm = covariant_povm(t.scenario, t.seed());
  EXPECT_THROW(sample_outcomes(povm, t.scenario.state(0), 0, 1), Error);
}

TEST(Scenario, RejectsNonUnitFiducial) {
  EXPECT_THROW(EliminationScenario(rep_reflection_qubit(), Vector::Ones(2)), Error);
}

}  // namespace
}  // namespace covelim
