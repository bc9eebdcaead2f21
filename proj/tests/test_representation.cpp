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
#include <random>

#include "covelim/representation.hpp"
#include "oracles.hpp"

namespace covelim {
namespace {

constexpr double kTol = 1e-12;
const double kPi = std::numbers::pi;

TEST(Reflection, Matrices) {
  UnitaryRepresentation r = rep_reflection_qubit();
  EXPECT_LE(linalg::identity_residual(r.matrix(0)), kTol);
  const Vector v = r.apply(1, linalg::basis_vector(2, 1));
  EXPECT_NEAR(std::abs(v(1) + 1.0), 0.0, kTol);
  EXPECT_LE(linalg::identity_residual(r.matrix(1) * r.matrix(1)), kTol);
}

TEST(CyclicQubit, N2MatchesReflection) {
  UnitaryRepresentation a = rep_cyclic_qubit(2), b = rep_reflection_qubit();
  for (Element g = 0; g < 2; ++g) EXPECT_LE(linalg::max_abs(a.matrix(g) - b.matrix(g)), kTol);
}

TEST(CyclicQubit, N4IsDiagOneI) {
  UnitaryRepresentation r = rep_cyclic_qubit(4);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  expect(1, 1) = Complex(0.0, 1.0);
  EXPECT_EQ(r.matrix(1), expect);
}

TEST(CyclicQubit, PhasesAreRootsOfUnity) {
  for (std::size_t n : {3u, 5u, 8u}) {
    UnitaryRepresentation r = rep_cyclic_qubit(n);
    for (Element j = 0; j < n; ++j) {
      const Complex z = r.matrix(j)(1, 1);
      EXPECT_NEAR(std::abs(std::pow(z, static_cast<double>(n)) - 1.0), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(z - std::polar(1.0, 2 * kPi * j / n)), 0.0, 1e-15);
    }
    EXPECT_LE(r.unitarity_residual(), kTol);
    EXPECT_LE(r.homomorphism_residual(), kTol);
  }
}

TEST(RotationZ3, OrderThreeAndEigenvectors) {
  UnitaryRepresentation r = rep_rotation_z3();
  const Matrix v = r.matrix(1);
  EXPECT_LE(linalg::identity_residual(v * v * v), kTol);
  Vector u_plus(2);
  u_plus << 1.0, Complex(0.0, 1.0);
  u_plus /= std::sqrt(2.0);
  Vector u_minus = u_plus.conjugate();
  // one eigenvector per nontrivial root
  const Complex w = std::polar(1.0, 2 * kPi / 3);
  const bool plus_is_w = (v * u_plus - w * u_plus).norm() < 1e-12;
  const Vector& up = plus_is_w ? u_plus : u_minus;
  EXPECT_LE((v * up - w * up).norm(), 1e-12);
  EXPECT_LE((v * (plus_is_w ? u_minus : u_plus) - std::conj(w) * (plus_is_w ? u_minus : u_plus)).norm(), 1e-12);

  // trine states
  const Vector t1 = r.apply(1, linalg::basis_vector(2, 0));
  const Vector t2 = r.apply(2, linalg::basis_vector(2, 0));
  EXPECT_NEAR(std::abs(t1(0) + 0.5), 0.0, kTol);
  EXPECT_NEAR(std::abs(t2(0) + 0.5), 0.0, kTol);
  EXPECT_NEAR(std::abs(t1(1) + t2(1)), 0.0, kTol);
  EXPECT_NEAR(std::abs(t1(1)), std::sqrt(3.0) / 2, kTol);
}

TEST(D3Standard, Matrices) {
  UnitaryRepresentation g3 = rep_d3_standard();
  GroupPtr d = g3.group();
  const Matrix r = g3.matrix(d->find("r"));
  EXPECT_LE(linalg::identity_residual(r * r * r), kTol);
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  EXPECT_LE(linalg::max_abs(g3.matrix(d->find("s")) - s), kTol);
  EXPECT_NEAR(std::abs(g3.matrix(d->find("rs")).trace()), 0.0, kTol);
  EXPECT_LE(g3.homomorphism_residual(), kTol);
}

TEST(FromMatrices, RejectsNonHomomorphism) {
  GroupPtr z2 = build_cyclic(2);
  Matrix h = Matrix::Identity(2, 2);
  h(0, 0) = Complex(0.0, 1.0);
  EXPECT_THROW(UnitaryRepresentation::from_matrices(z2, {Matrix::Identity(2, 2), h}), Error);
  Matrix nonunitary = 2.0 * Matrix::Identity(2, 2);
  EXPECT_THROW(UnitaryRepresentation::from_matrices(z2, {Matrix::Identity(2, 2), nonunitary}), Error);
}

TEST(Tensor, TrivialFactorScalesCharacter) {
  GroupPtr d = build_dihedral3();
  UnitaryRepresentation g3 = rep_d3_standard();
  std::vector<Matrix> ones(6, Matrix::Identity(3, 3));
  UnitaryRepresentation triv = UnitaryRepresentation::from_matrices(g3.group(), ones);
  UnitaryRepresentation t = inner_tensor(triv, g3);
  for (Element g = 0; g < 6; ++g) EXPECT_NEAR(std::abs(t.character(g) - 3.0 * g3.character(g)), 0.0, kTol);
}

TEST(Tensor, D3SquaredCharacter) {
  UnitaryRepresentation g3 = rep_d3_standard();
  UnitaryRepresentation t = tensor(g3, g3);
  ASSERT_EQ(t.dim(), 4);
  ASSERT_EQ(t.group()->order(), 6u);
  GroupPtr d = t.group();
  // oracle: trace of the explicit Kronecker product
  for (Element g = 0; g < 6; ++g) {
    const Matrix k = oracle::kron(g3.matrix(g), g3.matrix(g));
    EXPECT_NEAR(std::abs(t.character(g) - k.trace()), 0.0, kTol);
  }
  EXPECT_NEAR(t.character(d->find("e")).real(), 4.0, kTol);
  EXPECT_NEAR(t.character(d->find("r")).real(), 1.0, kTol);
  EXPECT_NEAR(t.character(d->find("s")).real(), 0.0, kTol);
}

TEST(Tensor, ReflectionPairOverKleinFour) {
  UnitaryRepresentation t = tensor(rep_reflection_qubit(), rep_reflection_qubit());
  ASSERT_EQ(t.group()->order(), 4u);
  ASSERT_EQ(t.dim(), 4);
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix r = rep_reflection_qubit().matrix(1);
  const Matrix expect[4] = {oracle::kron(i2, i2), oracle::kron(i2, r), oracle::kron(r, i2), oracle::kron(r, r)};
  for (Element g = 0; g < 4; ++g) EXPECT_LE(linalg::max_abs(t.matrix(g) - expect[g]), kTol);
}

TEST(CharacterTable, Z2Rows) {
  CharacterTable t = character_table(build_cyclic(2));
  ASSERT_EQ(t.irrep_count(), 2u);
  EXPECT_NEAR(std::abs(t.character(0, 1) - 1.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(t.character(1, 1) + 1.0), 0.0, kTol);
}

TEST(CharacterTable, D3Values) {
  GroupPtr d = build_dihedral3();
  CharacterTable t = character_table(d);
  ASSERT_EQ(t.irrep_count(), 3u);
  EXPECT_EQ(t.dims, (std::vector<int>{1, 1, 2}));
  const double expect[3][3] = {{1, 1, 1}, {1, 1, -1}, {2, -1, 0}};
  const Element reps[3] = {d->find("e"), d->find("r"), d->find("s")};
  for (int p = 0; p < 3; ++p)
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(t.character(p, reps[c]) - expect[p][c]), 0.0, kTol);
  EXPECT_LE(t.orthogonality_residual(), 1e-12);
}

TEST(CharacterTable, ZNRows) {
  const std::size_t n = 6;
  CharacterTable t = character_table(build_cyclic(n));
  ASSERT_EQ(t.irrep_count(), n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      EXPECT_NEAR(std::abs(t.character(k, j) - std::polar(1.0, 2 * kPi * double(j * k) / n)), 0.0, 1e-12);
  EXPECT_LE(t.orthogonality_residual(), 1e-12);
}

TEST(CharacterTable, ProductGroupsOrthogonal) {
  EXPECT_LE(character_table(direct_power(build_cyclic(3), 3)).orthogonality_residual(), 1e-12);
}

TEST(CharacterTable, UnsupportedGroup) {
  GroupPtr bare = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(2, {0, 1, 1, 0}, {"a", "b"}));
  try {
    character_table(bare);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_group);
  }
}

TEST(Decompose, D3SquaredMultiplicities) {
  UnitaryRepresentation g3 = rep_d3_standard();
  UnitaryRepresentation t = inner_tensor(g3, g3);
  IrrepDecomposition dec = decompose(t, character_table(t.group()));
  EXPECT_EQ(dec.multiplicities, (std::vector<int>{1, 1, 1}));
  ASSERT_EQ(dec.components.size(), 3u);
  Vector v1 = Vector::Zero(4);
  v1(0) = v1(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(dec.components[0].basis.col(0).dot(v1)), 1.0, 1e-12);
  // each basis an orthonormal invariant subspace
  for (const IrrepComponent& c : dec.components) {
    EXPECT_LE(linalg::identity_residual(c.basis.adjoint() * c.basis), 1e-12);
    const Matrix p = c.projector();
    for (Element g = 0; g < 6; ++g) EXPECT_LE(linalg::max_abs(t.conjugate(g, p) - p), 1e-12);
  }
}

TEST(Decompose, ReflectionSubspaces) {
  UnitaryRepresentation r = rep_reflection_qubit();
  IrrepDecomposition dec = decompose(r, character_table(r.group()));
  ASSERT_EQ(dec.components.size(), 2u);
  EXPECT_NEAR(std::abs(dec.components[0].basis(0, 0)), 1.0, kTol);
  EXPECT_NEAR(std::abs(dec.components[1].basis(1, 0)), 1.0, kTol);
}

TEST(Decompose, MultiplicityViolation) {
  // Z2 acting trivially on a qubit: the trivial irrep appears twice
  GroupPtr z2 = build_cyclic(2);
  UnitaryRepresentation r = UnitaryRepresentation::from_matrices(z2, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  try {
    decompose(r, character_table(z2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::multiplicity_violation);
  }
}

// group average against sum_p ||X_p||^2 / d_p P_p
void check_group_average(const UnitaryRepresentation& rep, std::uint64_t seed) {
  const IrrepDecomposition dec = decompose(rep, character_table(rep.group()));
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = oracle::random_vector(rep.dim(), rng);
    Matrix direct = Matrix::Zero(rep.dim(), rep.dim());
    for (Element g = 0; g < rep.group()->order(); ++g) {
      const Vector y = rep.matrix(g) * x;
      direct += y * y.adjoint();
    }
    direct /= static_cast<double>(rep.group()->order());
    Matrix rhs = Matrix::Zero(rep.dim(), rep.dim());
    for (const IrrepComponent& c : dec.components) {
      const Matrix p = c.projector();
      rhs += (p * x).squaredNorm() / c.dim * p;
    }
    ASSERT_LE(linalg::max_abs(direct - rhs), 1e-10);
    ASSERT_LE(linalg::max_abs(group_average(rep, x) - rhs), 1e-10);
  }
}

TEST(GroupAverage, RandomSeedsD3) {
  const UnitaryRepresentation g3 = rep_d3_standard();
  check_group_average(inner_tensor(g3, g3), 1);
}

TEST(GroupAverage, RandomSeedsQubitGroups) {
  check_group_average(rep_rotation_z3(), 2);
  check_group_average(tensor_power(rep_reflection_qubit(), 2), 3);
  check_group_average(tensor_power(rep_reflection_qubit(), 3), 4);
  check_group_average(tensor_power(rep_reflection_qubit(), 4), 5);
  check_group_average(tensor_power(rep_cyclic_qubit(4), 2), 6);
}

TEST(GroupAverage, SingleSubspace) {
  UnitaryRepresentation r = rep_reflection_qubit();
  Vector x = Vector::Zero(2);
  x(1) = Complex(0.0, 0.7);
  Matrix expect = Matrix::Zero(2, 2);
  expect(1, 1) = 0.49;
  EXPECT_LE(linalg::max_abs(group_average(r, x) - expect), 1e-15);
}

TEST(GroupAverage, BalancedSeedResolvesIdentity) {
  UnitaryRepresentation rep = tensor_power(rep_reflection_qubit(), 3);
  Vector x = Vector::Constant(8, 1.0 / std::sqrt(8.0));
  EXPECT_LE(linalg::identity_residual(8.0 * group_average(rep, x)), 1e-12);
}

}  // namespace
}  // namespace covelim
