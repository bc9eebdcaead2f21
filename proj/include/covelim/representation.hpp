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
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "covelim/error.hpp"
#include "covelim/group.hpp"
#include "covelim/linalg.hpp"

namespace covelim {

/// exp(2 pi i k / n), exact on quarter turns.
inline Complex root_of_unity(std::size_t k, std::size_t n) {
  k %= n;
  if ((4 * k) % n == 0) {
    switch (4 * k / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

/// Unitary representation g -> Gamma(g). Diagonal representations keep only
/// their diagonals, which keeps 2^n-dimensional qubit representations cheap.
class UnitaryRepresentation {
 public:
  static constexpr double kTolerance = 1e-12;

  static UnitaryRepresentation from_matrices(GroupPtr group, std::vector<Matrix> matrices) {
    UnitaryRepresentation rep(std::move(group));
    if (matrices.size() != rep.group_->order())
      throw Error(ErrorCode::invalid_parameter, "one matrix per group element required");
    rep.dim_ = matrices.front().rows();
    for (const Matrix& m : matrices)
      if (m.rows() != rep.dim_ || m.cols() != rep.dim_)
        throw Error(ErrorCode::invalid_parameter, "representation matrices must be square and equal-sized");
    rep.dense_ = std::move(matrices);
    rep.validate();
    return rep;
  }

  static UnitaryRepresentation from_diagonals(GroupPtr group, std::vector<Vector> diagonals) {
    UnitaryRepresentation rep(std::move(group));
    if (diagonals.size() != rep.group_->order())
      throw Error(ErrorCode::invalid_parameter, "one diagonal per group element required");
    rep.dim_ = diagonals.front().size();
    for (const Vector& d : diagonals)
      if (d.size() != rep.dim_)
        throw Error(ErrorCode::invalid_parameter, "representation diagonals must be equal-sized");
    rep.diagonal_ = std::move(diagonals);
    rep.validate();
    return rep;
  }

  const GroupPtr& group() const noexcept { return group_; }
  Eigen::Index dim() const noexcept { return dim_; }
  bool is_diagonal() const noexcept { return !diagonal_.empty(); }

  Matrix matrix(Element g) const {
    if (is_diagonal()) return diagonal_[g].asDiagonal();
    return dense_[g];
  }

  /// Diagonal of Gamma(g); only valid for diagonal representations.
  const Vector& diagonal(Element g) const { return diagonal_[g]; }

  Vector apply(Element g, const Vector& v) const {
    if (is_diagonal()) return diagonal_[g].cwiseProduct(v);
    return dense_[g] * v;
  }

  /// Gamma(g) M Gamma(g)^dagger
  Matrix conjugate(Element g, const Matrix& m) const {
    if (is_diagonal()) {
      const Vector& d = diagonal_[g];
      return d.asDiagonal() * m * d.conjugate().asDiagonal();
    }
    return dense_[g] * m * dense_[g].adjoint();
  }

  Complex character(Element g) const {
    return is_diagonal() ? diagonal_[g].sum() : dense_[g].trace();
  }

  double unitarity_residual() const {
    double worst = 0.0;
    for (Element g = 0; g < group_->order(); ++g) {
      if (is_diagonal()) {
        for (Eigen::Index k = 0; k < dim_; ++k)
          worst = std::max(worst, std::abs(std::norm(diagonal_[g](k)) - 1.0));
      } else {
        worst = std::max(worst, linalg::identity_residual(dense_[g].adjoint() * dense_[g]));
      }
    }
    return worst;
  }

  /// max over pairs of |Gamma(g) Gamma(h) - Gamma(gh)|_max
  double homomorphism_residual() const {
    double worst = 0.0;
    const std::size_t n = group_->order();
    for (Element g = 0; g < n; ++g) {
      for (Element h = 0; h < n; ++h) {
        const Element gh = group_->multiply(g, h);
        if (is_diagonal()) {
          worst = std::max(worst, linalg::max_abs(diagonal_[g].cwiseProduct(diagonal_[h]) -
                                                  diagonal_[gh]));
        } else {
          worst = std::max(worst, linalg::max_abs(dense_[g] * dense_[h] - dense_[gh]));
        }
      }
    }
    return worst;
  }

 private:
  explicit UnitaryRepresentation(GroupPtr group) : group_(std::move(group)) {
    if (!group_) throw Error(ErrorCode::invalid_parameter, "representation needs a group");
  }

  void validate() const {
    if (const double u = unitarity_residual(); u > kTolerance)
      throw Error(ErrorCode::invalid_parameter,
                  "matrices are not unitary (residual " + std::to_string(u) + ")");
    if (const double h = homomorphism_residual(); h > kTolerance)
      throw Error(ErrorCode::invalid_parameter,
                  "matrices are not a homomorphism (residual " + std::to_string(h) + ")");
  }

  GroupPtr group_;
  Eigen::Index dim_ = 0;
  std::vector<Matrix> dense_;
  std::vector<Vector> diagonal_;
};

/// Z2 = {e, g} acting on a qubit as {I, diag(1, -1)}.
inline UnitaryRepresentation rep_reflection_qubit() {
  Vector e(2), r(2);
  e << 1.0, 1.0;
  r << 1.0, -1.0;
  return UnitaryRepresentation::from_diagonals(build_cyclic(2), {e, r});
}

/// Z_N acting on a qubit as g^j -> diag(1, exp(2 pi i j / N)).
inline UnitaryRepresentation rep_cyclic_qubit(std::size_t n) {
  GroupPtr group = build_cyclic(n);
  std::vector<Vector> diagonals;
  diagonals.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector d(2);
    d << 1.0, root_of_unity(j, n);
    diagonals.push_back(std::move(d));
  }
  return UnitaryRepresentation::from_diagonals(std::move(group), std::move(diagonals));
}

/// Z3 acting on a qubit by the real rotation V = [[-1/2, sqrt3/2], [-sqrt3/2, -1/2]].
inline UnitaryRepresentation rep_rotation_z3() {
  const double h = std::sqrt(3.0) / 2.0;
  Matrix v(2, 2);
  v << -0.5, h, -h, -0.5;
  return UnitaryRepresentation::from_matrices(build_cyclic(3),
                                              {Matrix::Identity(2, 2), v, v * v});
}

/// Two-dimensional irrep of D3 with Gamma(r) a rotation and Gamma(s) = diag(1, -1).
inline UnitaryRepresentation rep_d3_standard() {
  GroupPtr group = build_dihedral3();
  const double h = std::sqrt(3.0) / 2.0;
  Matrix r(2, 2), s(2, 2);
  r << -0.5, -h, h, -0.5;
  s << 1.0, 0.0, 0.0, -1.0;
  std::vector<Matrix> mats(6);
  Matrix rot = Matrix::Identity(2, 2);
  for (std::size_t a = 0; a < 3; ++a) {
    mats[a] = rot;
    mats[a + 3] = rot * s;
    rot = rot * r;
  }
  return UnitaryRepresentation::from_matrices(std::move(group), std::move(mats));
}

/// g -> a(g) (x) b(g) over the shared group.
inline UnitaryRepresentation inner_tensor(const UnitaryRepresentation& a,
                                          const UnitaryRepresentation& b) {
  if (!(*a.group() == *b.group()))
    throw Error(ErrorCode::invalid_parameter, "inner tensor product needs a common group");
  const std::size_t n = a.group()->order();
  if (a.is_diagonal() && b.is_diagonal()) {
    std::vector<Vector> diags(n);
    for (Element g = 0; g < n; ++g) diags[g] = linalg::kron(a.diagonal(g), b.diagonal(g));
    return UnitaryRepresentation::from_diagonals(a.group(), std::move(diags));
  }
  std::vector<Matrix> mats(n);
  for (Element g = 0; g < n; ++g) mats[g] = linalg::kron(a.matrix(g), b.matrix(g));
  return UnitaryRepresentation::from_matrices(a.group(), std::move(mats));
}

/// (g, h) -> a(g) (x) b(h) over the direct product of the two groups.
inline UnitaryRepresentation outer_tensor(const UnitaryRepresentation& a,
                                          const UnitaryRepresentation& b) {
  GroupPtr group = direct_product(*a.group(), *b.group());
  const std::size_t nb = b.group()->order();
  const std::size_t n = group->order();
  if (a.is_diagonal() && b.is_diagonal()) {
    std::vector<Vector> diags(n);
    for (Element g = 0; g < n; ++g)
      diags[g] = linalg::kron(a.diagonal(g / nb), b.diagonal(g % nb));
    return UnitaryRepresentation::from_diagonals(std::move(group), std::move(diags));
  }
  std::vector<Matrix> mats(n);
  for (Element g = 0; g < n; ++g) mats[g] = linalg::kron(a.matrix(g / nb), b.matrix(g % nb));
  return UnitaryRepresentation::from_matrices(std::move(group), std::move(mats));
}

/// Inner product when both representations share the same group object,
/// otherwise a representation of the direct product.
inline UnitaryRepresentation tensor(const UnitaryRepresentation& a,
                                    const UnitaryRepresentation& b) {
  if (a.group() == b.group()) return inner_tensor(a, b);
  return outer_tensor(a, b);
}

/// rep (x) rep (x) ... over G^copies.
inline UnitaryRepresentation tensor_power(const UnitaryRepresentation& rep, std::size_t copies) {
  if (copies == 0) throw Error(ErrorCode::invalid_parameter, "tensor power needs >= 1 copy");
  UnitaryRepresentation out = rep;
  for (std::size_t i = 1; i < copies; ++i) out = outer_tensor(out, rep);
  return out;
}

struct CharacterTable {
  GroupPtr group;
  std::vector<std::string> labels;
  std::vector<int> dims;
  std::vector<std::vector<Element>> classes;
  std::vector<std::size_t> class_of;
  // values[p][c]: character of irrep p on class c
  std::vector<std::vector<Complex>> values;

  std::size_t irrep_count() const noexcept { return labels.size(); }
  Complex character(std::size_t p, Element g) const { return values[p][class_of[g]]; }

  /// max |<chi_p, chi_q> - delta_pq| under the class-weighted inner product.
  double orthogonality_residual() const {
    const double order = static_cast<double>(group->order());
    double worst = 0.0;
    for (std::size_t p = 0; p < irrep_count(); ++p) {
      for (std::size_t q = 0; q < irrep_count(); ++q) {
        Complex acc{};
        for (std::size_t c = 0; c < classes.size(); ++c)
          acc += static_cast<double>(classes[c].size()) * std::conj(values[p][c]) * values[q][c];
        acc /= order;
        worst = std::max(worst, std::abs(acc - (p == q ? 1.0 : 0.0)));
      }
    }
    return worst;
  }
};

namespace detail {

struct FactorTable {
  std::vector<std::string> labels;
  std::vector<int> dims;
  // chars[p][element]
  std::vector<std::vector<Complex>> chars;
};

inline FactorTable factor_table(const GroupFactor& f) {
  FactorTable t;
  if (f.kind == GroupFactor::Kind::cyclic) {
    const std::size_t n = f.order;
    for (std::size_t k = 0; k < n; ++k) {
      t.labels.push_back("k" + std::to_string(k));
      t.dims.push_back(1);
      std::vector<Complex> row(n);
      for (std::size_t j = 0; j < n; ++j) row[j] = root_of_unity(j * k, n);
      t.chars.push_back(std::move(row));
    }
    return t;
  }
  // D3 elements {e, r, r2, s, rs, r2s}; classes {e}, {r, r2}, {s, rs, r2s}.
  t.labels = {"A1", "A2", "E"};
  t.dims = {1, 1, 2};
  t.chars = {{1, 1, 1, 1, 1, 1}, {1, 1, 1, -1, -1, -1}, {2, -1, -1, 0, 0, 0}};
  return t;
}

}  // namespace detail

/// Character table of a product of cyclic groups and D3 factors. Irrep
/// indices are mixed radix over the factors, like element indices.
inline CharacterTable character_table(const GroupPtr& group) {
  if (group->factors().empty())
    throw Error(ErrorCode::unsupported_group, "no factor structure for this group");
  CharacterTable table;
  table.group = group;
  table.classes = group->conjugacy_classes();
  table.class_of.assign(group->order(), 0);
  for (std::size_t c = 0; c < table.classes.size(); ++c)
    for (Element g : table.classes[c]) table.class_of[g] = c;

  std::vector<detail::FactorTable> factors;
  std::size_t count = 1;
  for (const GroupFactor& f : group->factors()) {
    factors.push_back(detail::factor_table(f));
    count *= factors.back().labels.size();
  }
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<std::size_t> digits(factors.size());
    std::size_t rest = p;
    for (std::size_t i = factors.size(); i-- > 0;) {
      digits[i] = rest % factors[i].labels.size();
      rest /= factors[i].labels.size();
    }
    std::string label;
    int dim = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) label += ",";
      label += factors[i].labels[digits[i]];
      dim *= factors[i].dims[digits[i]];
    }
    std::vector<Complex> row(table.classes.size());
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
      const std::vector<Element> parts = group->components(table.classes[c].front());
      Complex chi{1.0, 0.0};
      for (std::size_t i = 0; i < factors.size(); ++i) chi *= factors[i].chars[digits[i]][parts[i]];
      row[c] = chi;
    }
    table.labels.push_back(std::move(label));
    table.dims.push_back(dim);
    table.values.push_back(std::move(row));
  }
  return table;
}

/// One irrep that occurs in a representation.
struct IrrepComponent {
  std::size_t irrep;  // row in the character table
  std::string label;
  int dim;
  // orthonormal columns spanning the invariant subspace
  Matrix basis;

  Matrix projector() const { return basis * basis.adjoint(); }
};

struct IrrepDecomposition {
  GroupPtr group;
  Eigen::Index dim = 0;
  // multiplicity of every irrep of the table, in table order
  std::vector<int> multiplicities;
  // irreps with multiplicity one, in table order
  std::vector<IrrepComponent> components;

  /// Number of invariant-basis vectors across all components.
  Eigen::Index basis_size() const {
    Eigen::Index n = 0;
    for (const IrrepComponent& c : components) n += c.basis.cols();
    return n;
  }

  /// Coordinates of `v` on the concatenated invariant-subspace bases.
  Vector coordinates(const Vector& v) const {
    Vector out(basis_size());
    Eigen::Index k = 0;
    for (const IrrepComponent& c : components) {
      out.segment(k, c.basis.cols()) = c.basis.adjoint() * v;
      k += c.basis.cols();
    }
    return out;
  }

  /// ||P_p v||^2 per component.
  std::vector<double> block_norms(const Vector& v) const {
    std::vector<double> out;
    out.reserve(components.size());
    for (const IrrepComponent& c : components) out.push_back((c.basis.adjoint() * v).squaredNorm());
    return out;
  }
};

namespace detail {

// Gram-Schmidt on P e_0, P e_1, ... until `rank` vectors are collected.
inline Matrix projected_basis(const Matrix& projector, Eigen::Index rank) {
  const Eigen::Index d = projector.rows();
  Matrix basis(d, rank);
  Eigen::Index found = 0;
  for (Eigen::Index k = 0; k < d && found < rank; ++k) {
    Vector v = projector.col(k);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index j = 0; j < found; ++j) v -= basis.col(j) * basis.col(j).dot(v);
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    basis.col(found++) = v / norm;
  }
  if (found != rank)
    throw Error(ErrorCode::numerical_failure, "could not span invariant subspace");
  return basis;
}

}  // namespace detail

/// Splits `rep` into invariant subspaces with the character projection
/// P_p = (d_p / |G|) sum_g conj(chi_p(g)) Gamma(g).
///
/// One-dimensional subspace bases have their largest entry real positive;
/// larger blocks use Gram-Schmidt on the projected computational basis.
inline IrrepDecomposition decompose(const UnitaryRepresentation& rep, const CharacterTable& table) {
  const FiniteGroup& g = *rep.group();
  if (!(*table.group == g))
    throw Error(ErrorCode::invalid_parameter, "character table belongs to another group");
  const double order = static_cast<double>(g.order());
  const Eigen::Index d = rep.dim();

  IrrepDecomposition out;
  out.group = rep.group();
  out.dim = d;

  std::vector<Complex> rep_chars(g.order());
  for (Element x = 0; x < g.order(); ++x) rep_chars[x] = rep.character(x);

  for (std::size_t p = 0; p < table.irrep_count(); ++p) {
    Complex overlap{};
    for (Element x = 0; x < g.order(); ++x) overlap += std::conj(table.character(p, x)) * rep_chars[x];
    overlap /= order;
    const double rounded = std::round(overlap.real());
    if (std::abs(overlap - rounded) > 1e-8)
      throw Error(ErrorCode::numerical_failure, "non-integral multiplicity for " + table.labels[p]);
    const int m = static_cast<int>(rounded);
    out.multiplicities.push_back(m);
    if (m > 1)
      throw Error(ErrorCode::multiplicity_violation,
                  table.labels[p] + " occurs " + std::to_string(m) + " times");
    if (m == 0) continue;

    const int dp = table.dims[p];
    const double scale = dp / order;
    IrrepComponent comp{p, table.labels[p], dp, Matrix()};
    if (rep.is_diagonal()) {
      Vector diag = Vector::Zero(d);
      for (Element x = 0; x < g.order(); ++x)
        diag += std::conj(table.character(p, x)) * rep.diagonal(x);
      diag *= scale;
      std::vector<Eigen::Index> support;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double v = diag(k).real();
        if (std::abs(diag(k) - 1.0) <= 1e-8) {
          support.push_back(k);
        } else if (std::abs(diag(k)) > 1e-8) {
          throw Error(ErrorCode::numerical_failure, "projector eigenvalue " + std::to_string(v));
        }
      }
      comp.basis = Matrix::Zero(d, static_cast<Eigen::Index>(support.size()));
      for (std::size_t i = 0; i < support.size(); ++i) comp.basis(support[i], i) = 1.0;
    } else {
      Matrix proj = Matrix::Zero(d, d);
      for (Element x = 0; x < g.order(); ++x) proj += std::conj(table.character(p, x)) * rep.matrix(x);
      proj *= scale;
      const Eigen::VectorXd ev = linalg::hermitian_eigenvalues(proj);
      Eigen::Index rank = 0;
      for (double lambda : ev) {
        if (std::abs(lambda - 1.0) <= 1e-8) {
          ++rank;
        } else if (std::abs(lambda) > 1e-8) {
          throw Error(ErrorCode::numerical_failure, "projector eigenvalue " + std::to_string(lambda));
        }
      }
      comp.basis = detail::projected_basis(proj, rank);
    }
    if (comp.basis.cols() != dp * m)
      throw Error(ErrorCode::numerical_failure, "invariant subspace of " + table.labels[p] +
                                                    " has the wrong dimension");
    if (comp.basis.cols() == 1) comp.basis.col(0) = linalg::canonical_phase(comp.basis.col(0));
    out.components.push_back(std::move(comp));
  }
  if (out.basis_size() != d)
    throw Error(ErrorCode::numerical_failure, "invariant subspaces do not span the space");
  return out;
}

/// (1/|G|) sum_g Gamma(g) |x><x| Gamma(g)^dagger
inline Matrix group_average(const UnitaryRepresentation& rep, const Vector& x) {
  if (x.norm() == 0.0) throw Error(ErrorCode::invalid_parameter, "vector must be nonzero");
  Matrix acc = Matrix::Zero(rep.dim(), rep.dim());
  for (Element g = 0; g < rep.group()->order(); ++g) {
    const Vector y = rep.apply(g, x);
    acc.noalias() += y * y.adjoint();
  }
  return acc / static_cast<double>(rep.group()->order());
}

}  // namespace covelim
