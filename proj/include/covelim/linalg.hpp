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
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace covelim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace linalg {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Largest absolute entry; zero for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

inline double identity_residual(const Matrix& m) {
  return max_abs(m - Matrix::Identity(m.rows(), m.cols()));
}

inline double hermiticity_residual(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

inline bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{}) return false;
  return true;
}

/// Ascending eigenvalues of the Hermitian part of `m`.
inline Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return {};
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Number of eigenvalues above `threshold`.
inline int hermitian_rank(const Matrix& m, double threshold = 1e-8) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(m);
  return static_cast<int>(std::count_if(ev.begin(), ev.end(),
                                        [&](double x) { return x > threshold; }));
}

inline Vector basis_vector(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

/// Multiplies by a unit phase so the largest-magnitude entry (first one on
/// ties within 1e-12) becomes real and positive.
inline Vector canonical_phase(const Vector& v) {
  if (v.size() == 0) return v;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return v;
  Eigen::Index k = 0;
  while (std::abs(v(k)) < top - 1e-12) ++k;
  return v * (std::abs(v(k)) / v(k));
}

}  // namespace linalg
}  // namespace covelim
