/*
   Copyright 2026 The hilbmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Dense helpers shared by the algebra, module and operator layers. All of
// them take Eigen expressions and return plain matrices in the scalar type
// of the argument.

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "hilbmod/core.hpp"

namespace hilbmod::linalg {

template <typename Derived>
using PlainOf = typename Derived::PlainObject;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

/// Largest singular value.
template <typename Derived>
RealOf<Derived> spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<PlainOf<Derived>> svd(m.eval());
  return svd.singularValues()(0);
}

/// Orthonormal basis of the column span; singular values at or below
/// max(rel_tol * sigma_max, abs_floor) count as zero.
template <typename Derived>
PlainOf<Derived> orthonormal_range(const Eigen::MatrixBase<Derived>& cols, double rel_tol, double abs_floor = 0) {
  using Plain = PlainOf<Derived>;
  if (cols.cols() == 0 || cols.rows() == 0) return Plain(cols.rows(), 0);
  Eigen::JacobiSVD<Plain> svd(cols.eval(), Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const auto cutoff = std::max<RealOf<Derived>>(rel_tol * s(0), abs_floor);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Orthonormal basis of {x : m x = 0}, with the same singular value cutoff.
template <typename Derived>
PlainOf<Derived> null_space(const Eigen::MatrixBase<Derived>& m, double rel_tol, double abs_floor = 0) {
  using Plain = PlainOf<Derived>;
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return Plain::Identity(n, n);
  Eigen::JacobiSVD<Plain> svd(m.eval(), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const auto cutoff = std::max<RealOf<Derived>>(rel_tol * (s.size() ? s(0) : 0), abs_floor);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

/// Orthogonal projection onto the span of orthonormal columns q.
template <typename Derived>
PlainOf<Derived> projector(const Eigen::MatrixBase<Derived>& q, Eigen::Index dim) {
  if (q.cols() == 0) return PlainOf<Derived>::Zero(dim, dim);
  return q * q.adjoint();
}

/// Frobenius distance between the projections onto two orthonormal bases.
template <typename DA, typename DB>
RealOf<DA> projection_distance(const Eigen::MatrixBase<DA>& qa, const Eigen::MatrixBase<DB>& qb) {
  const auto dim = qa.rows();
  return (projector(qa, dim) - projector(qb, dim)).norm();
}

/// Moore-Penrose pseudo-inverse; singular values at or below
/// rel_tol * sigma_max are inverted to zero.
template <typename Derived>
auto pseudo_inverse(const Eigen::MatrixBase<Derived>& m, double rel_tol) {
  using Plain = PlainOf<Derived>;
  using Scalar = typename Derived::Scalar;
  Plain result = Plain::Zero(m.cols(), m.rows());
  if (m.size() == 0) return result;
  Eigen::JacobiSVD<Plain> svd(m.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const auto cutoff = rel_tol * s(0);
  for (Eigen::Index k = 0; k < s.size() && s(k) > cutoff; ++k) {
    result.noalias() += svd.matrixV().col(k) * (Scalar(1.0 / s(k)) * svd.matrixU().col(k).adjoint());
  }
  return result;
}

/// Positive square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues with |lambda| <= rel_tol * norm are set to zero; anything
/// more negative throws NotPositive.
template <typename Derived>
PlainOf<Derived> hermitian_sqrt(const Eigen::MatrixBase<Derived>& h, double rel_tol) {
  using Plain = PlainOf<Derived>;
  using Real = RealOf<Derived>;
  if (h.size() == 0) return Plain(h.rows(), h.cols());
  const Plain herm = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Plain> es(herm);
  auto lambda = es.eigenvalues().eval();
  const Real norm = lambda.cwiseAbs().maxCoeff();
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda(k)) <= rel_tol * norm) {
      lambda(k) = 0;
    } else if (lambda(k) < 0) {
      throw Error(ErrorKind::kNotPositive, "eigenvalue " + std::to_string(lambda(k)) + " below zero");
    } else {
      lambda(k) = std::sqrt(lambda(k));
    }
  }
  using Scalar = typename Derived::Scalar;
  return es.eigenvectors() * lambda.template cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace hilbmod::linalg
