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

// Finite-dimensional C*-algebras B = M_{n_1} (+) ... (+) M_{n_K} realized as
// block-diagonal complex matrices.

#include <numeric>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "hilbmod/core.hpp"
#include "hilbmod/linalg.hpp"

namespace hilbmod {

/// Block sizes (n_1, ..., n_K).
class AlgebraSpec {
 public:
  AlgebraSpec() : AlgebraSpec(std::vector<int>{1}) {}
  explicit AlgebraSpec(std::vector<int> block_dims);

  /// B = C.
  static AlgebraSpec scalars() { return AlgebraSpec(); }

  const std::vector<int>& block_dims() const { return dims_; }
  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int block_dim(int k) const { return dims_[k]; }
  /// Offset of block k in the flattened (column-major per block) layout.
  int block_offset(int k) const { return offsets_[k]; }
  /// Complex dimension of B, sum of n_k^2.
  int dim() const { return offsets_.back(); }

  friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) { return a.dims_ == b.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraSpec& spec);

template <typename Scalar_>
class BasicAlgebraElement {
 public:
  using Scalar = Scalar_;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Flat = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicAlgebraElement() : BasicAlgebraElement(AlgebraSpec()) {}

  /// Zero element of `spec`.
  explicit BasicAlgebraElement(AlgebraSpec spec) : spec_(std::move(spec)) {
    for (int n : spec_.block_dims()) blocks_.push_back(Block::Zero(n, n));
  }

  BasicAlgebraElement(AlgebraSpec spec, std::vector<Block> blocks) : spec_(std::move(spec)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != spec_.num_blocks()) {
      throw Error(ErrorKind::kShape, "block count does not match algebra");
    }
    for (int k = 0; k < spec_.num_blocks(); ++k) {
      if (blocks_[k].rows() != spec_.block_dim(k) || blocks_[k].cols() != spec_.block_dim(k)) {
        throw Error(ErrorKind::kShape, "block " + std::to_string(k) + " has wrong shape");
      }
    }
  }

  static BasicAlgebraElement zero(const AlgebraSpec& spec) { return BasicAlgebraElement(spec); }

  static BasicAlgebraElement identity(const AlgebraSpec& spec) {
    BasicAlgebraElement e(spec);
    for (auto& b : e.blocks_) b.setIdentity();
    return e;
  }

  /// The matrix unit with a single 1 at (row, col) of block k.
  static BasicAlgebraElement matrix_unit(const AlgebraSpec& spec, int k, int row, int col) {
    BasicAlgebraElement e(spec);
    e.blocks_[k](row, col) = Scalar(1);
    return e;
  }

  static BasicAlgebraElement from_flat(const AlgebraSpec& spec, const Eigen::Ref<const Flat>& flat) {
    if (flat.size() != spec.dim()) throw Error(ErrorKind::kShape, "flat vector has wrong length");
    BasicAlgebraElement e(spec);
    for (int k = 0; k < spec.num_blocks(); ++k) {
      const int n = spec.block_dim(k);
      e.blocks_[k] = Eigen::Map<const Block>(flat.data() + spec.block_offset(k), n, n);
    }
    return e;
  }

  const AlgebraSpec& spec() const { return spec_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(int k) const { return blocks_[k]; }
  Block& block(int k) { return blocks_[k]; }

  Flat flat() const {
    Flat f(spec_.dim());
    for (int k = 0; k < spec_.num_blocks(); ++k) {
      const int n = spec_.block_dim(k);
      Eigen::Map<Block>(f.data() + spec_.block_offset(k), n, n) = blocks_[k];
    }
    return f;
  }

  /// The whole element as one block-diagonal matrix.
  Block dense() const {
    const int total = std::accumulate(spec_.block_dims().begin(), spec_.block_dims().end(), 0);
    Block d = Block::Zero(total, total);
    int at = 0;
    for (const auto& b : blocks_) {
      d.block(at, at, b.rows(), b.cols()) = b;
      at += static_cast<int>(b.rows());
    }
    return d;
  }

  BasicAlgebraElement adjoint() const {
    BasicAlgebraElement r(spec_);
    for (std::size_t k = 0; k < blocks_.size(); ++k) r.blocks_[k] = blocks_[k].adjoint();
    return r;
  }

  /// C*-norm: the largest block spectral norm.
  Real norm() const {
    Real n = 0;
    for (const auto& b : blocks_) n = std::max(n, linalg::spectral_norm(b));
    return n;
  }

  BasicAlgebraElement& operator+=(const BasicAlgebraElement& o) {
    check_same(o);
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += o.blocks_[k];
    return *this;
  }
  BasicAlgebraElement& operator-=(const BasicAlgebraElement& o) {
    check_same(o);
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= o.blocks_[k];
    return *this;
  }
  BasicAlgebraElement& operator*=(Scalar s) {
    for (auto& b : blocks_) b *= s;
    return *this;
  }

  friend BasicAlgebraElement operator+(BasicAlgebraElement a, const BasicAlgebraElement& b) { return a += b; }
  friend BasicAlgebraElement operator-(BasicAlgebraElement a, const BasicAlgebraElement& b) { return a -= b; }
  friend BasicAlgebraElement operator*(BasicAlgebraElement a, Scalar s) { return a *= s; }
  friend BasicAlgebraElement operator*(Scalar s, BasicAlgebraElement a) { return a *= s; }

  friend BasicAlgebraElement operator*(const BasicAlgebraElement& a, const BasicAlgebraElement& b) {
    a.check_same(b);
    BasicAlgebraElement r(a.spec_);
    for (std::size_t k = 0; k < a.blocks_.size(); ++k) r.blocks_[k].noalias() = a.blocks_[k] * b.blocks_[k];
    return r;
  }

 private:
  void check_same(const BasicAlgebraElement& o) const {
    if (!(spec_ == o.spec_)) throw Error(ErrorKind::kModuleMismatch, "elements of different algebras");
  }

  AlgebraSpec spec_;
  std::vector<Block> blocks_;
};

using AlgebraElement = BasicAlgebraElement<Complex>;

template <typename S>
BasicAlgebraElement<S> adjoint(const BasicAlgebraElement<S>& x) {
  return x.adjoint();
}

template <typename S>
typename BasicAlgebraElement<S>::Real norm(const BasicAlgebraElement<S>& x) {
  return x.norm();
}

/// ||x - y|| within tol relative to the larger of ||x||, ||y||.
template <typename S>
bool approx_equal(const BasicAlgebraElement<S>& x, const BasicAlgebraElement<S>& y, Tolerance tol) {
  return tol.close((x - y).norm(), std::max(x.norm(), y.norm()));
}

template <typename S>
bool is_hermitian(const BasicAlgebraElement<S>& x, Tolerance tol) {
  return approx_equal(x, x.adjoint(), tol);
}

/// Hermitian within tol and every eigenvalue >= -tol * ||x||.
template <typename S>
bool is_positive(const BasicAlgebraElement<S>& x, Tolerance tol) {
  if (!is_hermitian(x, tol)) return false;
  const auto bound = -tol.eps() * x.norm();
  for (const auto& b : x.blocks()) {
    using Block = typename BasicAlgebraElement<S>::Block;
    const Block h = (b + b.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Block> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().size() && es.eigenvalues().minCoeff() < bound) return false;
  }
  return true;
}

/// Positive square root, blockwise via Hermitian eigendecomposition.
template <typename S>
BasicAlgebraElement<S> sqrt_positive(const BasicAlgebraElement<S>& x, Tolerance tol) {
  if (!is_positive(x, tol)) throw Error(ErrorKind::kNotPositive, "sqrt_positive of a non-positive element");
  std::vector<typename BasicAlgebraElement<S>::Block> roots;
  const auto norm = x.norm();
  for (const auto& b : x.blocks()) {
    // Clamp relative to the whole element, not the block.
    const auto scale = b.norm() > 0 ? norm / linalg::spectral_norm(b) : 1.0;
    roots.push_back(linalg::hermitian_sqrt(b, tol.eps() * scale));
  }
  return BasicAlgebraElement<S>(x.spec(), std::move(roots));
}

/// Smallest singular value over all blocks exceeds tol * ||x||.
template <typename S>
bool is_invertible(const BasicAlgebraElement<S>& x, Tolerance tol) {
  const auto bound = tol.eps() * x.norm();
  if (x.norm() == 0) return false;
  for (const auto& b : x.blocks()) {
    Eigen::JacobiSVD<typename BasicAlgebraElement<S>::Block> svd(b);
    if (svd.singularValues().minCoeff() <= bound) return false;
  }
  return true;
}

}  // namespace hilbmod
