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

// Free Hilbert B-modules B^n over a finite-dimensional B, their submodules
// and the B-valued inner product.
//
// A vector of B^n is stored flat: entry i, block k, matrix element (r, c)
// lives at i * dim(B) + offset(k) + r + c * n_k. The standard complex inner
// product on the flat coordinates is the trace pairing sum_k tr <x,y>_k.

#include <memory>
#include <span>
#include <vector>

#include "hilbmod/algebra.hpp"

namespace hilbmod {

class FreeModule {
 public:
  FreeModule(AlgebraSpec algebra, int rank);

  const AlgebraSpec& algebra() const { return algebra_; }
  int rank() const { return rank_; }
  /// Underlying complex dimension, rank * sum n_k^2.
  int dim() const { return rank_ * algebra_.dim(); }

  /// Matrix of x -> x u on flat coordinates.
  Mat right_action(const AlgebraElement& u) const;

  /// Right actions of all matrix units; they span B.
  const std::vector<Mat>& unit_actions() const { return *unit_actions_; }

  /// Flat coordinates of the left multiplication x -> t x by an algebra
  /// valued matrix, as a map from `domain` to `*this`.
  Mat left_matrix(const FreeModule& domain, const std::vector<std::vector<AlgebraElement>>& t) const;

  friend bool operator==(const FreeModule& a, const FreeModule& b) {
    return a.rank_ == b.rank_ && a.algebra_ == b.algebra_;
  }

 private:
  AlgebraSpec algebra_;
  int rank_;
  std::shared_ptr<const std::vector<Mat>> unit_actions_;
};

class ModuleVector {
 public:
  /// Zero vector.
  explicit ModuleVector(FreeModule module);
  ModuleVector(FreeModule module, std::vector<AlgebraElement> entries);

  static ModuleVector from_flat(const FreeModule& module, const Vec& flat);
  /// e_i u, the i-th standard basis vector times u.
  static ModuleVector basis(const FreeModule& module, int i, const AlgebraElement& u);
  static ModuleVector basis(const FreeModule& module, int i);

  const FreeModule& module() const { return module_; }
  const std::vector<AlgebraElement>& entries() const { return entries_; }
  const AlgebraElement& operator[](int i) const { return entries_[i]; }

  Vec flat() const;

  /// Right action x u.
  friend ModuleVector operator*(const ModuleVector& x, const AlgebraElement& u);
  friend ModuleVector operator+(const ModuleVector& x, const ModuleVector& y);

 private:
  FreeModule module_;
  std::vector<AlgebraElement> entries_;
};

/// <x, y> = sum_i x_i^* y_i.
AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y);
/// Same pairing on flat coordinates.
AlgebraElement inner_product(const FreeModule& module, const Vec& x, const Vec& y);

/// All B-valued pairings <x_i, y_j> between the columns of xs and ys.
/// Block k of the result is (rows(x) n_k) x (cols(y) n_k) with the (i, j)
/// sub-block equal to block k of <x_i, y_j>.
class GramBlocks {
 public:
  GramBlocks(const FreeModule& module, const Mat& xs, const Mat& ys);

  AlgebraElement at(int i, int j) const;
  /// Largest C*-norm of the entrywise difference with another Gram table.
  double max_distance(const GramBlocks& other, int* worst_i = nullptr, int* worst_j = nullptr) const;
  /// Largest C*-norm over all entries.
  double max_norm() const;
  /// Real and imaginary parts of every entry, in a fixed order.
  Eigen::VectorXd real_flat() const;

 private:
  AlgebraSpec algebra_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Mat> blocks_;
};

/// A closed right submodule of a free module, held as an orthonormal basis
/// (trace pairing) of its underlying complex subspace.
class Submodule {
 public:
  /// The whole module.
  explicit Submodule(FreeModule ambient);
  /// `basis` must be orthonormal and span a right-invariant subspace.
  Submodule(FreeModule ambient, Mat basis);

  static Submodule whole(const FreeModule& ambient) { return Submodule(ambient); }
  static Submodule zero(const FreeModule& ambient) { return Submodule(ambient, Mat(ambient.dim(), 0)); }

  const FreeModule& ambient() const { return ambient_; }
  const Mat& basis() const { return basis_; }
  /// Complex dimension.
  int dim() const { return static_cast<int>(basis_.cols()); }
  bool is_zero() const { return basis_.cols() == 0; }
  bool is_whole() const { return dim() == ambient_.dim(); }

  Mat projector() const { return linalg::projector(basis_, ambient_.dim()); }

  ModuleVector vector(int j) const { return ModuleVector::from_flat(ambient_, basis_.col(j)); }

 private:
  FreeModule ambient_;
  Mat basis_;
};

/// Smallest right submodule containing the generators (flat columns).
Submodule submodule_from_generators(const FreeModule& module, const Mat& generators, Tolerance tol = {});
Submodule submodule_from_generators(const FreeModule& module, std::span<const ModuleVector> gens, Tolerance tol = {});

/// {x : <x, y> = 0 for all y in s}, computed through the trace pairing.
Submodule orthocomplement(const Submodule& s);
/// Orthocomplement of s inside a larger submodule.
Submodule orthocomplement(const Submodule& s, const Submodule& within);
/// Same set computed from the B-valued equations <y_j, x> = 0 directly.
Submodule b_valued_orthocomplement(const Submodule& s, Tolerance tol = {});

/// s + s^perp spans the ambient module. Always true on this backend.
bool is_complemented(const Submodule& s, Tolerance tol = {});

/// Projection-distance test ||P_s - P_t||_F <= tol * max(1, ...).
bool submodule_equal(const Submodule& s, const Submodule& t, Tolerance tol = {});
/// ||(1 - P_t) P_s||_F <= tol.
bool submodule_contains(const Submodule& t, const Submodule& s, Tolerance tol = {});
double projection_distance(const Submodule& s, const Submodule& t);

Submodule intersection(const Submodule& s, const Submodule& t, Tolerance tol = {});

}  // namespace hilbmod
