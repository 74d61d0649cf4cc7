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

// The free module C[0, 1]^n and its finitely generated submodules.
//
// A submodule is the closure of the span of its generators. Its fiber at t
// is the column span of the generator matrix at t; the rank of that matrix
// is generic away from finitely many drop points, which are the common real
// roots of all maximal nonvanishing minors. Constant fiber rank is exactly
// complementedness.

#include <optional>
#include <vector>

#include "hilbmod/fn/function.hpp"

namespace hilbmod::fn {

/// Row-major: matrix[i][j].
using FnMatrix = std::vector<std::vector<PolyFunction>>;

/// Evaluated at t.
Mat evaluate(const FnMatrix& m, double t, int rows, int cols);

/// Entrywise conjugate transpose.
FnMatrix adjoint(const FnMatrix& m, int rows, int cols);

FnMatrix multiply(const FnMatrix& a, const FnMatrix& b, int inner);

class FnModuleVector {
 public:
  FnModuleVector() = default;
  FnModuleVector(std::vector<PolyFunction> entries) : entries_(std::move(entries)) {}

  int size() const { return static_cast<int>(entries_.size()); }
  const PolyFunction& operator[](int i) const { return entries_[i]; }
  const std::vector<PolyFunction>& entries() const { return entries_; }
  Vec operator()(double t) const;

 private:
  std::vector<PolyFunction> entries_;
};

/// sum_i conj(x_i) y_i. Throws LengthMismatch.
PolyFunction fn_inner_product(const FnModuleVector& x, const FnModuleVector& y);

inline constexpr int kDefaultGrid = 257;

/// t_j = (1 - cos(pi j / (points - 1))) / 2, endpoints exactly 0 and 1.
std::vector<double> chebyshev_grid(int points = kDefaultGrid);

class FnSubmodule {
 public:
  /// `generators` is n x k, one generator per column.
  FnSubmodule(int n, FnMatrix generators);

  /// C[0, 1]^n itself, generated by the unit vectors.
  static FnSubmodule whole(int n);

  int ambient_rank() const { return n_; }
  int num_generators() const { return k_; }
  bool is_whole() const { return whole_; }
  const FnMatrix& generators() const { return gens_; }
  FnModuleVector generator(int j) const;
  bool polynomial() const;
  bool all_zero() const;

  /// n x k generator values at t.
  Mat evaluate(double t) const { return fn::evaluate(gens_, t, n_, k_); }

  /// Exact structure; polynomial generators only. Throws
  /// DegenerateGenerators when every generator is zero, Unsupported for
  /// symbolic generators.
  int generic_rank() const;
  const std::vector<RealRoot>& drop_points() const;
  /// Exact rank of the generators at the binary value of t.
  int fiber_rank(double t) const;
  /// Rank at a root: exact when the root is known exactly, else from the
  /// singular values at its approximation.
  int fiber_rank_at(const RealRoot& r) const;
  /// Orthonormal basis of the fiber at t, with fiber_rank(t) columns.
  Mat fiber_basis(double t) const;

 private:
  struct Structure;
  const Structure& structure() const;

  int n_ = 0;
  int k_ = 0;
  bool whole_ = false;
  FnMatrix gens_;
  std::shared_ptr<const Structure> structure_;
};

struct RankProfile {
  std::vector<double> grid;
  std::vector<int> ranks;
  int generic_rank = 0;
  std::vector<RealRoot> drop_points;
};

RankProfile fiber_rank_profile(const FnSubmodule& s, int grid = kDefaultGrid);

/// Certificate: the constant rank, or the points where the rank drops.
struct Complementedness {
  bool complemented = false;
  int rank = 0;
  std::vector<RealRoot> drop_points;
};

Complementedness fn_is_complemented(const FnSubmodule& s);

/// Equality of closures: same fiber at every point. Decided from the
/// generic ranks of s, t and [s t] and their fiber ranks at every drop
/// point of the three.
bool fn_submodule_equal(const FnSubmodule& s, const FnSubmodule& t);

}  // namespace hilbmod::fn
