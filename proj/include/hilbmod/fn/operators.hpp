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

// C[0, 1]-linear maps between submodules of free modules over C[0, 1],
// given by matrices of functions.

#include <optional>

#include "hilbmod/fn/module.hpp"

namespace hilbmod::fn {

class FnModuleMap {
 public:
  /// m x n matrix acting on C[0, 1]^n. Domain and codomain default to the
  /// free modules; a codomain submodule must contain the image of the
  /// domain generators at every grid point, else ImageNotContained.
  FnModuleMap(FnMatrix matrix, std::optional<FnSubmodule> domain = {}, std::optional<FnSubmodule> codomain = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FnMatrix& matrix() const { return matrix_; }
  const FnSubmodule& domain() const { return domain_; }
  const FnSubmodule& codomain() const { return codomain_; }
  bool polynomial() const;

  Mat operator()(double t) const { return evaluate(matrix_, t, rows_, cols_); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  FnMatrix matrix_;
  FnSubmodule domain_;
  FnSubmodule codomain_;
};

/// Image of each domain generator.
FnMatrix apply_to_generators(const FnModuleMap& m);

struct FnKernel {
  enum class Kind { kZero, kEverything, kGenerated };
  Kind kind = Kind::kZero;
  /// Generators of the pointwise null spaces for kGenerated.
  std::optional<FnSubmodule> module;
};

const char* to_string(FnKernel::Kind k);

/// Zero when the map is injective on generic fibers of the domain, since
/// the remaining points are finitely many and elements are continuous.
/// Generated kernels come from signed maximal minors. Symbolic matrices
/// are supported when diagonal.
FnKernel fn_kernel(const FnModuleMap& m);

struct FnAdjointOutcome {
  bool adjointable = false;
  /// When a closed form exists: the conjugate transpose, for free domains.
  std::optional<FnModuleMap> adjoint;
  /// A drop point of the domain across which the candidate jumps.
  std::optional<double> witness;
  double jump = 0;
};

/// The candidate adjoint is t -> P_E(t) m(t)^*, with P_E the fiber
/// projection of the domain. It is continuous off the drop points; at a
/// drop point t0 the candidate is continuous iff (P_lim - P_E(t0)) m(t0)^*
/// vanishes, with P_lim the one-sided limit of the generic fibers.
FnAdjointOutcome fn_try_adjoint(const FnModuleMap& m);

}  // namespace hilbmod::fn
