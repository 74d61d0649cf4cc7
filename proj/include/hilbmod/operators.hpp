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

// Bounded B-linear maps between submodules of free modules, and the
// adjoint-free predicates: isometry, coisometry, partial isometry,
// projection by the Gram identity <x, p y> = <p x, p y>.

#include <optional>
#include <vector>

#include "hilbmod/hilbert_module.hpp"

namespace hilbmod {

/// A B-linear map domain -> codomain. The matrix acts on the flat
/// coordinates of the ambient free modules and vanishes on the trace
/// complement of the domain.
class ModuleMap {
 public:
  /// Projects `matrix` to P_codomain * matrix * P_domain after checking that
  /// it maps the domain into the codomain and commutes with the right action.
  ModuleMap(Submodule domain, Submodule codomain, const Mat& matrix, Tolerance tol = {});

  /// x -> t x between free modules, t an algebra valued matrix.
  static ModuleMap from_algebra_matrix(const FreeModule& domain, const FreeModule& codomain,
                                       const std::vector<std::vector<AlgebraElement>>& t);
  static ModuleMap identity(const Submodule& s);
  static ModuleMap zero(const Submodule& domain, const Submodule& codomain);
  /// Canonical embedding of s into `into` (s must be contained in it).
  static ModuleMap inclusion(const Submodule& s, const Submodule& into);
  /// Orthogonal projection of `within` onto s, as a map within -> within.
  static ModuleMap projection(const Submodule& s, const Submodule& within);

  const Submodule& domain() const { return domain_; }
  const Submodule& codomain() const { return codomain_; }
  const Mat& matrix() const { return matrix_; }

  /// Operator norm for the trace-induced Hilbert norm.
  double norm() const;

  ModuleMap operator*(std::complex<double> s) const;
  friend ModuleMap operator+(const ModuleMap& a, const ModuleMap& b);
  friend ModuleMap operator-(const ModuleMap& a, const ModuleMap& b);

 private:
  struct Unchecked {};
  ModuleMap(Unchecked, Submodule domain, Submodule codomain, Mat matrix);

  friend ModuleMap compose(const ModuleMap&, const ModuleMap&);
  friend ModuleMap restrict(const ModuleMap&, const Submodule&);
  friend ModuleMap corestrict(const ModuleMap&, const Submodule&, Tolerance);

  Submodule domain_;
  Submodule codomain_;
  Mat matrix_;
};

ModuleVector apply(const ModuleMap& m, const ModuleVector& x);
/// outer * inner; outer's domain must equal inner's codomain.
ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner);
/// m restricted to a submodule of its domain.
ModuleMap restrict(const ModuleMap& m, const Submodule& s);
/// m with codomain shrunk to t; throws ImageNotContained.
ModuleMap corestrict(const ModuleMap& m, const Submodule& t, Tolerance tol = {});

/// ||m1 - m2|| <= tol * max(||m1||, ||m2||), same domain and codomain.
bool approx_equal(const ModuleMap& m1, const ModuleMap& m2, Tolerance tol = {});
double relative_distance(const ModuleMap& m1, const ModuleMap& m2);

/// Null space inside the domain.
Submodule kernel(const ModuleMap& m, Tolerance tol = {});
/// Closed submodule generated by the image.
Submodule range_closure(const ModuleMap& m, Tolerance tol = {});

struct AdjointRefusal {
  double residual = 0;
  /// Basis vectors x of the domain and y of the codomain where
  /// <m x, y> - <x, m' y> is largest for the best candidate m'.
  Vec witness_x;
  Vec witness_y;
  std::string reason;
};

struct AdjointOutcome {
  std::optional<ModuleMap> adjoint;
  std::optional<AdjointRefusal> refusal;

  bool ok() const { return adjoint.has_value(); }
};

/// Least-squares solve of <m x_i, y_j> = <x_i, m' y_j> over basis pairs,
/// followed by verification of the B-valued identity.
AdjointOutcome try_adjoint(const ModuleMap& m, Tolerance tol = {});

/// <m x_i, m x_j> = <x_i, x_j> on all basis pairs.
bool is_isometry(const ModuleMap& m, Tolerance tol = {});
/// Contractive, dense range, and isometric on (ker m)^perp.
bool is_coisometry(const ModuleMap& m, Tolerance tol = {});
/// The corestriction to the range closure is a coisometry.
bool is_partial_isometry(const ModuleMap& m, Tolerance tol = {});
/// Projection onto (ker m)^perp; throws NotPartialIsometry.
ModuleMap initial_projection(const ModuleMap& m, Tolerance tol = {});
/// <x_i, p x_j> = <p x_i, p x_j> on all basis pairs; throws ModuleMismatch
/// unless domain and codomain agree.
bool is_projection_gram(const ModuleMap& p, Tolerance tol = {});

/// Largest deviation from B-linearity, relative to ||matrix||.
double b_linearity_defect(const Submodule& domain, const Submodule& codomain, const Mat& matrix);

}  // namespace hilbmod
