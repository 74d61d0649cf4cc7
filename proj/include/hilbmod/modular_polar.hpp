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

// Modular operators and their polar decomposition.
//
// a : E -> F is modular when some b : E -> E satisfies
//     <x, b y> = <a x, a y>   for all x, y in E.
// Then |a| := sqrt(b), E_a := closure(b E), and there is a unique isometry
// v_a : E_a -> F with v_a |a| = a. A partial isometry v with v|a| = a and
// closure(v E) = closure(a E) exists iff E_a is complemented in E.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hilbmod/operators.hpp"

namespace hilbmod {

struct ModularityCertificate {
  ModuleMap b;
  /// Relative least-squares residual of the Gram equations.
  double residual = 0;
  bool self_adjoint = false;
  bool positive = false;
};

struct NotModular {
  double residual = 0;
  int worst_i = -1;
  int worst_j = -1;
};

using ModularityOutcome = std::variant<ModularityCertificate, NotModular>;

/// Solve <x_i, b x_j> = <a x_i, a x_j> over Hermitian B-linear b by least
/// squares. The spanning set defaults to the orthonormal basis of the domain.
ModularityOutcome solve_modularity(const ModuleMap& a, Tolerance tol = {});
ModularityOutcome solve_modularity(const ModuleMap& a, const Mat& spanning, Tolerance tol);

/// The certificate or throws NotModular.
ModularityCertificate certify_modular(const ModuleMap& a, Tolerance tol = {});

/// |a| = sqrt(b) as a map E -> E.
ModuleMap modulus(const ModuleMap& a, Tolerance tol = {});

/// E_a = closure(|a| E), cross-checked against closure(b E).
Submodule range_module_Ea(const ModuleMap& a, Tolerance tol = {});

/// v_a = a o pinv(|a|) restricted to E_a.
ModuleMap build_va(const ModuleMap& a, Tolerance tol = {});

/// One verified identity.
struct Check {
  std::string name;
  bool passed = false;
  /// Residual or distance behind the verdict.
  double value = 0;
};

struct CheckRecord {
  std::vector<Check> checks;

  void add(std::string name, bool passed, double value = 0) { checks.push_back({std::move(name), passed, value}); }
  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

enum class PolarRefusal { kNotModular, kEaNotComplemented };

const char* to_string(PolarRefusal r);

struct PolarReport {
  std::variant<ModularityCertificate, NotModular> certificate;
  std::optional<ModuleMap> modulus;
  std::optional<Submodule> Ea;
  std::optional<ModuleMap> va;
  bool Ea_complemented = false;
  std::optional<ModuleMap> v;
  std::optional<PolarRefusal> refusal;
  /// (ker a)^perp == E_a, reported rather than assumed.
  std::optional<bool> kernel_perp_equals_Ea;
  CheckRecord checks;

  bool modular() const { return std::holds_alternative<ModularityCertificate>(certificate); }
};

/// Full pipeline. Never throws for the refusals of the theory.
PolarReport polar_decompose(const ModuleMap& a, Tolerance tol = {});

/// ker a = ker |a| = ker b, ker b = E_b^perp, E_b in (ker b)^perp,
/// E_b = E_sqrt(b), b injective on E_b.
CheckRecord kernel_invariants(const ModuleMap& a, Tolerance tol = {});

enum class ObservationRefusal { kNotModular, kRangeNotDense };

const char* to_string(ObservationRefusal r);

struct ObservationOutcome {
  /// F -> E, an isometry with range E_a.
  std::optional<ModuleMap> w;
  std::optional<ObservationRefusal> refusal;
  bool w_adjointable = false;
  bool Ea_complemented = false;
  CheckRecord checks;
};

/// For modular a with dense range: w = (E_a -> E) o v_a^{-1}.
ObservationOutcome observation_isometry(const ModuleMap& a, Tolerance tol = {});

}  // namespace hilbmod
