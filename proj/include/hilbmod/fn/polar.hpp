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

// Modularity, moduli and polar decomposition over C[0, 1], and the gallery
// of situations that cannot occur in finite dimension.

#include <optional>
#include <string>
#include <vector>

#include "hilbmod/fn/operators.hpp"
#include "hilbmod/modular_polar.hpp"

namespace hilbmod::fn {

struct FnModularity {
  bool modular = false;
  /// m^* m as a map of the domain.
  std::optional<FnModuleMap> b;
  /// max |<g_i, b g_j> - <a g_i, a g_j>| over domain generators, relative
  /// to the right-hand side.
  double residual = 0;
  /// The residual is an exact polynomial identity rather than a grid
  /// maximum.
  bool residual_exact = false;
  /// b(t) positive semidefinite on the domain fibers at every grid point.
  bool positive = false;
};

/// b = m^* m, which solves the Gram equations pointwise. On a proper
/// submodule b must preserve it; compressions are not supported.
FnModularity fn_solve_modularity(const FnModuleMap& a, Tolerance tol = {}, int grid = kDefaultGrid);

/// sqrt(b) entrywise for diagonal b with polynomial entries; throws
/// Unsupported for other b.
FnModuleMap fn_modulus(const FnModuleMap& b);

struct FnPolarReport {
  FnModularity modularity;
  std::optional<FnModuleMap> modulus;
  /// E_a := closure(bE).
  std::optional<FnSubmodule> Ea;
  bool Ea_equals_domain = false;
  /// Certificate when the domain is free.
  std::optional<Complementedness> Ea_complementedness;
  bool Ea_complemented = false;
  /// m diag(1 / |a|_ii) on E_a.
  std::optional<FnModuleMap> va;
  /// Present in closed form when E_a is the whole domain; otherwise the
  /// polar factor is only verified on the grid.
  std::optional<FnModuleMap> v;
  std::optional<PolarRefusal> refusal;
  CheckRecord checks;
};

FnPolarReport fn_polar_decompose(const FnModuleMap& a, Tolerance tol = {}, int grid = kDefaultGrid);

/// Structure of a positive map b: E -> E.
struct FnPositiveReport {
  bool positive = false;
  /// Positivity decided by exact sign analysis (1 x 1 polynomial b).
  bool positive_exact = false;
  FnKernel kernel;
  bool strictly_positive = false;
  /// det b has no root in [0, 1]; free domains only.
  std::optional<bool> invertible;
  /// (ker b)^perp = E, which holds iff ker b = 0.
  bool kernel_perp_is_E = false;
  FnSubmodule Eb;
  /// Inside a free domain, or trivially when E_b is the domain.
  std::optional<Complementedness> Eb_complementedness;
  std::optional<bool> Eb_equals_kernel_perp;
};

FnPositiveReport fn_positive_analysis(const FnModuleMap& b, Tolerance tol = {}, int grid = kDefaultGrid);

struct FnScenarioResult {
  std::string name;
  std::string summary;
  FnModuleMap a;
  std::optional<FnAdjointOutcome> adjoint;
  std::optional<FnPolarReport> polar;
  std::optional<FnPositiveReport> positive;
  /// The expected verdicts, each evaluated.
  CheckRecord verdicts;
};

/// (i) inclusion of the ideal generated by t, (ii) multiplication by t as
/// a positive map, (iii) multiplication by sqrt(t).
std::vector<FnScenarioResult> fn_polar_scenarios(Tolerance tol = {}, int grid = kDefaultGrid);

}  // namespace hilbmod::fn
