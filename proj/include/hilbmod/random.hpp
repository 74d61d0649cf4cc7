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

// Seeded generators for random algebra elements, submodules and B-linear
// maps. Output depends only on the seed: the engine is mt19937_64 and the
// floating point transforms are spelled out here, not left to <random>.

#include <cstdint>
#include <random>

#include "hilbmod/operators.hpp"

namespace hilbmod {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  Complex complex() {
    const double re = symmetric();
    return {re, symmetric()};
  }
  /// Uniform integer in [0, n).
  int below(int n) { return static_cast<int>(uniform() * n); }

  Mat matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
};

using AlgebraMatrix = std::vector<std::vector<AlgebraElement>>;

AlgebraElement random_element(const AlgebraSpec& spec, Rng& rng);
AlgebraMatrix random_algebra_matrix(const AlgebraSpec& spec, int rows, int cols, Rng& rng);

/// Assemble an algebra valued rows x cols matrix from one
/// (rows n_k) x (cols n_k) complex matrix per block.
AlgebraMatrix algebra_matrix_from_blocks(const AlgebraSpec& spec, int rows, int cols, const std::vector<Mat>& blocks);

/// Submodule generated by `gens` random vectors.
Submodule random_submodule(const FreeModule& module, int gens, Rng& rng);

enum class OperatorShape {
  kGeneric,    ///< random entries, full rank with probability one
  kLowRank,    ///< factors through B^1
  kProjected,  ///< generic composed with a random projection of the domain
};

ModuleMap random_operator(const FreeModule& domain, const FreeModule& codomain, OperatorShape shape, Rng& rng);
/// Cycles through the shapes by index.
ModuleMap random_operator(const FreeModule& domain, const FreeModule& codomain, int index, Rng& rng);

/// B-linear unitary of B^n.
ModuleMap random_unitary(const FreeModule& module, Rng& rng);
/// B-linear isometry B^m -> B^n (m <= n): leading columns of a unitary.
ModuleMap random_isometry(const FreeModule& domain, const FreeModule& codomain, Rng& rng);
/// Orthogonal projection onto a random submodule, as a map E -> E.
ModuleMap random_projection(const FreeModule& module, Rng& rng);
/// S J S^{-1} with J a coordinate projection and S random invertible;
/// idempotent and, with probability one, not Hermitian unless B^n = C.
ModuleMap random_idempotent(const FreeModule& module, Rng& rng);

}  // namespace hilbmod
