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

#include "hilbmod/random.hpp"

namespace hilbmod {

Mat Rng::matrix(Eigen::Index rows, Eigen::Index cols) {
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = complex();
  }
  return m;
}

AlgebraElement random_element(const AlgebraSpec& spec, Rng& rng) {
  std::vector<Mat> blocks;
  for (int n : spec.block_dims()) blocks.push_back(rng.matrix(n, n));
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraMatrix random_algebra_matrix(const AlgebraSpec& spec, int rows, int cols, Rng& rng) {
  AlgebraMatrix t(rows);
  for (auto& row : t) {
    for (int j = 0; j < cols; ++j) row.push_back(random_element(spec, rng));
  }
  return t;
}

AlgebraMatrix algebra_matrix_from_blocks(const AlgebraSpec& spec, int rows, int cols, const std::vector<Mat>& blocks) {
  AlgebraMatrix t(rows, std::vector<AlgebraElement>(cols, AlgebraElement::zero(spec)));
  for (int k = 0; k < spec.num_blocks(); ++k) {
    const int n = spec.block_dim(k);
    if (blocks[k].rows() != rows * n || blocks[k].cols() != cols * n) throw Error(ErrorKind::kShape, "block of wrong size");
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) t[i][j].block(k) = blocks[k].block(i * n, j * n, n, n);
    }
  }
  return t;
}

Submodule random_submodule(const FreeModule& module, int gens, Rng& rng) {
  return submodule_from_generators(module, rng.matrix(module.dim(), gens));
}

namespace {

std::vector<Mat> random_unitary_blocks(const AlgebraSpec& spec, int n, Rng& rng) {
  std::vector<Mat> blocks;
  for (int nk : spec.block_dims()) {
    Eigen::HouseholderQR<Mat> qr(rng.matrix(n * nk, n * nk));
    blocks.push_back(qr.householderQ() * Mat::Identity(n * nk, n * nk));
  }
  return blocks;
}

}  // namespace

ModuleMap random_operator(const FreeModule& domain, const FreeModule& codomain, OperatorShape shape, Rng& rng) {
  const auto& spec = domain.algebra();
  switch (shape) {
    case OperatorShape::kGeneric:
      return ModuleMap::from_algebra_matrix(domain, codomain, random_algebra_matrix(spec, codomain.rank(), domain.rank(), rng));
    case OperatorShape::kLowRank: {
      const FreeModule line(spec, 1);
      const auto left = ModuleMap::from_algebra_matrix(line, codomain, random_algebra_matrix(spec, codomain.rank(), 1, rng));
      const auto right = ModuleMap::from_algebra_matrix(domain, line, random_algebra_matrix(spec, 1, domain.rank(), rng));
      return compose(left, right);
    }
    case OperatorShape::kProjected: {
      const auto generic = random_operator(domain, codomain, OperatorShape::kGeneric, rng);
      const int gens = 1 + rng.below(std::max(1, domain.rank() - 1));
      const Submodule s = random_submodule(domain, gens, rng);
      return compose(generic, ModuleMap::projection(s, Submodule::whole(domain)));
    }
  }
  throw Error(ErrorKind::kShape, "unknown operator shape");
}

ModuleMap random_operator(const FreeModule& domain, const FreeModule& codomain, int index, Rng& rng) {
  return random_operator(domain, codomain, static_cast<OperatorShape>(index % 3), rng);
}

ModuleMap random_unitary(const FreeModule& module, Rng& rng) {
  const int n = module.rank();
  return ModuleMap::from_algebra_matrix(module, module,
                                        algebra_matrix_from_blocks(module.algebra(), n, n, random_unitary_blocks(module.algebra(), n, rng)));
}

ModuleMap random_isometry(const FreeModule& domain, const FreeModule& codomain, Rng& rng) {
  const auto& spec = domain.algebra();
  const int m = domain.rank();
  const int n = codomain.rank();
  if (m > n) throw Error(ErrorKind::kShape, "isometry needs rank(domain) <= rank(codomain)");
  auto blocks = random_unitary_blocks(spec, n, rng);
  for (int k = 0; k < spec.num_blocks(); ++k) blocks[k] = blocks[k].leftCols(m * spec.block_dim(k)).eval();
  return ModuleMap::from_algebra_matrix(domain, codomain, algebra_matrix_from_blocks(spec, n, m, blocks));
}

ModuleMap random_projection(const FreeModule& module, Rng& rng) {
  const int gens = 1 + rng.below(module.rank());
  return ModuleMap::projection(random_submodule(module, gens, rng), Submodule::whole(module));
}

ModuleMap random_idempotent(const FreeModule& module, Rng& rng) {
  const auto& spec = module.algebra();
  const int n = module.rank();
  std::vector<Mat> blocks;
  for (int nk : spec.block_dims()) {
    const Mat s = rng.matrix(n * nk, n * nk) + 2.0 * Mat::Identity(n * nk, n * nk);
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n * nk);
    // A coordinate projection of rank about half in M_n(B).
    diag.head((n * nk + 1) / 2).setOnes();
    blocks.push_back(s * diag.asDiagonal() * s.inverse());
  }
  return ModuleMap::from_algebra_matrix(module, module, algebra_matrix_from_blocks(spec, n, n, blocks));
}

}  // namespace hilbmod
