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

#include "hilbmod/hilbert_module.hpp"

#include <algorithm>

namespace hilbmod {

namespace {

// Matrix of vec(X) -> vec(X u) for an n x n block, column-major.
Mat right_kron(const Mat& u) {
  const Eigen::Index n = u.rows();
  Mat r = Mat::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      // (u^T kron I)(b-block, a-block) = u(a, b) I
      r.block(b * n, a * n, n, n).diagonal().setConstant(u(a, b));
    }
  }
  return r;
}

// Matrix of vec(X) -> vec(t X).
Mat left_kron(const Mat& t) {
  const Eigen::Index n = t.rows();
  Mat r = Mat::Zero(n * n, n * n);
  for (Eigen::Index c = 0; c < n; ++c) r.block(c * n, c * n, n, n) = t;
  return r;
}

double block_norm(const Mat& m) {
  if (m.rows() == 1) return std::abs(m(0, 0));
  return linalg::spectral_norm(m);
}

}  // namespace

FreeModule::FreeModule(AlgebraSpec algebra, int rank) : algebra_(std::move(algebra)), rank_(rank) {
  if (rank_ < 1) throw Error(ErrorKind::kShape, "module rank must be positive");
  auto units = std::make_shared<std::vector<Mat>>();
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) units->push_back(right_action(AlgebraElement::matrix_unit(algebra_, k, r, c)));
    }
  }
  unit_actions_ = std::move(units);
}

Mat FreeModule::right_action(const AlgebraElement& u) const {
  if (!(u.spec() == algebra_)) throw Error(ErrorKind::kModuleMismatch, "right action by a foreign algebra element");
  const int d = algebra_.dim();
  Mat r = Mat::Zero(dim(), dim());
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    const Mat kr = right_kron(u.block(k));
    for (int i = 0; i < rank_; ++i) {
      const int at = i * d + algebra_.block_offset(k);
      r.block(at, at, n * n, n * n) = kr;
    }
  }
  return r;
}

Mat FreeModule::left_matrix(const FreeModule& domain, const std::vector<std::vector<AlgebraElement>>& t) const {
  if (!(domain.algebra_ == algebra_)) throw Error(ErrorKind::kModuleMismatch, "modules over different algebras");
  if (static_cast<int>(t.size()) != rank_) throw Error(ErrorKind::kShape, "operator row count does not match codomain rank");
  const int d = algebra_.dim();
  Mat m = Mat::Zero(dim(), domain.dim());
  for (int i = 0; i < rank_; ++i) {
    if (static_cast<int>(t[i].size()) != domain.rank_) {
      throw Error(ErrorKind::kShape, "operator column count does not match domain rank");
    }
    for (int j = 0; j < domain.rank_; ++j) {
      if (!(t[i][j].spec() == algebra_)) throw Error(ErrorKind::kModuleMismatch, "operator entry over a foreign algebra");
      for (int k = 0; k < algebra_.num_blocks(); ++k) {
        const int n = algebra_.block_dim(k);
        const int off = algebra_.block_offset(k);
        m.block(i * d + off, j * d + off, n * n, n * n) = left_kron(t[i][j].block(k));
      }
    }
  }
  return m;
}

ModuleVector::ModuleVector(FreeModule module) : module_(std::move(module)) {
  entries_.assign(module_.rank(), AlgebraElement::zero(module_.algebra()));
}

ModuleVector::ModuleVector(FreeModule module, std::vector<AlgebraElement> entries)
    : module_(std::move(module)), entries_(std::move(entries)) {
  if (static_cast<int>(entries_.size()) != module_.rank()) throw Error(ErrorKind::kShape, "wrong number of entries");
  for (const auto& e : entries_) {
    if (!(e.spec() == module_.algebra())) throw Error(ErrorKind::kModuleMismatch, "entry over a foreign algebra");
  }
}

ModuleVector ModuleVector::from_flat(const FreeModule& module, const Vec& flat) {
  if (flat.size() != module.dim()) throw Error(ErrorKind::kShape, "flat vector has wrong length");
  const int d = module.algebra().dim();
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < module.rank(); ++i) {
    entries.push_back(AlgebraElement::from_flat(module.algebra(), flat.segment(i * d, d)));
  }
  return ModuleVector(module, std::move(entries));
}

ModuleVector ModuleVector::basis(const FreeModule& module, int i, const AlgebraElement& u) {
  ModuleVector v(module);
  v.entries_.at(i) = u;
  return v;
}

ModuleVector ModuleVector::basis(const FreeModule& module, int i) {
  return basis(module, i, AlgebraElement::identity(module.algebra()));
}

Vec ModuleVector::flat() const {
  const int d = module_.algebra().dim();
  Vec f(module_.dim());
  for (int i = 0; i < module_.rank(); ++i) f.segment(i * d, d) = entries_[i].flat();
  return f;
}

ModuleVector operator*(const ModuleVector& x, const AlgebraElement& u) {
  std::vector<AlgebraElement> e;
  for (const auto& xi : x.entries_) e.push_back(xi * u);
  return ModuleVector(x.module_, std::move(e));
}

ModuleVector operator+(const ModuleVector& x, const ModuleVector& y) {
  if (!(x.module_ == y.module_)) throw Error(ErrorKind::kModuleMismatch, "sum of vectors in different modules");
  std::vector<AlgebraElement> e;
  for (std::size_t i = 0; i < x.entries_.size(); ++i) e.push_back(x.entries_[i] + y.entries_[i]);
  return ModuleVector(x.module_, std::move(e));
}

AlgebraElement inner_product(const ModuleVector& x, const ModuleVector& y) {
  if (!(x.module() == y.module())) throw Error(ErrorKind::kModuleMismatch, "inner product across modules");
  AlgebraElement sum = AlgebraElement::zero(x.module().algebra());
  for (int i = 0; i < x.module().rank(); ++i) sum += x[i].adjoint() * y[i];
  return sum;
}

AlgebraElement inner_product(const FreeModule& module, const Vec& x, const Vec& y) {
  return inner_product(ModuleVector::from_flat(module, x), ModuleVector::from_flat(module, y));
}

namespace {

// Stack the block-k parts of every column: the result has rank * n rows and
// cols * n columns; column group c holds [X_1k; X_2k; ...] of column c.
Mat stack_block(const FreeModule& module, const Mat& vs, int k) {
  const auto& alg = module.algebra();
  const int n = alg.block_dim(k);
  const int d = alg.dim();
  const int off = alg.block_offset(k);
  Mat w(module.rank() * n, vs.cols() * n);
  for (Eigen::Index c = 0; c < vs.cols(); ++c) {
    for (int i = 0; i < module.rank(); ++i) {
      w.block(i * n, c * n, n, n) = Eigen::Map<const Mat>(vs.col(c).data() + i * d + off, n, n);
    }
  }
  return w;
}

}  // namespace

GramBlocks::GramBlocks(const FreeModule& module, const Mat& xs, const Mat& ys)
    : algebra_(module.algebra()), rows_(static_cast<int>(xs.cols())), cols_(static_cast<int>(ys.cols())) {
  if (xs.rows() != module.dim() || ys.rows() != module.dim()) throw Error(ErrorKind::kShape, "vectors of wrong length");
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    blocks_.push_back(stack_block(module, xs, k).adjoint() * stack_block(module, ys, k));
  }
}

AlgebraElement GramBlocks::at(int i, int j) const {
  std::vector<Mat> b;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    b.push_back(blocks_[k].block(i * n, j * n, n, n));
  }
  return AlgebraElement(algebra_, std::move(b));
}

double GramBlocks::max_distance(const GramBlocks& other, int* worst_i, int* worst_j) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || !(algebra_ == other.algebra_)) {
    throw Error(ErrorKind::kShape, "Gram tables of different shape");
  }
  double worst = 0;
  if (worst_i) *worst_i = -1;
  if (worst_j) *worst_j = -1;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    const Mat diff = blocks_[k] - other.blocks_[k];
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) {
        const double v = block_norm(diff.block(i * n, j * n, n, n));
        if (v > worst || (worst_i && *worst_i < 0)) {
          worst = std::max(worst, v);
          if (worst_i) *worst_i = i;
          if (worst_j) *worst_j = j;
        }
      }
    }
  }
  return worst;
}

double GramBlocks::max_norm() const {
  double worst = 0;
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) worst = std::max(worst, block_norm(blocks_[k].block(i * n, j * n, n, n)));
    }
  }
  return worst;
}

Eigen::VectorXd GramBlocks::real_flat() const {
  Eigen::Index total = 0;
  for (const auto& b : blocks_) total += b.size();
  Eigen::VectorXd out(2 * total);
  Eigen::Index at = 0;
  for (const auto& b : blocks_) {
    const Eigen::Map<const Vec> flat(b.data(), b.size());
    out.segment(at, b.size()) = flat.real();
    out.segment(total + at, b.size()) = flat.imag();
    at += b.size();
  }
  return out;
}

Submodule::Submodule(FreeModule ambient) : ambient_(std::move(ambient)), basis_(Mat::Identity(ambient_.dim(), ambient_.dim())) {}

Submodule::Submodule(FreeModule ambient, Mat basis) : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_.dim()) throw Error(ErrorKind::kShape, "submodule basis has wrong length");
}

Submodule submodule_from_generators(const FreeModule& module, const Mat& generators, Tolerance tol) {
  if (generators.rows() != module.dim()) throw Error(ErrorKind::kShape, "generator of wrong length");
  if (generators.cols() == 0) return Submodule::zero(module);
  const auto& units = module.unit_actions();
  Mat all(module.dim(), generators.cols() * static_cast<Eigen::Index>(units.size()));
  for (std::size_t u = 0; u < units.size(); ++u) {
    all.middleCols(u * generators.cols(), generators.cols()) = units[u] * generators;
  }
  return Submodule(module, linalg::orthonormal_range(all, tol.eps()));
}

Submodule submodule_from_generators(const FreeModule& module, std::span<const ModuleVector> gens, Tolerance tol) {
  Mat g(module.dim(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (!(gens[j].module() == module)) throw Error(ErrorKind::kModuleMismatch, "generator from another module");
    g.col(j) = gens[j].flat();
  }
  return submodule_from_generators(module, g, tol);
}

Submodule orthocomplement(const Submodule& s) {
  return Submodule(s.ambient(), linalg::null_space(s.basis().adjoint(), 0.5));
}

Submodule orthocomplement(const Submodule& s, const Submodule& within) {
  if (!(s.ambient() == within.ambient())) throw Error(ErrorKind::kModuleMismatch, "submodules of different modules");
  if (within.is_zero()) return within;
  const Mat z = linalg::null_space(s.basis().adjoint() * within.basis(), 0.0, 1e-6);
  return Submodule(s.ambient(), within.basis() * z);
}

Submodule b_valued_orthocomplement(const Submodule& s, Tolerance tol) {
  const auto& module = s.ambient();
  const auto& alg = module.algebra();
  const int d = alg.dim();
  // Rows: for each basis vector y and entry (k, r, c) of <y, x>, the
  // coefficients of sum_i sum_l conj(Y_ik(l, r)) X_ik(l, c) in x.
  Mat eq = Mat::Zero(static_cast<Eigen::Index>(s.dim()) * d, module.dim());
  for (int j = 0; j < s.dim(); ++j) {
    const Vec y = s.basis().col(j);
    for (int k = 0; k < alg.num_blocks(); ++k) {
      const int n = alg.block_dim(k);
      const int off = alg.block_offset(k);
      for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
          const Eigen::Index row = static_cast<Eigen::Index>(j) * d + off + r + c * n;
          for (int i = 0; i < module.rank(); ++i) {
            for (int l = 0; l < n; ++l) {
              eq(row, i * d + off + l + c * n) = std::conj(y(i * d + off + l + r * n));
            }
          }
        }
      }
    }
  }
  return Submodule(module, linalg::null_space(eq, tol.eps()));
}

bool is_complemented(const Submodule& s, Tolerance tol) {
  const Submodule perp = orthocomplement(s);
  Mat both(s.ambient().dim(), s.dim() + perp.dim());
  both << s.basis(), perp.basis();
  return linalg::orthonormal_range(both, tol.eps()).cols() == s.ambient().dim();
}

double projection_distance(const Submodule& s, const Submodule& t) {
  if (!(s.ambient() == t.ambient())) throw Error(ErrorKind::kModuleMismatch, "submodules of different modules");
  return linalg::projection_distance(s.basis(), t.basis());
}

bool submodule_equal(const Submodule& s, const Submodule& t, Tolerance tol) {
  return tol.close(projection_distance(s, t), 1.0);
}

bool submodule_contains(const Submodule& t, const Submodule& s, Tolerance tol) {
  if (!(s.ambient() == t.ambient())) throw Error(ErrorKind::kModuleMismatch, "submodules of different modules");
  if (s.is_zero()) return true;
  const Mat residual = s.basis() - t.basis() * (t.basis().adjoint() * s.basis());
  return tol.close(residual.norm(), 1.0);
}

Submodule intersection(const Submodule& s, const Submodule& t, Tolerance tol) {
  if (!(s.ambient() == t.ambient())) throw Error(ErrorKind::kModuleMismatch, "submodules of different modules");
  if (s.is_zero() || t.is_zero()) return Submodule::zero(s.ambient());
  // Principal-angle sines of s against t; zero sines span the intersection.
  const Mat outside = s.basis() - t.basis() * (t.basis().adjoint() * s.basis());
  const Mat z = linalg::null_space(outside, 0.0, std::sqrt(tol.eps()));
  return Submodule(s.ambient(), s.basis() * z);
}

}  // namespace hilbmod
