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

#include "hilbmod/fn/operators.hpp"

#include "exact.hpp"
#include "hilbmod/linalg.hpp"

namespace hilbmod::fn {

namespace {

// Image containment on the grid, relative to the image size.
constexpr double kContainment = 1e-9;
// One-sided offset for limits of fibers at a drop point, and the jump
// that counts as a discontinuity. The limit is accurate to O(offset).
constexpr double kLimitOffset = 1e-6;
constexpr double kJump = 1e-3;

bool all_polynomial(const FnMatrix& m) {
  for (const auto& row : m) {
    for (const auto& f : row) {
      if (!f.is_polynomial()) return false;
    }
  }
  return true;
}

bool all_zero(const FnMatrix& m) {
  for (const auto& row : m) {
    for (const auto& f : row) {
      if (!f.is_zero()) return false;
    }
  }
  return true;
}

exact::QiPolyMatrix to_exact(const FnMatrix& m) {
  exact::QiPolyMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (const auto& f : m[i]) out[i].emplace_back(*f.polynomial());
  }
  return out;
}

FnMatrix unit_columns(int n, const std::vector<int>& idx) {
  FnMatrix g(n, std::vector<PolyFunction>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) g[idx[c]][c] = PolyFunction(1.0);
  return g;
}

// Orthonormal basis of the fiber at a drop point.
Mat fiber_basis_at(const FnSubmodule& s, const RealRoot& r) {
  if (r.lo == r.hi) return s.fiber_basis(r.t);
  const int rank = s.fiber_rank_at(r);
  Eigen::JacobiSVD<Mat> svd(s.evaluate(r.t), Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

}  // namespace

FnModuleMap::FnModuleMap(FnMatrix matrix, std::optional<FnSubmodule> domain, std::optional<FnSubmodule> codomain)
    : rows_(static_cast<int>(matrix.size())),
      cols_(matrix.empty() ? 0 : static_cast<int>(matrix[0].size())),
      matrix_(std::move(matrix)),
      domain_(domain ? *domain : FnSubmodule::whole(std::max(cols_, 1))),
      codomain_(codomain ? *codomain : FnSubmodule::whole(std::max(rows_, 1))) {
  if (rows_ < 1 || cols_ < 1) throw Error(ErrorKind::kShape, "empty operator matrix");
  for (const auto& row : matrix_) {
    if (static_cast<int>(row.size()) != cols_) throw Error(ErrorKind::kShape, "ragged operator matrix");
  }
  if (domain_.ambient_rank() != cols_ || codomain_.ambient_rank() != rows_) {
    throw Error(ErrorKind::kModuleMismatch, "operator shape does not match its domain and codomain");
  }
  if (codomain_.is_whole()) return;
  const FnMatrix image = apply_to_generators(*this);
  if (all_zero(image)) return;
  for (double t : chebyshev_grid()) {
    const Mat q = codomain_.fiber_basis(t);
    const Mat y = evaluate(image, t, rows_, domain_.num_generators());
    const double outside = (y - q * (q.adjoint() * y)).norm();
    if (outside > kContainment * std::max(1.0, y.norm())) {
      throw Error(ErrorKind::kImageNotContained, "image leaves the codomain at t = " + std::to_string(t));
    }
  }
}

bool FnModuleMap::polynomial() const { return all_polynomial(matrix_); }

FnMatrix apply_to_generators(const FnModuleMap& m) {
  if (m.domain().is_whole()) return m.matrix();
  return multiply(m.matrix(), m.domain().generators(), m.cols());
}

const char* to_string(FnKernel::Kind k) {
  switch (k) {
    case FnKernel::Kind::kZero: return "zero";
    case FnKernel::Kind::kEverything: return "everything";
    case FnKernel::Kind::kGenerated: return "generated";
  }
  return "?";
}

FnKernel fn_kernel(const FnModuleMap& m) {
  const FnMatrix image = apply_to_generators(m);
  if (all_zero(image)) return {FnKernel::Kind::kEverything, {}};
  const int n = m.cols();

  if (!all_polynomial(image)) {
    if (!m.domain().is_whole() || m.rows() != n) throw Error(ErrorKind::kUnsupported, "kernel of a symbolic non-diagonal map");
    std::vector<int> zero_cols;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && !m.matrix()[i][j].is_zero()) throw Error(ErrorKind::kUnsupported, "kernel of a symbolic non-diagonal map");
      }
      if (m.matrix()[i][i].is_zero()) zero_cols.push_back(i);
    }
    if (zero_cols.empty()) return {FnKernel::Kind::kZero, {}};
    return {FnKernel::Kind::kGenerated, FnSubmodule(n, unit_columns(n, zero_cols))};
  }

  const int r = FnSubmodule(m.rows(), image).generic_rank();
  if (r == m.domain().generic_rank()) return {FnKernel::Kind::kZero, {}};
  if (!m.domain().is_whole()) throw Error(ErrorKind::kUnsupported, "non-trivial kernel on a proper submodule");

  // Signed r x r minors of the columns C + {j} give a null vector of the
  // rows R; every other row is a combination of those generically.
  const auto em = to_exact(m.matrix());
  std::vector<int> rows_r, cols_c;
  for (const auto& rows : exact::subsets(m.rows(), r)) {
    for (const auto& cols : exact::subsets(n, r)) {
      if (!exact::minor(em, rows, cols).is_zero()) {
        rows_r = rows;
        cols_c = cols;
        break;
      }
    }
    if (!cols_c.empty()) break;
  }
  FnMatrix gens(n);
  for (int j = 0; j < n; ++j) {
    if (std::find(cols_c.begin(), cols_c.end(), j) != cols_c.end()) continue;
    std::vector<int> cols = cols_c;
    cols.insert(std::upper_bound(cols.begin(), cols.end(), j), j);
    std::vector<exact::QiPoly> x(n);
    for (std::size_t l = 0; l < cols.size(); ++l) {
      std::vector<int> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(l));
      const exact::QiPoly d = exact::minor(em, rows_r, rest);
      x[cols[l]] = l % 2 == 0 ? d : exact::QiPoly() - d;
    }
    for (int i = 0; i < n; ++i) gens[i].push_back(PolyFunction(exact::to_polynomial(x[i])));
  }
  return {FnKernel::Kind::kGenerated, FnSubmodule(n, std::move(gens))};
}

FnAdjointOutcome fn_try_adjoint(const FnModuleMap& m) {
  FnAdjointOutcome out;
  const FnSubmodule& e = m.domain();
  if (e.is_whole()) {
    out.adjointable = true;
    out.adjoint = FnModuleMap(adjoint(m.matrix(), m.rows(), m.cols()), m.codomain(), e);
    return out;
  }
  for (const RealRoot& r : e.drop_points()) {
    const double side = r.t + kLimitOffset <= 1.0 ? r.t + kLimitOffset : r.t - kLimitOffset;
    const Mat q_lim = e.fiber_basis(side);
    const Mat q_at = fiber_basis_at(e, r);
    const Mat p_jump = q_lim * q_lim.adjoint() - q_at * q_at.adjoint();
    Mat mh = m(r.t).adjoint();
    if (!m.codomain().is_whole()) mh = mh * fiber_basis_at(m.codomain(), r);
    const double jump = (p_jump * mh).norm();
    if (jump > kJump * std::max(1.0, mh.norm())) {
      out.witness = r.t;
      out.jump = jump;
      return out;
    }
    out.jump = std::max(out.jump, jump);
  }
  out.adjointable = true;
  return out;
}

}  // namespace hilbmod::fn
