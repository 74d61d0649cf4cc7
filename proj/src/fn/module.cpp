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

#include "hilbmod/fn/module.hpp"

#include <algorithm>
#include <numbers>

#include "exact.hpp"
#include "hilbmod/linalg.hpp"

namespace hilbmod::fn {

namespace {

// Singular values below this fraction of the generator size are zero when
// a rank is read off at an inexact root.
constexpr double kRootRankCutoff = 1e-7;

// Rank with singular values relative to `scale`.
int numerical_rank(const Mat& m, double scale) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > kRootRankCutoff * scale) ++r;
  return r;
}

}  // namespace

Mat evaluate(const FnMatrix& m, double t, int rows, int cols) {
  Mat out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out(i, j) = m[i][j](t);
  }
  return out;
}

FnMatrix adjoint(const FnMatrix& m, int rows, int cols) {
  FnMatrix out(cols, std::vector<PolyFunction>(rows));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) out[j][i] = m[i][j].conj();
  }
  return out;
}

FnMatrix multiply(const FnMatrix& a, const FnMatrix& b, int inner) {
  const std::size_t rows = a.size();
  const std::size_t cols = inner == 0 || b.empty() ? 0 : b[0].size();
  FnMatrix out(rows, std::vector<PolyFunction>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      PolyFunction acc;
      for (int l = 0; l < inner; ++l) acc = acc + a[i][l] * b[l][j];
      out[i][j] = acc;
    }
  }
  return out;
}

Vec FnModuleVector::operator()(double t) const {
  Vec v(size());
  for (int i = 0; i < size(); ++i) v(i) = entries_[i](t);
  return v;
}

PolyFunction fn_inner_product(const FnModuleVector& x, const FnModuleVector& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kLengthMismatch, "vectors of lengths " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  PolyFunction acc;
  for (int i = 0; i < x.size(); ++i) acc = acc + x[i].conj() * y[i];
  return acc;
}

std::vector<double> chebyshev_grid(int points) {
  if (points < 2) throw Error(ErrorKind::kShape, "grid needs at least two points");
  std::vector<double> grid(points);
  for (int j = 0; j < points; ++j) grid[j] = 0.5 * (1.0 - std::cos(std::numbers::pi * j / (points - 1)));
  grid.front() = 0.0;
  grid.back() = 1.0;
  return grid;
}

struct FnSubmodule::Structure {
  exact::QiPolyMatrix gens;
  int generic_rank = 0;
  std::vector<RealRoot> drops;
};

FnSubmodule::FnSubmodule(int n, FnMatrix generators) : n_(n), gens_(std::move(generators)) {
  if (n < 1 || static_cast<int>(gens_.size()) != n) throw Error(ErrorKind::kShape, "generator matrix needs one row per coordinate");
  k_ = static_cast<int>(gens_[0].size());
  for (const auto& row : gens_) {
    if (static_cast<int>(row.size()) != k_) throw Error(ErrorKind::kShape, "ragged generator matrix");
  }
  if (!polynomial() || all_zero()) return;
  auto st = std::make_shared<Structure>();
  st->gens.assign(n_, std::vector<exact::QiPoly>(k_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < k_; ++j) st->gens[i][j] = exact::QiPoly(*gens_[i][j].polynomial());
  }
  st->generic_rank = exact::generic_rank(st->gens);
  std::vector<exact::QiPoly> minors;
  for (const auto& rows : exact::subsets(n_, st->generic_rank)) {
    for (const auto& cols : exact::subsets(k_, st->generic_rank)) minors.push_back(exact::minor(st->gens, rows, cols));
  }
  st->drops = exact::common_roots(minors, kRootCluster);
  structure_ = std::move(st);
}

FnSubmodule FnSubmodule::whole(int n) {
  FnMatrix id(n, std::vector<PolyFunction>(n));
  for (int i = 0; i < n; ++i) id[i][i] = PolyFunction(1.0);
  FnSubmodule s(n, std::move(id));
  s.whole_ = true;
  return s;
}

FnModuleVector FnSubmodule::generator(int j) const {
  std::vector<PolyFunction> e;
  for (int i = 0; i < n_; ++i) e.push_back(gens_[i][j]);
  return FnModuleVector(std::move(e));
}

bool FnSubmodule::polynomial() const {
  for (const auto& row : gens_) {
    for (const auto& f : row) {
      if (!f.is_polynomial()) return false;
    }
  }
  return true;
}

bool FnSubmodule::all_zero() const {
  for (const auto& row : gens_) {
    for (const auto& f : row) {
      if (!f.is_zero()) return false;
    }
  }
  return true;
}

const FnSubmodule::Structure& FnSubmodule::structure() const {
  if (!polynomial()) throw Error(ErrorKind::kUnsupported, "fiber structure needs polynomial generators");
  if (!structure_) throw Error(ErrorKind::kDegenerateGenerators, "all generators are zero");
  return *structure_;
}

int FnSubmodule::generic_rank() const { return structure().generic_rank; }

const std::vector<RealRoot>& FnSubmodule::drop_points() const { return structure().drops; }

int FnSubmodule::fiber_rank(double t) const {
  const auto& st = structure();
  const exact::Q q = exact::to_rational(t);
  std::vector<std::vector<exact::Qi>> values(n_);
  for (int i = 0; i < n_; ++i) {
    for (const auto& e : st.gens[i]) values[i].push_back(e(q));
  }
  return exact::rank(std::move(values));
}

int FnSubmodule::fiber_rank_at(const RealRoot& r) const {
  if (r.lo == r.hi) return fiber_rank(r.t);
  structure();
  double scale = 0;
  for (double t : chebyshev_grid(17)) scale = std::max(scale, evaluate(t).norm());
  return numerical_rank(evaluate(r.t), scale);
}

Mat FnSubmodule::fiber_basis(double t) const {
  const int r = fiber_rank(t);
  if (r == 0) return Mat(n_, 0);
  Eigen::JacobiSVD<Mat> svd(evaluate(t), Eigen::ComputeThinU);
  return svd.matrixU().leftCols(r);
}

RankProfile fiber_rank_profile(const FnSubmodule& s, int grid) {
  RankProfile p;
  p.generic_rank = s.generic_rank();
  p.drop_points = s.drop_points();
  p.grid = chebyshev_grid(grid);
  for (double t : p.grid) p.ranks.push_back(s.fiber_rank(t));
  return p;
}

Complementedness fn_is_complemented(const FnSubmodule& s) {
  Complementedness c;
  c.rank = s.generic_rank();
  c.drop_points = s.drop_points();
  c.complemented = c.drop_points.empty();
  return c;
}

bool fn_submodule_equal(const FnSubmodule& s, const FnSubmodule& t) {
  if (s.ambient_rank() != t.ambient_rank()) throw Error(ErrorKind::kModuleMismatch, "submodules of different free modules");
  if (s.is_whole() && t.is_whole()) return true;
  FnMatrix joined = s.generators();
  for (int i = 0; i < s.ambient_rank(); ++i) joined[i].insert(joined[i].end(), t.generators()[i].begin(), t.generators()[i].end());
  const FnSubmodule c(s.ambient_rank(), std::move(joined));
  const int r = c.generic_rank();
  if (s.generic_rank() != r || t.generic_rank() != r) return false;
  for (const FnSubmodule* m : {&s, &t, &c}) {
    for (const auto& p : m->drop_points()) {
      const int rc = c.fiber_rank_at(p);
      if (s.fiber_rank_at(p) != rc || t.fiber_rank_at(p) != rc) return false;
    }
  }
  return true;
}

}  // namespace hilbmod::fn
