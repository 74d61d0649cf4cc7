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

#include <initializer_list>

#include "hilbmod/random.hpp"

namespace hilbmod::test {

inline AlgebraSpec scalars() { return AlgebraSpec({1}); }
inline AlgebraSpec m2() { return AlgebraSpec({2}); }
inline AlgebraSpec c_plus_m2() { return AlgebraSpec({1, 2}); }

/// Single-block element from a square matrix.
inline AlgebraElement element(const Mat& m) { return AlgebraElement(AlgebraSpec({static_cast<int>(m.rows())}), {m}); }

inline Mat cmat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

/// Map B^cols -> B^rows over B = C given by an ordinary complex matrix.
inline ModuleMap scalar_map(const Mat& m) {
  const FreeModule e(scalars(), static_cast<int>(m.cols()));
  const FreeModule f(scalars(), static_cast<int>(m.rows()));
  AlgebraMatrix t(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) t[i].push_back(element(Mat::Constant(1, 1, m(i, j))));
  }
  return ModuleMap::from_algebra_matrix(e, f, t);
}

/// span{e_i} in B^n over B = C.
inline Submodule coordinate_span(int n, std::initializer_list<int> idx) {
  const FreeModule e(scalars(), n);
  Mat q = Mat::Zero(n, static_cast<Eigen::Index>(idx.size()));
  Eigen::Index c = 0;
  for (int i : idx) q(i, c++) = 1.0;
  return Submodule(e, q);
}

inline double dist(const Mat& a, const Mat& b) { return (a - b).norm(); }

}  // namespace hilbmod::test
