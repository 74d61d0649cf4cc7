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

// Exact rational and Gaussian-rational polynomial arithmetic behind the
// function backend. Private to the library.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hilbmod/fn/polynomial.hpp"

namespace hilbmod::fn::exact {

using Q = boost::multiprecision::cpp_rational;

/// The binary value of a finite double.
Q to_rational(double x);

/// Ascending coefficients, trimmed.
struct QPoly {
  std::vector<Q> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
  Q operator()(const Q& t) const;
};

QPoly operator+(const QPoly& p, const QPoly& q);
QPoly operator-(const QPoly& p, const QPoly& q);
QPoly operator*(const QPoly& p, const QPoly& q);
QPoly derivative(const QPoly& p);
/// p = quot * d + rem.
void divmod(const QPoly& p, const QPoly& d, QPoly& quot, QPoly& rem);
QPoly monic(const QPoly& p);
QPoly gcd(QPoly p, QPoly q);

struct Qi {
  Q re, im;

  bool is_zero() const { return re == 0 && im == 0; }
};

Qi operator+(const Qi& a, const Qi& b);
Qi operator-(const Qi& a, const Qi& b);
Qi operator*(const Qi& a, const Qi& b);
Qi inverse(const Qi& a);

struct QiPoly {
  QPoly re, im;

  QiPoly() = default;
  explicit QiPoly(const Polynomial& p);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  Qi operator()(const Q& t) const { return {re(t), im(t)}; }
};

/// Rounded to double coefficients.
Polynomial to_polynomial(const QiPoly& p);

QiPoly operator+(const QiPoly& p, const QiPoly& q);
QiPoly operator-(const QiPoly& p, const QiPoly& q);
QiPoly operator*(const QiPoly& p, const QiPoly& q);

using QiPolyMatrix = std::vector<std::vector<QiPoly>>;

/// Determinant of the square submatrix on the given rows and columns.
QiPoly minor(const QiPolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols);

/// Rank of a Gaussian-rational matrix.
int rank(std::vector<std::vector<Qi>> m);

/// Rank of the polynomial matrix over the field of rational functions.
int generic_rank(const QiPolyMatrix& m);

/// All r-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int r);

/// One isolated root of a square-free factor, before clustering.
struct IsolatedRoot {
  Q lo, hi;
  bool exact = false;
  int multiplicity = 1;
};

/// Roots in [0, 1] of a nonzero polynomial with multiplicities, by
/// square-free decomposition and Sturm bisection to width below 2^-44.
std::vector<IsolatedRoot> isolate_roots(const QPoly& p);

/// Sorted and clustered.
std::vector<RealRoot> cluster(std::vector<IsolatedRoot> roots, double width);

/// Common roots in [0, 1] of the nonzero members; throws Unsupported when
/// all are zero.
std::vector<RealRoot> common_roots(const std::vector<QiPoly>& ps, double width);

}  // namespace hilbmod::fn::exact
