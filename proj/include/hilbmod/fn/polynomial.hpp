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

// Complex polynomials on [0, 1] and exact isolation of their real roots.

#include <initializer_list>
#include <vector>

#include "hilbmod/core.hpp"

namespace hilbmod::fn {

/// Degrees above this are refused.
inline constexpr int kMaxDegree = 64;

/// Coefficients in ascending degree. Trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}
  Polynomial(Complex c) : Polynomial(std::vector<Complex>{c}) {}

  /// The identity function t.
  static Polynomial t() { return Polynomial(std::vector<Complex>{0.0, 1.0}); }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_real() const;
  Complex coeff(int k) const { return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex(0); }

  Complex operator()(double t) const;

  Polynomial conj() const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend bool operator==(const Polynomial& p, const Polynomial& q) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// A real root in [0, 1], or a cluster of roots closer than the cluster
/// width, counted with multiplicity.
struct RealRoot {
  double t = 0;
  /// Enclosing interval; lo == hi when the root is known exactly.
  double lo = 0;
  double hi = 0;
  int multiplicity = 1;
};

inline constexpr double kRootCluster = 1e-8;

/// Real roots of p in [0, 1], sorted. Computed in exact rational arithmetic
/// on the binary values of the coefficients; a complex p vanishes at real t
/// iff both its real and imaginary parts do. Throws Unsupported for the
/// zero polynomial.
std::vector<RealRoot> real_roots(const Polynomial& p, double cluster = kRootCluster);

/// Common real roots in [0, 1] of all the given polynomials. An empty list
/// or a list of zeros throws Unsupported.
std::vector<RealRoot> common_real_roots(const std::vector<Polynomial>& ps, double cluster = kRootCluster);

/// Exact sign test: p real and p(t) >= 0 for all t in [0, 1].
bool nonnegative_on_unit_interval(const Polynomial& p);

}  // namespace hilbmod::fn
