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

// Elements of C[0, 1]: polynomials, and symbolic square roots, absolute
// values, products, sums and quotients over them.

#include <memory>
#include <string>
#include <vector>

#include "hilbmod/fn/polynomial.hpp"

namespace hilbmod::fn {

/// Zeros in [0, 1] of a function.
struct ZeroSet {
  bool everywhere = false;
  std::vector<RealRoot> points;
};

/// Immutable, cheap to copy. Operations fold polynomial operands into a
/// single polynomial and simplify sqrt(p) * sqrt(p) to p; anything else
/// becomes a node.
class PolyFunction {
 public:
  enum class Kind { kPolynomial, kSqrt, kAbs, kProduct, kSum, kQuotient };

  /// The zero function.
  PolyFunction();
  PolyFunction(Polynomial p);
  PolyFunction(Complex c) : PolyFunction(Polynomial(c)) {}
  PolyFunction(double c) : PolyFunction(Polynomial(Complex(c))) {}

  /// Square root of a real polynomial nonnegative on [0, 1]; throws
  /// NotPositive otherwise, Unsupported for non-polynomial arguments.
  static PolyFunction sqrt(const PolyFunction& f);
  static PolyFunction abs(const PolyFunction& f);
  /// n / d where d != 0 and 0 where d = 0.
  static PolyFunction quotient(const PolyFunction& n, const PolyFunction& d);

  Kind kind() const;
  /// The polynomial of a polynomial leaf, else nullptr.
  const Polynomial* polynomial() const;
  bool is_polynomial() const { return polynomial() != nullptr; }
  /// Structurally zero.
  bool is_zero() const;
  /// Operands of a node, in order.
  std::vector<PolyFunction> children() const;

  Complex operator()(double t) const;
  PolyFunction conj() const;
  ZeroSet zeros() const;

  friend PolyFunction operator+(const PolyFunction& f, const PolyFunction& g);
  friend PolyFunction operator-(const PolyFunction& f, const PolyFunction& g);
  friend PolyFunction operator*(const PolyFunction& f, const PolyFunction& g);
  /// Structural equality.
  friend bool operator==(const PolyFunction& f, const PolyFunction& g);

  struct Node;

 private:
  explicit PolyFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Canonical text: poly(c0,c1,...), sqrt(f), abs(f), mul(f,g), add(f,g),
/// div(f,g), with complex coefficients as in format_complex().
std::string to_string(const PolyFunction& f);

}  // namespace hilbmod::fn
