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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hilbmod {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Dimensionless relative tolerance. Comparisons are made against the
/// larger operand norm, see close().
class Tolerance {
 public:
  static constexpr double kDefault = 1e-9;

  constexpr Tolerance() = default;
  constexpr explicit Tolerance(double eps) : eps_(eps < 0 ? throw std::invalid_argument("negative tolerance") : eps) {}

  constexpr double eps() const { return eps_; }

  /// True when `diff` is within eps relative to `scale`.
  constexpr bool close(double diff, double scale) const { return diff <= eps_ * scale; }

 private:
  double eps_ = kDefault;
};

/// Tolerance from the HILBMOD_TOL environment variable, or the default.
Tolerance default_tolerance();

/// `re` or `re+imi` / `re-imi`, each part in shortest round-trip form.
std::string format_complex(Complex z);

enum class ErrorKind {
  kNotPositive,
  kModuleMismatch,
  kImageNotContained,
  kNotBLinear,
  kNotPartialIsometry,
  kNotModular,
  kRangeNotDense,
  kLengthMismatch,
  kDegenerateGenerators,
  kUnsupported,
  kShape,
};

const char* to_string(ErrorKind kind);

/// Precondition failures. Refusals predicted by the theory (not modular,
/// E_a not complemented, ...) are values, not exceptions.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hilbmod
