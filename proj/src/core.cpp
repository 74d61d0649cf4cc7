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

#include <charconv>
#include <cstdlib>
#include <string>

#include "hilbmod/algebra.hpp"

namespace hilbmod {

Tolerance default_tolerance() {
  if (const char* env = std::getenv("HILBMOD_TOL")) {
    try {
      return Tolerance(std::stod(env));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("HILBMOD_TOL is not a nonnegative number: ") + env);
    }
  }
  return Tolerance();
}

namespace {

std::string format_double(double x) {
  if (x == 0) x = 0;  // drops the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  if (z.imag() == 0) return s;
  const std::string im = format_double(z.imag());
  return s + (im[0] == '-' ? "" : "+") + im + "i";
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kModuleMismatch: return "ModuleMismatch";
    case ErrorKind::kImageNotContained: return "ImageNotContained";
    case ErrorKind::kNotBLinear: return "NotBLinear";
    case ErrorKind::kNotPartialIsometry: return "NotPartialIsometry";
    case ErrorKind::kNotModular: return "NotModular";
    case ErrorKind::kRangeNotDense: return "RangeNotDense";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kDegenerateGenerators: return "DegenerateGenerators";
    case ErrorKind::kUnsupported: return "Unsupported";
    case ErrorKind::kShape: return "ShapeError";
  }
  return "Error";
}

AlgebraSpec::AlgebraSpec(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorKind::kShape, "algebra needs at least one block");
  offsets_.push_back(0);
  for (int n : dims_) {
    if (n < 1) throw Error(ErrorKind::kShape, "block dimensions must be positive");
    offsets_.push_back(offsets_.back() + n * n);
  }
}

std::ostream& operator<<(std::ostream& os, const AlgebraSpec& spec) {
  os << "B(";
  for (std::size_t k = 0; k < spec.block_dims().size(); ++k) os << (k ? "," : "") << spec.block_dims()[k];
  return os << ")";
}

}  // namespace hilbmod
