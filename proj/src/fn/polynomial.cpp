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

#include "hilbmod/fn/polynomial.hpp"

#include <algorithm>

#include "exact.hpp"

namespace hilbmod::fn {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0)) coeffs_.pop_back();
  if (degree() > kMaxDegree) throw Error(ErrorKind::kUnsupported, "polynomial degree above " + std::to_string(kMaxDegree));
}

bool Polynomial::is_real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex z) { return z.imag() == 0.0; });
}

Complex Polynomial::operator()(double t) const {
  Complex acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::conj() const {
  std::vector<Complex> c(coeffs_);
  for (auto& z : c) z = std::conj(z);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::derivative() const {
  std::vector<Complex> c;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c.push_back(coeffs_[k] * static_cast<double>(k));
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(static_cast<int>(k)) + q.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<Complex> c(std::max(p.coeffs_.size(), q.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = p.coeff(static_cast<int>(k)) - q.coeff(static_cast<int>(k));
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Complex> c(p.coeffs_.size() + q.coeffs_.size() - 1, Complex(0));
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

std::vector<RealRoot> real_roots(const Polynomial& p, double cluster) {
  return common_real_roots({p}, cluster);
}

std::vector<RealRoot> common_real_roots(const std::vector<Polynomial>& ps, double cluster) {
  std::vector<exact::QiPoly> qs;
  for (const auto& p : ps) qs.emplace_back(p);
  return exact::common_roots(qs, cluster);
}

bool nonnegative_on_unit_interval(const Polynomial& p) {
  if (!p.is_real()) return false;
  if (p.is_zero()) return true;
  const exact::QiPoly q(p);
  // Sign changes inside (0, 1) happen exactly at roots of odd multiplicity.
  for (const auto& r : exact::isolate_roots(q.re)) {
    if (r.multiplicity % 2 == 0) continue;
    if (r.exact && (r.lo == 0 || r.lo == 1)) continue;
    return false;
  }
  // Sign at any non-root point decides.
  for (int k = 2;; ++k) {
    const exact::Q value = q.re(exact::Q(1) / exact::Q(k));
    if (value != 0) return value > 0;
  }
}

}  // namespace hilbmod::fn
