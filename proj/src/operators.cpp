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

#include "hilbmod/operators.hpp"

namespace hilbmod {

namespace {

constexpr double kSameSubmodule = 1e-8;

void require_same(const Submodule& a, const Submodule& b, const char* what) {
  if (!(a.ambient() == b.ambient()) || projection_distance(a, b) > kSameSubmodule) {
    throw Error(ErrorKind::kModuleMismatch, what);
  }
}

}  // namespace

double b_linearity_defect(const Submodule& domain, const Submodule& codomain, const Mat& matrix) {
  const auto& ue = domain.ambient().unit_actions();
  const auto& uf = codomain.ambient().unit_actions();
  const double scale = linalg::spectral_norm(matrix);
  if (scale == 0 || domain.is_zero()) return 0;
  double worst = 0;
  for (std::size_t u = 0; u < ue.size(); ++u) {
    const Mat diff = (matrix * ue[u] - uf[u] * matrix) * domain.basis();
    worst = std::max(worst, diff.norm());
  }
  return worst / scale;
}

ModuleMap::ModuleMap(Unchecked, Submodule domain, Submodule codomain, Mat matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {}

ModuleMap::ModuleMap(Submodule domain, Submodule codomain, const Mat& matrix, Tolerance tol)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (!(domain_.ambient().algebra() == codomain_.ambient().algebra())) {
    throw Error(ErrorKind::kModuleMismatch, "modules over different algebras");
  }
  if (matrix.rows() != codomain_.ambient().dim() || matrix.cols() != domain_.ambient().dim()) {
    throw Error(ErrorKind::kShape, "matrix does not match the ambient modules");
  }
  const Mat on_domain = matrix * domain_.basis();
  const double scale = linalg::spectral_norm(on_domain);
  const Mat outside = on_domain - codomain_.basis() * (codomain_.basis().adjoint() * on_domain);
  if (!tol.close(outside.norm(), scale)) {
    throw Error(ErrorKind::kImageNotContained, "image leaves the codomain");
  }
  matrix_ = codomain_.basis() * (codomain_.basis().adjoint() * on_domain) * domain_.basis().adjoint();
  if (b_linearity_defect(domain_, codomain_, matrix_) > std::max(tol.eps(), 1e-12)) {
    throw Error(ErrorKind::kNotBLinear, "matrix does not commute with the right action");
  }
}

ModuleMap ModuleMap::from_algebra_matrix(const FreeModule& domain, const FreeModule& codomain,
                                         const std::vector<std::vector<AlgebraElement>>& t) {
  return ModuleMap(Unchecked{}, Submodule::whole(domain), Submodule::whole(codomain), codomain.left_matrix(domain, t));
}

ModuleMap ModuleMap::identity(const Submodule& s) { return ModuleMap(Unchecked{}, s, s, s.projector()); }

ModuleMap ModuleMap::zero(const Submodule& domain, const Submodule& codomain) {
  return ModuleMap(Unchecked{}, domain, codomain, Mat::Zero(codomain.ambient().dim(), domain.ambient().dim()));
}

ModuleMap ModuleMap::inclusion(const Submodule& s, const Submodule& into) {
  if (!(s.ambient() == into.ambient()) || !submodule_contains(into, s, Tolerance(kSameSubmodule))) {
    throw Error(ErrorKind::kImageNotContained, "inclusion of a submodule that is not contained");
  }
  return ModuleMap(Unchecked{}, s, into, s.projector());
}

ModuleMap ModuleMap::projection(const Submodule& s, const Submodule& within) {
  if (!(s.ambient() == within.ambient()) || !submodule_contains(within, s, Tolerance(kSameSubmodule))) {
    throw Error(ErrorKind::kImageNotContained, "projection onto a submodule outside the domain");
  }
  return ModuleMap(Unchecked{}, within, within, s.projector() * within.projector());
}

double ModuleMap::norm() const { return linalg::spectral_norm(matrix_); }

ModuleMap ModuleMap::operator*(std::complex<double> s) const {
  return ModuleMap(Unchecked{}, domain_, codomain_, matrix_ * s);
}

ModuleMap operator+(const ModuleMap& a, const ModuleMap& b) {
  require_same(a.domain_, b.domain_, "sum of maps with different domains");
  require_same(a.codomain_, b.codomain_, "sum of maps with different codomains");
  return ModuleMap(ModuleMap::Unchecked{}, a.domain_, a.codomain_, a.matrix_ + b.matrix_);
}

ModuleMap operator-(const ModuleMap& a, const ModuleMap& b) { return a + b * -1.0; }

ModuleVector apply(const ModuleMap& m, const ModuleVector& x) {
  if (!(x.module() == m.domain().ambient())) throw Error(ErrorKind::kModuleMismatch, "vector outside the domain module");
  return ModuleVector::from_flat(m.codomain().ambient(), m.matrix() * x.flat());
}

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner) {
  require_same(outer.domain_, inner.codomain_, "composition of incompatible maps");
  return ModuleMap(ModuleMap::Unchecked{}, inner.domain_, outer.codomain_, outer.matrix_ * inner.matrix_);
}

ModuleMap restrict(const ModuleMap& m, const Submodule& s) {
  if (!(s.ambient() == m.domain_.ambient()) || !submodule_contains(m.domain_, s, Tolerance(kSameSubmodule))) {
    throw Error(ErrorKind::kModuleMismatch, "restriction to a submodule outside the domain");
  }
  return ModuleMap(ModuleMap::Unchecked{}, s, m.codomain_, m.matrix_ * s.projector());
}

ModuleMap corestrict(const ModuleMap& m, const Submodule& t, Tolerance tol) {
  if (!(t.ambient() == m.codomain_.ambient())) throw Error(ErrorKind::kModuleMismatch, "corestriction to a foreign module");
  const Mat outside = m.matrix_ - t.projector() * m.matrix_;
  if (!tol.close(outside.norm(), std::max(m.norm(), 1e-300))) {
    throw Error(ErrorKind::kImageNotContained, "image is not contained in the target submodule");
  }
  return ModuleMap(ModuleMap::Unchecked{}, m.domain_, t, t.projector() * m.matrix_);
}

double relative_distance(const ModuleMap& m1, const ModuleMap& m2) {
  require_same(m1.domain(), m2.domain(), "comparison of maps with different domains");
  require_same(m1.codomain(), m2.codomain(), "comparison of maps with different codomains");
  const double scale = std::max(m1.norm(), m2.norm());
  const double diff = linalg::spectral_norm((m1.matrix() - m2.matrix()).eval());
  return scale > 0 ? diff / scale : diff;
}

bool approx_equal(const ModuleMap& m1, const ModuleMap& m2, Tolerance tol) {
  return relative_distance(m1, m2) <= tol.eps();
}

Submodule kernel(const ModuleMap& m, Tolerance tol) {
  const auto& q = m.domain().basis();
  if (q.cols() == 0) return m.domain();
  return Submodule(m.domain().ambient(), q * linalg::null_space(m.matrix() * q, tol.eps()));
}

Submodule range_closure(const ModuleMap& m, Tolerance tol) {
  return submodule_from_generators(m.codomain().ambient(), m.matrix() * m.domain().basis(), tol);
}

AdjointOutcome try_adjoint(const ModuleMap& m, Tolerance tol) {
  const Mat& qe = m.domain().basis();
  const Mat& qf = m.codomain().basis();
  // Trace pairing equations: (Q_E^H Q_E) Y = (Q_F^H A Q_E)^H.
  const Mat gram = qe.adjoint() * qe;
  const Mat rhs = (qf.adjoint() * m.matrix() * qe).adjoint();
  const Mat y = gram.rows() ? Mat(gram.completeOrthogonalDecomposition().solve(rhs)) : Mat(0, qf.cols());
  const Mat candidate = qe * y * qf.adjoint();

  AdjointOutcome out;
  const FreeModule& fe = m.domain().ambient();
  const FreeModule& ff = m.codomain().ambient();
  const GramBlocks lhs(ff, m.matrix() * qe, qf);
  const GramBlocks rhs_b(fe, qe, candidate * qf);
  int wi = 0;
  int wj = 0;
  const double residual = lhs.max_distance(rhs_b, &wi, &wj);
  if (!tol.close(residual, m.norm())) {
    AdjointRefusal r;
    r.residual = residual;
    if (wi >= 0) r.witness_x = qe.col(wi);
    if (wj >= 0) r.witness_y = qf.col(wj);
    r.reason = "Gram identity fails for the least-squares candidate";
    out.refusal = std::move(r);
    return out;
  }
  try {
    out.adjoint = ModuleMap(m.codomain(), m.domain(), candidate, tol);
  } catch (const Error& e) {
    AdjointRefusal r;
    r.residual = residual;
    r.reason = e.what();
    out.refusal = std::move(r);
  }
  return out;
}

bool is_isometry(const ModuleMap& m, Tolerance tol) {
  const Mat& q = m.domain().basis();
  const Mat mq = m.matrix() * q;
  const GramBlocks before(m.domain().ambient(), q, q);
  const GramBlocks after(m.codomain().ambient(), mq, mq);
  const double n = m.norm();
  return tol.close(after.max_distance(before), std::max(1.0, n * n));
}

bool is_coisometry(const ModuleMap& m, Tolerance tol) {
  if (m.norm() > 1.0 + tol.eps()) return false;
  if (!submodule_equal(range_closure(m, tol), m.codomain(), Tolerance(std::max(tol.eps(), 1e-8)))) return false;
  const Submodule support = orthocomplement(kernel(m, tol), m.domain());
  return is_isometry(restrict(m, support), tol);
}

bool is_partial_isometry(const ModuleMap& m, Tolerance tol) {
  return is_coisometry(corestrict(m, range_closure(m, tol), Tolerance(std::max(tol.eps(), 1e-8))), tol);
}

ModuleMap initial_projection(const ModuleMap& m, Tolerance tol) {
  if (!is_partial_isometry(m, tol)) throw Error(ErrorKind::kNotPartialIsometry, "initial projection of a non-partial-isometry");
  return ModuleMap::projection(orthocomplement(kernel(m, tol), m.domain()), m.domain());
}

bool is_projection_gram(const ModuleMap& p, Tolerance tol) {
  require_same(p.domain(), p.codomain(), "projection test needs domain = codomain");
  const Mat& q = p.domain().basis();
  const Mat pq = p.matrix() * q;
  const FreeModule& e = p.domain().ambient();
  const GramBlocks lhs(e, q, pq);
  const GramBlocks rhs(e, pq, pq);
  return tol.close(lhs.max_distance(rhs), std::max(1.0, lhs.max_norm()));
}

}  // namespace hilbmod
