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

#include "hilbmod/modular_polar.hpp"

#include <algorithm>

namespace hilbmod {

namespace {

// Left multiplications by Hermitian matrix units of M_n(B); over the reals
// they span the Hermitian B-linear maps of B^n.
std::vector<Mat> hermitian_left_basis(const FreeModule& module) {
  const auto& alg = module.algebra();
  const int n = module.rank();
  const auto unit = [&](int i, int j, int k, int r, int c) {
    std::vector<std::vector<AlgebraElement>> t(n, std::vector<AlgebraElement>(n, AlgebraElement::zero(alg)));
    t[i][j] = AlgebraElement::matrix_unit(alg, k, r, c);
    return module.left_matrix(module, t);
  };
  std::vector<Mat> basis;
  for (int k = 0; k < alg.num_blocks(); ++k) {
    const int nk = alg.block_dim(k);
    const int size = n * nk;
    for (int p = 0; p < size; ++p) {
      for (int q = p; q < size; ++q) {
        const Mat e_pq = unit(p / nk, q / nk, k, p % nk, q % nk);
        if (p == q) {
          basis.push_back(e_pq);
        } else {
          const Mat e_qp = e_pq.adjoint();
          basis.push_back(e_pq + e_qp);
          basis.push_back(Complex(0, 1) * (e_pq - e_qp));
        }
      }
    }
  }
  return basis;
}

// Real coordinates of a Hermitian d x d matrix.
Eigen::VectorXd hermitian_coords(const Mat& h) {
  const Eigen::Index d = h.rows();
  Eigen::VectorXd v(d * d);
  Eigen::Index at = 0;
  for (Eigen::Index c = 0; c < d; ++c) {
    v(at++) = h(c, c).real();
    for (Eigen::Index r = 0; r < c; ++r) {
      v(at++) = h(r, c).real();
      v(at++) = h(r, c).imag();
    }
  }
  return v;
}

Mat from_hermitian_coords(const Eigen::VectorXd& v, Eigen::Index d) {
  Mat h(d, d);
  Eigen::Index at = 0;
  for (Eigen::Index c = 0; c < d; ++c) {
    h(c, c) = v(at++);
    for (Eigen::Index r = 0; r < c; ++r) {
      h(r, c) = Complex(v(at), v(at + 1));
      h(c, r) = std::conj(h(r, c));
      at += 2;
    }
  }
  return h;
}

// Subspace comparisons use at least this tolerance; below it the verdict
// would only measure rounding in the orthonormalizations.
Tolerance subspace_tol(Tolerance tol) { return Tolerance(std::max(tol.eps(), 1e-9)); }

}  // namespace

bool CheckRecord::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* CheckRecord::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

const char* to_string(PolarRefusal r) {
  switch (r) {
    case PolarRefusal::kNotModular: return "NotModular";
    case PolarRefusal::kEaNotComplemented: return "EaNotComplemented";
  }
  return "?";
}

const char* to_string(ObservationRefusal r) {
  switch (r) {
    case ObservationRefusal::kNotModular: return "NotModular";
    case ObservationRefusal::kRangeNotDense: return "RangeNotDense";
  }
  return "?";
}

ModularityOutcome solve_modularity(const ModuleMap& a, Tolerance tol) {
  return solve_modularity(a, a.domain().basis(), tol);
}

ModularityOutcome solve_modularity(const ModuleMap& a, const Mat& spanning, Tolerance tol) {
  const Submodule& e = a.domain();
  const FreeModule& fe = e.ambient();
  const Mat& q = e.basis();
  const Eigen::Index d = q.cols();
  if (spanning.rows() != fe.dim()) throw Error(ErrorKind::kShape, "spanning set of wrong length");
  if (d == 0) return ModularityCertificate{ModuleMap::zero(e, e), 0.0, true, true};

  // Hermitian B-linear maps of E in domain coordinates.
  const auto ambient_basis = hermitian_left_basis(fe);
  Eigen::MatrixXd coords(d * d, static_cast<Eigen::Index>(ambient_basis.size()));
  for (std::size_t l = 0; l < ambient_basis.size(); ++l) {
    coords.col(l) = hermitian_coords(q.adjoint() * ambient_basis[l] * q);
  }
  const Eigen::MatrixXd herm = linalg::orthonormal_range(coords, 1e-10);

  // Gram equations <s_i, b s_j> = <a s_i, a s_j> in the real unknowns.
  const Mat sigma = q.adjoint() * spanning;
  const Mat as = a.matrix() * spanning;
  const GramBlocks target(a.codomain().ambient(), as, as);
  const Eigen::VectorXd rhs = target.real_flat();
  Eigen::MatrixXd system(rhs.size(), herm.cols());
  for (Eigen::Index l = 0; l < herm.cols(); ++l) {
    const Mat hl = from_hermitian_coords(herm.col(l), d);
    system.col(l) = GramBlocks(fe, spanning, q * (hl * sigma)).real_flat();
  }
  const Eigen::VectorXd c = system.colPivHouseholderQr().solve(rhs);
  const double rhs_norm = rhs.norm();
  const double abs_residual = (system * c - rhs).norm();
  const double residual = rhs_norm > 0 ? abs_residual / rhs_norm : abs_residual;

  const Mat b_coord = from_hermitian_coords(herm * c, d);
  if (!(residual <= tol.eps())) {
    NotModular nm;
    nm.residual = residual;
    GramBlocks(fe, spanning, q * (b_coord * sigma)).max_distance(target, &nm.worst_i, &nm.worst_j);
    return nm;
  }

  ModularityCertificate cert{ModuleMap(e, e, q * b_coord * q.adjoint(), tol), residual, false, false};
  const double bnorm = linalg::spectral_norm(b_coord);
  cert.self_adjoint = tol.close((b_coord - b_coord.adjoint()).norm(), bnorm);
  Eigen::SelfAdjointEigenSolver<Mat> es(b_coord, Eigen::EigenvaluesOnly);
  cert.positive = es.eigenvalues().minCoeff() >= -tol.eps() * bnorm;
  return cert;
}

ModularityCertificate certify_modular(const ModuleMap& a, Tolerance tol) {
  auto outcome = solve_modularity(a, tol);
  if (auto* nm = std::get_if<NotModular>(&outcome)) {
    throw Error(ErrorKind::kNotModular, "no b solves the Gram equations (residual " + std::to_string(nm->residual) + ")");
  }
  return std::get<ModularityCertificate>(std::move(outcome));
}

namespace {

ModuleMap modulus_of(const ModularityCertificate& cert, Tolerance tol) {
  const Submodule& e = cert.b.domain();
  const Mat& q = e.basis();
  const Mat root = linalg::hermitian_sqrt(q.adjoint() * cert.b.matrix() * q, tol.eps());
  return ModuleMap(e, e, q * root * q.adjoint(), tol);
}

ModuleMap va_of(const ModuleMap& a, const ModuleMap& abs_a, const Submodule& ea, Tolerance tol) {
  const Mat pinv = linalg::pseudo_inverse(abs_a.matrix(), tol.eps());
  return ModuleMap(ea, a.codomain(), a.matrix() * pinv * ea.projector(), tol);
}

}  // namespace

ModuleMap modulus(const ModuleMap& a, Tolerance tol) { return modulus_of(certify_modular(a, tol), tol); }

Submodule range_module_Ea(const ModuleMap& a, Tolerance tol) { return range_closure(modulus(a, tol), tol); }

ModuleMap build_va(const ModuleMap& a, Tolerance tol) {
  const ModuleMap abs_a = modulus(a, tol);
  return va_of(a, abs_a, range_closure(abs_a, tol), tol);
}

PolarReport polar_decompose(const ModuleMap& a, Tolerance tol) {
  PolarReport report{solve_modularity(a, tol), {}, {}, {}, false, {}, {}, {}, {}};
  if (!report.modular()) {
    report.refusal = PolarRefusal::kNotModular;
    return report;
  }
  const auto& cert = std::get<ModularityCertificate>(report.certificate);
  const Tolerance sub = subspace_tol(tol);
  const Submodule& e = a.domain();

  report.checks.add("b positive", cert.positive && cert.self_adjoint, cert.residual);
  const ModuleMap abs_a = modulus_of(cert, tol);
  report.modulus = abs_a;
  const Submodule ea = range_closure(abs_a, tol);
  report.Ea = ea;
  const Submodule eb = range_closure(cert.b, tol);
  report.checks.add("E_a = E_b", submodule_equal(ea, eb, sub), projection_distance(ea, eb));

  // Gram identity of the modulus: <|a|x, |a|y> = <ax, ay>.
  {
    const Mat& q = e.basis();
    const Mat mq = abs_a.matrix() * q;
    const Mat aq = a.matrix() * q;
    const GramBlocks lhs(e.ambient(), mq, mq);
    const GramBlocks rhs(a.codomain().ambient(), aq, aq);
    const double diff = lhs.max_distance(rhs);
    report.checks.add("<|a|x,|a|y> = <ax,ay>", tol.close(diff, std::max(1e-300, rhs.max_norm())), diff);
  }

  const ModuleMap va = va_of(a, abs_a, ea, tol);
  report.va = va;
  report.checks.add("v_a isometry", is_isometry(va, tol));
  const ModuleMap abs_into_ea = corestrict(abs_a, ea, sub);
  const double va_residual = relative_distance(compose(va, abs_into_ea), a);
  report.checks.add("v_a |a| = a", va_residual <= tol.eps(), va_residual);
  const Submodule range_a = range_closure(a, tol);
  report.checks.add("v_a E_a = closure(aE)", submodule_equal(range_closure(va, tol), range_a, sub),
                    projection_distance(range_closure(va, tol), range_a));

  const Submodule ker_a = kernel(a, tol);
  const Submodule ker_perp = orthocomplement(ker_a, e);
  report.kernel_perp_equals_Ea = submodule_equal(ker_perp, ea, sub);

  report.Ea_complemented = is_complemented(ea, tol);
  if (!report.Ea_complemented) {
    report.refusal = PolarRefusal::kEaNotComplemented;
    return report;
  }
  const ModuleMap onto_ea(e, ea, ea.projector() * e.projector(), tol);
  const ModuleMap v = compose(va, onto_ea);
  report.v = v;

  const double v_residual = relative_distance(compose(v, abs_a), a);
  report.checks.add("a = v|a|", v_residual <= tol.eps(), v_residual);
  const Submodule range_v = range_closure(v, tol);
  report.checks.add("closure(vE) = closure(aE)", submodule_equal(range_v, range_a, sub), projection_distance(range_v, range_a));
  report.checks.add("v partial isometry", is_partial_isometry(v, tol));
  const Submodule ker_v = kernel(v, tol);
  const Submodule ea_perp = orthocomplement(ea, e);
  report.checks.add("ker v = E_a^perp", submodule_equal(ker_v, ea_perp, sub), projection_distance(ker_v, ea_perp));
  report.checks.add("E_a^perp = ker a", submodule_equal(ea_perp, ker_a, sub), projection_distance(ea_perp, ker_a));
  return report;
}

CheckRecord kernel_invariants(const ModuleMap& a, Tolerance tol) {
  const ModularityCertificate cert = certify_modular(a, tol);
  const Tolerance sub = subspace_tol(tol);
  const Submodule& e = a.domain();
  const ModuleMap& b = cert.b;
  const ModuleMap abs_a = modulus_of(cert, tol);

  CheckRecord rec;
  const auto eq = [&](const char* name, const Submodule& s, const Submodule& t) {
    rec.add(name, submodule_equal(s, t, sub), projection_distance(s, t));
  };
  const Submodule ker_a = kernel(a, tol);
  const Submodule ker_abs = kernel(abs_a, tol);
  const Submodule ker_b = kernel(b, tol);
  eq("ker a = ker |a|", ker_a, ker_abs);
  eq("ker |a| = ker b", ker_abs, ker_b);

  const Submodule eb = range_closure(b, tol);
  eq("ker b = E_b^perp", ker_b, orthocomplement(eb, e));

  const Submodule ker_b_perp = orthocomplement(ker_b, e);
  {
    const Mat outside = eb.basis() - ker_b_perp.basis() * (ker_b_perp.basis().adjoint() * eb.basis());
    rec.add("E_b in (ker b)^perp", submodule_contains(ker_b_perp, eb, sub), outside.norm());
  }
  eq("E_b = E_sqrt(b)", eb, range_closure(abs_a, tol));

  // Smallest singular value of b on E_b, relative to ||b||.
  double injectivity = 1.0;
  if (!eb.is_zero()) {
    Eigen::JacobiSVD<Mat> svd(b.matrix() * eb.basis());
    const double bn = b.norm();
    injectivity = bn > 0 ? svd.singularValues().minCoeff() / bn : 0.0;
  }
  rec.add("b injective on E_b", kernel(restrict(b, eb), tol).is_zero(), injectivity);
  return rec;
}

ObservationOutcome observation_isometry(const ModuleMap& a, Tolerance tol) {
  ObservationOutcome out;
  const auto outcome = solve_modularity(a, tol);
  if (!std::holds_alternative<ModularityCertificate>(outcome)) {
    out.refusal = ObservationRefusal::kNotModular;
    return out;
  }
  const Tolerance sub = subspace_tol(tol);
  if (!submodule_equal(range_closure(a, tol), a.codomain(), sub)) {
    out.refusal = ObservationRefusal::kRangeNotDense;
    return out;
  }
  const auto& cert = std::get<ModularityCertificate>(outcome);
  const Submodule& e = a.domain();
  const ModuleMap abs_a = modulus_of(cert, tol);
  const Submodule ea = range_closure(abs_a, tol);
  const ModuleMap va = va_of(a, abs_a, ea, tol);
  out.checks.add("v_a unitary onto F", is_isometry(va, tol) && submodule_equal(range_closure(va, tol), a.codomain(), sub));

  // w = (E_a -> E) o v_a^{-1}; v_a is invertible onto F.
  const ModuleMap w(a.codomain(), e, linalg::pseudo_inverse(va.matrix(), tol.eps()), tol);
  out.w = w;
  out.checks.add("w isometry", is_isometry(w, tol));
  const Submodule range_w = range_closure(w, tol);
  out.checks.add("range w = E_a", submodule_equal(range_w, ea, sub), projection_distance(range_w, ea));

  out.Ea_complemented = is_complemented(ea, tol);
  out.w_adjointable = try_adjoint(w, tol).ok();
  out.checks.add("w adjointable iff E_a complemented", out.w_adjointable == out.Ea_complemented);

  // (ker a)^perp = 0 and w adjointable force a = 0.
  const bool premise = orthocomplement(kernel(a, tol), e).is_zero() && out.w_adjointable;
  out.checks.add("(ker a)^perp = 0 and w adjointable imply a = 0", !premise || a.norm() == 0.0);
  return out;
}

}  // namespace hilbmod
