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

#include "hilbmod/fn/polar.hpp"

#include <algorithm>

#include "exact.hpp"
#include "hilbmod/linalg.hpp"

namespace hilbmod::fn {

namespace {

// Domain preservation and E_a = E_b on the grid.
constexpr double kGridSubspace = 1e-8;

bool all_polynomial(const FnMatrix& m) {
  for (const auto& row : m) {
    for (const auto& f : row) {
      if (!f.is_polynomial()) return false;
    }
  }
  return true;
}

exact::QiPoly conj(const exact::QiPoly& p) {
  exact::QiPoly r = p;
  for (auto& c : r.im.c) c = -c;
  return r;
}

// Column j of m * g in exact arithmetic; both polynomial.
std::vector<exact::QiPoly> exact_column(const FnMatrix& m, const FnMatrix& g, int j) {
  std::vector<exact::QiPoly> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t l = 0; l < g.size(); ++l) {
      out[i] = out[i] + exact::QiPoly(*m[i][l].polynomial()) * exact::QiPoly(*g[l][j].polynomial());
    }
  }
  return out;
}

exact::QiPoly exact_gram(const std::vector<exact::QiPoly>& x, const std::vector<exact::QiPoly>& y) {
  exact::QiPoly acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc = acc + conj(x[i]) * y[i];
  return acc;
}

// conj(f) g when it reduces to polynomials exactly.
std::optional<exact::QiPoly> exact_conj_product(const PolyFunction& f, const PolyFunction& g) {
  if (f.is_polynomial() && g.is_polynomial()) return conj(exact::QiPoly(*f.polynomial())) * exact::QiPoly(*g.polynomial());
  if (f.kind() == PolyFunction::Kind::kSqrt && f == g) return exact::QiPoly(*f.children()[0].polynomial());
  return std::nullopt;
}

std::optional<exact::QiPoly> exact_gram(const FnMatrix& x, int i, const FnMatrix& y, int j) {
  exact::QiPoly acc;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto term = exact_conj_product(x[k][i], y[k][j]);
    if (!term) return std::nullopt;
    acc = acc + *term;
  }
  return acc;
}

FnMatrix identity(int n) {
  FnMatrix id(n, std::vector<PolyFunction>(n));
  for (int i = 0; i < n; ++i) id[i][i] = PolyFunction(1.0);
  return id;
}

// Generators of the domain as a matrix.
FnMatrix domain_generators(const FnModuleMap& a) {
  return a.domain().is_whole() ? identity(a.cols()) : a.domain().generators();
}

Mat fiber(const FnSubmodule& s, double t) {
  return s.is_whole() ? Mat::Identity(s.ambient_rank(), s.ambient_rank()) : s.fiber_basis(t);
}

double isometry_defect(const Mat& vq) {
  return (vq.adjoint() * vq - Mat::Identity(vq.cols(), vq.cols())).norm();
}

}  // namespace

FnModularity fn_solve_modularity(const FnModuleMap& a, Tolerance tol, int grid) {
  FnModularity out;
  const int n = a.cols();
  const FnMatrix bm = multiply(adjoint(a.matrix(), a.rows(), n), a.matrix(), a.rows());
  const auto points = chebyshev_grid(grid);
  const FnSubmodule& e = a.domain();

  if (!e.is_whole()) {
    for (double t : points) {
      const Mat q = e.fiber_basis(t);
      const Mat bt = evaluate(bm, t, n, n);
      const double outside = (bt * q - q * (q.adjoint() * bt * q)).norm();
      if (outside > kGridSubspace * std::max(1.0, bt.norm())) {
        throw Error(ErrorKind::kUnsupported, "m^* m does not preserve the domain; compressions are not implemented");
      }
    }
  }
  out.b = FnModuleMap(bm, e, e);

  const FnMatrix g = domain_generators(a);
  const int k = static_cast<int>(g[0].size());
  const FnMatrix ag = multiply(a.matrix(), g, n);
  const FnMatrix bg = multiply(bm, g, n);

  // Differences <g_i, b g_j> - <a g_i, a g_j>, exactly where possible.
  std::vector<exact::QiPoly> diffs;
  bool exact_ok = true;
  const bool polynomial = all_polynomial(a.matrix()) && all_polynomial(g);
  for (int i = 0; i < k && exact_ok; ++i) {
    for (int j = 0; j < k && exact_ok; ++j) {
      if (polynomial) {
        std::vector<exact::QiPoly> gi(n);
        for (int l = 0; l < n; ++l) gi[l] = exact::QiPoly(*g[l][i].polynomial());
        diffs.push_back(exact_gram(gi, exact_column(bm, g, j)) - exact_gram(exact_column(a.matrix(), g, i), exact_column(a.matrix(), g, j)));
        continue;
      }
      const auto lhs = exact_gram(g, i, bg, j);
      const auto rhs = exact_gram(ag, i, ag, j);
      if (!lhs || !rhs) {
        exact_ok = false;
        break;
      }
      diffs.push_back(*lhs - *rhs);
    }
  }
  out.residual_exact = exact_ok;

  double worst = 0;
  double scale = 0;
  const bool identically_zero = exact_ok && std::all_of(diffs.begin(), diffs.end(), [](const exact::QiPoly& d) { return d.is_zero(); });
  for (double t : points) {
    const Mat gt = evaluate(g, t, n, k);
    const Mat at = a(t) * gt;
    const Mat rhs = at.adjoint() * at;
    scale = std::max(scale, rhs.cwiseAbs().maxCoeff());
    if (identically_zero) continue;
    if (exact_ok) {
      for (const auto& d : diffs) worst = std::max(worst, std::abs(exact::to_polynomial(d)(t)));
    } else {
      worst = std::max(worst, (gt.adjoint() * evaluate(bm, t, n, n) * gt - rhs).cwiseAbs().maxCoeff());
    }
  }
  out.residual = scale > 0 ? worst / scale : worst;
  out.modular = out.residual <= tol.eps();

  out.positive = true;
  for (double t : points) {
    const Mat q = fiber(e, t);
    if (q.cols() == 0) continue;
    const Mat bt = evaluate(bm, t, n, n);
    const Mat h = q.adjoint() * bt * q;
    const double bn = std::max(linalg::spectral_norm(bt), 1e-300);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    if ((h - h.adjoint()).norm() > tol.eps() * bn || es.eigenvalues().minCoeff() < -tol.eps() * bn) {
      out.positive = false;
      break;
    }
  }
  return out;
}

FnModuleMap fn_modulus(const FnModuleMap& b) {
  const int n = b.cols();
  if (b.rows() != n) throw Error(ErrorKind::kShape, "modulus of a non-square map");
  FnMatrix root(n, std::vector<PolyFunction>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && !b.matrix()[i][j].is_zero()) throw Error(ErrorKind::kUnsupported, "square root of a non-diagonal function matrix");
    }
    root[i][i] = PolyFunction::sqrt(b.matrix()[i][i]);
  }
  return FnModuleMap(std::move(root), b.domain(), b.domain());
}

FnPolarReport fn_polar_decompose(const FnModuleMap& a, Tolerance tol, int grid) {
  FnPolarReport report;
  report.modularity = fn_solve_modularity(a, tol, grid);
  report.checks.add("<x,by> = <ax,ay>", report.modularity.modular, report.modularity.residual);
  if (!report.modularity.modular) {
    report.refusal = PolarRefusal::kNotModular;
    return report;
  }
  report.checks.add("b positive (grid)", report.modularity.positive);
  const FnModuleMap& b = *report.modularity.b;
  const FnSubmodule& e = a.domain();
  const int n = a.cols();
  const auto points = chebyshev_grid(grid);
  const FnMatrix g = domain_generators(a);
  const int k = static_cast<int>(g[0].size());

  const FnModuleMap abs_a = fn_modulus(b);
  report.modulus = abs_a;
  const FnSubmodule ea(n, multiply(b.matrix(), g, n));
  report.Ea = ea;

  if (ea.all_zero()) {
    report.Ea_complemented = true;
    report.va = FnModuleMap(FnMatrix(a.rows(), std::vector<PolyFunction>(n)), ea, a.codomain());
    report.v = FnModuleMap(FnMatrix(a.rows(), std::vector<PolyFunction>(n)), e, a.codomain());
    return report;
  }

  // closure(|a| E) = closure(b E), fiber by fiber.
  {
    const FnMatrix absg = multiply(abs_a.matrix(), g, n);
    double worst = 0;
    bool ranks_agree = true;
    for (double t : points) {
      const Mat q = ea.fiber_basis(t);
      const Mat m = evaluate(absg, t, n, k);
      Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
      const auto& s = svd.singularValues();
      const auto r = q.cols();
      if (r < s.size() && s(r) > tol.eps() * s(0)) ranks_agree = false;
      if (r > 0) worst = std::max(worst, linalg::projection_distance(svd.matrixU().leftCols(r), q));
    }
    report.checks.add("E_a = E_b (grid)", ranks_agree && worst <= kGridSubspace, worst);
  }

  report.Ea_equals_domain = fn_submodule_equal(ea, e);
  if (report.Ea_equals_domain) {
    report.Ea_complemented = true;
  } else if (e.is_whole()) {
    report.Ea_complementedness = fn_is_complemented(ea);
    report.Ea_complemented = report.Ea_complementedness->complemented;
  } else {
    throw Error(ErrorKind::kUnsupported, "complementedness of E_a inside a proper submodule");
  }

  FnMatrix inv(n, std::vector<PolyFunction>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = PolyFunction::quotient(PolyFunction(1.0), abs_a.matrix()[i][i]);
  const FnMatrix va_matrix = multiply(a.matrix(), inv, n);
  const FnModuleMap va(va_matrix, ea, a.codomain());
  report.va = va;

  {
    double iso = 0;
    double factor = 0;
    for (double t : points) {
      const Mat vt = va(t);
      const Mat q = ea.fiber_basis(t);
      if (q.cols() > 0) iso = std::max(iso, isometry_defect(vt * q));
      const Mat qd = fiber(e, t);
      const Mat at = a(t);
      factor = std::max(factor, (vt * abs_a(t) * qd - at * qd).norm() / std::max(1.0, at.norm()));
    }
    report.checks.add("v_a isometric on E_a (grid)", iso <= tol.eps(), iso);
    report.checks.add("v_a |a| = a (grid)", factor <= tol.eps(), factor);
  }

  if (!report.Ea_complemented) {
    report.refusal = PolarRefusal::kEaNotComplemented;
    return report;
  }

  double factor = 0;
  double partial = 0;
  if (report.Ea_equals_domain) {
    const FnModuleMap v(va_matrix, e, a.codomain());
    report.v = v;
    for (double t : points) {
      const Mat q = fiber(e, t);
      const Mat vt = v(t);
      const Mat at = a(t);
      factor = std::max(factor, (vt * abs_a(t) * q - at * q).norm() / std::max(1.0, at.norm()));
      if (q.cols() > 0) partial = std::max(partial, isometry_defect(vt * q));
    }
  } else {
    for (double t : points) {
      const Mat q = ea.fiber_basis(t);
      const Mat vt = va(t) * linalg::projector(q, n);
      const Mat at = a(t);
      factor = std::max(factor, (vt * abs_a(t) - at).norm() / std::max(1.0, at.norm()));
      partial = std::max(partial, (vt * vt.adjoint() * vt - vt).norm());
    }
  }
  report.checks.add("a = v|a| (grid)", factor <= tol.eps(), factor);
  report.checks.add("v partial isometry (grid)", partial <= tol.eps(), partial);
  return report;
}

FnPositiveReport fn_positive_analysis(const FnModuleMap& b, Tolerance tol, int grid) {
  const int n = b.cols();
  if (b.rows() != n) throw Error(ErrorKind::kShape, "positive analysis of a non-square map");
  const FnSubmodule& e = b.domain();
  const FnMatrix g = e.is_whole() ? identity(n) : e.generators();
  FnPositiveReport rep{.Eb = FnSubmodule(n, multiply(b.matrix(), g, n))};

  const Polynomial* scalar = n == 1 && e.is_whole() ? b.matrix()[0][0].polynomial() : nullptr;
  if (scalar) {
    rep.positive_exact = true;
    rep.positive = nonnegative_on_unit_interval(*scalar);
  } else {
    rep.positive = true;
    for (double t : chebyshev_grid(grid)) {
      const Mat q = fiber(e, t);
      if (q.cols() == 0) continue;
      const Mat bt = b(t);
      const Mat h = q.adjoint() * bt * q;
      const double bn = std::max(linalg::spectral_norm(bt), 1e-300);
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
      if ((h - h.adjoint()).norm() > tol.eps() * bn || es.eigenvalues().minCoeff() < -tol.eps() * bn) {
        rep.positive = false;
        break;
      }
    }
  }

  rep.kernel = fn_kernel(b);
  const bool ker_zero = rep.kernel.kind == FnKernel::Kind::kZero;
  rep.strictly_positive = rep.positive && ker_zero;
  rep.kernel_perp_is_E = ker_zero;

  if (e.is_whole() && b.polynomial()) {
    exact::QiPolyMatrix em(n);
    for (int i = 0; i < n; ++i) {
      for (const auto& f : b.matrix()[i]) em[i].emplace_back(*f.polynomial());
    }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    const exact::QiPoly det = exact::minor(em, all, all);
    rep.invertible = !det.is_zero() && exact::common_roots({det}, kRootCluster).empty();
  }

  if (rep.Eb.all_zero()) {
    rep.Eb_complementedness = Complementedness{true, 0, {}};
  } else if (e.is_whole()) {
    rep.Eb_complementedness = fn_is_complemented(rep.Eb);
  } else if (fn_submodule_equal(rep.Eb, e)) {
    rep.Eb_complementedness = Complementedness{true, rep.Eb.generic_rank(), {}};
  }

  switch (rep.kernel.kind) {
    case FnKernel::Kind::kZero: rep.Eb_equals_kernel_perp = !rep.Eb.all_zero() && fn_submodule_equal(rep.Eb, e); break;
    case FnKernel::Kind::kEverything: rep.Eb_equals_kernel_perp = rep.Eb.all_zero(); break;
    case FnKernel::Kind::kGenerated: break;
  }
  return rep;
}

namespace {

bool single_drop_at_zero(const std::vector<RealRoot>& drops) {
  return drops.size() == 1 && std::abs(drops[0].t) <= 1e-8;
}

bool is_constant(const FnMatrix& m, double c) {
  return m.size() == 1 && m[0].size() == 1 && m[0][0] == PolyFunction(c);
}

}  // namespace

std::vector<FnScenarioResult> fn_polar_scenarios(Tolerance tol, int grid) {
  const PolyFunction t(Polynomial::t());
  std::vector<FnScenarioResult> out;

  {
    const FnSubmodule ideal(1, {{t}});
    FnScenarioResult r{"inclusion", "inclusion of the ideal generated by t into C[0,1]", FnModuleMap({{PolyFunction(1.0)}}, ideal)};
    r.adjoint = fn_try_adjoint(r.a);
    r.polar = fn_polar_decompose(r.a, tol, grid);
    const auto& p = *r.polar;
    auto& v = r.verdicts;
    v.add("modular", p.modularity.modular, p.modularity.residual);
    v.add("b = id", p.modularity.b && is_constant(p.modularity.b->matrix(), 1.0));
    v.add("residual exact and <= 1e-12", p.modularity.residual_exact && p.modularity.residual <= 1e-12, p.modularity.residual);
    v.add("|a| = id", p.modulus && is_constant(p.modulus->matrix(), 1.0));
    v.add("E_a = E", p.Ea_equals_domain);
    v.add("a not adjointable", !r.adjoint->adjointable);
    v.add("witness t = 0", r.adjoint->witness && std::abs(*r.adjoint->witness) <= 1e-8, r.adjoint->witness.value_or(-1));
    v.add("v = a", p.v && p.v->matrix() == r.a.matrix() && fn_submodule_equal(p.v->domain(), r.a.domain()));
    const Check* pi = p.checks.find("v partial isometry (grid)");
    v.add("v partial isometry", pi && pi->passed, pi ? pi->value : 0);
    v.add("v not adjointable", p.v && !fn_try_adjoint(*p.v).adjointable);
    out.push_back(std::move(r));
  }
  {
    FnScenarioResult r{"strictly-positive", "multiplication by t on C[0,1] as a positive map", FnModuleMap({{t}})};
    r.positive = fn_positive_analysis(r.a, tol, grid);
    const auto& p = *r.positive;
    auto& v = r.verdicts;
    v.add("strictly positive", p.strictly_positive);
    v.add("not invertible", p.invertible == false);
    v.add("ker b = 0", p.kernel.kind == FnKernel::Kind::kZero);
    v.add("(ker b)^perp = E", p.kernel_perp_is_E);
    v.add("E_b not complemented", p.Eb_complementedness && !p.Eb_complementedness->complemented);
    v.add("drop at t = 0", p.Eb_complementedness && single_drop_at_zero(p.Eb_complementedness->drop_points));
    v.add("E_b != (ker b)^perp", p.Eb_equals_kernel_perp == false);
    out.push_back(std::move(r));
  }
  {
    FnScenarioResult r{"sqrt-multiplier", "multiplication by sqrt(t) on C[0,1]", FnModuleMap({{PolyFunction::sqrt(t)}})};
    r.adjoint = fn_try_adjoint(r.a);
    r.polar = fn_polar_decompose(r.a, tol, grid);
    const auto& p = *r.polar;
    auto& v = r.verdicts;
    v.add("modular", p.modularity.modular, p.modularity.residual);
    v.add("b = t", p.modularity.b && p.modularity.b->matrix()[0][0] == t);
    const Check* eab = p.checks.find("E_a = E_b (grid)");
    v.add("E_a = E_b", eab && eab->passed, eab ? eab->value : 0);
    v.add("E_a not complemented", p.Ea_complementedness && !p.Ea_complementedness->complemented);
    v.add("drop at t = 0", p.Ea_complementedness && single_drop_at_zero(p.Ea_complementedness->drop_points));
    const Check* iso = p.checks.find("v_a isometric on E_a (grid)");
    v.add("v_a isometric on the grid within 1e-9", p.va && iso && iso->value <= 1e-9, iso ? iso->value : 0);
    v.add("polar refuses with EaNotComplemented", p.refusal == PolarRefusal::kEaNotComplemented);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hilbmod::fn
