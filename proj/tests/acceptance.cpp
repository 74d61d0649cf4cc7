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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hilbmod/cli.hpp"
#include "hilbmod/fn/polar.hpp"
#include "hilbmod/linalg.hpp"
#include "hilbmod/modular_polar.hpp"
#include "hilbmod/random.hpp"

using namespace hilbmod;

namespace {

struct Case {
  FreeModule domain;
  FreeModule codomain;
  ModuleMap a;
};

// 500 operators per algebra: C on ranks 1-4, M_2 on ranks 1-3, C (+) M_2 on rank 2.
std::vector<Case> corpus() {
  struct Family {
    AlgebraSpec spec;
    std::vector<int> ranks;
    std::uint64_t seed;
  };
  const std::vector<Family> families{{AlgebraSpec({1}), {1, 2, 3, 4}, 101}, {AlgebraSpec({2}), {1, 2, 3}, 202}, {AlgebraSpec({1, 2}), {2}, 303}};
  std::vector<Case> out;
  for (const auto& f : families) {
    Rng rng(f.seed);
    for (int i = 0; i < 500; ++i) {
      const int k = static_cast<int>(f.ranks.size());
      const int m = f.ranks[i % k];
      const int n = f.ranks[(i / k) % k];
      const FreeModule e(f.spec, m);
      const FreeModule g(f.spec, n);
      out.push_back({e, g, random_operator(e, g, i, rng)});
    }
  }
  return out;
}

double rel(const Mat& x, const Mat& ref) {
  const double s = std::max(x.norm(), ref.norm());
  return s > 0 ? (x - ref).norm() / s : 0.0;
}

bool classical_partial_isometry(const Mat& v, double tol) {
  return (v * v.adjoint() * v - v).norm() <= tol * std::max(1.0, v.norm());
}

struct Line {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Line()>& body) {
  Line l;
  try {
    l = body();
  } catch (const std::exception& e) {
    l = {false, std::string("exception: ") + e.what()};
  }
  if (!l.pass) ++failures;
  std::printf("%s [%d] %s: %s\n", l.pass ? "PASS" : "FAIL", id, name.c_str(), l.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Line oracle_equivalence(const std::vector<Case>& cases) {
  const auto start = std::chrono::steady_clock::now();
  int bad = 0;
  double worst_b = 0, worst_va = 0;
  for (const auto& c : cases) {
    const PolarReport p = polar_decompose(c.a);
    if (!p.modular() || !p.v || !p.modulus) {
      ++bad;
      continue;
    }
    const Mat& am = c.a.matrix();
    const double db = rel(std::get<ModularityCertificate>(p.certificate).b.matrix(), am.adjoint() * am);
    const double dv = rel(p.v->matrix() * p.modulus->matrix(), am);
    worst_b = std::max(worst_b, db);
    worst_va = std::max(worst_va, dv);
    if (db > 1e-8 || dv > 1e-8 || !is_partial_isometry(*p.v)) ++bad;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {bad == 0 && secs < 10.0,
          fmt("%zu operators, %d failures, max |b - a*a| %.2e, max |a - v|a|| %.2e, %.2f s", cases.size(), bad, worst_b, worst_va, secs)};
}

Line kernel_suite(const std::vector<Case>& cases) {
  int bad = 0;
  double worst = 0;
  for (const auto& c : cases) {
    const CheckRecord r = kernel_invariants(c.a);
    bool ok = r.all_passed();
    for (const auto& k : r.checks) {
      if (k.name == "b injective on E_b") continue;
      worst = std::max(worst, k.value);
      ok = ok && k.value <= 1e-8;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, fmt("%zu operators, %d failures, max projection distance %.2e", cases.size(), bad, worst)};
}

Line uniqueness(const std::vector<Case>& cases) {
  Rng rng(404);
  int bad = 0;
  double worst_b = 0, min_residual = 1e300;
  for (int i = 0; i < 100; ++i) {
    const ModuleMap& a = cases[(i * 15) % cases.size()].a;
    const auto cert = certify_modular(a);
    // Same equations over a shuffled basis.
    const Mat& q = a.domain().basis();
    std::vector<int> perm(q.cols());
    for (int k = 0; k < static_cast<int>(perm.size()); ++k) perm[k] = k;
    for (int k = static_cast<int>(perm.size()) - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
    Mat shuffled(q.rows(), q.cols());
    for (int k = 0; k < static_cast<int>(perm.size()); ++k) shuffled.col(k) = q.col(perm[k]);
    const auto again = solve_modularity(a, shuffled, Tolerance());
    const auto* c2 = std::get_if<ModularityCertificate>(&again);
    const double db = c2 ? relative_distance(cert.b, c2->b) : 1.0;
    worst_b = std::max(worst_b, db);

    // Competitor v' = v exp(i d |a| / ||a||): a partial isometry with the
    // same initial and final spaces that differs from v on E_a.
    const PolarReport p = polar_decompose(a);
    bool ok = db <= 1e-8 && p.v && p.modulus;
    if (ok && a.norm() > 0) {
      const Mat h = p.modulus->matrix() / p.modulus->norm();
      Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0);
      const Eigen::VectorXcd phase = (Complex(0, 1e-3) * es.eigenvalues().cast<Complex>()).array().exp();
      const Mat u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
      const ModuleMap w(a.domain(), a.codomain(), p.v->matrix() * u);
      const bool differs = rel(w.matrix(), p.v->matrix()) > 0;
      const double residual = rel(w.matrix() * p.modulus->matrix(), a.matrix());
      min_residual = std::min(min_residual, residual);
      ok = differs && is_partial_isometry(w) && residual >= 1e-4;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, fmt("100 operators, %d failures, max |b - b_perm| %.2e, min competitor residual %.2e", bad, worst_b, min_residual)};
}

const fn::FnScenarioResult* find(const std::vector<fn::FnScenarioResult>& all, const std::string& name) {
  for (const auto& s : all) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::string failed_verdicts(const CheckRecord& r) {
  std::string s;
  for (const auto& c : r.checks) {
    if (!c.passed) s += " [" + c.name + "]";
  }
  return s;
}

Line sqrt_multiplier(const std::vector<fn::FnScenarioResult>& all) {
  const auto* s = find(all, "sqrt-multiplier");
  if (!s || !s->polar) return {false, "scenario missing"};
  const auto& p = *s->polar;
  const bool drop = p.Ea_complementedness && p.Ea_complementedness->drop_points.size() == 1 &&
                    std::abs(p.Ea_complementedness->drop_points[0].t) <= 1e-8;
  const Check* iso = p.checks.find("v_a isometric on E_a (grid)");
  const bool ok = !p.Ea_complemented && drop && p.va && iso && iso->passed && iso->value <= 1e-9 &&
                  p.refusal == PolarRefusal::kEaNotComplemented && s->verdicts.all_passed();
  return {ok, fmt("E_a not complemented, drop at t = %.1e, v_a isometry defect %.2e on %d points, refusal %s%s",
                  drop ? p.Ea_complementedness->drop_points[0].t : -1.0, iso ? iso->value : -1.0, fn::kDefaultGrid,
                  p.refusal ? to_string(*p.refusal) : "none", failed_verdicts(s->verdicts).c_str())};
}

Line inclusion(const std::vector<fn::FnScenarioResult>& all) {
  const auto* s = find(all, "inclusion");
  if (!s || !s->polar || !s->adjoint) return {false, "scenario missing"};
  const auto& m = s->polar->modularity;
  const bool ok = m.modular && m.residual_exact && m.residual <= 1e-12 && !s->adjoint->adjointable && s->adjoint->witness &&
                  std::abs(*s->adjoint->witness) <= 1e-8 && s->verdicts.all_passed();
  return {ok, fmt("modular, b = id with exact residual %.1e, not adjointable (witness t = %.1e), v = a partial isometry%s", m.residual,
                  s->adjoint->witness.value_or(-1), failed_verdicts(s->verdicts).c_str())};
}

Line strictly_positive(const std::vector<fn::FnScenarioResult>& all) {
  const auto* s = find(all, "strictly-positive");
  if (!s || !s->positive) return {false, "scenario missing"};
  const auto& p = *s->positive;
  const bool ok = p.kernel.kind == fn::FnKernel::Kind::kZero && p.kernel_perp_is_E && p.Eb_complementedness &&
                  !p.Eb_complementedness->complemented && p.Eb_equals_kernel_perp == false && p.positive_exact &&
                  s->verdicts.all_passed();
  return {ok, fmt("ker b = 0, (ker b)^perp = E, E_b not complemented, E_b != (ker b)^perp%s", failed_verdicts(s->verdicts).c_str())};
}

// Module and rank for the i-th case of a cycle over the three algebras.
FreeModule module_for(int i) {
  static const std::vector<AlgebraSpec> specs{AlgebraSpec({1}), AlgebraSpec({2}), AlgebraSpec({1, 2})};
  return FreeModule(specs[i % 3], 1 + (i / 3) % 3);
}

Line predicates() {
  Rng rng(707);
  int disagree = 0, iso_false = 0, big_true = 0;
  for (int i = 0; i < 200; ++i) {
    const FreeModule e = module_for(i);
    const FreeModule f(e.algebra(), e.rank() + i % 2);
    const ModuleMap v = compose(random_isometry(e, f, rng), random_projection(e, rng));
    if (is_partial_isometry(v) != classical_partial_isometry(v.matrix(), 1e-8) || !is_partial_isometry(v)) ++disagree;
    if (!is_isometry(random_isometry(e, f, rng)) || !is_partial_isometry(random_isometry(e, f, rng))) ++iso_false;
    for (double scale : {1.0 + 1e-8, 1.001, 2.0}) {
      const ModuleMap u = random_isometry(e, f, rng) * scale;
      if (u.norm() > 1 + 1e-9 && is_partial_isometry(u)) ++big_true;
    }
    const ModuleMap g = random_operator(e, f, OperatorShape::kGeneric, rng);
    if (g.norm() > 0) {
      const ModuleMap h = g * (1.5 / g.norm());
      if (is_partial_isometry(h)) ++big_true;
    }
  }
  return {disagree == 0 && iso_false == 0 && big_true == 0,
          fmt("200 partial isometries: %d disagreements; isometries false: %d; norm > 1 + 1e-9 true: %d", disagree, iso_false, big_true)};
}

Line projections() {
  Rng rng(808);
  int bad = 0;
  double worst_sa = 0, worst_idem = 0;
  for (int i = 0; i < 100; ++i) {
    const ModuleMap p = random_projection(module_for(i), rng);
    const Mat& m = p.matrix();
    const double sa = rel(m, m.adjoint());
    const double idem = rel(m * m, m);
    worst_sa = std::max(worst_sa, sa);
    worst_idem = std::max(worst_idem, idem);
    if (!is_projection_gram(p) || sa > 1e-9 || idem > 1e-9) ++bad;
  }
  int idem_true = 0;
  for (int i = 0; i < 20; ++i) {
    const FreeModule e(module_for(i).algebra(), 2 + i % 2);
    const ModuleMap q = random_idempotent(e, rng);
    const Mat& m = q.matrix();
    if (rel(m * m, m) > 1e-9 || rel(m, m.adjoint()) < 1e-6 || is_projection_gram(q)) ++idem_true;
  }
  return {bad == 0 && idem_true == 0, fmt("100 projections: %d failures (max |p - p*| %.1e, max |p^2 - p| %.1e); 20 non-Hermitian idempotents accepted: %d",
                                          bad, worst_sa, worst_idem, idem_true)};
}

Line observation() {
  Rng rng(909);
  int bad = 0;
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const FreeModule f = module_for(i);
    const FreeModule e(f.algebra(), f.rank() + i % 2);
    const ModuleMap a = random_operator(e, f, OperatorShape::kGeneric, rng);
    const ObservationOutcome o = observation_isometry(a);
    if (!o.w) {
      ++bad;
      continue;
    }
    const Mat& x = o.w->domain().basis();
    const double d = GramBlocks(e, o.w->matrix() * x, o.w->matrix() * x).max_distance(GramBlocks(f, x, x));
    worst = std::max(worst, d);
    if (d > 1e-8 || !try_adjoint(*o.w).ok() || !o.Ea_complemented || !is_complemented(range_module_Ea(a))) ++bad;
  }
  return {bad == 0, fmt("50 surjective operators, %d failures, max |<wx,wy> - <x,y>| %.2e", bad, worst)};
}

std::string capture(const std::string& cmd) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe.get())) > 0;) out.append(buf, n);
  return out;
}

Line determinism() {
  cli::FuzzOptions f;
  f.seed = 7;
  f.count = 50;
  const bool lib = cli::render(cli::gallery(), cli::Format::kMachine) == cli::render(cli::gallery(), cli::Format::kMachine) &&
                   cli::render(cli::fuzz(f), cli::Format::kMachine) == cli::render(cli::fuzz(f), cli::Format::kMachine);
  const std::string tool = HILBMOD_TOOL;
  const std::string g1 = capture(tool + " --format machine gallery");
  const std::string g2 = capture(tool + " --format machine gallery");
  const std::string f1 = capture(tool + " --format machine fuzz --seed 7 --count 50");
  const std::string f2 = capture(tool + " --format machine fuzz --seed 7 --count 50");
  const bool cli_same = !g1.empty() && !f1.empty() && g1 == g2 && f1 == f2;
  return {lib && cli_same, fmt("library reports identical: %s; CLI gallery %zu bytes, fuzz %zu bytes, identical: %s", lib ? "yes" : "no",
                               g1.size(), f1.size(), cli_same ? "yes" : "no")};
}

}  // namespace

int main() {
  const auto cases = corpus();
  report(1, "finite-dim oracle equivalence", [&] { return oracle_equivalence(cases); });
  report(2, "kernel-invariant suite", [&] { return kernel_suite(cases); });
  report(3, "uniqueness", [&] { return uniqueness(cases); });
  const auto scenarios = fn::fn_polar_scenarios();
  report(4, "multiplication by sqrt(t)", [&] { return sqrt_multiplier(scenarios); });
  report(5, "inclusion of the ideal", [&] { return inclusion(scenarios); });
  report(6, "strictly positive multiplier", [&] { return strictly_positive(scenarios); });
  report(7, "predicate consistency", predicates);
  report(8, "projections by the Gram identity", projections);
  report(9, "observation isometry", observation);
  report(10, "determinism", determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
