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

#include "doctest.h"
#include "hilbmod/fn/polar.hpp"
#include "hilbmod/random.hpp"

using namespace hilbmod;
using namespace hilbmod::fn;

namespace {

const PolyFunction one(1.0);
const PolyFunction t(Polynomial::t());

PolyFunction poly(std::vector<Complex> c) { return PolyFunction(Polynomial(std::move(c))); }

// prod (t - r_k).
Polynomial from_roots(const std::vector<double>& roots) {
  Polynomial p(1.0);
  for (double r : roots) p = p * Polynomial(std::vector<Complex>{-r, 1.0});
  return p;
}

}  // namespace

TEST_CASE("Polynomial arithmetic") {
  const Polynomial p({1.0, 2.0});
  const Polynomial q({0.0, Complex(0, 1)});
  CHECK((p * q) == Polynomial({0.0, Complex(0, 1), Complex(0, 2)}));
  CHECK((p - p).is_zero());
  CHECK(p.derivative() == Polynomial(2.0));
  CHECK(q.conj()(0.5) == Complex(0, -0.5));
  CHECK_THROWS_AS(Polynomial(std::vector<Complex>(kMaxDegree + 2, 1.0)), Error);
}

TEST_CASE("real_roots") {
  SUBCASE("exact rational roots") {
    const auto r = real_roots(Polynomial::t());
    REQUIRE(r.size() == 1);
    CHECK(r[0].t == 0.0);
    CHECK(r[0].lo == r[0].hi);
  }
  SUBCASE("1 - t^2 has only t = 1 in [0, 1]") {
    const auto r = real_roots(Polynomial({1.0, 0.0, -1.0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].t == 1.0);
  }
  SUBCASE("irrational roots against the closed form") {
    // t^2 - t + 1/8 has roots (1 -+ 1/sqrt 2) / 2.
    const auto r = real_roots(Polynomial({0.125, -1.0, 1.0}));
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0].t - (1 - 1 / std::sqrt(2.0)) / 2) < 1e-13);
    CHECK(std::abs(r[1].t - (1 + 1 / std::sqrt(2.0)) / 2) < 1e-13);
    CHECK(r[0].lo < r[0].t);
    CHECK(r[0].t < r[0].hi);
  }
  SUBCASE("multiplicity and clustering") {
    const auto double_root = real_roots(from_roots({0.5, 0.5}));
    REQUIRE(double_root.size() == 1);
    CHECK(double_root[0].multiplicity == 2);
    // Dyadic roots keep the coefficients exact.
    const auto close = real_roots(from_roots({0.25, 0.25 + 0x1.0p-40, 0.75}));
    REQUIRE(close.size() == 2);
    CHECK(close[0].multiplicity == 2);
    CHECK(close[0].t == 0.25);
    CHECK(real_roots(from_roots({0.25, 0.25 + 0x1.0p-40}), 0.0).size() == 2);
  }
  SUBCASE("complex coefficients: common roots of real and imaginary parts") {
    const auto r = real_roots(Polynomial({Complex(-0.25, -0.25), Complex(1, 1)}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].t == 0.25);
    CHECK(real_roots(Polynomial({Complex(0, 1), 1.0})).empty());
  }
  SUBCASE("no roots, roots outside [0, 1], zero polynomial") {
    CHECK(real_roots(Polynomial({1.0, 0.0, 1.0})).empty());
    CHECK(real_roots(from_roots({-0.5, 1.5})).empty());
    CHECK_THROWS_AS(real_roots(Polynomial()), Error);
  }
  SUBCASE("random products of linear factors") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> roots;
      const int k = 1 + rng.below(5);
      for (int i = 0; i < k; ++i) roots.push_back(0.05 + 0.9 * rng.uniform());
      std::sort(roots.begin(), roots.end());
      const auto found = real_roots(from_roots(roots), 0.0);
      REQUIRE(found.size() == roots.size());
      for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(found[i].t - roots[i]) < 1e-8);
    }
  }
}

TEST_CASE("nonnegative_on_unit_interval") {
  CHECK(nonnegative_on_unit_interval(Polynomial::t()));
  CHECK(nonnegative_on_unit_interval(Polynomial({0.0, 1.0, -1.0})));
  CHECK(nonnegative_on_unit_interval(from_roots({0.5, 0.5})));
  CHECK_FALSE(nonnegative_on_unit_interval(from_roots({0.5})));
  CHECK_FALSE(nonnegative_on_unit_interval(Polynomial({0.0, -1.0})));
  CHECK_FALSE(nonnegative_on_unit_interval(Polynomial({0.0, Complex(0, 1)})));
}

TEST_CASE("PolyFunction") {
  SUBCASE("sqrt(t)^2 folds back to t") {
    const auto s = PolyFunction::sqrt(t);
    CHECK(s.kind() == PolyFunction::Kind::kSqrt);
    CHECK((s * s) == t);
    CHECK((s.conj() * s) == t);
    CHECK(s(0.25).real() == doctest::Approx(0.5));
  }
  SUBCASE("sqrt of a function negative somewhere") {
    CHECK_THROWS_AS(PolyFunction::sqrt(poly({-0.5, 1.0})), Error);
    CHECK(PolyFunction::sqrt(PolyFunction(4.0)) == PolyFunction(2.0));
  }
  SUBCASE("quotient is zero on the zeros of the denominator") {
    const auto q = PolyFunction::quotient(one, PolyFunction::sqrt(t));
    CHECK(q(0.0) == Complex(0));
    CHECK(q(0.25).real() == doctest::Approx(2.0));
  }
  SUBCASE("zero sets") {
    CHECK(PolyFunction().zeros().everywhere);
    const auto z = (PolyFunction::sqrt(t) * poly({-0.5, 1.0})).zeros();
    REQUIRE(z.points.size() == 2);
    CHECK(z.points[0].t == 0.0);
    CHECK(z.points[1].t == 0.5);
  }
  SUBCASE("canonical text") {
    CHECK(to_string(PolyFunction::sqrt(poly({0.0, 1.0}))) == "sqrt(poly(0,1))");
    CHECK(to_string(poly({Complex(0.5, -2), 1.0})) == "poly(0.5-2i,1)");
    CHECK(to_string(PolyFunction()) == "poly(0)");
  }
}

TEST_CASE("fn_inner_product") {
  CHECK(fn_inner_product(FnModuleVector({one}), FnModuleVector({t})) == t);
  CHECK(fn_inner_product(FnModuleVector({t}), FnModuleVector({t})) == poly({0.0, 0.0, 1.0}));
  CHECK(fn_inner_product(FnModuleVector({one, t}), FnModuleVector({t, one})) == poly({0.0, 2.0}));
  CHECK(fn_inner_product(FnModuleVector({poly({0.0, Complex(0, 1)})}), FnModuleVector({one})) == poly({0.0, Complex(0, -1)}));
  CHECK_THROWS_AS(fn_inner_product(FnModuleVector({one}), FnModuleVector({one, t})), Error);
}

TEST_CASE("chebyshev_grid") {
  const auto g = chebyshev_grid();
  REQUIRE(g.size() == 257);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(g[128] == doctest::Approx(0.5));
}

TEST_CASE("fiber_rank_profile") {
  SUBCASE("generator 1: constant rank 1") {
    const auto p = fiber_rank_profile(FnSubmodule(1, {{one}}));
    CHECK(p.generic_rank == 1);
    CHECK(p.drop_points.empty());
    CHECK(std::all_of(p.ranks.begin(), p.ranks.end(), [](int r) { return r == 1; }));
  }
  SUBCASE("generator t: rank 0 only at t = 0") {
    const auto p = fiber_rank_profile(FnSubmodule(1, {{t}}));
    REQUIRE(p.drop_points.size() == 1);
    CHECK(p.drop_points[0].t == 0.0);
    CHECK(p.ranks.front() == 0);
    CHECK(std::all_of(p.ranks.begin() + 1, p.ranks.end(), [](int r) { return r == 1; }));
  }
  SUBCASE("generators (1,t) and (t,1): determinant 1 - t^2") {
    const FnSubmodule s(2, {{one, t}, {t, one}});
    const auto p = fiber_rank_profile(s);
    CHECK(p.generic_rank == 2);
    REQUIRE(p.drop_points.size() == 1);
    CHECK(p.drop_points[0].t == 1.0);
    CHECK(p.ranks.back() == 1);
    CHECK(std::count(p.ranks.begin(), p.ranks.end(), 2) == 256);
  }
  SUBCASE("profile is consistent with the drop points") {
    // Determinant t^2 (t - 1/2): drops at 0 and 1/2.
    const FnSubmodule s(2, {{t * poly({-0.5, 1.0}), poly({0.125, -1.0, 1.0})}, {PolyFunction(), t}});
    const auto p = fiber_rank_profile(s);
    CHECK(p.generic_rank == 2);
    for (std::size_t j = 0; j < p.grid.size(); ++j) {
      const bool at_drop = std::any_of(p.drop_points.begin(), p.drop_points.end(), [&](const RealRoot& r) { return r.lo == r.hi && r.t == p.grid[j]; });
      CHECK((p.ranks[j] < p.generic_rank) == at_drop);
      // Upper semicontinuity: generic rank is the maximum.
      CHECK(p.ranks[j] <= p.generic_rank);
    }
  }
  SUBCASE("all generators zero") {
    CHECK_THROWS_AS(fiber_rank_profile(FnSubmodule(1, {{PolyFunction()}})), Error);
    CHECK_THROWS_AS(fn_is_complemented(FnSubmodule(2, {{PolyFunction()}, {PolyFunction()}})), Error);
  }
}

TEST_CASE("fn_is_complemented") {
  CHECK(fn_is_complemented(FnSubmodule(1, {{one}})).complemented);
  const auto c = fn_is_complemented(FnSubmodule(1, {{t}}));
  CHECK_FALSE(c.complemented);
  REQUIRE(c.drop_points.size() == 1);
  CHECK(c.drop_points[0].t == 0.0);
  CHECK(fn_is_complemented(FnSubmodule(1, {{poly({1.0, 1.0})}})).complemented);
  // (1, t) spans a line bundle of constant rank 1.
  CHECK(fn_is_complemented(FnSubmodule(2, {{one}, {t}})).complemented);
}

TEST_CASE("fn_submodule_equal compares closures") {
  const FnSubmodule by_t(1, {{t}});
  CHECK(fn_submodule_equal(by_t, FnSubmodule(1, {{t * t}})));
  CHECK_FALSE(fn_submodule_equal(by_t, FnSubmodule::whole(1)));
  CHECK_FALSE(fn_submodule_equal(by_t, FnSubmodule(1, {{poly({-0.5, 1.0})}})));
  CHECK(fn_submodule_equal(FnSubmodule(1, {{poly({1.0, 1.0})}}), FnSubmodule::whole(1)));
}

TEST_CASE("fn_kernel") {
  CHECK(fn_kernel(FnModuleMap({{t}})).kind == FnKernel::Kind::kZero);
  CHECK(fn_kernel(FnModuleMap({{PolyFunction()}})).kind == FnKernel::Kind::kEverything);
  CHECK(fn_kernel(FnModuleMap({{t, PolyFunction()}, {PolyFunction(), one}})).kind == FnKernel::Kind::kZero);
  CHECK(fn_kernel(FnModuleMap({{PolyFunction::sqrt(t)}})).kind == FnKernel::Kind::kZero);
  SUBCASE("row (1, t): kernel generated by a pointwise null vector") {
    const FnModuleMap m({{one, t}});
    const auto k = fn_kernel(m);
    REQUIRE(k.kind == FnKernel::Kind::kGenerated);
    const FnSubmodule& s = *k.module;
    CHECK(s.generic_rank() == 1);
    CHECK(s.drop_points().empty());
    for (double x : chebyshev_grid(17)) CHECK((m(x) * s.evaluate(x)).norm() < 1e-15);
  }
}

TEST_CASE("fn_try_adjoint") {
  SUBCASE("multiplication by t is self-adjoint") {
    const auto r = fn_try_adjoint(FnModuleMap({{t}}));
    REQUIRE(r.adjointable);
    CHECK(r.adjoint->matrix()[0][0] == t);
  }
  SUBCASE("inclusion of the ideal generated by t refuses at t = 0") {
    const auto r = fn_try_adjoint(FnModuleMap({{one}}, FnSubmodule(1, {{t}})));
    CHECK_FALSE(r.adjointable);
    REQUIRE(r.witness);
    CHECK(std::abs(*r.witness) <= 1e-8);
  }
  SUBCASE("t + 1") {
    const auto r = fn_try_adjoint(FnModuleMap({{poly({1.0, 1.0})}}));
    REQUIRE(r.adjointable);
    CHECK(r.adjoint->matrix()[0][0] == poly({1.0, 1.0}));
  }
  SUBCASE("complemented iff the inclusion is adjointable") {
    const std::vector<FnSubmodule> subs{
        FnSubmodule(1, {{t}}),
        FnSubmodule(1, {{poly({1.0, 1.0})}}),
        FnSubmodule(2, {{one}, {t}}),
        FnSubmodule(2, {{one, t}, {t, one}}),
        FnSubmodule(2, {{t}, {t * t}}),
        FnSubmodule(2, {{poly({0.125, -1.0, 1.0})}, {PolyFunction()}}),
    };
    for (const auto& s : subs) {
      FnMatrix id(s.ambient_rank(), std::vector<PolyFunction>(s.ambient_rank()));
      for (int i = 0; i < s.ambient_rank(); ++i) id[i][i] = one;
      CHECK(fn_is_complemented(s).complemented == fn_try_adjoint(FnModuleMap(id, s)).adjointable);
    }
  }
  SUBCASE("multiplication by t restricted to the ideal is adjointable") {
    // y -> t y lands in the ideal, and the candidate is continuous.
    CHECK(fn_try_adjoint(FnModuleMap({{t}}, FnSubmodule(1, {{t}}))).adjointable);
  }
}

TEST_CASE("invertible multipliers: complemented range and invertible fibers") {
  for (const auto& g : {poly({1.0, 1.0}), poly({2.0, -1.0, 0.5}), poly({Complex(0, 1), 3.0})}) {
    const FnModuleMap m({{g}});
    CHECK(fn_is_complemented(FnSubmodule(1, {{g}})).complemented);
    for (double x : chebyshev_grid()) CHECK(std::abs(m(x)(0, 0)) > 0);
  }
}

TEST_CASE("fn_solve_modularity and fn_polar_decompose") {
  SUBCASE("2 x 2 polynomial matrix: exact residual") {
    const FnModuleMap a({{one, t}, {PolyFunction(), one}});
    const auto m = fn_solve_modularity(a);
    CHECK(m.modular);
    CHECK(m.residual_exact);
    CHECK(m.residual == 0.0);
    CHECK(m.positive);
  }
  SUBCASE("diagonal polynomial matrix: polar factor on the grid") {
    const FnModuleMap a({{poly({1.0, 1.0}), PolyFunction()}, {PolyFunction(), poly({Complex(0, 2)})}});
    const auto r = fn_polar_decompose(a);
    CHECK_FALSE(r.refusal);
    REQUIRE(r.v);
    for (const auto& c : r.checks.checks) CHECK_MESSAGE(c.passed, c.name);
  }
  SUBCASE("multiplication by t: E_a generated by t^2 is not complemented") {
    const auto r = fn_polar_decompose(FnModuleMap({{t}}));
    CHECK(r.refusal == PolarRefusal::kEaNotComplemented);
    CHECK(r.va);
  }
  SUBCASE("zero map") {
    const auto r = fn_polar_decompose(FnModuleMap({{PolyFunction()}}));
    REQUIRE(r.v);
    CHECK(r.v->matrix()[0][0].is_zero());
  }
  SUBCASE("pointwise Gram consistency b(t) = a(t)^* a(t)") {
    const FnModuleMap a({{PolyFunction::sqrt(t), one}, {t, PolyFunction::sqrt(poly({1.0, 0.0, 1.0}))}});
    const auto m = fn_solve_modularity(a);
    CHECK(m.modular);
    for (double x : chebyshev_grid()) CHECK(((*m.b)(x) - a(x).adjoint() * a(x)).norm() < 1e-14);
  }
}

TEST_CASE("fn_polar_scenarios") {
  const auto scenarios = fn_polar_scenarios();
  REQUIRE(scenarios.size() == 3);
  for (const auto& s : scenarios) {
    INFO(s.name);
    CHECK(s.verdicts.checks.size() >= 6);
    for (const auto& c : s.verdicts.checks) CHECK_MESSAGE(c.passed, c.name);
  }
  // Pointwise Gram identity of scenario (iii).
  const auto& sqrt_case = scenarios[2];
  for (double x : chebyshev_grid()) {
    const Mat ax = sqrt_case.a(x);
    CHECK(std::abs(((*sqrt_case.polar->modularity.b)(x) - ax.adjoint() * ax)(0, 0)) < 1e-15);
  }
}
