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
#include "support.hpp"

using namespace hilbmod;
using hilbmod::test::cmat;
using hilbmod::test::scalar_map;

namespace {

const Tolerance tol;

}  // namespace

TEST_CASE("construction enforces B-linearity and containment") {
  const FreeModule e(test::m2(), 1);
  const Submodule whole = Submodule::whole(e);
  // Transposition of a 2x2 matrix is C-linear but not right M_2-linear.
  Mat transpose = Mat::Zero(4, 4);
  transpose(0, 0) = transpose(3, 3) = 1.0;
  transpose(1, 2) = transpose(2, 1) = 1.0;
  CHECK_THROWS_AS(ModuleMap(whole, whole, transpose), Error);
  const auto l = ModuleMap(whole, whole, Mat::Identity(4, 4));
  CHECK(l.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(ModuleMap(test::coordinate_span(2, {0}), test::coordinate_span(2, {0}), cmat({{0, 0}, {1, 0}})), Error);
}

TEST_CASE("apply, compose, restrict, corestrict") {
  Rng rng(31);
  const FreeModule e(test::c_plus_m2(), 2);
  const FreeModule f(test::c_plus_m2(), 3);
  const auto m = random_operator(e, f, OperatorShape::kGeneric, rng);

  SUBCASE("identity is neutral") {
    CHECK(approx_equal(compose(ModuleMap::identity(m.codomain()), m), m, Tolerance(1e-14)));
    CHECK(approx_equal(compose(m, ModuleMap::identity(m.domain())), m, Tolerance(1e-14)));
    CHECK_THROWS_AS(compose(m, m), Error);
  }
  SUBCASE("apply is B-linear") {
    const auto x = ModuleVector::from_flat(e, rng.matrix(e.dim(), 1).col(0));
    const auto u = random_element(e.algebra(), rng);
    CHECK((apply(m, x * u).flat() - (apply(m, x) * u).flat()).norm() < 1e-12);
  }
  SUBCASE("corestriction to the range closure has full range") {
    const auto low = random_operator(e, f, OperatorShape::kLowRank, rng);
    const auto range = range_closure(low);
    const auto c = corestrict(low, range);
    CHECK(submodule_equal(range_closure(c), c.codomain()));
    CHECK_THROWS_AS(corestrict(low, orthocomplement(range)), Error);
  }
  SUBCASE("restrict then apply agrees with apply on the submodule") {
    const auto s = random_submodule(e, 1, rng);
    const auto r = restrict(m, s);
    for (int j = 0; j < s.dim(); ++j) {
      CHECK((apply(r, s.vector(j)).flat() - apply(m, s.vector(j)).flat()).norm() < 1e-12);
    }
  }
}

TEST_CASE("kernel and range_closure") {
  const auto id = scalar_map(Mat::Identity(2, 2));
  CHECK(kernel(id).is_zero());
  CHECK(range_closure(id).is_whole());

  const auto zero = scalar_map(Mat::Zero(2, 2));
  CHECK(kernel(zero).is_whole());
  CHECK(range_closure(zero).is_zero());

  const auto d = scalar_map(cmat({{1, 0}, {0, 0}}));
  CHECK(submodule_equal(kernel(d), test::coordinate_span(2, {1})));
  CHECK(submodule_equal(range_closure(d), test::coordinate_span(2, {0})));

  SUBCASE("kernel is the complement of the adjoint's range") {
    Rng rng(32);
    const FreeModule e(test::m2(), 3);
    const FreeModule f(test::m2(), 2);
    for (int trial = 0; trial < 15; ++trial) {
      const auto m = random_operator(e, f, trial, rng);
      const auto adj = try_adjoint(m);
      REQUIRE(adj.ok());
      CHECK(submodule_equal(kernel(m), orthocomplement(range_closure(*adj.adjoint))));
    }
  }
}

TEST_CASE("try_adjoint") {
  SUBCASE("unitary: adjoint is the inverse") {
    Rng rng(33);
    const FreeModule e(test::c_plus_m2(), 2);
    const auto u = random_unitary(e, rng);
    const auto adj = try_adjoint(u);
    REQUIRE(adj.ok());
    CHECK((adj.adjoint->matrix() * u.matrix() - Mat::Identity(e.dim(), e.dim())).norm() < 1e-12);
  }
  SUBCASE("[[0,1],[0,0]] over C") {
    const auto adj = try_adjoint(scalar_map(cmat({{0, 1}, {0, 0}})));
    REQUIRE(adj.ok());
    CHECK(test::dist(adj.adjoint->matrix(), cmat({{0, 0}, {1, 0}})) < 1e-14);
  }
  SUBCASE("random over M_2 against the trace-pairing transpose") {
    Rng rng(34);
    const FreeModule e(test::m2(), 2);
    const FreeModule f(test::m2(), 3);
    for (int trial = 0; trial < 15; ++trial) {
      const auto m = random_operator(e, f, trial, rng);
      const auto adj = try_adjoint(m);
      REQUIRE(adj.ok());
      CHECK(test::dist(adj.adjoint->matrix(), m.matrix().adjoint()) < 1e-12);
      // B-valued Gram identity on basis pairs.
      for (int i = 0; i < e.dim(); i += 3) {
        for (int j = 0; j < f.dim(); j += 5) {
          const Vec x = Mat::Identity(e.dim(), e.dim()).col(i);
          const Vec y = Mat::Identity(f.dim(), f.dim()).col(j);
          CHECK(approx_equal(inner_product(f, m.matrix() * x, y), inner_product(e, x, adj.adjoint->matrix() * y), Tolerance(1e-12)));
        }
      }
    }
  }
}

TEST_CASE("is_isometry") {
  CHECK(is_isometry(scalar_map(Mat::Identity(2, 2)), tol));
  CHECK_FALSE(is_isometry(scalar_map(2.0 * Mat::Identity(2, 2)), tol));
  Rng rng(35);
  const FreeModule e(test::c_plus_m2(), 3);
  const auto s = random_submodule(e, 2, rng);
  CHECK(is_isometry(ModuleMap::inclusion(s, Submodule::whole(e)), tol));
  CHECK(is_isometry(random_isometry(FreeModule(test::c_plus_m2(), 2), e, rng), tol));
}

TEST_CASE("is_coisometry") {
  CHECK(is_coisometry(scalar_map(Mat::Identity(2, 2)), tol));
  const auto e1 = test::coordinate_span(2, {0});
  const auto whole = Submodule::whole(FreeModule(test::scalars(), 2));
  CHECK(is_coisometry(ModuleMap(whole, e1, cmat({{1, 0}, {0, 0}})), tol));
  // Surjective onto span{e_1} but of norm 2.
  CHECK_FALSE(is_coisometry(ModuleMap(whole, e1, cmat({{2, 0}, {0, 0}})), tol));
  // Contractive and isometric on the support, but not onto B^2.
  CHECK_FALSE(is_coisometry(scalar_map(cmat({{1, 0}, {0, 0}})), tol));
}

TEST_CASE("is_partial_isometry") {
  Rng rng(36);
  const FreeModule e(test::m2(), 2);
  const FreeModule f(test::m2(), 3);
  CHECK(is_partial_isometry(random_isometry(e, f, rng), tol));
  // Oracle m m^+ m = m through try_adjoint.
  const auto m = scalar_map(cmat({{0, 1}, {0, 0}}));
  const auto adj = try_adjoint(m);
  REQUIRE(adj.ok());
  CHECK(test::dist(m.matrix() * adj.adjoint->matrix() * m.matrix(), m.matrix()) < 1e-14);
  CHECK(is_partial_isometry(m, tol));
  CHECK_FALSE(is_partial_isometry(scalar_map(cmat({{0, 2}, {0, 0}})), tol));
  CHECK(is_partial_isometry(scalar_map(Mat::Zero(2, 3)), tol));
}

TEST_CASE("initial_projection") {
  const auto id = scalar_map(Mat::Identity(2, 2));
  CHECK(test::dist(initial_projection(id).matrix(), Mat::Identity(2, 2)) < 1e-14);
  CHECK(test::dist(initial_projection(scalar_map(cmat({{0, 1}, {0, 0}}))).matrix(), cmat({{0, 0}, {0, 1}})) < 1e-14);
  CHECK(initial_projection(scalar_map(Mat::Zero(2, 2))).matrix().norm() == 0.0);
  CHECK_THROWS_AS(initial_projection(scalar_map(cmat({{0, 2}, {0, 0}}))), Error);

  Rng rng(37);
  const FreeModule e(test::c_plus_m2(), 3);
  const FreeModule f(test::c_plus_m2(), 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto v = compose(random_isometry(e, f, rng), random_projection(e, rng));
    const auto pi = initial_projection(v);
    CHECK(is_projection_gram(pi, tol));
    CHECK(approx_equal(compose(v, pi), v, tol));
  }
}

TEST_CASE("is_projection_gram") {
  CHECK(is_projection_gram(scalar_map(Mat::Identity(2, 2)), tol));
  CHECK(is_projection_gram(scalar_map(cmat({{1, 0}, {0, 0}})), tol));
  // Idempotent but not Hermitian: <e_2, p e_1> = 0 while <p e_2, p e_1> = 1.
  const auto p = scalar_map(cmat({{1, 1}, {0, 0}}));
  CHECK(test::dist(p.matrix() * p.matrix(), p.matrix()) == 0.0);
  CHECK_FALSE(is_projection_gram(p, tol));
  CHECK_THROWS_AS(is_projection_gram(scalar_map(Mat::Identity(2, 3))), Error);

  Rng rng(38);
  const FreeModule e(test::m2(), 3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = random_projection(e, rng);
    REQUIRE(is_projection_gram(q, tol));
    const auto adj = try_adjoint(q);
    REQUIRE(adj.ok());
    CHECK(approx_equal(*adj.adjoint, q, tol));
    CHECK(approx_equal(compose(q, q), q, tol));
  }
}

TEST_CASE("partial isometries agree with the classical criterion") {
  Rng rng(39);
  const FreeModule e(test::c_plus_m2(), 2);
  const FreeModule f(test::c_plus_m2(), 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = compose(random_isometry(e, f, rng), random_projection(e, rng));
    REQUIRE(is_partial_isometry(v, tol));
    const auto adj = try_adjoint(v);
    REQUIRE(adj.ok());
    CHECK(test::dist(v.matrix() * adj.adjoint->matrix() * v.matrix(), v.matrix()) < 1e-10);
    CHECK_FALSE(is_partial_isometry(v * 1.01, tol));
  }
}
