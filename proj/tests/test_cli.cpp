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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hilbmod/cli.hpp"

using namespace hilbmod;
using namespace hilbmod::cli;

namespace {

const char* kMinimal = R"(scenario minimal
backend finite
algebra 1
module E rank 2
operator a E -> E
  1 2 = 1
end
request polar a
)";

std::string with_entry(const std::string& entry) {
  return "scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\noperator a E -> E\n  1 1 = " + entry + "\nend\n";
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const nlohmann::ordered_json& request(const Report& r, std::size_t i) { return r.data["requests"][i]; }

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-2") == Complex(-2, 0));
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("1-2i") == Complex(1, -2));
  CHECK(parse_complex("-3i") == Complex(0, -3));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("1e-3+2.5e+2i") == Complex(1e-3, 250));
  CHECK(parse_complex("2.5e-3i") == Complex(0, 2.5e-3));
  for (const char* bad : {"", "1+2j", "1++2i", "+-1", "1+-2i", "abc", "1 + 2i", "2ii", "1+2i3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_complex(bad), ParseError);
  }
  for (Complex z : {Complex(0.1, -0.3), Complex(-1e-300, 0), Complex(0, 1.0 / 3.0), Complex(123456.789, 1e20)}) {
    CHECK(parse_complex(format_complex(z)) == z);
  }
}

TEST_CASE("parse_scenario: minimal finite scenario") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.name == "minimal");
  CHECK(s.backend == Backend::kFinite);
  CHECK(s.algebra == AlgebraSpec({1}));
  REQUIRE(s.modules.size() == 1);
  CHECK(s.modules[0].rank == 2);
  REQUIRE(s.operators.size() == 1);
  CHECK(s.operators[0].entries.size() == 1);
  REQUIRE(s.requests.size() == 1);
  CHECK(s.requests[0].kind == "polar");
  CHECK_FALSE(s.requests[0].expect);
}

TEST_CASE("parse_scenario: polynomial (0,1) is t") {
  const Scenario s = parse_scenario(R"(scenario t
backend function
module E rank 1
operator m E -> E
  1 1 = poly(0,1)
end
)");
  CHECK(s.backend == Backend::kFunction);
  const auto& f = std::get<fn::PolyFunction>(s.operators[0].entries.at({1, 1}).value);
  CHECK(f == fn::PolyFunction(fn::Polynomial::t()));
}

TEST_CASE("parse_scenario: function elements") {
  const AlgebraSpec none;
  auto f = [&](const std::string& s) { return std::get<fn::PolyFunction>(parse_element(s, Backend::kFunction, none).value); };
  CHECK(f("2") == fn::PolyFunction(2.0));
  CHECK(f("sqrt(poly(0,1))").kind() == fn::PolyFunction::Kind::kSqrt);
  CHECK(f("mul(sqrt(poly(0,1)),sqrt(poly(0,1)))") == fn::PolyFunction(fn::Polynomial::t()));
  CHECK(f("div(poly(1),poly(0,1))")(0.5) == Complex(2, 0));
  CHECK(f("div(poly(1),poly(0,1))")(0.0) == Complex(0, 0));
  CHECK_THROWS_AS(f("sqrt(poly(0,1)"), ParseError);
  CHECK_THROWS_AS(f("sqrt(poly(1),poly(2))"), ParseError);
  CHECK_THROWS_AS(f("cos(poly(1))"), ParseError);
  CHECK_THROWS_AS(f("poly(0,1)x"), ParseError);
  // sqrt of a polynomial negative somewhere on [0, 1].
  CHECK_THROWS_AS(f("sqrt(poly(-1,1))"), Error);
}

TEST_CASE("parse_scenario: malformed complex literal names the field") {
  try {
    parse_scenario(with_entry("1+2j"));
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.field() == "entry 1 1");
    CHECK(std::string(e.what()).find("1+2j") != std::string::npos);
  }
  try {
    parse_scenario("scenario x\nbackend finite\nalgebra 2\nmodule E rank 1\nsubmodule S of E\n  gen 1=[1,0;0,x]\nend\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.field() == "gen 1");
  }
}

TEST_CASE("parse_scenario: errors") {
  auto parse_error = [](const std::string& text) { CHECK_THROWS_AS(parse_scenario(text), ParseError); };
  auto shape_error = [](const std::string& text) {
    try {
      parse_scenario(text);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kShape);
    }
  };
  parse_error("backend finite\nalgebra 1\n");
  parse_error("scenario x\nalgebra 1\n");
  parse_error("scenario x\nbackend quantum\n");
  parse_error("scenario x\nbackend finite\nmodule E rank 1\n");
  parse_error("scenario x\nbackend finite\nalgebra 0\n");
  parse_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank zero\n");
  parse_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\noperator a E -> E\n  1 1 = 1\n");
  parse_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\nrequest frobnicate E\n");
  parse_error("scenario x\nbackend finite\nalgebra 1\nwidget\n");
  parse_error("scenario x\nbackend function\nalgebra 1\n");
  shape_error(with_entry("[1,0;0,1]"));
  shape_error("scenario x\nbackend finite\nalgebra 1 2\nmodule E rank 1\noperator a E -> E\n  1 1 = 1\nend\n");
  shape_error("scenario x\nbackend finite\nalgebra 2\nmodule E rank 1\noperator a E -> E\n  1 1 = [1,0;0]\nend\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\noperator a E -> E\n  2 1 = 1\nend\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\noperator a E -> F\nend\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\nmodule E rank 2\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\nrequest polar E\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\nrequest complemented b\n");
  shape_error("scenario x\nbackend finite\nalgebra 1\nmodule E rank 1\nsubmodule S of E\nend\n");
}

TEST_CASE("emit_scenario round-trips") {
  SUBCASE("gallery") {
    for (const auto& [name, text] : gallery_texts()) {
      CAPTURE(name);
      const Scenario s = parse_scenario(text);
      const std::string emitted = emit_scenario(s);
      CHECK(parse_scenario(emitted) == s);
      CHECK(emit_scenario(parse_scenario(emitted)) == emitted);
    }
  }
  SUBCASE("comments, interleaving and awkward literals") {
    const Scenario s = parse_scenario(R"(# leading comment
scenario odd   # trailing comment
backend finite
algebra 2 1
module E rank 2
operator a E -> E
  2 1 = [0.1,-1e-20i;1+1i,3]|-0.5
end
request polar a expect decomposed
submodule S of E
  gen 2=[1,0;0,1]|1
end
request complemented S
)");
    const Scenario back = parse_scenario(emit_scenario(s));
    CHECK(back == s);
    CHECK(std::get<AlgebraElement>(back.operators[0].entries.at({2, 1}).value).block(0)(0, 1) == Complex(0, -1e-20));
  }
  SUBCASE("function backend") {
    const Scenario s = parse_scenario(R"(scenario f
backend function
module E rank 2
operator a E -> E
  1 1 = add(sqrt(poly(0,1)),poly(1,0,0.5i))
  2 1 = div(poly(1),abs(poly(-0.5,1)))
end
)");
    CHECK(parse_scenario(emit_scenario(s)) == s);
  }
  SUBCASE("inequality is detected") {
    Scenario s = parse_scenario(kMinimal);
    Scenario t = s;
    t.requests[0].expect = "decomposed";
    CHECK_FALSE(s == t);
  }
}

TEST_CASE("run: zero operator gives v = 0") {
  const Report finite = run(parse_scenario(read(HILBMOD_SCENARIO_DIR "/zero_operator.scn")));
  CHECK(finite.passed());
  CHECK(request(finite, 1)["verdict"] == "decomposed");
  CHECK(request(finite, 1)["details"]["v_zero"] == true);
  CHECK(request(finite, 1)["details"]["v_norm"] == 0.0);

  const Report function = run(parse_scenario(read(HILBMOD_SCENARIO_DIR "/function_rank2.scn")));
  CHECK(function.passed());
  const auto& z = request(function, 4);
  CHECK(z["target"] == "z");
  CHECK(z["details"]["v_zero"] == true);
}

TEST_CASE("run: shipped scenarios pass") {
  for (const char* name : {"zero_operator.scn", "mixed_blocks.scn", "function_rank2.scn"}) {
    CAPTURE(name);
    const Report r = run(parse_scenario(read(std::string(HILBMOD_SCENARIO_DIR "/") + name)));
    CHECK(r.passed());
  }
}

TEST_CASE("run: expectations and refusals") {
  const std::string base = R"(scenario e
backend function
module E rank 1
operator a E -> E
  1 1 = sqrt(poly(0,1))
end
)";
  SUBCASE("expected refusal is not a failure") {
    CHECK(run(parse_scenario(base + "request polar a expect EaNotComplemented\n")).passed());
  }
  SUBCASE("unexpected refusal fails") {
    const Report r = run(parse_scenario(base + "request polar a\n"));
    CHECK(r.failures == 1);
    CHECK(request(r, 0)["status"] == "fail");
  }
  SUBCASE("wrong expectation fails") {
    CHECK_FALSE(run(parse_scenario(base + "request polar a expect decomposed\n")).passed());
  }
  SUBCASE("unsupported request is an error verdict") {
    const Report r = run(parse_scenario(base + "request isometry a\n"));
    CHECK(request(r, 0)["verdict"] == "error");
    CHECK(request(r, 0).contains("error"));
    CHECK_FALSE(r.passed());
  }
  SUBCASE("fail-fast stops at the first failure") {
    RunOptions opt;
    opt.fail_fast = true;
    const Report r = run(parse_scenario(base + "request polar a\nrequest modularity a\n"), opt);
    CHECK(r.data["requests"].size() == 1);
    CHECK(run(parse_scenario(base + "request polar a\nrequest modularity a\n")).data["requests"].size() == 2);
  }
  SUBCASE("predicate verdicts") {
    const Report r = run(parse_scenario(R"(scenario p
backend finite
algebra 1
module E rank 2
operator n E -> E
  1 2 = 2
end
request isometry n expect false
request partial-isometry n expect false
request projection n expect false
request positive n expect not-positive
request kernel n expect generated
request observation n expect RangeNotDense
)"));
    CHECK(r.passed());
  }
}

TEST_CASE("run_all applies one analysis to every operator") {
  const Scenario s = parse_scenario(read(HILBMOD_SCENARIO_DIR "/function_rank2.scn"));
  const Report r = run_all(s, "polar");
  REQUIRE(r.data["requests"].size() == 2);
  CHECK(request(r, 0)["expected"] == "EaNotComplemented");
  CHECK(r.passed());
  CHECK(run_all(s, "invariants").passed());
}

TEST_CASE("gallery") {
  const Report g = gallery();
  CHECK(g.passed());
  CHECK(g.data["gallery"].size() == gallery_texts().size());
  bool found = false;
  for (const auto& s : g.data["gallery"]) {
    if (s["scenario"] != "strictly-positive") continue;
    found = true;
    for (const auto& v : s["verdicts"]) {
      if (v["name"] == "E_b != (ker b)^perp") CHECK(v["passed"] == true);
    }
    CHECK(s["requests"][0]["details"]["Eb_equals_kernel_perp"] == false);
  }
  CHECK(found);
}

TEST_CASE("fuzz") {
  FuzzOptions f;
  f.seed = 1;
  f.count = 100;
  f.algebra = {2};
  f.rank = 3;
  const Report r = fuzz(f);
  CHECK(r.passed());
  CHECK(r.data["summary"]["passed"] == 100);
  f.count = -1;
  CHECK_THROWS_AS(fuzz(f), Error);
}

TEST_CASE("determinism") {
  CHECK(render(gallery(), Format::kMachine) == render(gallery(), Format::kMachine));
  FuzzOptions f;
  f.seed = 7;
  f.count = 50;
  CHECK(render(fuzz(f), Format::kMachine) == render(fuzz(f), Format::kMachine));
  f.seed = 8;
  const std::string other = render(fuzz(f), Format::kMachine);
  f.seed = 7;
  CHECK(render(fuzz(f), Format::kMachine) != other);
}

TEST_CASE("render") {
  const Report r = run(parse_scenario(kMinimal));
  const std::string human = render(r, Format::kHuman);
  CHECK(human.find("polar a: decomposed") != std::string::npos);
  CHECK(human.find("summary: 1/1 passed") != std::string::npos);
  const auto back = nlohmann::ordered_json::parse(render(r, Format::kMachine));
  CHECK(back == r.data);
}
