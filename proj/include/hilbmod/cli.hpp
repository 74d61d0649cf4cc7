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

// Scenario files, the analyses behind the command line tool, and reports.
//
// A scenario is line oriented; `#` starts a comment. Example:
//
//   scenario demo
//   backend finite
//   algebra 1 2
//   module E rank 2
//   submodule S of E
//     gen 1=1|[1,0;0,0] 2=0|[0,0;0,0]
//   end
//   operator a E -> E
//     1 1 = 2|[1,2i;0,1]
//   end
//   request polar a expect decomposed
//
// Finite elements list one block per summand separated by `|`; a block is
// a complex number or a bracketed matrix `[a,b;c,d]`. Complex numbers are
// `re`, `re+imi` or `re-imi`. Function elements use poly(c0,c1,...),
// sqrt(f), abs(f), mul(f,g), add(f,g), div(f,g) or a bare complex
// constant. Elements contain no whitespace. Missing entries are zero.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hilbmod/algebra.hpp"
#include "hilbmod/fn/module.hpp"

namespace hilbmod::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", " + field + ": " + what), line_(line), field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

enum class Backend { kFinite, kFunction };

/// A finite algebra element or a function on [0, 1].
struct Element {
  std::variant<AlgebraElement, fn::PolyFunction> value;

  friend bool operator==(const Element& a, const Element& b);
};

Complex parse_complex(const std::string& text, int line = 0, const std::string& field = "complex");
Element parse_element(const std::string& text, Backend backend, const AlgebraSpec& algebra, int line = 0,
                      const std::string& field = "element");
std::string format_element(const Element& e);

struct ModuleDecl {
  std::string name;
  int rank = 0;
  friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct SubmoduleDecl {
  std::string name;
  std::string of;
  /// One map per generator, keyed by 1-based coordinate.
  std::vector<std::map<int, Element>> gens;
  friend bool operator==(const SubmoduleDecl&, const SubmoduleDecl&) = default;
};

struct OperatorDecl {
  std::string name;
  std::string domain;
  std::string codomain;
  /// Keyed by 1-based (row, column).
  std::map<std::pair<int, int>, Element> entries;
  friend bool operator==(const OperatorDecl&, const OperatorDecl&) = default;
};

/// modularity, polar, invariants, adjoint, kernel, isometry,
/// partial-isometry, projection, observation, positive (operators);
/// complemented, rank-profile (modules and submodules).
struct Request {
  std::string kind;
  std::string target;
  std::optional<std::string> expect;
  friend bool operator==(const Request&, const Request&) = default;
};

struct Scenario {
  std::string name;
  Backend backend = Backend::kFinite;
  AlgebraSpec algebra;
  std::vector<ModuleDecl> modules;
  std::vector<SubmoduleDecl> submodules;
  std::vector<OperatorDecl> operators;
  std::vector<Request> requests;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParseError for syntax, Error(Shape) for inconsistent shapes or
/// unresolved names.
Scenario parse_scenario(const std::string& text);
/// Canonical text; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& s);

struct RunOptions {
  Tolerance tol;
  int grid = fn::kDefaultGrid;
  /// Skip the remaining requests after the first failure.
  bool fail_fast = false;
};

/// Machine form is the JSON document; the human form is rendered from it.
struct Report {
  nlohmann::ordered_json data;
  int failures = 0;

  bool passed() const { return failures == 0; }
};

enum class Format { kHuman, kMachine };

std::string render(const Report& r, Format f);

/// Runs every request of the scenario.
Report run(const Scenario& s, const RunOptions& opt = {});
/// Runs `kind` on every operator; the scenario's own expectation for that
/// operator, if any, is kept.
Report run_all(const Scenario& s, const std::string& kind, const RunOptions& opt = {});

/// Built-in scenario texts, sorted by name.
const std::vector<std::pair<std::string, std::string>>& gallery_texts();
Report gallery(const RunOptions& opt = {});

struct FuzzOptions {
  std::uint64_t seed = 1;
  int count = 100;
  std::vector<int> algebra{2};
  int rank = 3;
};

/// Random B-linear operators B^rank -> B^rank: polar decomposition and
/// kernel invariants, with b cross-checked against a^* a from the adjoint.
Report fuzz(const FuzzOptions& f, const RunOptions& opt = {});

}  // namespace hilbmod::cli
