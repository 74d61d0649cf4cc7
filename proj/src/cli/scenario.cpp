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

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "hilbmod/cli.hpp"

namespace hilbmod::cli {

namespace {

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') {
    s.remove_prefix(1);
    if (s.empty() || s.front() == '+' || s.front() == '-') return std::nullopt;
  }
  double v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<int> parse_int(const std::string& s) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

// Splits at top-level separators, outside parentheses and brackets.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

Mat parse_block(const std::string& text, int n, int line, const std::string& field) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    if (n != 1) throw Error(ErrorKind::kShape, "line " + std::to_string(line) + ", " + field + ": block of size " + std::to_string(n) + " needs [..]");
    Mat m(1, 1);
    m(0, 0) = parse_complex(text, line, field);
    return m;
  }
  const auto rows = split_top(text.substr(1, text.size() - 2), ';');
  if (static_cast<int>(rows.size()) != n) throw Error(ErrorKind::kShape, "line " + std::to_string(line) + ", " + field + ": expected " + std::to_string(n) + " rows");
  Mat m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto cols = split_top(rows[i], ',');
    if (static_cast<int>(cols.size()) != n) throw Error(ErrorKind::kShape, "line " + std::to_string(line) + ", " + field + ": expected " + std::to_string(n) + " columns");
    for (int j = 0; j < n; ++j) m(i, j) = parse_complex(cols[j], line, field);
  }
  return m;
}

std::string format_block(const Mat& b) {
  if (b.rows() == 1) return format_complex(b(0, 0));
  std::string s = "[";
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (i) s += ";";
    for (Eigen::Index j = 0; j < b.cols(); ++j) s += (j ? "," : "") + format_complex(b(i, j));
  }
  return s + "]";
}

struct FnParser {
  const std::string& s;
  std::size_t at = 0;
  int line;
  const std::string& field;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line, field, what + " at column " + std::to_string(at + 1) + " of '" + s + "'"); }

  std::vector<std::string> raw_args() {
    // After '('; returns top-level arguments up to the matching ')'.
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (; at < s.size(); ++at) {
      const char c = s[at];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) {
          ++at;
          out.push_back(cur);
          return out;
        }
        --depth;
      }
      if (c == ',' && depth == 0) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    fail("unbalanced parenthesis");
  }

  fn::PolyFunction parse(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos) return fn::PolyFunction(parse_complex(text, line, field));
    if (text.back() != ')') throw ParseError(line, field, "trailing characters in '" + text + "'");
    const std::string head = text.substr(0, open);
    FnParser inner{text, open + 1, line, field};
    const auto args = inner.raw_args();
    if (inner.at != text.size()) throw ParseError(line, field, "trailing characters in '" + text + "'");
    auto arity = [&](std::size_t n) {
      if (args.size() != n) throw ParseError(line, field, head + " takes " + std::to_string(n) + " argument(s)");
    };
    if (head == "poly") {
      std::vector<Complex> c;
      for (const auto& a : args) c.push_back(parse_complex(a, line, field));
      return fn::PolyFunction(fn::Polynomial(std::move(c)));
    }
    if (head == "sqrt") {
      arity(1);
      return fn::PolyFunction::sqrt(parse(args[0]));
    }
    if (head == "abs") {
      arity(1);
      return fn::PolyFunction::abs(parse(args[0]));
    }
    if (head == "mul" || head == "add" || head == "div") {
      arity(2);
      const auto f = parse(args[0]);
      const auto g = parse(args[1]);
      if (head == "mul") return f * g;
      if (head == "add") return f + g;
      return fn::PolyFunction::quotient(f, g);
    }
    throw ParseError(line, field, "unknown function '" + head + "'");
  }
};

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

const std::set<std::string>& operator_kinds() {
  static const std::set<std::string> k{"modularity", "polar", "invariants", "adjoint", "kernel", "isometry", "partial-isometry", "projection", "observation", "positive"};
  return k;
}

const std::set<std::string>& module_kinds() {
  static const std::set<std::string> k{"complemented", "rank-profile"};
  return k;
}

[[noreturn]] void shape(int line, const std::string& what) { throw Error(ErrorKind::kShape, "line " + std::to_string(line) + ": " + what); }

}  // namespace

bool operator==(const Element& a, const Element& b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto* x = std::get_if<AlgebraElement>(&a.value)) {
    const auto& y = std::get<AlgebraElement>(b.value);
    if (!(x->spec() == y.spec())) return false;
    for (int k = 0; k < x->spec().num_blocks(); ++k) {
      if (x->block(k) != y.block(k)) return false;
    }
    return true;
  }
  return std::get<fn::PolyFunction>(a.value) == std::get<fn::PolyFunction>(b.value);
}

Complex parse_complex(const std::string& text, int line, const std::string& field) {
  auto bad = [&]() -> ParseError { return ParseError(line, field, "malformed complex literal '" + text + "'"); };
  if (text.empty()) throw bad();
  if (text.back() != 'i') {
    const auto re = parse_double(text);
    if (!re) throw bad();
    return {*re, 0.0};
  }
  const std::string body = text.substr(0, text.size() - 1);
  // The imaginary part starts at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag = [&](std::string_view s) -> double {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    const auto v = parse_double(s);
    if (!v) throw bad();
    return *v;
  };
  if (split == std::string::npos) return {0.0, imag(body)};
  const auto re = parse_double(std::string_view(body).substr(0, split));
  if (!re) throw bad();
  return {*re, imag(std::string_view(body).substr(split))};
}

Element parse_element(const std::string& text, Backend backend, const AlgebraSpec& algebra, int line, const std::string& field) {
  if (backend == Backend::kFunction) return {FnParser{text, 0, line, field}.parse(text)};
  const auto parts = split_top(text, '|');
  if (static_cast<int>(parts.size()) != algebra.num_blocks()) {
    shape(line, field + ": expected " + std::to_string(algebra.num_blocks()) + " block(s) in '" + text + "'");
  }
  std::vector<Mat> blocks;
  for (int k = 0; k < algebra.num_blocks(); ++k) blocks.push_back(parse_block(parts[k], algebra.block_dim(k), line, field));
  return {AlgebraElement(algebra, std::move(blocks))};
}

std::string format_element(const Element& e) {
  if (const auto* f = std::get_if<fn::PolyFunction>(&e.value)) return fn::to_string(*f);
  const auto& x = std::get<AlgebraElement>(e.value);
  std::string s;
  for (int k = 0; k < x.spec().num_blocks(); ++k) s += (k ? "|" : "") + format_block(x.block(k));
  return s;
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  bool have_name = false, have_backend = false, have_algebra = false;
  std::map<std::string, int> module_rank;
  std::set<std::string> names;

  auto declare = [&](const std::string& name) {
    if (!names.insert(name).second) shape(line, "duplicate name '" + name + "'");
  };
  auto need = [&](const std::vector<std::string>& t, std::size_t n, const std::string& usage) {
    if (t.size() != n) throw ParseError(line, t[0], "expected '" + usage + "'");
  };
  auto rank_of = [&](const std::string& name) -> int {
    if (module_rank.count(name)) return module_rank[name];
    for (const auto& sub : s.submodules) {
      if (sub.name == name) return module_rank[sub.of];
    }
    shape(line, "unknown module '" + name + "'");
  };
  auto begin_body = [&]() {
    if (!have_backend) throw ParseError(line, "backend", "backend must precede declarations");
  };

  while (std::getline(in, raw)) {
    ++line;
    const auto t = tokens(strip_comment(raw));
    if (t.empty()) continue;
    const std::string& key = t[0];
    if (key == "scenario") {
      need(t, 2, "scenario <name>");
      if (have_name) throw ParseError(line, key, "scenario named twice");
      s.name = t[1];
      have_name = true;
    } else if (key == "backend") {
      need(t, 2, "backend finite|function");
      if (t[1] == "finite") s.backend = Backend::kFinite;
      else if (t[1] == "function") s.backend = Backend::kFunction;
      else throw ParseError(line, key, "unknown backend '" + t[1] + "'");
      have_backend = true;
    } else if (key == "algebra") {
      begin_body();
      if (have_algebra) throw ParseError(line, key, "algebra given twice");
      have_algebra = true;
      if (s.backend == Backend::kFunction) {
        if (t.size() != 2 || t[1] != "C[0,1]") throw ParseError(line, key, "the function backend takes 'algebra C[0,1]'");
        continue;
      }
      if (t.size() < 2) throw ParseError(line, key, "expected block sizes");
      std::vector<int> dims;
      for (std::size_t k = 1; k < t.size(); ++k) {
        const auto d = parse_int(t[k]);
        if (!d || *d < 1) throw ParseError(line, key, "bad block size '" + t[k] + "'");
        dims.push_back(*d);
      }
      s.algebra = AlgebraSpec(dims);
    } else if (key == "module") {
      begin_body();
      need(t, 4, "module <name> rank <n>");
      if (t[2] != "rank") throw ParseError(line, key, "expected 'rank'");
      const auto r = parse_int(t[3]);
      if (!r || *r < 1) throw ParseError(line, "rank", "bad rank '" + t[3] + "'");
      declare(t[1]);
      module_rank[t[1]] = *r;
      s.modules.push_back({t[1], *r});
    } else if (key == "submodule") {
      begin_body();
      need(t, 4, "submodule <name> of <module>");
      if (t[2] != "of") throw ParseError(line, key, "expected 'of'");
      if (!module_rank.count(t[3])) shape(line, "unknown module '" + t[3] + "'");
      declare(t[1]);
      SubmoduleDecl sub{t[1], t[3], {}};
      const int n = module_rank[t[3]];
      bool closed = false;
      while (std::getline(in, raw)) {
        ++line;
        const auto g = tokens(strip_comment(raw));
        if (g.empty()) continue;
        if (g[0] == "end" && g.size() == 1) {
          closed = true;
          break;
        }
        if (g[0] != "gen") throw ParseError(line, "gen", "expected 'gen' or 'end'");
        std::map<int, Element> gen;
        for (std::size_t k = 1; k < g.size(); ++k) {
          const auto eq = g[k].find('=');
          if (eq == std::string::npos) throw ParseError(line, "gen", "expected <index>=<element> in '" + g[k] + "'");
          const auto i = parse_int(g[k].substr(0, eq));
          if (!i) throw ParseError(line, "gen", "bad index in '" + g[k] + "'");
          if (*i < 1 || *i > n) shape(line, "index " + std::to_string(*i) + " outside 1.." + std::to_string(n));
          if (gen.count(*i)) shape(line, "index " + std::to_string(*i) + " given twice");
          gen.emplace(*i, parse_element(g[k].substr(eq + 1), s.backend, s.algebra, line, "gen " + std::to_string(*i)));
        }
        sub.gens.push_back(std::move(gen));
      }
      if (!closed) throw ParseError(line, "submodule", "missing 'end'");
      if (sub.gens.empty()) shape(line, "submodule '" + sub.name + "' has no generators");
      s.submodules.push_back(std::move(sub));
    } else if (key == "operator") {
      begin_body();
      need(t, 5, "operator <name> <domain> -> <codomain>");
      if (t[3] != "->") throw ParseError(line, key, "expected '->'");
      declare(t[1]);
      OperatorDecl op{t[1], t[2], t[4], {}};
      const int cols = rank_of(t[2]);
      const int rows = rank_of(t[4]);
      bool closed = false;
      while (std::getline(in, raw)) {
        ++line;
        const auto e = tokens(strip_comment(raw));
        if (e.empty()) continue;
        if (e[0] == "end" && e.size() == 1) {
          closed = true;
          break;
        }
        if (e.size() != 4 || e[2] != "=") throw ParseError(line, "entry", "expected '<row> <col> = <element>'");
        const auto i = parse_int(e[0]);
        const auto j = parse_int(e[1]);
        if (!i || !j) throw ParseError(line, "entry", "bad index");
        if (*i < 1 || *i > rows || *j < 1 || *j > cols) shape(line, "entry (" + e[0] + ", " + e[1] + ") outside " + std::to_string(rows) + " x " + std::to_string(cols));
        if (op.entries.count({*i, *j})) shape(line, "entry (" + e[0] + ", " + e[1] + ") given twice");
        op.entries.emplace(std::pair{*i, *j}, parse_element(e[3], s.backend, s.algebra, line, "entry " + e[0] + " " + e[1]));
      }
      if (!closed) throw ParseError(line, "operator", "missing 'end'");
      s.operators.push_back(std::move(op));
    } else if (key == "request") {
      if (t.size() != 3 && !(t.size() == 5 && t[3] == "expect")) throw ParseError(line, key, "expected 'request <kind> <target> [expect <verdict>]'");
      Request r{t[1], t[2], {}};
      if (t.size() == 5) r.expect = t[4];
      if (!operator_kinds().count(r.kind) && !module_kinds().count(r.kind)) throw ParseError(line, "kind", "unknown request kind '" + r.kind + "'");
      s.requests.push_back(std::move(r));
    } else {
      throw ParseError(line, key, "unknown keyword");
    }
  }
  if (!have_name) throw ParseError(line, "scenario", "missing scenario name");
  if (!have_backend) throw ParseError(line, "backend", "missing backend");
  if (s.backend == Backend::kFinite && !have_algebra) throw ParseError(line, "algebra", "missing algebra");

  // Targets are resolved after the whole file is read.
  for (const auto& r : s.requests) {
    const bool is_op = std::any_of(s.operators.begin(), s.operators.end(), [&](const auto& o) { return o.name == r.target; });
    const bool is_mod = names.count(r.target) && !is_op;
    if (operator_kinds().count(r.kind) && !is_op) shape(line, "request " + r.kind + ": unknown operator '" + r.target + "'");
    if (module_kinds().count(r.kind) && !is_mod) shape(line, "request " + r.kind + ": unknown module '" + r.target + "'");
  }
  return s;
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "scenario " << s.name << "\n";
  if (s.backend == Backend::kFinite) {
    out << "backend finite\nalgebra";
    for (int d : s.algebra.block_dims()) out << " " << d;
    out << "\n";
  } else {
    out << "backend function\nalgebra C[0,1]\n";
  }
  for (const auto& m : s.modules) out << "module " << m.name << " rank " << m.rank << "\n";
  for (const auto& sub : s.submodules) {
    out << "submodule " << sub.name << " of " << sub.of << "\n";
    for (const auto& g : sub.gens) {
      out << "  gen";
      for (const auto& [i, e] : g) out << " " << i << "=" << format_element(e);
      out << "\n";
    }
    out << "end\n";
  }
  for (const auto& op : s.operators) {
    out << "operator " << op.name << " " << op.domain << " -> " << op.codomain << "\n";
    for (const auto& [ij, e] : op.entries) out << "  " << ij.first << " " << ij.second << " = " << format_element(e) << "\n";
    out << "end\n";
  }
  for (const auto& r : s.requests) {
    out << "request " << r.kind << " " << r.target;
    if (r.expect) out << " expect " << *r.expect;
    out << "\n";
  }
  return out.str();
}

}  // namespace hilbmod::cli
