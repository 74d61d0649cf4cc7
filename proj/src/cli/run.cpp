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
#include <sstream>

#include "hilbmod/cli.hpp"
#include "hilbmod/fn/polar.hpp"
#include "hilbmod/modular_polar.hpp"
#include "hilbmod/random.hpp"

namespace hilbmod::cli {

using nlohmann::ordered_json;

namespace {

// Oracle agreement demanded of every fuzz case.
constexpr double kOracleTol = 1e-8;

struct Outcome {
  std::string verdict;
  bool refusal = false;
  CheckRecord checks;
  ordered_json details = ordered_json::object();
  /// The verdict already summarizes the checks.
  bool verdict_from_checks = false;
};

ordered_json to_json(const CheckRecord& r) {
  ordered_json a = ordered_json::array();
  for (const auto& c : r.checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
  return a;
}

ordered_json to_json(const std::vector<fn::RealRoot>& roots) {
  ordered_json a = ordered_json::array();
  for (const auto& r : roots) a.push_back({{"t", r.t}, {"lo", r.lo}, {"hi", r.hi}, {"multiplicity", r.multiplicity}, {"exact", r.lo == r.hi}});
  return a;
}

ordered_json to_json(const fn::FnMatrix& m) {
  ordered_json a = ordered_json::array();
  for (const auto& row : m) {
    ordered_json r = ordered_json::array();
    for (const auto& f : row) r.push_back(fn::to_string(f));
    a.push_back(std::move(r));
  }
  return a;
}

const char* truth(bool b) { return b ? "true" : "false"; }

// ---- finite backend ----

class FiniteWorld {
 public:
  FiniteWorld(const Scenario& s, Tolerance tol) {
    for (const auto& m : s.modules) modules_.emplace(m.name, Submodule::whole(FreeModule(s.algebra, m.rank)));
    for (const auto& sub : s.submodules) {
      const FreeModule f = modules_.at(sub.of).ambient();
      std::vector<ModuleVector> gens;
      for (const auto& g : sub.gens) {
        std::vector<AlgebraElement> e(f.rank(), AlgebraElement(s.algebra));
        for (const auto& [i, x] : g) e[i - 1] = std::get<AlgebraElement>(x.value);
        gens.emplace_back(f, std::move(e));
      }
      modules_.emplace(sub.name, submodule_from_generators(f, gens, tol));
    }
    for (const auto& op : s.operators) {
      const Submodule& dom = modules_.at(op.domain);
      const Submodule& cod = modules_.at(op.codomain);
      AlgebraMatrix t(cod.ambient().rank(), std::vector<AlgebraElement>(dom.ambient().rank(), AlgebraElement(s.algebra)));
      for (const auto& [ij, x] : op.entries) t[ij.first - 1][ij.second - 1] = std::get<AlgebraElement>(x.value);
      ops_.emplace(op.name, ModuleMap(dom, cod, cod.ambient().left_matrix(dom.ambient(), t), tol));
    }
  }

  const Submodule& module(const std::string& n) const { return modules_.at(n); }
  const ModuleMap& op(const std::string& n) const { return ops_.at(n); }

 private:
  std::map<std::string, Submodule> modules_;
  std::map<std::string, ModuleMap> ops_;
};

Outcome finite_request(const FiniteWorld& w, const Request& r, Tolerance tol) {
  Outcome o;
  const std::string& k = r.kind;
  if (k == "complemented") {
    const Submodule& s = w.module(r.target);
    o.verdict = is_complemented(s, tol) ? "complemented" : "not-complemented";
    o.details["dim"] = s.dim();
    return o;
  }
  if (k == "rank-profile") {
    o.verdict = "constant";
    o.details["dim"] = w.module(r.target).dim();
    return o;
  }
  const ModuleMap& a = w.op(r.target);
  if (k == "modularity") {
    const auto out = solve_modularity(a, tol);
    if (const auto* c = std::get_if<ModularityCertificate>(&out)) {
      o.verdict = "modular";
      o.details["residual"] = c->residual;
      o.checks.add("b self-adjoint", c->self_adjoint);
      o.checks.add("b positive", c->positive);
    } else {
      const auto& n = std::get<NotModular>(out);
      o.verdict = "not-modular";
      o.refusal = true;
      o.details["residual"] = n.residual;
      o.details["worst"] = {n.worst_i, n.worst_j};
    }
  } else if (k == "polar") {
    const PolarReport p = polar_decompose(a, tol);
    o.verdict = p.refusal ? to_string(*p.refusal) : "decomposed";
    o.refusal = p.refusal.has_value();
    o.checks = p.checks;
    o.details["modular"] = p.modular();
    o.details["domain_dim"] = a.domain().dim();
    if (p.Ea) o.details["Ea_dim"] = p.Ea->dim();
    o.details["Ea_complemented"] = p.Ea_complemented;
    if (p.kernel_perp_equals_Ea) o.details["kernel_perp_equals_Ea"] = *p.kernel_perp_equals_Ea;
    if (p.v) {
      o.details["v_norm"] = p.v->norm();
      o.details["v_zero"] = p.v->matrix().norm() == 0.0;
    }
  } else if (k == "invariants") {
    o.checks = kernel_invariants(a, tol);
    o.verdict = o.checks.all_passed() ? "pass" : "fail";
    o.verdict_from_checks = true;
  } else if (k == "adjoint") {
    const auto out = try_adjoint(a, tol);
    o.verdict = out.ok() ? "adjointable" : "not-adjointable";
    o.refusal = !out.ok();
    if (out.refusal) o.details["residual"] = out.refusal->residual;
  } else if (k == "kernel") {
    const Submodule ker = kernel(a, tol);
    o.verdict = ker.is_zero() ? "zero" : ker.dim() == a.domain().dim() ? "everything" : "generated";
    o.details["dim"] = ker.dim();
  } else if (k == "isometry") {
    o.verdict = truth(is_isometry(a, tol));
  } else if (k == "partial-isometry") {
    o.verdict = truth(is_partial_isometry(a, tol));
  } else if (k == "projection") {
    o.verdict = truth(is_projection_gram(a, tol));
  } else if (k == "observation") {
    const auto out = observation_isometry(a, tol);
    o.verdict = out.refusal ? to_string(*out.refusal) : "isometry";
    o.refusal = out.refusal.has_value();
    o.checks = out.checks;
    o.details["w_adjointable"] = out.w_adjointable;
    o.details["Ea_complemented"] = out.Ea_complemented;
  } else if (k == "positive") {
    if (!(a.domain().ambient() == a.codomain().ambient()) || !submodule_equal(a.domain(), a.codomain(), tol)) {
      throw Error(ErrorKind::kModuleMismatch, "positivity needs an endomorphism");
    }
    const Mat& q = a.domain().basis();
    const Mat h = q.adjoint() * a.matrix() * q;
    const double scale = std::max(h.norm(), 1e-300);
    const bool hermitian = tol.close((h - h.adjoint()).norm(), scale);
    double lo = 0;
    if (h.size()) {
      Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
      lo = es.eigenvalues().minCoeff();
    }
    o.details["min_eigenvalue"] = lo;
    if (!hermitian || lo < -tol.eps() * scale) o.verdict = "not-positive";
    else o.verdict = h.size() && lo > tol.eps() * scale ? "strictly-positive" : "positive";
  }
  return o;
}

// ---- function backend ----

class FnWorld {
 public:
  explicit FnWorld(const Scenario& s) {
    for (const auto& m : s.modules) {
      modules_.emplace(m.name, fn::FnSubmodule::whole(m.rank));
      rank_[m.name] = m.rank;
    }
    for (const auto& sub : s.submodules) {
      const int n = rank_.at(sub.of);
      fn::FnMatrix g(n, std::vector<fn::PolyFunction>(sub.gens.size()));
      for (std::size_t j = 0; j < sub.gens.size(); ++j) {
        for (const auto& [i, x] : sub.gens[j]) g[i - 1][j] = std::get<fn::PolyFunction>(x.value);
      }
      modules_.emplace(sub.name, fn::FnSubmodule(n, std::move(g)));
    }
    for (const auto& op : s.operators) {
      const auto& dom = modules_.at(op.domain);
      const auto& cod = modules_.at(op.codomain);
      fn::FnMatrix m(cod.ambient_rank(), std::vector<fn::PolyFunction>(dom.ambient_rank()));
      for (const auto& [ij, x] : op.entries) m[ij.first - 1][ij.second - 1] = std::get<fn::PolyFunction>(x.value);
      ops_.emplace(op.name, fn::FnModuleMap(std::move(m), dom, cod));
    }
  }

  const fn::FnSubmodule& module(const std::string& n) const { return modules_.at(n); }
  const fn::FnModuleMap& op(const std::string& n) const { return ops_.at(n); }

 private:
  std::map<std::string, int> rank_;
  std::map<std::string, fn::FnSubmodule> modules_;
  std::map<std::string, fn::FnModuleMap> ops_;
};

ordered_json describe(const fn::FnSubmodule& s) {
  ordered_json j;
  j["whole"] = s.is_whole();
  j["generators"] = to_json(s.generators());
  if (s.polynomial() && !s.all_zero()) {
    j["generic_rank"] = s.generic_rank();
    j["drop_points"] = to_json(s.drop_points());
  }
  return j;
}

Outcome fn_request(const FnWorld& w, const Request& r, const RunOptions& opt) {
  Outcome o;
  const std::string& k = r.kind;
  if (k == "complemented") {
    const auto c = fn::fn_is_complemented(w.module(r.target));
    o.verdict = c.complemented ? "complemented" : "not-complemented";
    o.details["rank"] = c.rank;
    o.details["drop_points"] = to_json(c.drop_points);
    return o;
  }
  if (k == "rank-profile") {
    const auto p = fn::fiber_rank_profile(w.module(r.target), opt.grid);
    o.verdict = p.drop_points.empty() ? "constant" : "drops";
    o.details["generic_rank"] = p.generic_rank;
    o.details["drop_points"] = to_json(p.drop_points);
    o.details["grid_min_rank"] = *std::min_element(p.ranks.begin(), p.ranks.end());
    o.details["grid_max_rank"] = *std::max_element(p.ranks.begin(), p.ranks.end());
    return o;
  }
  const fn::FnModuleMap& a = w.op(r.target);
  if (k == "modularity") {
    const auto m = fn::fn_solve_modularity(a, opt.tol, opt.grid);
    o.verdict = m.modular ? "modular" : "not-modular";
    o.refusal = !m.modular;
    o.details["residual"] = m.residual;
    o.details["residual_exact"] = m.residual_exact;
    if (m.b) o.details["b"] = to_json(m.b->matrix());
    if (m.modular) o.checks.add("b positive (grid)", m.positive);
  } else if (k == "polar") {
    const auto p = fn::fn_polar_decompose(a, opt.tol, opt.grid);
    o.verdict = p.refusal ? to_string(*p.refusal) : "decomposed";
    o.refusal = p.refusal.has_value();
    o.checks = p.checks;
    o.details["modular"] = p.modularity.modular;
    if (p.modulus) o.details["modulus"] = to_json(p.modulus->matrix());
    if (p.Ea) o.details["Ea"] = describe(*p.Ea);
    o.details["Ea_equals_domain"] = p.Ea_equals_domain;
    o.details["Ea_complemented"] = p.Ea_complemented;
    if (p.Ea_complementedness) o.details["Ea_drop_points"] = to_json(p.Ea_complementedness->drop_points);
    if (p.va) o.details["va"] = to_json(p.va->matrix());
    if (p.v) {
      o.details["v"] = to_json(p.v->matrix());
      bool zero = true;
      for (const auto& row : p.v->matrix()) {
        for (const auto& f : row) zero = zero && f.is_zero();
      }
      o.details["v_zero"] = zero;
    }
  } else if (k == "adjoint") {
    const auto out = fn::fn_try_adjoint(a);
    o.verdict = out.adjointable ? "adjointable" : "not-adjointable";
    o.refusal = !out.adjointable;
    if (out.adjoint) o.details["adjoint"] = to_json(out.adjoint->matrix());
    if (out.witness) o.details["witness"] = *out.witness;
    o.details["jump"] = out.jump;
  } else if (k == "kernel") {
    const auto ker = fn::fn_kernel(a);
    o.verdict = fn::to_string(ker.kind);
    if (ker.module) o.details["kernel"] = describe(*ker.module);
  } else if (k == "positive") {
    const auto p = fn::fn_positive_analysis(a, opt.tol, opt.grid);
    o.verdict = !p.positive ? "not-positive" : p.strictly_positive ? "strictly-positive" : "positive";
    o.details["positive_exact"] = p.positive_exact;
    o.details["kernel"] = fn::to_string(p.kernel.kind);
    if (p.invertible) o.details["invertible"] = *p.invertible;
    o.details["kernel_perp_is_E"] = p.kernel_perp_is_E;
    o.details["Eb"] = describe(p.Eb);
    if (p.Eb_complementedness) o.details["Eb_complemented"] = p.Eb_complementedness->complemented;
    if (p.Eb_equals_kernel_perp) o.details["Eb_equals_kernel_perp"] = *p.Eb_equals_kernel_perp;
  } else if (k == "invariants") {
    const auto m = fn::fn_solve_modularity(a, opt.tol, opt.grid);
    if (!m.modular) {
      o.verdict = "NotModular";
      o.refusal = true;
      return o;
    }
    const auto ker_a = fn::fn_kernel(a);
    const auto ker_b = fn::fn_kernel(*m.b);
    o.checks.add("ker a = ker b", ker_a.kind == ker_b.kind);
    try {
      const auto ker_mod = fn::fn_kernel(fn::fn_modulus(*m.b));
      o.checks.add("ker a = ker |a|", ker_a.kind == ker_mod.kind);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUnsupported) throw;
    }
    o.checks.add("b positive (grid)", m.positive);
    o.verdict = o.checks.all_passed() ? "pass" : "fail";
    o.verdict_from_checks = true;
  } else {
    throw Error(ErrorKind::kUnsupported, "request '" + k + "' on the function backend");
  }
  return o;
}

ordered_json request_json(const Request& r, const Outcome& o, const std::string& error, bool& passed) {
  ordered_json j;
  j["kind"] = r.kind;
  j["target"] = r.target;
  j["verdict"] = o.verdict;
  if (r.expect) j["expected"] = *r.expect;
  if (!error.empty()) j["error"] = error;
  const bool checks_ok = o.verdict_from_checks || o.checks.all_passed();
  const bool verdict_ok = r.expect ? o.verdict == *r.expect : !o.refusal && error.empty();
  passed = checks_ok && verdict_ok;
  j["status"] = passed ? "pass" : "fail";
  j["checks"] = to_json(o.checks);
  j["details"] = o.details;
  return j;
}

ordered_json summary(int total, int failed) { return {{"total", total}, {"passed", total - failed}, {"failed", failed}}; }

std::string fmt_value(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_checks(std::ostream& out, const ordered_json& checks, const std::string& indent) {
  for (const auto& c : checks) {
    out << indent << (c["passed"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>();
    if (c["value"].is_number() && c["value"].get<double>() != 0.0) out << "  (" << fmt_value(c["value"]) << ")";
    out << "\n";
  }
}

void render_scenario(std::ostream& out, const ordered_json& s) {
  out << "scenario " << s["scenario"].get<std::string>() << " [" << s["backend"].get<std::string>() << "]\n";
  if (s.contains("error")) out << "  ERROR " << s["error"].get<std::string>() << "\n";
  for (const auto& r : s["requests"]) {
    out << "  " << (r["status"] == "pass" ? "PASS" : "FAIL") << " " << r["kind"].get<std::string>() << " " << r["target"].get<std::string>() << ": " << r["verdict"].get<std::string>();
    if (r.contains("expected")) out << " (expected " << r["expected"].get<std::string>() << ")";
    out << "\n";
    if (r.contains("error")) out << "      error: " << r["error"].get<std::string>() << "\n";
    for (const auto& [key, v] : r["details"].items()) {
      if (v.is_primitive()) out << "      " << key << " = " << fmt_value(v) << "\n";
    }
    render_checks(out, r["checks"], "      ");
  }
  if (s.contains("verdicts")) {
    out << "  verdicts\n";
    render_checks(out, s["verdicts"], "      ");
  }
  const auto& sm = s["summary"];
  out << "  " << sm["passed"] << "/" << sm["total"] << " passed\n";
}

Report run_requests(const Scenario& s, const std::vector<Request>& requests, const RunOptions& opt) {
  Report rep;
  auto& d = rep.data;
  d["scenario"] = s.name;
  d["backend"] = s.backend == Backend::kFinite ? "finite" : "function";
  d["tolerance"] = opt.tol.eps();
  if (s.backend == Backend::kFunction) d["grid"] = opt.grid;
  d["requests"] = ordered_json::array();
  std::optional<FiniteWorld> fw;
  std::optional<FnWorld> gw;
  try {
    if (s.backend == Backend::kFinite) fw.emplace(s, opt.tol);
    else gw.emplace(s);
  } catch (const std::exception& e) {
    d["error"] = e.what();
    rep.failures = 1;
    d["summary"] = summary(1, 1);
    return rep;
  }
  int total = 0;
  for (const auto& r : requests) {
    Outcome o;
    std::string error;
    try {
      o = fw ? finite_request(*fw, r, opt.tol) : fn_request(*gw, r, opt);
    } catch (const std::exception& e) {
      o = Outcome{};
      o.verdict = "error";
      error = e.what();
    }
    bool passed = false;
    d["requests"].push_back(request_json(r, o, error, passed));
    ++total;
    if (!passed) {
      ++rep.failures;
      if (opt.fail_fast) break;
    }
  }
  d["summary"] = summary(total, rep.failures);
  return rep;
}

const char* shape_name(int index) {
  switch (index % 3) {
    case 0: return "generic";
    case 1: return "low-rank";
    default: return "projected";
  }
}

}  // namespace

std::string render(const Report& r, Format f) {
  if (f == Format::kMachine) return r.data.dump(2) + "\n";
  std::ostringstream out;
  const auto& d = r.data;
  if (d.contains("scenario")) {
    render_scenario(out, d);
  } else if (d.contains("gallery")) {
    for (const auto& s : d["gallery"]) render_scenario(out, s);
  } else if (d.contains("fuzz")) {
    const auto& p = d["fuzz"];
    out << "fuzz seed " << p["seed"] << ", " << p["count"] << " operators over B = " << p["algebra"].dump() << ", rank " << p["rank"] << "\n";
    for (const auto& c : d["cases"]) {
      if (c["status"] == "pass") continue;
      out << "  FAIL case " << c["index"] << " (" << c["shape"].get<std::string>() << ")\n";
      render_checks(out, c["checks"], "      ");
    }
  }
  const auto& sm = d["summary"];
  out << "summary: " << sm["passed"] << "/" << sm["total"] << " passed, " << sm["failed"] << " failed\n";
  return out.str();
}

Report run(const Scenario& s, const RunOptions& opt) { return run_requests(s, s.requests, opt); }

Report run_all(const Scenario& s, const std::string& kind, const RunOptions& opt) {
  std::vector<Request> reqs;
  for (const auto& op : s.operators) {
    Request r{kind, op.name, {}};
    for (const auto& q : s.requests) {
      if (q.kind == kind && q.target == op.name) r.expect = q.expect;
    }
    reqs.push_back(std::move(r));
  }
  return run_requests(s, reqs, opt);
}

const std::vector<std::pair<std::string, std::string>>& gallery_texts() {
  static const std::vector<std::pair<std::string, std::string>> texts = [] {
    std::vector<std::pair<std::string, std::string>> t{
        {"finite-identity", R"(scenario finite-identity
backend finite
algebra 1
module E rank 2
operator id E -> E
  1 1 = 1
  2 2 = 1
end
request modularity id expect modular
request polar id expect decomposed
request invariants id expect pass
request isometry id expect true
request adjoint id expect adjointable
request observation id expect isometry
)"},
        {"finite-zero", R"(scenario finite-zero
backend finite
algebra 2
module E rank 1
operator z E -> E
end
request polar z expect decomposed
request kernel z expect everything
request partial-isometry z expect true
request observation z expect RangeNotDense
)"},
        {"finite-projection", R"(scenario finite-projection
backend finite
algebra 1 2
module E rank 2
operator p E -> E
  1 1 = 1|[1,0;0,0]
  2 2 = 0|[0.5,0.5;0.5,0.5]
end
request projection p expect true
request partial-isometry p expect true
request polar p expect decomposed
request invariants p expect pass
request positive p expect positive
request observation p expect RangeNotDense
)"},
        {"finite-submodule", R"(scenario finite-submodule
backend finite
algebra 2
module E rank 2
submodule S of E
  gen 1=[1,0;0,1] 2=[0,1i;0,0]
end
operator j S -> E
  1 1 = [1,0;0,1]
  2 2 = [1,0;0,1]
end
request complemented S expect complemented
request isometry j expect true
request adjoint j expect adjointable
request polar j expect decomposed
request kernel j expect zero
)"},
        {"inclusion", R"(scenario inclusion
backend function
algebra C[0,1]
module E rank 1
submodule I of E
  gen 1=poly(0,1)
end
operator a I -> E
  1 1 = poly(1)
end
request modularity a expect modular
request adjoint a expect not-adjointable
request polar a expect decomposed
request complemented I expect not-complemented
request rank-profile I expect drops
)"},
        {"sqrt-multiplier", R"(scenario sqrt-multiplier
backend function
algebra C[0,1]
module E rank 1
operator a E -> E
  1 1 = sqrt(poly(0,1))
end
request modularity a expect modular
request adjoint a expect adjointable
request kernel a expect zero
request polar a expect EaNotComplemented
)"},
        {"strictly-positive", R"(scenario strictly-positive
backend function
algebra C[0,1]
module E rank 1
operator b E -> E
  1 1 = poly(0,1)
end
request positive b expect strictly-positive
request kernel b expect zero
request invariants b expect pass
request polar b expect EaNotComplemented
)"},
    };
    std::sort(t.begin(), t.end());
    return t;
  }();
  return texts;
}

Report gallery(const RunOptions& opt) {
  const auto verdicts = fn::fn_polar_scenarios(opt.tol, opt.grid);
  Report rep;
  rep.data["gallery"] = ordered_json::array();
  int total = 0;
  for (const auto& [name, text] : gallery_texts()) {
    Report r = run(parse_scenario(text), opt);
    for (const auto& v : verdicts) {
      if (v.name != name) continue;
      r.data["summary_text"] = v.summary;
      r.data["verdicts"] = to_json(v.verdicts);
      if (!v.verdicts.all_passed()) ++r.failures;
    }
    ++total;
    if (!r.passed()) ++rep.failures;
    rep.data["gallery"].push_back(std::move(r.data));
    if (opt.fail_fast && rep.failures) break;
  }
  rep.data["summary"] = summary(total, rep.failures);
  return rep;
}

Report fuzz(const FuzzOptions& f, const RunOptions& opt) {
  if (f.count < 0 || f.rank < 1) throw Error(ErrorKind::kShape, "fuzz needs count >= 0 and rank >= 1");
  const AlgebraSpec spec(f.algebra);
  const FreeModule e(spec, f.rank);
  Rng rng(f.seed);
  Report rep;
  rep.data["fuzz"] = {{"seed", f.seed}, {"count", f.count}, {"algebra", f.algebra}, {"rank", f.rank}, {"tolerance", opt.tol.eps()}};
  rep.data["cases"] = ordered_json::array();
  int total = 0;
  for (int i = 0; i < f.count; ++i) {
    const ModuleMap a = random_operator(e, e, i, rng);
    CheckRecord rec;
    const PolarReport p = polar_decompose(a, opt.tol);
    rec.add("modular", p.modular());
    rec.add("polar decomposed", !p.refusal);
    for (const auto& c : p.checks.checks) rec.checks.push_back(c);
    for (const auto& c : kernel_invariants(a, opt.tol).checks) rec.checks.push_back(c);
    const auto adj = try_adjoint(a, opt.tol);
    rec.add("adjoint oracle", adj.ok());
    if (adj.ok() && p.modular()) {
      const ModuleMap oracle = compose(*adj.adjoint, a);
      const double d = relative_distance(std::get<ModularityCertificate>(p.certificate).b, oracle);
      rec.add("b = a^* a (oracle)", d <= kOracleTol, d);
    }
    ++total;
    const bool ok = rec.all_passed();
    if (!ok) ++rep.failures;
    rep.data["cases"].push_back({{"index", i}, {"shape", shape_name(i)}, {"status", ok ? "pass" : "fail"}, {"checks", to_json(rec)}});
    if (opt.fail_fast && !ok) break;
  }
  rep.data["summary"] = summary(total, rep.failures);
  return rep;
}

}  // namespace hilbmod::cli
