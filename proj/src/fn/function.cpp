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

#include "hilbmod/fn/function.hpp"

#include <algorithm>
#include <cmath>

namespace hilbmod::fn {

struct PolyFunction::Node {
  Kind kind = Kind::kPolynomial;
  Polynomial poly;
  std::vector<PolyFunction> args;
  ZeroSet den_zeros;
};

namespace {

ZeroSet union_of(const ZeroSet& a, const ZeroSet& b) {
  if (a.everywhere || b.everywhere) return {true, {}};
  ZeroSet out;
  std::vector<RealRoot> all = a.points;
  all.insert(all.end(), b.points.begin(), b.points.end());
  std::sort(all.begin(), all.end(), [](const RealRoot& x, const RealRoot& y) { return x.t < y.t; });
  for (const auto& r : all) {
    if (!out.points.empty() && r.t - out.points.back().t < kRootCluster) {
      auto& prev = out.points.back();
      // Keep an exactly known location.
      if (r.lo == r.hi) prev.t = r.t;
      prev.lo = std::min(prev.lo, r.lo);
      prev.hi = std::max(prev.hi, r.hi);
      prev.multiplicity += r.multiplicity;
      continue;
    }
    out.points.push_back(r);
  }
  return out;
}

}  // namespace

PolyFunction::PolyFunction() : PolyFunction(Polynomial()) {}

PolyFunction::PolyFunction(Polynomial p) {
  auto node = std::make_shared<Node>();
  node->poly = std::move(p);
  node_ = std::move(node);
}

PolyFunction PolyFunction::sqrt(const PolyFunction& f) {
  const Polynomial* p = f.polynomial();
  if (!p) throw Error(ErrorKind::kUnsupported, "sqrt of a non-polynomial function");
  if (!nonnegative_on_unit_interval(*p)) throw Error(ErrorKind::kNotPositive, "sqrt of a function not nonnegative on [0,1]");
  if (p->is_constant()) return PolyFunction(std::sqrt(p->coeff(0).real()));
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSqrt;
  node->poly = *p;
  node->args = {f};
  return PolyFunction(std::shared_ptr<const Node>(std::move(node)));
}

PolyFunction PolyFunction::abs(const PolyFunction& f) {
  if (const Polynomial* p = f.polynomial()) {
    if (p->is_constant()) return PolyFunction(std::abs(p->coeff(0)));
    if (nonnegative_on_unit_interval(*p)) return f;
  }
  if (f.kind() == Kind::kSqrt || f.kind() == Kind::kAbs) return f;
  auto node = std::make_shared<Node>();
  node->kind = Kind::kAbs;
  node->args = {f};
  return PolyFunction(std::shared_ptr<const Node>(std::move(node)));
}

PolyFunction PolyFunction::quotient(const PolyFunction& n, const PolyFunction& d) {
  if (n.is_zero() || d.is_zero()) return {};
  if (const Polynomial* p = d.polynomial(); p && p->is_constant()) return n * PolyFunction(1.0 / p->coeff(0));
  auto node = std::make_shared<Node>();
  node->kind = Kind::kQuotient;
  node->args = {n, d};
  node->den_zeros = d.zeros();
  return PolyFunction(std::shared_ptr<const Node>(std::move(node)));
}

PolyFunction::Kind PolyFunction::kind() const { return node_->kind; }

const Polynomial* PolyFunction::polynomial() const {
  return node_->kind == Kind::kPolynomial ? &node_->poly : nullptr;
}

bool PolyFunction::is_zero() const { return node_->kind == Kind::kPolynomial && node_->poly.is_zero(); }

std::vector<PolyFunction> PolyFunction::children() const { return node_->args; }

Complex PolyFunction::operator()(double t) const {
  const auto& args = node_->args;
  switch (node_->kind) {
    case Kind::kPolynomial: return node_->poly(t);
    case Kind::kSqrt: return std::sqrt(std::max(0.0, node_->poly(t).real()));
    case Kind::kAbs: return std::abs(args[0](t));
    case Kind::kProduct: return args[0](t) * args[1](t);
    case Kind::kSum: return args[0](t) + args[1](t);
    case Kind::kQuotient: {
      for (const auto& r : node_->den_zeros.points) {
        if (t >= r.lo && t <= r.hi) return 0.0;
      }
      const Complex d = args[1](t);
      return d == Complex(0) ? Complex(0) : args[0](t) / d;
    }
  }
  return 0.0;
}

PolyFunction PolyFunction::conj() const {
  const auto& args = node_->args;
  switch (node_->kind) {
    case Kind::kPolynomial: return PolyFunction(node_->poly.conj());
    case Kind::kSqrt:
    case Kind::kAbs: return *this;
    case Kind::kProduct: return args[0].conj() * args[1].conj();
    case Kind::kSum: return args[0].conj() + args[1].conj();
    case Kind::kQuotient: return quotient(args[0].conj(), args[1].conj());
  }
  return *this;
}

ZeroSet PolyFunction::zeros() const {
  const auto& args = node_->args;
  switch (node_->kind) {
    case Kind::kPolynomial:
      if (node_->poly.is_zero()) return {true, {}};
      return {false, real_roots(node_->poly)};
    case Kind::kSqrt: return {false, real_roots(node_->poly)};
    case Kind::kAbs: return args[0].zeros();
    case Kind::kProduct: return union_of(args[0].zeros(), args[1].zeros());
    case Kind::kQuotient: return union_of(args[0].zeros(), node_->den_zeros);
    case Kind::kSum: break;
  }
  throw Error(ErrorKind::kUnsupported, "zero set of a symbolic sum");
}

PolyFunction operator+(const PolyFunction& f, const PolyFunction& g) {
  if (f.is_polynomial() && g.is_polynomial()) return PolyFunction(*f.polynomial() + *g.polynomial());
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  auto node = std::make_shared<PolyFunction::Node>();
  node->kind = PolyFunction::Kind::kSum;
  node->args = {f, g};
  return PolyFunction(std::shared_ptr<const PolyFunction::Node>(std::move(node)));
}

PolyFunction operator-(const PolyFunction& f, const PolyFunction& g) { return f + PolyFunction(-1.0) * g; }

PolyFunction operator*(const PolyFunction& f, const PolyFunction& g) {
  if (f.is_zero() || g.is_zero()) return {};
  if (f.is_polynomial() && g.is_polynomial()) return PolyFunction(*f.polynomial() * *g.polynomial());
  const auto is_one = [](const PolyFunction& h) { return h.is_polynomial() && *h.polynomial() == Polynomial(1.0); };
  if (is_one(f)) return g;
  if (is_one(g)) return f;
  if (f.kind() == PolyFunction::Kind::kSqrt && f == g) return PolyFunction(f.node_->poly);
  auto node = std::make_shared<PolyFunction::Node>();
  node->kind = PolyFunction::Kind::kProduct;
  node->args = {f, g};
  return PolyFunction(std::shared_ptr<const PolyFunction::Node>(std::move(node)));
}

bool operator==(const PolyFunction& f, const PolyFunction& g) {
  if (f.node_ == g.node_) return true;
  return f.node_->kind == g.node_->kind && f.node_->poly == g.node_->poly && f.node_->args == g.node_->args;
}

std::string to_string(const PolyFunction& f) {
  const auto args = f.children();
  switch (f.kind()) {
    case PolyFunction::Kind::kPolynomial: {
      const auto& c = f.polynomial()->coeffs();
      if (c.empty()) return "poly(0)";
      std::string s = "poly(";
      for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + format_complex(c[k]);
      return s + ")";
    }
    case PolyFunction::Kind::kSqrt: return "sqrt(" + to_string(args[0]) + ")";
    case PolyFunction::Kind::kAbs: return "abs(" + to_string(args[0]) + ")";
    case PolyFunction::Kind::kProduct: return "mul(" + to_string(args[0]) + "," + to_string(args[1]) + ")";
    case PolyFunction::Kind::kSum: return "add(" + to_string(args[0]) + "," + to_string(args[1]) + ")";
    case PolyFunction::Kind::kQuotient: return "div(" + to_string(args[0]) + "," + to_string(args[1]) + ")";
  }
  return "?";
}

}  // namespace hilbmod::fn
