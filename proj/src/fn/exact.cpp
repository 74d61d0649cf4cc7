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

#include "exact.hpp"

#include <algorithm>
#include <cmath>

namespace hilbmod::fn::exact {

Q to_rational(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::kUnsupported, "non-finite coefficient");
  if (x == 0) return Q(0);
  int e = 0;
  const double m = std::frexp(x, &e);
  // x = mant * 2^(e - 53) with mant an integer.
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Q r(mant);
  const int shift = e - 53;
  boost::multiprecision::cpp_int p2 = 1;
  p2 <<= std::abs(shift);
  return shift >= 0 ? r * Q(p2) : r / Q(p2);
}

void QPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Q QPoly::operator()(const Q& t) const {
  Q acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

QPoly operator+(const QPoly& p, const QPoly& q) {
  QPoly r;
  r.c.resize(std::max(p.c.size(), q.c.size()));
  for (std::size_t k = 0; k < r.c.size(); ++k) {
    if (k < p.c.size()) r.c[k] += p.c[k];
    if (k < q.c.size()) r.c[k] += q.c[k];
  }
  r.trim();
  return r;
}

QPoly operator-(const QPoly& p, const QPoly& q) {
  QPoly neg = q;
  for (auto& x : neg.c) x = -x;
  return p + neg;
}

QPoly operator*(const QPoly& p, const QPoly& q) {
  QPoly r;
  if (p.is_zero() || q.is_zero()) return r;
  r.c.assign(p.c.size() + q.c.size() - 1, Q(0));
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    for (std::size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
  }
  r.trim();
  return r;
}

QPoly derivative(const QPoly& p) {
  QPoly r;
  for (std::size_t k = 1; k < p.c.size(); ++k) r.c.push_back(p.c[k] * static_cast<long long>(k));
  r.trim();
  return r;
}

void divmod(const QPoly& p, const QPoly& d, QPoly& quot, QPoly& rem) {
  if (d.is_zero()) throw Error(ErrorKind::kUnsupported, "polynomial division by zero");
  rem = p;
  quot.c.assign(std::max(0, p.degree() - d.degree() + 1), Q(0));
  const Q& lead = d.c.back();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const int shift = rem.degree() - d.degree();
    const Q f = rem.c.back() / lead;
    quot.c[shift] = f;
    for (std::size_t k = 0; k < d.c.size(); ++k) rem.c[k + shift] -= f * d.c[k];
    rem.c.pop_back();
    rem.trim();
  }
  quot.trim();
}

QPoly monic(const QPoly& p) {
  if (p.is_zero()) return p;
  QPoly r = p;
  const Q lead = p.c.back();
  for (auto& x : r.c) x /= lead;
  return r;
}

QPoly gcd(QPoly p, QPoly q) {
  while (!q.is_zero()) {
    QPoly quot, rem;
    divmod(p, q, quot, rem);
    p = std::move(q);
    q = monic(rem);
  }
  return monic(p);
}

Qi operator+(const Qi& a, const Qi& b) { return {a.re + b.re, a.im + b.im}; }
Qi operator-(const Qi& a, const Qi& b) { return {a.re - b.re, a.im - b.im}; }
Qi operator*(const Qi& a, const Qi& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

Qi inverse(const Qi& a) {
  const Q n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

QiPoly::QiPoly(const Polynomial& p) {
  for (const Complex& z : p.coeffs()) {
    re.c.push_back(to_rational(z.real()));
    im.c.push_back(to_rational(z.imag()));
  }
  re.trim();
  im.trim();
}

Polynomial to_polynomial(const QiPoly& p) {
  std::vector<Complex> c(std::max(p.re.c.size(), p.im.c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double re = k < p.re.c.size() ? static_cast<double>(p.re.c[k]) : 0.0;
    const double im = k < p.im.c.size() ? static_cast<double>(p.im.c[k]) : 0.0;
    c[k] = Complex(re, im);
  }
  return Polynomial(std::move(c));
}

QiPoly operator+(const QiPoly& p, const QiPoly& q) {
  QiPoly r;
  r.re = p.re + q.re;
  r.im = p.im + q.im;
  return r;
}

QiPoly operator-(const QiPoly& p, const QiPoly& q) {
  QiPoly r;
  r.re = p.re - q.re;
  r.im = p.im - q.im;
  return r;
}

QiPoly operator*(const QiPoly& p, const QiPoly& q) {
  QiPoly r;
  r.re = p.re * q.re - p.im * q.im;
  r.im = p.re * q.im + p.im * q.re;
  return r;
}

QiPoly minor(const QiPolyMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  QiPoly det;
  const std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const QiPoly& entry = m[rows[0]][cols[j]];
    if (entry.is_zero()) continue;
    std::vector<int> sub;
    for (std::size_t l = 0; l < cols.size(); ++l) {
      if (l != j) sub.push_back(cols[l]);
    }
    const QiPoly term = entry * minor(m, rest, sub);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

int rank(std::vector<std::vector<Qi>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    const Qi inv = inverse(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const Qi f = m[i][c] * inv;
      for (std::size_t l = c; l < cols; ++l) m[i][l] = m[i][l] - f * m[r][l];
    }
    ++r;
  }
  return r;
}

int generic_rank(const QiPolyMatrix& m) {
  if (m.empty() || m[0].empty()) return 0;
  int max_degree = 0;
  for (const auto& row : m) {
    for (const auto& e : row) max_degree = std::max({max_degree, e.re.degree(), e.im.degree()});
  }
  // A nonzero r x r minor has at most r * max_degree roots, so one of the
  // first bound + 1 integers misses them all.
  const int bound = static_cast<int>(std::min(m.size(), m[0].size())) * max_degree;
  int best = 0;
  for (int point = 0; point <= bound; ++point) {
    std::vector<std::vector<Qi>> values(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (const auto& e : m[i]) values[i].push_back(e(Q(point)));
    }
    best = std::max(best, rank(std::move(values)));
  }
  return best;
}

std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r > n || r < 0) return out;
  std::vector<int> s(r);
  for (int k = 0; k < r; ++k) s[k] = k;
  while (true) {
    out.push_back(s);
    int k = r - 1;
    while (k >= 0 && s[k] == n - r + k) --k;
    if (k < 0) break;
    ++s[k];
    for (int l = k + 1; l < r; ++l) s[l] = s[l - 1] + 1;
  }
  return out;
}

namespace {

int sign(const Q& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, derivative(p)};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    QPoly quot, rem;
    divmod(seq[seq.size() - 2], seq.back(), quot, rem);
    if (rem.is_zero()) break;
    // Scaling by a positive constant keeps the signs.
    const Q scale = abs(rem.c.back());
    for (auto& x : rem.c) x = -x / scale;
    seq.push_back(std::move(rem));
  }
  return seq;
}

int variations(const std::vector<QPoly>& seq, const Q& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = sign(s(x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

QPoly linear_factor(const Q& root) { return QPoly{{-root, Q(1)}}; }

// Roots in [0, 1] of a square-free polynomial.
std::vector<IsolatedRoot> isolate_square_free(QPoly q, int multiplicity) {
  const Q width = Q(1) / Q(boost::multiprecision::cpp_int(1) << 44);
  std::vector<IsolatedRoot> exact_roots;
  const auto deflate = [&](const Q& root) {
    exact_roots.push_back({root, root, true, multiplicity});
    QPoly quot, rem;
    divmod(q, linear_factor(root), quot, rem);
    q = std::move(quot);
  };
  while (true) {
    if (q.degree() < 1) return exact_roots;
    if (q(Q(0)) == 0) {
      deflate(Q(0));
      continue;
    }
    if (q(Q(1)) == 0) {
      deflate(Q(1));
      continue;
    }
    const auto seq = sturm_sequence(q);
    struct Interval {
      Q a, b;
      int count;
    };
    std::vector<Interval> stack{{Q(0), Q(1), variations(seq, Q(0)) - variations(seq, Q(1))}};
    std::vector<IsolatedRoot> found;
    bool restart = false;
    while (!stack.empty() && !restart) {
      const Interval iv = stack.back();
      stack.pop_back();
      if (iv.count == 0) continue;
      if (iv.count == 1 && iv.b - iv.a < width) {
        found.push_back({iv.a, iv.b, false, multiplicity});
        continue;
      }
      const Q mid = (iv.a + iv.b) / 2;
      if (q(mid) == 0) {
        deflate(mid);
        restart = true;
        break;
      }
      const int vm = variations(seq, mid);
      stack.push_back({mid, iv.b, vm - variations(seq, iv.b)});
      stack.push_back({iv.a, mid, variations(seq, iv.a) - vm});
    }
    if (!restart) {
      exact_roots.insert(exact_roots.end(), found.begin(), found.end());
      return exact_roots;
    }
  }
}

}  // namespace

std::vector<IsolatedRoot> isolate_roots(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::kUnsupported, "roots of the zero polynomial");
  std::vector<IsolatedRoot> roots;
  if (p.degree() == 0) return roots;
  // Yun's square-free decomposition: p = prod a_i^i.
  QPoly dp = derivative(p);
  QPoly a0 = gcd(p, dp);
  QPoly b, c, d, quot_rem;
  divmod(p, a0, b, quot_rem);
  divmod(dp, a0, c, quot_rem);
  d = c - derivative(b);
  for (int i = 1; b.degree() > 0; ++i) {
    const QPoly a = gcd(b, d);
    if (a.degree() > 0) {
      auto part = isolate_square_free(a, i);
      roots.insert(roots.end(), part.begin(), part.end());
    }
    QPoly next_b, next_c;
    divmod(b, a, next_b, quot_rem);
    divmod(d, a, next_c, quot_rem);
    b = std::move(next_b);
    d = next_c - derivative(b);
  }
  std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  return roots;
}

std::vector<RealRoot> cluster(std::vector<IsolatedRoot> roots, double width) {
  std::sort(roots.begin(), roots.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  std::vector<RealRoot> out;
  bool last_exact = false;
  for (const auto& r : roots) {
    const double lo = static_cast<double>(r.lo);
    const double hi = static_cast<double>(r.hi);
    const double t = r.exact ? lo : 0.5 * (lo + hi);
    if (!out.empty() && t - out.back().t < width) {
      RealRoot& prev = out.back();
      prev.lo = std::min(prev.lo, lo);
      prev.hi = std::max(prev.hi, hi);
      if (r.exact && !last_exact) {
        prev.t = t;
        last_exact = true;
      }
      prev.multiplicity += r.multiplicity;
      continue;
    }
    out.push_back({t, lo, hi, r.multiplicity});
    last_exact = r.exact;
  }
  return out;
}

std::vector<RealRoot> common_roots(const std::vector<QiPoly>& ps, double width) {
  QPoly g;
  bool any = false;
  for (const auto& p : ps) {
    for (const QPoly* part : {&p.re, &p.im}) {
      if (part->is_zero()) continue;
      g = any ? gcd(g, *part) : *part;
      any = true;
    }
  }
  if (!any) throw Error(ErrorKind::kUnsupported, "roots of the zero polynomial");
  return cluster(isolate_roots(g), width);
}

}  // namespace hilbmod::fn::exact
