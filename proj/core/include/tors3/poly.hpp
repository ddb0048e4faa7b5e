// Copyright 2026 The tors3 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TORS3_POLY_HPP_
#define TORS3_POLY_HPP_

#include <cstddef>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tors3/errors.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Dense univariate polynomial over a coefficient ring R.
//
// R provides zero(), one(), from_integer(), is_zero(), the usual
// arithmetic operators and, for the field-only routines, inverse().
// Elements of R may carry a context (modulus, precision); new
// coefficients are always created from an existing one so the context
// is preserved.
template <class R>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const R& a) { return Poly(std::vector<R>{a}); }
  static Poly monomial(const R& a, int deg) {
    std::vector<R> c(static_cast<size_t>(deg) + 1, a.zero());
    c.back() = a;
    return Poly(std::move(c));
  }
  // The polynomial X, with the context of `like`.
  static Poly x(const R& like) { return monomial(like.one(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const R& lc() const {
    if (c_.empty()) throw InvalidInput("leading coefficient of zero polynomial");
    return c_.back();
  }
  const std::vector<R>& coeffs() const { return c_; }

  // Coefficient of X^i; `zero` supplies the context for absent terms.
  R coeff(int i, const R& zero) const {
    if (i < 0 || i > degree()) return zero.zero();
    return c_[static_cast<size_t>(i)];
  }
  R coeff(int i) const {
    if (i >= 0 && i <= degree()) return c_[static_cast<size_t>(i)];
    if (c_.empty()) return R();
    return c_[0].zero();
  }

  R eval(const R& x) const {
    if (c_.empty()) return x.zero();
    R acc = c_.back();
    for (int i = degree() - 1; i >= 0; --i) acc = acc * x + c_[i];
    return acc;
  }

  Poly operator-() const {
    std::vector<R> c = c_;
    for (auto& a : c) a = -a;
    return Poly(std::move(c));
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) {
      size_t old = c_.size();
      c_.resize(o.c_.size(), o.c_[0].zero());
      for (size_t i = old; i < c_.size(); ++i) c_[i] = o.c_[i];
      for (size_t i = 0; i < old; ++i) c_[i] += o.c_[i];
    } else {
      for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    }
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) { return *this += -o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<R> c(a.c_.size() + b.c_.size() - 1, a.c_[0].zero());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(c));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(const Poly& a, const R& s) {
    std::vector<R> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const R& s, const Poly& a) { return a * s; }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  // Division with remainder; the divisor's leading coefficient must be
  // invertible.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    R inv = b.lc().inverse();
    std::vector<R> r = a.c_;
    int db = b.degree();
    std::vector<R> q(static_cast<size_t>(a.degree() - db + 1), a.c_[0].zero());
    for (int i = a.degree(); i >= db; --i) {
      if (r[i].is_zero()) continue;
      R f = r[i] * inv;
      q[i - db] = f;
      for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
      r[i] = r[i].zero();
    }
    r.resize(static_cast<size_t>(db));
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) {
    return divmod(a, b).first;
  }
  friend Poly operator%(const Poly& a, const Poly& b) {
    return divmod(a, b).second;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lc().inverse();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<R> d;
    d.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
      d.push_back(c_[i] * c_[i].from_integer(Integer(static_cast<long>(i))));
    }
    return Poly(std::move(d));
  }

  // p(q(X))
  Poly compose(const Poly& q) const {
    Poly acc;
    for (int i = degree(); i >= 0; --i) acc = acc * q + constant(c_[i]);
    return acc;
  }

  // p(X + a)
  Poly shift(const R& a) const {
    std::vector<R> c = c_;
    int n = degree();
    for (int i = 0; i < n; ++i) {
      for (int j = n - 1; j >= i; --j) c[j] += a * c[j + 1];
    }
    return Poly(std::move(c));
  }

  // X^n p(1/X) with n >= degree.
  Poly reversed(int n) const {
    if (is_zero()) return Poly();
    std::vector<R> c(static_cast<size_t>(n) + 1, c_[0].zero());
    for (int i = 0; i <= degree(); ++i) c[n - i] = c_[i];
    return Poly(std::move(c));
  }

  Poly pow(unsigned long e) const {
    Poly result = constant(c_.empty() ? R().one() : c_[0].one());
    Poly base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  std::string to_string(const std::string& var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[i] << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<R> c_;
};

template <class R>
std::ostream& operator<<(std::ostream& os, const Poly<R>& p) {
  return os << p.to_string();
}

// Monic gcd over a field.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
  while (!b.is_zero()) {
    Poly<R> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Returns (g, s, t) with s*a + t*b = g monic.
template <class R>
std::tuple<Poly<R>, Poly<R>, Poly<R>> xgcd(const Poly<R>& a,
                                           const Poly<R>& b) {
  if (a.is_zero() && b.is_zero()) return {Poly<R>(), Poly<R>(), Poly<R>()};
  const R& like = a.is_zero() ? b.lc() : a.lc();
  Poly<R> r0 = a, r1 = b;
  Poly<R> s0 = Poly<R>::constant(like.one()), s1;
  Poly<R> t0, t1 = Poly<R>::constant(like.one());
  while (!r1.is_zero()) {
    auto [q, r] = Poly<R>::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<R> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<R> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  R inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// Resultant over a field via the Euclidean remainder sequence, using the
// actual degrees of a and b.
template <class R>
R resultant(Poly<R> a, Poly<R> b) {
  if (a.is_zero() || b.is_zero()) {
    throw InvalidInput("resultant with zero polynomial");
  }
  R acc = a.lc().one();
  while (true) {
    int n = a.degree(), m = b.degree();
    if (m == 0) {
      R f = b.lc();
      R p = f.one();
      for (int i = 0; i < n; ++i) p *= f;
      return acc * p;
    }
    if (n == 0) {
      R f = a.lc();
      R p = f.one();
      for (int i = 0; i < m; ++i) p *= f;
      return acc * p;
    }
    Poly<R> r = a % b;
    if (r.is_zero()) return acc.zero();
    int k = r.degree();
    if ((static_cast<long>(n) * m) % 2 == 1) acc = -acc;
    R lb = b.lc();
    for (int i = 0; i < n - k; ++i) acc *= lb;
    a = std::move(b);
    b = std::move(r);
  }
}

// (-1)^(n(n-1)/2) Res(f, f') / lc(f), with Res taken against the formal
// degree n-1 of f' (relevant in positive characteristic).
template <class R>
R discriminant(const Poly<R>& f) {
  if (f.is_zero()) throw InvalidInput("discriminant of zero polynomial");
  int n = f.degree();
  if (n < 1) throw InvalidInput("discriminant of a constant");
  if (n == 1) return f.lc().one();
  Poly<R> df = f.derivative();
  if (df.is_zero()) return f.lc().zero();
  R res = resultant(f, df);
  for (int i = df.degree(); i < n - 1; ++i) res *= f.lc();
  long e = static_cast<long>(n) * (n - 1) / 2;
  if (e % 2) res = -res;
  return res * f.lc().inverse();
}

using QPoly = Poly<Rational>;

}  // namespace tors3

#endif  // TORS3_POLY_HPP_
