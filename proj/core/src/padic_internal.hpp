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

#ifndef TORS3_SRC_PADIC_INTERNAL_HPP_
#define TORS3_SRC_PADIC_INTERNAL_HPP_

// Coefficient-generic pieces of the p-adic code: truncated series, Hensel
// lifting, and the unramified extension Z_q used for residues outside F_p.

#include <algorithm>
#include <memory>
#include <ostream>
#include <vector>

#include "tors3/finite_field.hpp"
#include "tors3/padic.hpp"

namespace tors3::detail {

inline Integer ppow(std::uint64_t p, long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(std::max(0L, e)));
  return r;
}

// floor(log_p n) for n >= 1.
inline long floor_log(std::uint64_t p, long n) {
  long k = 0;
  Integer P = p;
  Integer x = p;
  while (x <= n) {
    ++k;
    x *= P;
  }
  return k;
}

// Newton steps needed to reach precision N from 1, plus slack.
inline int iterations_for(long N) {
  int it = 2;
  for (long x = 1; x < N; x *= 2) ++it;
  return it;
}

// Z_p[X]/(Phi) with Phi a monic integer lift of the modulus of F_q.
struct ZqContext {
  std::uint64_t p = 0;
  int d = 0;
  std::vector<Integer> phi;     // d + 1 entries, monic
  std::vector<Integer> traces;  // Tr(X^i) for i < 2d - 1
  std::shared_ptr<const FqContext> residue;
};

std::shared_ptr<const ZqContext> make_zq_context(std::shared_ptr<const FqContext> residue);

class Zq {
 public:
  Zq() = default;
  Zq(std::shared_ptr<const ZqContext> ctx, std::vector<Padic> c);
  static Zq from_padic(std::shared_ptr<const ZqContext> ctx, const Padic& a);

  const std::shared_ptr<const ZqContext>& context() const { return ctx_; }
  const std::vector<Padic>& coeffs() const { return c_; }
  std::uint64_t prime() const { return ctx_->p; }
  long cap() const;
  long precision() const;
  // Lower bound: min over coefficients, an unknown zero counting with its
  // precision.
  long valuation() const;
  bool is_zero() const;

  Zq zero() const { return from_padic(ctx_, c_[0].zero()); }
  Zq one() const { return from_padic(ctx_, c_[0].one()); }
  Zq from_integer(const Integer& n) const { return from_padic(ctx_, c_[0].from_integer(n)); }
  Zq from_rational(const Rational& q) const { return from_padic(ctx_, c_[0].from_rational(q)); }
  Zq inverse() const;
  Zq with_precision(long N) const;
  Padic trace() const;

  Zq operator-() const;
  Zq& operator+=(const Zq& o) { return *this = *this + o; }
  Zq& operator-=(const Zq& o) { return *this = *this - o; }
  Zq& operator*=(const Zq& o) { return *this = *this * o; }
  friend Zq operator+(const Zq& a, const Zq& b);
  friend Zq operator-(const Zq& a, const Zq& b) { return a + (-b); }
  friend Zq operator*(const Zq& a, const Zq& b);
  friend Zq operator/(const Zq& a, const Zq& b) { return a * b.inverse(); }
  friend bool operator==(const Zq& a, const Zq& b) { return (a - b).is_zero(); }
  friend std::ostream& operator<<(std::ostream& os, const Zq& a);

 private:
  std::shared_ptr<const ZqContext> ctx_;
  std::vector<Padic> c_;
};

// Reduction to the residue field and a lift back.
Fp reduce_elem(const Padic& a);
Fq reduce_elem(const Zq& a);
Padic lift_elem(const Fp& a, const Padic& like);
Zq lift_elem(const Fq& a, const Zq& like);

// ------------------------------------------------------------- series

template <class K>
Series<K> s_of(const Poly<K>& f, int order, const K& like) {
  Series<K> s;
  s.order = order;
  for (int i = 0; i < order; ++i) s.c.push_back(f.coeff(i, like.zero()));
  return s;
}

template <class K>
Series<K> s_add(const Series<K>& a, const Series<K>& b) {
  Series<K> s;
  s.order = std::min(a.order, b.order);
  for (int i = 0; i < s.order; ++i) s.c.push_back(a.c[i] + b.c[i]);
  return s;
}

template <class K>
Series<K> s_mul(const Series<K>& a, const Series<K>& b) {
  Series<K> s;
  s.order = std::min(a.order, b.order);
  for (int n = 0; n < s.order; ++n) {
    K acc = a.c[0].zero();
    for (int i = 0; i <= n; ++i) acc += a.c[i] * b.c[n - i];
    s.c.push_back(acc);
  }
  return s;
}

template <class K>
Series<K> s_scale(const Series<K>& a, const K& x) {
  Series<K> s = a;
  for (auto& c : s.c) c *= x;
  return s;
}

template <class K>
Series<K> s_compose(const Series<K>& a, const Series<K>& b) {
  if (!b.c.empty() && !b.c[0].is_zero()) throw InvalidInput("inner series must vanish at 0");
  int order = std::min(a.order, b.order);
  const K zero = a.c[0].zero();
  Series<K> acc;
  acc.order = order;
  acc.c.assign(static_cast<size_t>(order), zero);
  Series<K> bb = b;
  bb.order = order;
  bb.c.resize(static_cast<size_t>(order), zero);
  for (int i = order - 1; i >= 0; --i) {
    acc = s_mul(acc, bb);
    acc.c[0] += a.c[i];
  }
  return acc;
}

template <class K>
Series<K> s_derivative(const Series<K>& a) {
  Series<K> s;
  s.order = a.order - 1;
  for (int n = 0; n < s.order; ++n) s.c.push_back(a.c[n + 1] * a.c[0].from_integer(n + 1));
  return s;
}

template <class K>
Series<K> s_integrate(const Series<K>& a) {
  Series<K> s;
  s.order = a.order + 1;
  s.c.push_back(a.c[0].zero());
  for (int n = 0; n < a.order; ++n) {
    s.c.push_back(a.c[n] * a.c[0].from_rational(Rational(Integer(1), Integer(n + 1))));
  }
  return s;
}

// 1 / a for a(0) a unit; no division by integers, so no precision loss.
template <class K>
Series<K> s_inverse(const Series<K>& a) {
  K inv0 = a.c[0].inverse();
  Series<K> s;
  s.order = a.order;
  s.c.push_back(inv0);
  for (int n = 1; n < a.order; ++n) {
    K acc = a.c[0].zero();
    for (int i = 1; i <= n; ++i) acc += a.c[i] * s.c[n - i];
    s.c.push_back(-(acc * inv0));
  }
  return s;
}

inline Rational binomial(const Rational& alpha, int n) {
  Rational r(1);
  for (int i = 0; i < n; ++i) r = r * (alpha - Rational(i)) / Rational(i + 1);
  return r;
}

// Sum of binom(alpha, n) E^n with exact coefficients; a recurrence would
// divide by n and lose precision at every multiple of p.
template <class K>
Series<K> s_binomial(const Series<K>& E, const Rational& alpha) {
  if (!E.c[0].is_zero()) throw InvalidInput("binomial series needs E(0) = 0");
  const K zero = E.c[0].zero();
  Series<K> acc;
  acc.order = E.order;
  acc.c.assign(static_cast<size_t>(E.order), zero);
  acc.c[0] = zero.one();
  Series<K> power = acc;
  for (int n = 1; n < E.order; ++n) {
    power = s_mul(power, E);
    acc = s_add(acc, s_scale(power, zero.from_rational(binomial(alpha, n))));
  }
  return acc;
}

// Newton iteration Z <- Z - (a(Z) - u) / a'(Z).
template <class K>
Series<K> s_revert(const Series<K>& a) {
  if (!a.c[0].is_zero()) throw InvalidInput("reversion needs a(0) = 0");
  const K zero = a.c[0].zero();
  int order = a.order;
  Series<K> u;
  u.order = order;
  u.c.assign(static_cast<size_t>(order), zero);
  if (order > 1) u.c[1] = zero.one();
  Series<K> Z = u;
  if (order > 1) Z.c[1] = a.c[1].inverse();
  Series<K> da = s_derivative(a);
  da.c.push_back(zero);  // unused at this order: err has no constant term
  da.order = order;
  const K minus_one = -zero.one();
  for (int known = 2; known < 2 * order; known *= 2) {
    Series<K> err = s_add(s_compose(a, Z), s_scale(u, minus_one));
    Series<K> slope = s_compose(da, Z);
    Series<K> step = s_mul(err, s_inverse(slope));
    Z = s_add(Z, s_scale(step, minus_one));
    Z.c[0] = zero;
  }
  return Z;
}

// ------------------------------------------------------------- Hensel

template <class K>
auto reduce_poly(const Poly<K>& P) {
  using F = decltype(reduce_elem(std::declval<K>()));
  std::vector<F> c;
  for (const auto& a : P.coeffs()) c.push_back(reduce_elem(a));
  return Poly<F>(std::move(c));
}

template <class K, class F>
Poly<K> lift_poly(const Poly<F>& f, const K& like) {
  std::vector<K> c;
  for (const auto& a : f.coeffs()) c.push_back(lift_elem(a, like));
  return Poly<K>(std::move(c));
}

template <class K, class F>
Poly<K> hensel_lift(const Poly<K>& P, const Poly<F>& Abar) {
  if (P.is_zero()) throw InvalidInput("Hensel lifting of the zero polynomial");
  const K& like = P.lc();
  for (const auto& c : P.coeffs()) {
    if (!c.is_zero() && c.valuation() < 0) {
      throw InvalidInput("Hensel lifting needs p-integral input");
    }
  }
  Poly<F> Pbar = reduce_poly(P);
  auto [Bbar, rem] = Poly<F>::divmod(Pbar, Abar);
  if (!rem.is_zero()) throw InvalidInput("factor does not divide the reduction");
  auto [g, s, t] = xgcd(Abar, Bbar);
  if (g.degree() != 0) throw InvalidInput("Hensel factors are not coprime mod p");
  Poly<K> A = lift_poly(Abar, like);
  Poly<K> I0 = lift_poly(t, like);
  Poly<K> two = Poly<K>::constant(like.from_integer(2));
  int rounds = iterations_for(like.cap());
  for (int it = 0; it < rounds; ++it) {
    auto [B, r] = Poly<K>::divmod(P, A);
    if (r.is_zero()) break;
    // I = B^-1 mod A, refined from the residue inverse.
    Poly<K> I = I0;
    for (int j = 0; j < rounds; ++j) I = (I * (two - B * I)) % A;
    A = A + (r * I) % A;
  }
  return A;
}

}  // namespace tors3::detail

#endif  // TORS3_SRC_PADIC_INTERNAL_HPP_
