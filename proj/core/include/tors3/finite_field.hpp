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

#ifndef TORS3_FINITE_FIELD_HPP_
#define TORS3_FINITE_FIELD_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"
#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Element of the prime field F_p, p < 2^63.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}
  static Fp from_rational(const Rational& q, std::uint64_t p) {
    return Fp(rational_mod(q, p), p);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  std::uint64_t index() const { return v_; }

  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp from_integer(const Integer& n) const {
    Integer r = n % Integer(static_cast<unsigned long>(p_));
    if (r < 0) r += static_cast<unsigned long>(p_);
    return Fp(r.get_ui(), p_);
  }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  Fp inverse() const {
    if (v_ == 0) throw InvalidInput("inverse of zero in F_p");
    return Fp(invmod(v_, p_), p_);
  }
  Fp pow(std::uint64_t e) const { return Fp(powmod(v_, e, p_), p_); }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(const Fp& o) {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    v_ = mulmod(v_, o.v_, p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) {
    return os << a.v_;
  }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

using FpPoly = Poly<Fp>;

// F_p[X]/(m) for a monic irreducible m of degree k.
struct FqContext {
  std::uint64_t p = 0;
  int k = 0;
  std::vector<std::uint64_t> modulus;  // k+1 entries, monic

  Integer order() const;
};

// The fixed modulus for (p, k): the monic irreducible whose coefficient
// vector (c_0 + c_1 p + ... + c_{k-1} p^{k-1}) is smallest. Computed once
// per (p, k) and cached for the process lifetime.
std::shared_ptr<const FqContext> canonical_field(std::uint64_t p, int k);
std::shared_ptr<const FqContext> field_with_modulus(const FpPoly& modulus);

bool is_irreducible(const FpPoly& f);

class Fq {
 public:
  Fq() = default;
  Fq(std::shared_ptr<const FqContext> ctx, std::vector<std::uint64_t> c);
  static Fq from_index(std::shared_ptr<const FqContext> ctx, std::uint64_t n);
  static Fq from_fp(std::shared_ptr<const FqContext> ctx, std::uint64_t v);
  // The class of X.
  static Fq generator(std::shared_ptr<const FqContext> ctx);

  const std::shared_ptr<const FqContext>& context() const { return ctx_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t index() const;

  Fq zero() const { return Fq(ctx_, {}); }
  Fq one() const { return from_fp(ctx_, 1); }
  Fq from_integer(const Integer& n) const;
  bool is_zero() const;
  Fq inverse() const;
  Fq pow(const Integer& e) const;
  bool is_square() const;
  // A square root if one exists (zero for zero).
  std::optional<Fq> sqrt() const;

  Fq operator-() const;
  Fq& operator+=(const Fq& o);
  Fq& operator-=(const Fq& o);
  Fq& operator*=(const Fq& o);
  Fq& operator/=(const Fq& o) { return *this *= o.inverse(); }
  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  friend bool operator==(const Fq& a, const Fq& b) { return a.c_ == b.c_; }
  friend std::ostream& operator<<(std::ostream& os, const Fq& a);

 private:
  std::shared_ptr<const FqContext> ctx_;
  std::vector<std::uint64_t> c_;  // length k
};

using FqPoly = Poly<Fq>;

inline Integer field_order(const Fp& a) {
  return Integer(static_cast<unsigned long>(a.modulus()));
}
inline Integer field_order(const Fq& a) { return a.context()->order(); }
inline Fp field_element(const Fp& like, std::uint64_t n) {
  return Fp(n, like.modulus());
}
inline Fq field_element(const Fq& like, std::uint64_t n) {
  return Fq::from_index(like.context(), n);
}

// base^e mod m
template <class F>
Poly<F> powmod(const Poly<F>& base, Integer e, const Poly<F>& m) {
  const F& like = m.lc();
  Poly<F> result = Poly<F>::constant(like.one()) % m;
  Poly<F> b = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * b) % m;
    e >>= 1;
    if (e > 0) b = (b * b) % m;
  }
  return result;
}

namespace detail {

template <class F>
void split_linear(const Poly<F>& r, const Integer& q, std::vector<F>& out) {
  if (r.degree() <= 0) return;
  if (r.degree() == 1) {
    out.push_back(-(r.coeff(0) / r.lc()));
    return;
  }
  const F& like = r.lc();
  Integer e = (q - 1) / 2;
  for (std::uint64_t a = 0;; ++a) {
    Poly<F> xa = Poly<F>::x(like) + Poly<F>::constant(field_element(like, a));
    Poly<F> w = powmod(xa, e, r) - Poly<F>::constant(like.one());
    Poly<F> d = gcd(r, w);
    if (d.degree() > 0 && d.degree() < r.degree()) {
      split_linear(d, q, out);
      split_linear(r / d, q, out);
      return;
    }
  }
}

}  // namespace detail

// Roots in the coefficient field, with multiplicity, sorted by index.
template <class F>
std::vector<F> ff_poly_roots(const Poly<F>& f) {
  if (f.is_zero()) throw InvalidInput("roots of the zero polynomial");
  std::vector<F> out;
  if (f.degree() <= 0) return out;
  const F& like = f.lc();
  Integer q = field_order(like);
  if (mpz_even_p(q.get_mpz_t())) throw InvalidInput("characteristic 2");
  Poly<F> g = f.monic();
  Poly<F> X = Poly<F>::x(like);
  Poly<F> h = powmod(X, q, g);
  Poly<F> r = gcd(g, h - X);
  std::vector<F> distinct;
  detail::split_linear(r, q, distinct);
  for (const F& a : distinct) {
    Poly<F> lin = X - Poly<F>::constant(a);
    Poly<F> rest = g;
    while (true) {
      auto [quo, rem] = Poly<F>::divmod(rest, lin);
      if (!rem.is_zero()) break;
      out.push_back(a);
      rest = quo;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const F& a, const F& b) { return a.index() < b.index(); });
  return out;
}

}  // namespace tors3

#endif  // TORS3_FINITE_FIELD_HPP_
