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

#ifndef TORS3_JACOBIAN_HPP_
#define TORS3_JACOBIAN_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tors3/curves.hpp"
#include "tors3/errors.hpp"
#include "tors3/finite_field.hpp"
#include "tors3/poly.hpp"

namespace tors3 {

// Reduced divisor class in Mumford form on w^2 = f(s), deg f = 2g + 1:
// u monic of degree <= g, deg v < deg u, u | v^2 - f. The class is
// sum over the roots of u of [(x, v(x)) - O].
template <class F>
struct Mumford {
  Poly<F> u;
  Poly<F> v;

  bool is_zero() const { return u.degree() == 0; }
  friend bool operator==(const Mumford& a, const Mumford& b) {
    return a.u == b.u && a.v == b.v;
  }
  friend bool operator!=(const Mumford& a, const Mumford& b) { return !(a == b); }
};

// Group law on the Jacobian of w^2 = f(s), f of odd degree 2g + 1 (not
// necessarily monic), by Cantor's algorithm.
template <class F>
class Jacobian {
 public:
  Jacobian(Poly<F> f, int g) : f_(std::move(f)), g_(g), one_(f_.lc().one()) {
    if (f_.degree() != 2 * g_ + 1) throw InvalidCurve("Cantor model must have degree 2g+1");
  }

  const Poly<F>& f() const { return f_; }
  int genus() const { return g_; }

  Mumford<F> zero() const { return {Poly<F>::constant(one_), Poly<F>()}; }

  // [P - O] for an affine point P = (x, y).
  Mumford<F> point(const F& x, const F& y) const {
    return {Poly<F>({-x, one_}), Poly<F>::constant(y)};
  }

  Mumford<F> neg(const Mumford<F>& D) const { return {D.u, -D.v}; }

  Mumford<F> add(const Mumford<F>& a, const Mumford<F>& b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto [d1, e1, e2] = xgcd(a.u, b.u);
    auto [d, c1, c2] = xgcd(d1, a.v + b.v);
    Poly<F> u = (a.u * b.u) / (d * d);
    Poly<F> v = (c1 * e1 * a.u * b.v + c1 * e2 * b.u * a.v + c2 * (a.v * b.v + f_)) / d;
    v = v % u;
    return reduce(std::move(u), std::move(v));
  }

  Mumford<F> sub(const Mumford<F>& a, const Mumford<F>& b) const { return add(a, neg(b)); }

  Mumford<F> mul(Integer n, const Mumford<F>& D) const {
    Mumford<F> base = D;
    if (n < 0) {
      n = -n;
      base = neg(D);
    }
    Mumford<F> acc = zero();
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) acc = add(acc, base);
      n >>= 1;
      if (n > 0) base = add(base, base);
    }
    return acc;
  }

  bool is_valid(const Mumford<F>& D) const {
    if (D.u.is_zero() || D.u.degree() > g_ || !(D.u.lc() == one_)) return false;
    if (D.v.degree() >= D.u.degree()) return false;
    return ((D.v * D.v - f_) % D.u).is_zero();
  }

 private:
  Mumford<F> reduce(Poly<F> u, Poly<F> v) const {
    while (u.degree() > g_) {
      Poly<F> up = (f_ - v * v) / u;
      v = (-v) % up;
      u = std::move(up);
    }
    u = u.monic();
    v = v % u;
    return {std::move(u), std::move(v)};
  }

  Poly<F> f_;
  int g_;
  F one_;
};

// Odd-degree model used for Jacobian arithmetic. Odd models are used
// as given. An even model y^2 = d(t) with a rational root r0 of d is
// moved to w^2 = f(s) := s^(2g+2) d(r0 + 1/s), deg f = 2g + 1, via
// t = r0 + 1/s, y = w / s^(g+1). The point (r0, 0) becomes O and the
// points at infinity become (0, +-sqrt(lc d)).
struct Chart {
  HyperellipticModel model;
  QPoly f;
  int g = 0;
  bool inverted = false;
  Rational r0;
  std::optional<Rational> sqrt_lc;

  // Image of a rational point; nullopt is O.
  std::optional<std::pair<Rational, Rational>> image(const CurvePoint& P) const;
  CurvePoint preimage(const std::optional<std::pair<Rational, Rational>>& Q) const;
};

// Throws Unsupported for even models without a rational Weierstrass point.
Chart make_chart(const HyperellipticModel& h);

// #C(F_{p^k}) of the smooth model, points at infinity included.
Integer count_points(const HyperellipticModel& h, std::uint64_t p, int k);

// Throws BadPrime unless p is an odd prime of good reduction for h.
void check_good_prime(const HyperellipticModel& h, std::uint64_t p);

struct LPolynomial {
  std::uint64_t p = 0;
  int g = 0;
  std::vector<Integer> a;  // a_0 .. a_{2g}

  Integer eval(const Integer& T) const;
  Integer at_one() const { return eval(1); }
  bool functional_equation_holds() const;
  // max | |alpha| - sqrt(p) | over reciprocal roots, floating point; only
  // a counting-bug detector.
  double max_root_deviation() const;
};

LPolynomial l_polynomial(const HyperellipticModel& h, std::uint64_t p);

using FpDivisor = Mumford<Fp>;

struct AbelianGroupStructure {
  std::vector<Integer> invariants;  // n_1 | n_2 | ...
  std::vector<FpDivisor> generators;
  Integer order() const;
};

// The group J(F_p) of a chart, with its order, structure and discrete
// logarithms. The structure is computed on first use.
class JacobianFp {
 public:
  JacobianFp(const Chart& chart, std::uint64_t p, std::uint64_t seed = 0x7031);
  ~JacobianFp();

  const Chart& chart() const { return chart_; }
  std::uint64_t p() const { return p_; }
  const Jacobian<Fp>& group() const { return *jac_; }
  const LPolynomial& l_polynomial() const { return l_; }
  const Integer& order() const { return order_; }
  const std::vector<std::pair<Integer, int>>& order_factors() const { return factors_; }

  // [P - O] for a rational point P, through the chart and reduction mod p.
  FpDivisor reduce(const CurvePoint& P) const;
  // Reduction of the chart image of P (nullopt for O).
  std::optional<std::pair<Fp, Fp>> reduce_point(const CurvePoint& P) const;
  // Affine points of the chart over F_p, sorted by (s, w).
  std::vector<std::pair<Fp, Fp>> affine_points() const;
  // [P - O] for every P in C(F_p): O first, then affine_points().
  std::vector<FpDivisor> point_classes() const;

  Integer element_order(const FpDivisor& D) const;
  FpDivisor random_element(std::mt19937_64& rng) const;

  const AbelianGroupStructure& structure() const;
  // Coordinates of D in the structure basis, c_i mod gcd(n_i, N). N = 0
  // means the full group.
  std::vector<Integer> coordinates(const FpDivisor& D, const Integer& N = 0) const;

 private:
  struct PrimePart;
  void compute_structure() const;
  std::vector<Integer> prime_part_coordinates(const PrimePart& part, const FpDivisor& D) const;

  Chart chart_;
  std::uint64_t p_;
  std::uint64_t seed_;
  std::unique_ptr<Jacobian<Fp>> jac_;
  LPolynomial l_;
  Integer order_;
  std::vector<std::pair<Integer, int>> factors_;

  mutable std::once_flag structure_once_;
  mutable AbelianGroupStructure structure_;
  mutable std::vector<PrimePart> parts_;
};

// Canonical hashable form of a divisor over F_p.
std::vector<std::uint64_t> divisor_key(const FpDivisor& D);

AbelianGroupStructure group_structure(const HyperellipticModel& h, std::uint64_t p);

// [P - base] in J(F_p).
FpDivisor mu_embed(const JacobianFp& J, const CurvePoint& P, const CurvePoint& base);
FpDivisor mu_embed(const JacobianFp& J, const std::optional<std::pair<Fp, Fp>>& P,
                   const CurvePoint& base);

// Smallest n >= 0 with target = n * gen in J(F_p)/N J(F_p), or nullopt
// if target is not in the subgroup generated by gen.
std::optional<Integer> dlog_multiple(const JacobianFp& J, const FpDivisor& target,
                                     const FpDivisor& gen, const Integer& N);

// gcd of #J(F_p) over the odd good primes in the list.
Integer torsion_bound(const HyperellipticModel& h, const std::vector<std::uint64_t>& primes);

enum class OrderStatus { kInfinite, kTorsion, kInconclusive };

struct InfiniteOrderReport {
  OrderStatus status = OrderStatus::kInconclusive;
  Integer torsion_bound;
  std::vector<std::pair<std::uint64_t, Integer>> reduction_orders;
  std::string reason;
};

// Decides whether [P1 - P2] has infinite order in J(Q), using that
// reduction is injective on torsion at odd primes of good reduction.
InfiniteOrderReport certify_infinite_order(const HyperellipticModel& h, const CurvePoint& P1,
                                           const CurvePoint& P2,
                                           const std::vector<std::uint64_t>& primes);

// Odd primes of good reduction for h, in increasing order.
std::vector<std::uint64_t> good_primes(const HyperellipticModel& h, int count,
                                       std::uint64_t start = 3);

}  // namespace tors3

#endif  // TORS3_JACOBIAN_HPP_
