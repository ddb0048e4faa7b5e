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

#ifndef TORS3_PADIC_HPP_
#define TORS3_PADIC_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tors3/errors.hpp"
#include "tors3/finite_field.hpp"
#include "tors3/jacobian.hpp"
#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Element of Q_p known modulo p^N (capped absolute precision). Stored as
// p^v * u with u a unit modulo p^(N - v); an element known only to be 0
// mod p^N has u = 0 and v = N. No result is ever more precise than the
// cap of its inputs.
class Padic {
 public:
  Padic() = default;
  static Padic zero(std::uint64_t p, long precision);
  static Padic from_integer(const Integer& n, std::uint64_t p, long precision);
  static Padic from_rational(const Rational& q, std::uint64_t p, long precision);

  std::uint64_t prime() const { return p_; }
  long precision() const { return N_; }
  long valuation() const { return v_; }
  long cap() const { return cap_; }
  const Integer& unit() const { return u_; }

  bool is_zero() const { return u_ == 0; }
  Padic zero() const { return zero(p_, cap_); }
  Padic one() const { return from_integer(1, p_, cap_); }
  Padic from_integer(const Integer& n) const { return from_integer(n, p_, cap_); }
  Padic from_rational(const Rational& q) const { return from_rational(q, p_, cap_); }
  Padic inverse() const;
  Padic with_precision(long N) const;

  // The value mod p^k in [0, p^k); needs v >= 0 and N >= k.
  Integer residue(long k) const;
  // p^v * u as an exact rational.
  Rational lift() const;
  std::string to_string() const;

  Padic operator-() const;
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }
  Padic& operator/=(const Padic& o) { return *this = *this * o.inverse(); }
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }
  // Same value modulo the smaller precision.
  friend bool operator==(const Padic& a, const Padic& b) { return (a - b).is_zero(); }
  friend std::ostream& operator<<(std::ostream& os, const Padic& a) {
    return os << a.to_string();
  }

 private:
  Padic(std::uint64_t p, long cap, long N, long v, Integer u)
      : p_(p), cap_(cap), N_(N), v_(v), u_(std::move(u)) {}
  static Padic normalize(std::uint64_t p, long cap, Integer w, long vb, long N);

  std::uint64_t p_ = 0;
  long cap_ = 0;
  long N_ = 0;
  long v_ = 0;
  Integer u_;
};

using PadicPoly = Poly<Padic>;

PadicPoly to_padic(const QPoly& f, std::uint64_t p, long precision);

// Truncated power series sum c_n s^n, known modulo s^order; c has
// exactly `order` entries.
template <class K>
struct Series {
  std::vector<K> c;
  int order = 0;

  K coeff(int n) const {
    if (n < 0 || n >= order) throw InvalidInput("series coefficient beyond truncation order");
    return c[static_cast<size_t>(n)];
  }
};

using PadicSeries = Series<Padic>;

PadicSeries series_from_poly(const PadicPoly& f, int order, const Padic& like);

PadicSeries series_add(const PadicSeries& a, const PadicSeries& b);
PadicSeries series_mul(const PadicSeries& a, const PadicSeries& b);
PadicSeries series_scale(const PadicSeries& a, const Padic& s);
// a(b(s)) for b(0) = 0.
PadicSeries series_compose(const PadicSeries& a, const PadicSeries& b);
PadicSeries series_derivative(const PadicSeries& a);
// Antiderivative vanishing at 0.
PadicSeries series_integrate(const PadicSeries& a);
// (1 + E)^alpha for E(0) = 0.
PadicSeries series_binomial(const PadicSeries& E, const Rational& alpha);
// Compositional inverse of a with a(0) = 0 and a'(0) a unit.
PadicSeries series_revert(const PadicSeries& a);

// Lifts P mod p = Abar * Bbar (Abar monic, coprime to Bbar) to P = A * B
// over Z_p and returns the monic A. P must be p-integral.
PadicPoly hensel_factor(const PadicPoly& P, const FpPoly& Abar);

// Square root of a unit with the given residue.
Padic padic_sqrt(const Padic& a, std::uint64_t residue);

// Largest n with v(c_n) minimal; with skip_constant the minimum runs over
// n >= 1, which bounds the zeros of c_0' + sum_{n>=1} c_n t^n in Z_p for
// every c_0'. Throws PrecisionError when a coefficient could still tie
// the minimum.
int strassmann_bound(const std::vector<Padic>& c, bool skip_constant = false);

// Numerators h_i of t^i dt / y = h_i(s) ds / w on the chart, i < g.
std::vector<QPoly> chart_differentials(const Chart& chart);

struct ResidueDisc {
  enum class Kind { kAffine, kWeierstrass, kInfinity };
  Kind kind = Kind::kAffine;
  std::uint64_t p = 0;
  Fp x, y;  // chart coordinates of the center, unused for kInfinity
  // Integer lift of x used as the expansion point of an affine disc; any
  // lift is admissible.
  Integer lift;

  std::string to_string() const;
};

ResidueDisc disc_of(const Chart& chart, std::uint64_t p,
                    const std::optional<std::pair<Fp, Fp>>& center);
// The disc of the reduction of a rational point.
ResidueDisc disc_of(const Chart& chart, std::uint64_t p, const CurvePoint& P);
// One disc per point of C(F_p): O first, then the affine chart points.
std::vector<ResidueDisc> all_discs(const Chart& chart, std::uint64_t p);

// Chart-coordinate expansion (x(s), y(s)) in the disc's local parameter:
// s = x - x0 (affine), s = y (Weierstrass). For the disc at O the pair is
// (z(s), Y(s)) on the chart z = 1/x, Y = y z^(g+1), with s = Y.
struct LocalExpansion {
  PadicSeries x, y;
  bool other_chart = false;
};

LocalExpansion local_expansion(const Chart& chart, const ResidueDisc& disc, int order,
                               long precision);

// h(x) dx / y as w(s) ds in the disc's parameter.
PadicSeries omega_series(const Chart& chart, const ResidueDisc& disc, const QPoly& h, int order,
                         long precision);

// Local parameter value of a rational point lying in the disc.
Padic disc_parameter(const Chart& chart, const ResidueDisc& disc, const CurvePoint& P,
                     long precision);

// Integral of the basis differential omega_index (t^i dt / y) from P to Q
// in a common residue disc, to absolute precision k.
Padic tiny_integral(const Chart& chart, int omega_index, const CurvePoint& P,
                    const CurvePoint& Q, std::uint64_t p, long k);
// The same, expanded around the given disc (for instance with another
// lift of its center). Both points must lie in it.
Padic tiny_integral(const Chart& chart, const ResidueDisc& disc, int omega_index,
                    const CurvePoint& P, const CurvePoint& Q, long k);
// The same for sum a_i omega_i.
Padic tiny_integral(const Chart& chart, const std::vector<Integer>& a, const CurvePoint& P,
                    const CurvePoint& Q, std::uint64_t p, long k);

struct IntegrationResult {
  std::vector<Padic> integrals;  // I_i = int_{P2}^{P1} t^i dt / y
  std::uint64_t p = 0;
  long k = 0;
  Integer m;             // order of [P1 - P2] in J(F_p)
  Integer multiple;      // the multiple of [P1 - P2] actually decomposed
  long working_precision = 0;
};

// Decomposes multiplier * m * [P1 - P2], which lies in the kernel of
// reduction, and divides by that multiple.
IntegrationResult integrate_between(const Chart& chart, const CurvePoint& P1,
                                    const CurvePoint& P2, std::uint64_t p, long k,
                                    int multiplier = 1);

// Coefficient vectors a (mod p^k) with sum a_i I_i = 0 on the rank-r part
// of J(Q). rank 0 gives the full space; rank 1 uses the integrals of one
// generator, pivoting on the entry of least valuation.
std::vector<std::vector<Integer>> annihilator_space(const std::vector<Padic>& I, int g, int rank,
                                                    long k);
bool in_span(const std::vector<Integer>& a, const std::vector<std::vector<Integer>>& basis,
             std::uint64_t p, long k);

// Whether sum a_i omega_i reduces to a differential without zero at the
// center of the disc.
bool nonvanishing_at(const Chart& chart, const std::vector<Integer>& a, const ResidueDisc& disc);
bool nonvanishing_at(const Chart& chart, const QPoly& h, const ResidueDisc& disc);

// Strassmann bound for the zeros in the disc of the antiderivative of
// sum a_i omega_i, a known modulo p^k.
int disc_point_bound(const Chart& chart, const std::vector<Integer>& a, const ResidueDisc& disc,
                     long k);

}  // namespace tors3

#endif  // TORS3_PADIC_HPP_
