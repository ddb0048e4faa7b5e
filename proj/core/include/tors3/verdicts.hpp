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

#ifndef TORS3_VERDICTS_HPP_
#define TORS3_VERDICTS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tors3/curves.hpp"
#include "tors3/errors.hpp"
#include "tors3/finite_field.hpp"
#include "tors3/number_field.hpp"

namespace tors3 {

enum class CubicStatus { kReducible, kCyclic, kS3 };
enum class Signature { kTotallyReal, kComplex };

std::string to_string(CubicStatus s);
std::string to_string(Signature s);

struct CubicFieldClass {
  CubicStatus status = CubicStatus::kReducible;
  Signature signature = Signature::kTotallyReal;
  Rational discriminant;
};

// Reducible if h has a rational root; otherwise cyclic iff disc(h) is a
// square. A cubic has three real roots iff disc(h) >= 0.
CubicFieldClass classify_cubic(const QPoly& h);

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over a field F.
template <class F>
struct WeierstrassCurve {
  using Point = std::optional<std::pair<F, F>>;  // nullopt is O
  F a1, a2, a3, a4, a6;

  F discriminant() const {
    F two = a1.from_integer(2), four = a1.from_integer(4);
    F b2 = a1 * a1 + four * a2;
    F b4 = two * a4 + a1 * a3;
    F b6 = a3 * a3 + four * a6;
    F b8 = a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    return -(b2 * b2 * b8) - a1.from_integer(8) * b4 * b4 * b4 -
           a1.from_integer(27) * b6 * b6 + a1.from_integer(9) * b2 * b4 * b6;
  }

  bool contains(const Point& P) const {
    if (!P) return true;
    const auto& [x, y] = *P;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
  }

  Point negate(const Point& P) const {
    if (!P) return P;
    const auto& [x, y] = *P;
    return std::make_pair(x, -y - a1 * x - a3);
  }

  Point add(const Point& P, const Point& Q) const {
    if (!P) return Q;
    if (!Q) return P;
    const auto& [x1, y1] = *P;
    const auto& [x2, y2] = *Q;
    F lambda, nu;
    if (x1 == x2) {
      F denom = y1 + y1 + a1 * x1 + a3;
      if (!(y1 == y2) || denom.is_zero()) return std::nullopt;
      F three = x1.from_integer(3), two = x1.from_integer(2);
      lambda = (three * x1 * x1 + two * a2 * x1 + a4 - a1 * y1) / denom;
      nu = (-(x1 * x1 * x1) + a4 * x1 + two * a6 - a3 * y1) / denom;
    } else {
      lambda = (y2 - y1) / (x2 - x1);
      nu = (y1 * x2 - y2 * x1) / (x2 - x1);
    }
    F x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
    F y3 = -(lambda + a1) * x3 - nu - a3;
    return std::make_pair(x3, y3);
  }

  // Double-and-add.
  Point multiply(Point P, Integer n) const {
    if (n < 0) {
      P = negate(P);
      n = -n;
    }
    Point acc;
    while (n > 0) {
      if (mpz_odd_p(n.get_mpz_t())) acc = add(acc, P);
      n >>= 1;
      if (n > 0) P = add(P, P);
    }
    return acc;
  }
};

// #E(F_p) for odd p, by completing the square and summing Legendre symbols.
std::uint64_t count_points(const WeierstrassCurve<Fp>& E);

// y^2 + a xy + b y = x^3 + b x^2 over the cubic field K; (0, 0) lies on it.
struct TateCurve {
  std::shared_ptr<const NumberField> field;
  NumberFieldElement a, b;

  WeierstrassCurve<NumberFieldElement> model() const {
    auto z = a.zero();
    return {a, b, b, z, z};
  }
};

// Throws InvalidCurve if the model is singular.
TateCurve make_tate_curve(const NumberFieldElement& a, const NumberFieldElement& b);

// The curve with a point of order 16 over the cyclic field Q(alpha),
// alpha^3 - 8 alpha^2 - alpha + 8/9 = 0:
//   a = (-311 alpha^2 + 2543 alpha + 2240) / 2232,
//   b = (481 alpha^2 - 2465 alpha - 376) / 155682.
TateCurve exceptional_tate_curve();

// The same pair as published, with -11 alpha^2 in a. (0, 0) does not have
// order 16 on it; reducing at split primes and solving for one coefficient
// at a time singles out -311 as the alpha^2 coefficient.
TateCurve printed_exceptional_tate_curve();

// Exact order of (0, 0) if it is at most n_max, nullopt otherwise.
std::optional<int> torsion_order_at_origin(const TateCurve& E, int n_max);

enum class FiberKind { kCusp, kEllipticPoint };

struct FiberInterpretation {
  std::optional<Rational> t0;  // nullopt is t = infinity
  FiberKind kind = FiberKind::kCusp;
  std::optional<QPoly> cubic;
  std::optional<CubicFieldClass> field;
  std::optional<TateCurve> tate;
  std::string reason;
};

// A fiber is a cusp when it is degenerate, reducible, or a listed cusp.
// The corpus carries no (x, y) -> (a, b) data, so `tate` stays empty.
FiberInterpretation interpret_t(const DegreeThreeMap& m, const std::optional<Rational>& t0);

// The fiber below a point of the printed resolvent model (coordinate
// s = t + shift).
FiberInterpretation interpret_point(const DegreeThreeMap& m, const CurvePoint& P);

struct ScanRow {
  Rational t;
  Rational discriminant;
  CubicFieldClass cls;
};

struct ScanReport {
  std::string map_id;
  int height_bound = 0;
  std::vector<ScanRow> rows;         // non-degenerate fibers in scan order
  std::vector<Rational> degenerate;  // excluded from the counts
  std::optional<Rational> first_complex_witness;        // disc < 0
  std::optional<Rational> first_real_nonsquare_witness;  // disc > 0, not a square
  std::map<std::string, int> counts;

  std::string to_csv() const;
  nlohmann::json summary_json() const;
};

// t = a/b in lowest terms with |a|, b <= height_bound, ordered by height,
// then denominator, then |a|, negative first.
std::vector<Rational> scan_order(int height_bound);

ScanReport scan_family(const DegreeThreeMap& m, int height_bound, int threads = 0);

// C1(20) through its even quotient y^2 = q(u), u = s^2.
struct QuotientWeierstrass {
  QPoly quartic;  // q(u)
  Rational root;  // q(root) = 0
  // u = root + c1 / X and y = c1 Y / X^2.
  Rational c1;
  QPoly cubic;    // Y^2 = cubic(X), monic
};

// q with d(s) = q(s^2); throws InvalidInput if d is not even.
QPoly even_quotient(const QPoly& d);

// Moves the rational root to infinity: u = root + 1/z, Y = c1 y z^2,
// X = c1 z. Throws InvalidInput unless root is a simple root.
QuotientWeierstrass weierstrass_from_quartic(const QPoly& q, const Rational& root);

using RationalEcPoint = WeierstrassCurve<Rational>::Point;
WeierstrassCurve<Rational> weierstrass_curve(const QuotientWeierstrass& w);
RationalEcPoint quartic_to_weierstrass(const QuotientWeierstrass& w, const CurvePoint& P);

// (p, #E(F_p)) at the first `count` odd primes of good reduction.
std::vector<std::pair<std::uint64_t, std::uint64_t>> reduction_counts(
    const QuotientWeierstrass& w, int count);

// Bound on the l-part of E(Q)_tors for each l dividing g = gcd #E(F_p):
// l^min(v_l(g), rank * exponent), where the exponent is the least l-exponent
// of E(F_p) over the primes and the rank is the least l-rank of E(F_p),
// capped by the rational 2-torsion for l = 2 and by 1 for odd l (the Weil
// pairing puts mu_l in Q otherwise).
struct TorsionPart {
  std::uint64_t ell = 0;
  int valuation = 0;
  int exponent = 0;
  int rank = 0;
  Integer bound;
};

struct QuotientTorsionBound {
  Integer order_gcd;
  int rational_two_torsion = 0;  // rational roots of the cubic
  std::vector<TorsionPart> parts;
  Integer bound;
};

QuotientTorsionBound quotient_torsion_bound(const QuotientWeierstrass& w,
                                            const std::vector<std::uint64_t>& primes);

// Pulls the points (u, y) of the quotient back along u = s^2. E_points must
// be closed under y -> -y. The result is checked against a direct search
// on C1(20) up to height_check (skipped when height_check <= 0).
std::vector<CurvePoint> quartic_pullback_c120(const HyperellipticModel& c120,
                                              const std::vector<CurvePoint>& E_points,
                                              long height_check);

struct QuotientCertificate {
  std::string curve;
  std::string model;
  int rank_bound = 0;
  std::string rank_source;
  int search_height = 0;
  QuotientWeierstrass w;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
  QuotientTorsionBound torsion;
  std::vector<CurvePoint> quotient_points;
  std::vector<CurvePoint> claimed_points;
  bool certified = false;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
  static QuotientCertificate from_json(const nlohmann::json& j);
};

QuotientCertificate certify_quotient_route(const HyperellipticModel& h, int rank_bound,
                                           const std::string& rank_source, int search_height,
                                           int torsion_primes = 8);

// Recomputes the quotient, the reduction counts, the search and the
// pullback; empty means accepted.
std::vector<std::string> verify_quotient_certificate(const QuotientCertificate& cert);

}  // namespace tors3

#endif  // TORS3_VERDICTS_HPP_
