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

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "tors3/algebra.hpp"
#include "tors3/curves.hpp"
#include "tors3/ntheory.hpp"
#include "tors3/verdicts.hpp"

namespace tors3 {
namespace {

const std::vector<DegreeThreeMap>& corpus() {
  static const auto c = load_corpus(default_corpus_path());
  return c;
}

const QPoly kAlphaPoly{Rational(8) / 9, Rational(-1), Rational(-8), Rational(1)};

TEST(ClassifyCubic, Examples) {
  CubicFieldClass a = classify_cubic(kAlphaPoly);
  EXPECT_EQ(a.status, CubicStatus::kCyclic);
  EXPECT_EQ(a.signature, Signature::kTotallyReal);
  EXPECT_TRUE(is_rational_square(a.discriminant));

  CubicFieldClass b = classify_cubic(QPoly{Rational(-2), 0, 0, 1});
  EXPECT_EQ(b.status, CubicStatus::kS3);
  EXPECT_EQ(b.signature, Signature::kComplex);
  EXPECT_EQ(b.discriminant, -108);

  EXPECT_EQ(classify_cubic(QPoly{0, -1, 0, 1}).status, CubicStatus::kReducible);
  EXPECT_THROW(classify_cubic(QPoly{1, 0, 1}), InvalidInput);
}

TEST(ClassifyCubic, PartitionOnRandomCubics) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-30, 30);
  int cyclic = 0;
  for (int i = 0; i < 10000; ++i) {
    QPoly h{Rational(c(rng)), Rational(c(rng)), Rational(c(rng)), Rational(1)};
    if (discriminant(h).is_zero()) continue;
    CubicFieldClass k = classify_cubic(h);
    const bool reducible = !cubic_rational_roots(h).empty();
    EXPECT_EQ(k.status == CubicStatus::kReducible, reducible);
    if (k.status == CubicStatus::kCyclic) {
      ++cyclic;
      EXPECT_TRUE(is_rational_square(k.discriminant));
      EXPECT_GT(k.discriminant.sign(), 0);
      EXPECT_EQ(k.signature, Signature::kTotallyReal);
    }
    if (k.status == CubicStatus::kS3) EXPECT_FALSE(is_rational_square(k.discriminant));
    EXPECT_EQ(k.signature == Signature::kComplex, k.discriminant.sign() < 0);
  }
  EXPECT_GT(cyclic, 0);
}

TEST(TateCurve, ExceptionalCurveHasOrder16) {
  TateCurve E = exceptional_tate_curve();
  EXPECT_EQ(torsion_order_at_origin(E, 40), 16);
  EXPECT_EQ(torsion_order_at_origin(E, 15), std::nullopt);
  // (0, 0) is never 2-torsion on this form when b != 0.
  auto W = E.model();
  WeierstrassCurve<NumberFieldElement>::Point P = std::make_pair(E.a.zero(), E.a.zero());
  EXPECT_TRUE(W.add(P, P).has_value());
  EXPECT_TRUE(W.contains(W.add(P, P)));
}

TEST(TateCurve, PublishedPairIsNotSixteenTorsion) {
  // The pair as published (-11 alpha^2 in a) has no small torsion at (0, 0).
  EXPECT_EQ(torsion_order_at_origin(printed_exceptional_tate_curve(), 40), std::nullopt);
}

TEST(TateCurve, SingularAndBadInput) {
  auto K = make_number_field(kAlphaPoly);
  NumberFieldElement z(K, QPoly());
  EXPECT_THROW(make_tate_curve(z, z), InvalidCurve);
  TateCurve degenerate{K, z, z};
  EXPECT_THROW(torsion_order_at_origin(degenerate, 16), InvalidCurve);
  EXPECT_THROW(torsion_order_at_origin(exceptional_tate_curve(), 0), InvalidInput);
}

TEST(TateCurve, MultiplesAgreeTwoWays) {
  TateCurve E = exceptional_tate_curve();
  auto W = E.model();
  using Point = WeierstrassCurve<NumberFieldElement>::Point;
  const Point P = std::make_pair(E.a.zero(), E.a.zero());
  Point acc;
  for (int n = 0; n <= 17; ++n) {
    EXPECT_EQ(W.multiply(P, n), acc) << n;
    EXPECT_EQ(W.multiply(P, -n), W.negate(acc)) << n;
    acc = W.add(acc, P);
  }
}

TEST(TateCurve, OrderDividesReductionAtSplitPrime) {
  TateCurve E = exceptional_tate_curve();
  int checked = 0;
  for (std::uint64_t p = 5; p < 400 && checked < 3; p = next_prime(p)) {
    std::vector<std::uint64_t> roots;
    bool integral = true;
    for (const QPoly* q : {&E.a.rep(), &E.b.rep(), &kAlphaPoly}) {
      for (const auto& c : q->coeffs()) {
        if (mpz_divisible_ui_p(c.denominator().get_mpz_t(), p)) integral = false;
      }
    }
    if (!integral) continue;
    for (std::uint64_t r = 0; r < p; ++r) {
      if (rational_mod(kAlphaPoly.eval(Rational(Integer(static_cast<unsigned long>(r)))), p) == 0) {
        roots.push_back(r);
      }
    }
    if (roots.size() != 3) continue;
    for (std::uint64_t r : roots) {
      auto red = [&](const NumberFieldElement& v) {
        Fp acc(0, p);
        const Fp x(r, p);
        for (int i = v.rep().degree(); i >= 0; --i) acc = acc * x + Fp::from_rational(v.rep().coeff(i), p);
        return acc;
      };
      const Fp A = red(E.a), B = red(E.b), z(0, p);
      WeierstrassCurve<Fp> Ep{A, B, B, z, z};
      if (Ep.discriminant().is_zero()) continue;
      EXPECT_EQ(count_points(Ep) % 16, 0u) << "p = " << p;
      WeierstrassCurve<Fp>::Point P = std::make_pair(z, z);
      EXPECT_FALSE(Ep.multiply(P, 16).has_value());
      EXPECT_TRUE(Ep.multiply(P, 8).has_value());
      ++checked;
    }
  }
  EXPECT_GE(checked, 3);
}

TEST(CountPoints, MatchesEnumeration) {
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL}) {
    WeierstrassCurve<Fp> E{Fp(1, p), Fp(2, p), Fp(3, p), Fp(4, p), Fp(5, p)};
    if (E.discriminant().is_zero()) continue;
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
      for (std::uint64_t y = 0; y < p; ++y) n += E.contains(std::make_pair(Fp(x, p), Fp(y, p)));
    }
    EXPECT_EQ(count_points(E), n);
  }
}

TEST(InterpretT, PublishedFibers) {
  const auto& f4 = find_map(corpus(), "X1(16)/f4");
  FiberInterpretation e = interpret_t(f4, Rational(-1) / 4);
  EXPECT_EQ(e.kind, FiberKind::kEllipticPoint);
  ASSERT_TRUE(e.field);
  EXPECT_EQ(e.field->status, CubicStatus::kCyclic);
  EXPECT_TRUE(nf_is_isomorphic(kAlphaPoly, *e.cubic));

  EXPECT_EQ(interpret_t(find_map(corpus(), "X1(16)/f2"), Rational(0)).kind, FiberKind::kCusp);
  const auto& f1 = find_map(corpus(), "X1(16)/f1");
  EXPECT_EQ(interpret_t(f1, Rational(1) / 2).kind, FiberKind::kCusp);
  // The point (1/2, 0) of the published C1(16) sits over t = 0.
  EXPECT_EQ(interpret_point(f1, CurvePoint::affine(Rational(1) / 2, 0)).kind, FiberKind::kCusp);
  EXPECT_EQ(interpret_point(f1, CurvePoint::infinity(0)).kind, FiberKind::kCusp);
}

TEST(InterpretT, CuspExactlyOnDegenerateOrReducibleFibers) {
  for (const auto& m : corpus()) {
    for (const Rational& t : scan_order(6)) {
      bool special = false;
      try {
        special = classify_cubic(fiber_cubic(m, t)).status == CubicStatus::kReducible;
      } catch (const DegenerateFiber&) {
        special = true;
      }
      EXPECT_EQ(interpret_t(m, t).kind == FiberKind::kCusp, special) << m.id << " t = " << t;
    }
  }
}

TEST(ScanOrder, HeightOrderedAndComplete) {
  auto ts = scan_order(4);
  std::set<Rational> seen(ts.begin(), ts.end());
  EXPECT_EQ(seen.size(), ts.size());
  EXPECT_EQ(ts.front(), 0);
  for (size_t i = 1; i < ts.size(); ++i) EXPECT_LE(ts[i - 1].height(), ts[i].height());
  int n = 0;
  for (long b = 1; b <= 4; ++b) {
    for (long a = -4; a <= 4; ++a) n += std::gcd(a, b) == 1;
  }
  EXPECT_EQ(static_cast<int>(ts.size()), n);
}

TEST(ScanFamily, WitnessesForEveryMap) {
  for (const auto& m : corpus()) {
    ScanReport r = scan_family(m, 12);
    ASSERT_TRUE(r.first_complex_witness) << m.id;
    ASSERT_TRUE(r.first_real_nonsquare_witness) << m.id;
    QPoly c = fiber_cubic(m, *r.first_complex_witness);
    EXPECT_LT(discriminant(c).sign(), 0);
    QPoly d = fiber_cubic(m, *r.first_real_nonsquare_witness);
    EXPECT_GT(discriminant(d).sign(), 0);
    EXPECT_FALSE(is_rational_square(discriminant(d)));
    int counted = 0;
    for (const auto& [k, v] : r.counts) {
      if (k != "degenerate") counted += v;
    }
    EXPECT_EQ(counted, static_cast<int>(r.rows.size()));
    EXPECT_EQ(r.rows.size() + r.degenerate.size(), scan_order(12).size());
    for (const auto& t : r.degenerate) {
      EXPECT_THROW(fiber_cubic(m, t), DegenerateFiber);
    }
  }
}

TEST(ScanFamily, ExceptionalValueIsCyclic) {
  ScanReport r = scan_family(find_map(corpus(), "X1(16)/f4"), 4);
  bool found = false;
  for (const auto& row : r.rows) {
    if (row.t == Rational(-1) / 4) {
      found = true;
      EXPECT_EQ(row.cls.status, CubicStatus::kCyclic);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_NE(r.to_csv().find("-1/4,3272481/65536,cyclic,totally_real"), std::string::npos);
  EXPECT_THROW(scan_family(find_map(corpus(), "X1(16)/f4"), 0), InvalidInput);
}

TEST(ScanFamily, IndependentOfEvaluationOrder) {
  const auto& m = find_map(corpus(), "X1(20)/f2");
  ScanReport a = scan_family(m, 8, 1);
  ScanReport b = scan_family(m, 8, 7);
  EXPECT_EQ(a.to_csv(), b.to_csv());
  EXPECT_EQ(a.summary_json(), b.summary_json());
}

HyperellipticModel c1_20() { return printed_model(find_map(corpus(), "C1(20)")); }

TEST(Quotient, WeierstrassTransform) {
  QPoly q = even_quotient(c1_20().d());
  EXPECT_EQ(q, (QPoly{5, 0, 22, 0, -27}));
  EXPECT_THROW(even_quotient(QPoly{0, 1, 1}), InvalidInput);
  QuotientWeierstrass w = weierstrass_from_quartic(q, 1);
  EXPECT_EQ(w.cubic.degree(), 3);
  EXPECT_EQ(w.cubic.lc(), 1);
  auto E = weierstrass_curve(w);
  EXPECT_FALSE(E.discriminant().is_zero());
  EXPECT_EQ(quartic_to_weierstrass(w, CurvePoint::affine(1, 0)), std::nullopt);
  for (const auto& P : {CurvePoint::affine(-1, 0), CurvePoint::affine(Rational(1) / 3, Rational(8) / 3),
                        CurvePoint::affine(Rational(-1) / 3, Rational(-8) / 3)}) {
    EXPECT_TRUE(E.contains(quartic_to_weierstrass(w, P))) << P;
  }
  EXPECT_THROW(weierstrass_from_quartic(q, 2), InvalidInput);
}

TEST(Quotient, TorsionBoundIsSix) {
  QuotientWeierstrass w = weierstrass_from_quartic(even_quotient(c1_20().d()), 1);
  auto counts = reduction_counts(w, 8);
  ASSERT_EQ(counts.size(), 8u);
  std::vector<std::uint64_t> primes;
  for (auto [p, n] : counts) {
    primes.push_back(p);
    EXPECT_EQ(n % 6, 0u);
  }
  QuotientTorsionBound tb = quotient_torsion_bound(w, primes);
  // Every #E(F_p) is divisible by 12; the 2-part is cut to Z/2 by the single
  // rational 2-torsion point and a prime where E(F_p) has no point of order 4.
  EXPECT_EQ(tb.order_gcd, 12);
  EXPECT_EQ(tb.rational_two_torsion, 1);
  EXPECT_EQ(tb.bound, 6);
}

TEST(Quotient, PullbackGivesPlusMinusOne) {
  const auto h = c1_20();
  std::vector<CurvePoint> E{CurvePoint::affine(1, 0), CurvePoint::affine(-1, 0),
                            CurvePoint::affine(Rational(1) / 3, Rational(8) / 3),
                            CurvePoint::affine(Rational(1) / 3, Rational(-8) / 3),
                            CurvePoint::affine(Rational(-1) / 3, Rational(8) / 3),
                            CurvePoint::affine(Rational(-1) / 3, Rational(-8) / 3)};
  auto pts = quartic_pullback_c120(h, E, 30);
  EXPECT_EQ(std::set<CurvePoint>(pts.begin(), pts.end()),
            (std::set<CurvePoint>{CurvePoint::affine(1, 0), CurvePoint::affine(-1, 0)}));
  // Negative or non-square u contributes nothing.
  std::vector<CurvePoint> thirds(E.begin() + 2, E.end());
  EXPECT_THROW(quartic_pullback_c120(h, thirds, 30), InvalidInput);  // (1, 0) found by search
  EXPECT_TRUE(quartic_pullback_c120(h, thirds, 0).empty());
  // u = 0 would need y^2 = 5.
  EXPECT_FALSE(is_rational_square(even_quotient(h.d()).eval(0)));
  std::vector<CurvePoint> lopsided{CurvePoint::affine(Rational(1) / 3, Rational(8) / 3)};
  EXPECT_THROW(quartic_pullback_c120(h, lopsided, 0), InvalidInput);
}

TEST(Quotient, CertificateRoundTrip) {
  QuotientCertificate c = certify_quotient_route(c1_20(), 0, "external: two-descent", 64);
  ASSERT_TRUE(c.certified) << c.failures[0];
  EXPECT_EQ(std::set<CurvePoint>(c.claimed_points.begin(), c.claimed_points.end()),
            (std::set<CurvePoint>{CurvePoint::affine(1, 0), CurvePoint::affine(-1, 0)}));
  EXPECT_EQ(c.quotient_points.size(), 6u);
  auto back = QuotientCertificate::from_json(nlohmann::json::parse(c.to_json().dump()));
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_TRUE(verify_quotient_certificate(back).empty());

  auto missing = back;
  missing.quotient_points.pop_back();
  EXPECT_FALSE(verify_quotient_certificate(missing).empty());
  auto wrong = back;
  wrong.counts[0].second += 1;
  EXPECT_FALSE(verify_quotient_certificate(wrong).empty());
  auto extra = back;
  extra.claimed_points.push_back(CurvePoint::affine(0, 0));
  EXPECT_FALSE(verify_quotient_certificate(extra).empty());

  EXPECT_FALSE(certify_quotient_route(c1_20(), 1, "x", 64).certified);
}

}  // namespace
}  // namespace tors3
