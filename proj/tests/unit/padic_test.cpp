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

#include <gtest/gtest.h>

#include "tors3/curves.hpp"
#include "tors3/padic.hpp"

namespace tors3 {
namespace {

HyperellipticModel curve(const std::string& id) {
  static const auto corpus = load_corpus(default_corpus_path());
  return printed_model(find_map(corpus, id));
}

const CurvePoint P1 = CurvePoint::affine(0, 0);
const CurvePoint P2 = CurvePoint::infinity(1);
const CurvePoint P3 = CurvePoint::infinity(-1);

Integer pk(std::uint64_t p, long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

TEST(Padic, RationalsAndPrecision) {
  Padic a = Padic::from_rational(Rational(Integer(50), Integer(3)), 5, 10);
  EXPECT_EQ(a.valuation(), 2);
  EXPECT_EQ(a.precision(), 10);
  Padic b = Padic::from_rational(Rational(Integer(1), Integer(25)), 5, 10);
  EXPECT_EQ(b.valuation(), -2);
  Padic c = a * b;  // 2/3, known mod 5^8
  EXPECT_EQ(c.valuation(), 0);
  EXPECT_EQ(c.precision(), 8);
  EXPECT_EQ(c.residue(8), rational_mod(Rational(Integer(2), Integer(3)), pk(5, 8)));
  EXPECT_THROW(c.residue(9), PrecisionError);
  Padic z = a - a;
  EXPECT_TRUE(z.is_zero());
  EXPECT_THROW(z.inverse(), PrecisionError);
  // Inverting p^2 u known mod p^10 leaves p^-2 u^-1 known mod p^6.
  Padic ai = a.inverse();
  EXPECT_EQ(ai.valuation(), -2);
  EXPECT_EQ(ai.precision(), 6);
}

TEST(Padic, RingOperationsMatchRationalArithmetic) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> num(-2000, 2000), den(1, 300);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const long k = 12;
    for (int trial = 0; trial < 300; ++trial) {
      Rational x(Integer(num(rng)), Integer(den(rng)));
      Rational y(Integer(num(rng)), Integer(den(rng)));
      if (x.is_zero() || y.is_zero()) continue;
      Padic X = Padic::from_rational(x, p, k), Y = Padic::from_rational(y, p, k);
      auto agrees = [&](const Padic& got, const Rational& want) {
        if (want.is_zero()) return got.is_zero();
        Padic w = Padic::from_rational(want, p, k + 20);
        return (got - w).is_zero();
      };
      EXPECT_TRUE(agrees(X + Y, x + y));
      EXPECT_TRUE(agrees(X - Y, x - y));
      EXPECT_TRUE(agrees(X * Y, x * y));
      EXPECT_TRUE(agrees(X / Y, x / y));
      // the reported precision is never better than the inputs allow
      EXPECT_LE((X * Y).precision(), k + std::max(X.valuation(), Y.valuation()));
    }
  }
}

PadicSeries random_series(std::mt19937_64& rng, std::uint64_t p, long N, int order, bool unit_linear) {
  std::uniform_int_distribution<long> d(-50, 50);
  PadicSeries s;
  s.order = order;
  s.c.push_back(Padic::zero(p, N));
  for (int i = 1; i < order; ++i) s.c.push_back(Padic::from_integer(d(rng), p, N));
  if (unit_linear) s.c[1] = Padic::from_integer(1 + static_cast<long>(p) * d(rng), p, N);
  return s;
}

TEST(Series, ReversionAndBinomialIdentities) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    PadicSeries a = random_series(rng, 5, 20, 12, true);
    PadicSeries z = series_revert(a);
    PadicSeries id = series_compose(a, z);
    for (int n = 0; n < id.order; ++n) {
      EXPECT_TRUE((id.c[n] - Padic::from_integer(n == 1 ? 1 : 0, 5, 20)).is_zero()) << n;
    }
    PadicSeries E = series_scale(random_series(rng, 5, 20, 12, false), Padic::from_integer(5, 5, 20));
    PadicSeries r = series_binomial(E, Rational(Integer(1), Integer(2)));
    PadicSeries sq = series_mul(r, r);
    for (int n = 0; n < sq.order; ++n) {
      Padic want = n == 0 ? Padic::from_integer(1, 5, 20) + E.c[0] : E.c[n];
      EXPECT_TRUE((sq.c[n] - want).is_zero()) << n;
    }
    PadicSeries inv = series_binomial(E, Rational(-1));
    PadicSeries one = series_mul(inv, series_add(E, series_from_poly(PadicPoly({Padic::from_integer(1, 5, 20)}), 12, E.c[0])));
    for (int n = 0; n < one.order; ++n) {
      EXPECT_TRUE((one.c[n] - Padic::from_integer(n == 0 ? 1 : 0, 5, 20)).is_zero());
    }
  }
}

TEST(Hensel, LiftsFactorization) {
  // (x^2 + 1)(x - 3) + 7 (x + 2) over Z_7: factors lift from F_7.
  QPoly q = parse_poly("(x^2 + 1)*(x - 3) + 7*(x + 2)", "x");
  PadicPoly P = to_padic(q, 7, 30);
  FpPoly abar({Fp(1, 7), Fp(0, 7), Fp(1, 7)});
  PadicPoly A = hensel_factor(P, abar);
  EXPECT_EQ(A.degree(), 2);
  auto [B, r] = PadicPoly::divmod(P, A);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(B.degree(), 1);
  EXPECT_THROW(hensel_factor(P, FpPoly({Fp(1, 7), Fp(1, 7)})), InvalidInput);
}

TEST(Hensel, SquareRoot) {
  Padic a = Padic::from_integer(2, 7, 25);
  Padic y = padic_sqrt(a, 3);
  EXPECT_TRUE((y * y - a).is_zero());
  EXPECT_EQ(y.residue(1), 3);
}

TEST(Strassmann, Examples) {
  const std::uint64_t p = 5;
  // s^2 - p s: minimum valuation 0 at n = 2
  std::vector<Padic> c{Padic::zero(p, 10), Padic::from_integer(-5, p, 10), Padic::from_integer(1, p, 10)};
  EXPECT_EQ(strassmann_bound(c), 2);
  // p + s: one zero
  std::vector<Padic> d{Padic::from_integer(5, p, 10), Padic::from_integer(1, p, 10),
                       Padic::from_integer(25, p, 10)};
  EXPECT_EQ(strassmann_bound(d), 1);
  // an unknown coefficient past the corner could tie
  std::vector<Padic> e{Padic::from_integer(5, p, 10), Padic::from_integer(5, p, 10), Padic::zero(p, 1)};
  EXPECT_THROW(strassmann_bound(e), PrecisionError);
}

// Published annihilator congruences.
TEST(Chabauty, AnnihilatorC2_16At5) {
  Chart c = make_chart(curve("C2(16)"));
  IntegrationResult r = integrate_between(c, P1, P2, 5, 5);
  EXPECT_EQ(r.m, 121);
  auto A = annihilator_space(r.integrals, c.g, 1, 5);
  ASSERT_EQ(A.size(), 2u);
  EXPECT_TRUE(in_span({2983, 0, 1}, A, 5, 5));
  EXPECT_FALSE(in_span({2984, 0, 1}, A, 5, 5));
  EXPECT_FALSE(in_span({1, 0, 0}, A, 5, 5));
  // I_2 + 2983 I_0 = 0 mod 5^5 directly
  Padic s = r.integrals[2] + r.integrals[0] * Padic::from_integer(2983, 5, 40);
  EXPECT_GE(std::min(s.valuation(), s.precision()), 5);
}

TEST(Chabauty, AnnihilatorC3_16At3WithPDividingOrder) {
  Chart c = make_chart(curve("C3(16)"));
  IntegrationResult r = integrate_between(c, P1, P2, 3, 5);
  EXPECT_EQ(r.m % 3, 0);
  auto A = annihilator_space(r.integrals, c.g, 1, 5);
  EXPECT_TRUE(in_span({118, 0, 1}, A, 3, 5));
  EXPECT_FALSE(in_span({117, 0, 1}, A, 3, 5));
}

TEST(Chabauty, AnnihilatorC2_20At3NeedsExtensionResidues) {
  Chart c = make_chart(curve("C2(20)"));
  IntegrationResult r = integrate_between(c, P1, P2, 3, 5);
  auto A = annihilator_space(r.integrals, c.g, 1, 5);
  ASSERT_EQ(A.size(), 3u);
  EXPECT_TRUE(in_span({1, 4, 0, 1}, A, 3, 5));
  EXPECT_FALSE(in_span({1, 5, 0, 1}, A, 3, 5));
}

TEST(Chabauty, IntegralsAreAdditive) {
  Chart c = make_chart(curve("C2(16)"));
  const long k = 6;
  auto a = integrate_between(c, P1, P2, 5, k);
  auto b = integrate_between(c, P2, P3, 5, k);
  auto ab = integrate_between(c, P1, P3, 5, k);
  auto ba = integrate_between(c, P2, P1, 5, k);
  for (int i = 0; i < c.g; ++i) {
    EXPECT_TRUE((a.integrals[i] + b.integrals[i] - ab.integrals[i]).with_precision(k).is_zero()) << i;
    EXPECT_TRUE((a.integrals[i] + ba.integrals[i]).with_precision(k).is_zero()) << i;
  }
}

TEST(Chabauty, PrecisionIsConsistent) {
  Chart c = make_chart(curve("C2(16)"));
  auto lo = integrate_between(c, P1, P2, 5, 4);
  auto hi = integrate_between(c, P1, P2, 5, 9);
  for (int i = 0; i < c.g; ++i) {
    EXPECT_GE(hi.integrals[i].precision(), 9);
    EXPECT_TRUE((lo.integrals[i] - hi.integrals[i]).is_zero());
  }
}

// y^2 = x^5 - 618 x + 1 passes through (0, 1) and (5, 6), which share a
// residue disc mod 5.
HyperellipticModel synthetic_affine() { return HyperellipticModel(parse_poly("x^5 - 618*x + 1", "x")); }
// y^2 = x^5 - 718 x^2 + x passes through (0, 0) and (9, 30), both in the
// Weierstrass disc at (0, 0) mod 3.
HyperellipticModel synthetic_weierstrass() {
  return HyperellipticModel(parse_poly("x^5 - 718*x^2 + x", "x"));
}

TEST(TinyIntegral, AntisymmetryAndInvolution) {
  Chart c = make_chart(synthetic_affine());
  CurvePoint P = CurvePoint::affine(0, 1), Q = CurvePoint::affine(5, 6);
  CurvePoint Pm = CurvePoint::affine(0, -1), Qm = CurvePoint::affine(5, -6);
  for (int i = 0; i < c.g; ++i) {
    Padic pq = tiny_integral(c, i, P, Q, 5, 10);
    Padic qp = tiny_integral(c, i, Q, P, 5, 10);
    EXPECT_TRUE((pq + qp).is_zero());
    // the hyperelliptic involution negates every omega_i
    EXPECT_TRUE((pq + tiny_integral(c, i, Pm, Qm, 5, 10)).is_zero());
    EXPECT_TRUE(tiny_integral(c, i, P, P, 5, 10).is_zero());
    // more digits agree with fewer
    EXPECT_TRUE((pq - tiny_integral(c, i, P, Q, 5, 16)).is_zero());
  }
  EXPECT_THROW(tiny_integral(c, 0, P, Qm, 5, 10), InvalidInput);
}

// Tiny integrals and integrals through the Jacobian are independent
// routes to the same number.
TEST(TinyIntegral, AgreesWithJacobianRoute) {
  for (auto [h, P, Q, p] :
       std::vector<std::tuple<HyperellipticModel, CurvePoint, CurvePoint, std::uint64_t>>{
           {synthetic_affine(), CurvePoint::affine(0, 1), CurvePoint::affine(5, 6), 5},
           {synthetic_weierstrass(), CurvePoint::affine(0, 0), CurvePoint::affine(9, 30), 3}}) {
    Chart c = make_chart(h);
    const long k = 8;
    auto r = integrate_between(c, Q, P, p, k);
    for (int i = 0; i < c.g; ++i) {
      Padic t = tiny_integral(c, i, P, Q, p, k);
      EXPECT_TRUE((t - r.integrals[i]).with_precision(k).is_zero())
          << h.d() << " i=" << i << " tiny " << t << " global " << r.integrals[i];
    }
  }
}

TEST(LocalExpansion, SatisfiesCurveEquation) {
  for (const char* id : {"C2(16)", "C2(20)"}) {
    Chart c = make_chart(curve(id));
    for (std::uint64_t p : good_primes(curve(id), 3)) {
      const long N = 20;
      const int order = 12;
      for (const auto& disc : all_discs(c, p)) {
        LocalExpansion L = local_expansion(c, disc, order, N);
        PadicPoly f = L.other_chart ? to_padic(c.f.reversed(2 * c.g + 2), p, N) : to_padic(c.f, p, N);
        PadicSeries fx = series_from_poly(PadicPoly({Padic::zero(p, N)}), order, Padic::zero(p, N));
        // Horner in series arithmetic
        for (int i = f.degree(); i >= 0; --i) {
          fx = series_mul(fx, L.x);
          fx.c[0] += f.coeff(i, Padic::zero(p, N));
        }
        PadicSeries y2 = series_mul(L.y, L.y);
        for (int n = 0; n < order; ++n) {
          EXPECT_TRUE((fx.c[n] - y2.c[n]).is_zero()) << id << " p=" << p << " " << disc.to_string() << " n=" << n;
        }
      }
    }
  }
}

TEST(Nonvanishing, DiscsOfKnownPoints) {
  Chart c = make_chart(curve("C2(16)"));
  auto r = integrate_between(c, P1, P2, 5, 5);
  auto A = annihilator_space(r.integrals, c.g, 1, 5);
  std::vector<Integer> a{2983, 0, 1};
  for (const auto& P : {P1, P2, P3}) {
    ResidueDisc disc = disc_of(c, 5, P);
    EXPECT_TRUE(nonvanishing_at(c, a, disc)) << disc.to_string();
    EXPECT_EQ(disc_point_bound(c, a, disc, 5), 1) << disc.to_string();
  }
}

// (x - x0) dx / y vanishes at the center of the Weierstrass disc at x0.
TEST(Nonvanishing, DifferentialWithZeroAtWeierstrassPoint) {
  Chart c = make_chart(synthetic_weierstrass());
  ResidueDisc w = disc_of(c, 3, CurvePoint::affine(0, 0));
  ASSERT_EQ(w.kind, ResidueDisc::Kind::kWeierstrass);
  EXPECT_FALSE(nonvanishing_at(c, parse_poly("x", "x"), w));
  EXPECT_TRUE(nonvanishing_at(c, parse_poly("x + 1", "x"), w));
  EXPECT_FALSE(nonvanishing_at(c, std::vector<Integer>{0, 1}, w));
  // Such a differential can have two zeros of its integral in the disc.
  EXPECT_GE(disc_point_bound(c, std::vector<Integer>{0, 1}, w, 6), 2);
}

// Discs of C2(16) over F_5 against a brute-force search of rational
// points: the Strassmann bound never undercounts.
TEST(Nonvanishing, BoundsAgreeWithPointSearch) {
  HyperellipticModel h = curve("C2(16)");
  Chart c = make_chart(h);
  std::vector<Integer> a{2983, 0, 1};
  auto pts = rational_point_search(h, 1000);
  for (const auto& disc : all_discs(c, 5)) {
    int found = 0;
    for (const auto& P : pts) {
      ResidueDisc d = disc_of(c, 5, P);
      if (d.kind == disc.kind && d.x == disc.x && d.y == disc.y) ++found;
    }
    int bound = disc_point_bound(c, a, disc, 5);
    EXPECT_GE(bound, found) << disc.to_string();
    // refining the precision never raises the bound
    EXPECT_LE(disc_point_bound(c, a, disc, 8), bound) << disc.to_string();
  }
}

TEST(Nonvanishing, C2_20KnownPointsAt3) {
  Chart c = make_chart(curve("C2(20)"));
  std::vector<Integer> a{1, 4, 0, 1};
  for (const auto& P : {P1, P2, P3}) {
    ResidueDisc disc = disc_of(c, 3, P);
    EXPECT_TRUE(nonvanishing_at(c, a, disc)) << disc.to_string();
    EXPECT_EQ(disc_point_bound(c, a, disc, 5), 1) << disc.to_string();
  }
}

TEST(Annihilator, RankZeroGivesEverything) {
  std::vector<Padic> I(3, Padic::zero(5, 10));
  auto A = annihilator_space(I, 3, 0, 5);
  EXPECT_EQ(A.size(), 3u);
  EXPECT_TRUE(in_span({7, 11, 13}, A, 5, 5));
  EXPECT_THROW(annihilator_space(I, 3, 1, 5), PrecisionError);
}

TEST(Chabauty, MultiplesOfTheKernelElementAgree) {
  Chart c = make_chart(curve("C2(16)"));
  auto one = integrate_between(c, P1, P2, 5, 6, 1);
  auto two = integrate_between(c, P1, P2, 5, 6, 2);
  EXPECT_EQ(two.multiple, 2 * one.multiple);
  for (int i = 0; i < c.g; ++i) {
    EXPECT_TRUE((one.integrals[i] - two.integrals[i]).with_precision(6).is_zero()) << i;
  }
}

TEST(TinyIntegral, LinearInTheDifferential) {
  Chart c = make_chart(synthetic_affine());
  CurvePoint P = CurvePoint::affine(0, 1), Q = CurvePoint::affine(5, 6);
  Padic combo = tiny_integral(c, std::vector<Integer>{3, -7}, P, Q, 5, 10);
  Padic parts = tiny_integral(c, 0, P, Q, 5, 10) * Padic::from_integer(3, 5, 20) +
                tiny_integral(c, 1, P, Q, 5, 10) * Padic::from_integer(-7, 5, 20);
  EXPECT_TRUE((combo - parts).is_zero());
}

TEST(TinyIntegral, IndependentOfTheExpansionPoint) {
  Chart c = make_chart(synthetic_affine());
  CurvePoint P = CurvePoint::affine(0, 1), Q = CurvePoint::affine(5, 6);
  ResidueDisc disc = disc_of(c, 5, P);
  for (int i = 0; i < c.g; ++i) {
    Padic base = tiny_integral(c, disc, i, P, Q, 10);
    for (long shift : {5L, -10L, 125L}) {
      ResidueDisc moved = disc;
      moved.lift = disc.lift + shift;
      EXPECT_TRUE((tiny_integral(c, moved, i, P, Q, 10) - base).is_zero()) << shift;
    }
  }
}

TEST(LocalExpansion, PointAtInfinityOfC2_16) {
  // (1:1:0) sits at s = 0, w = 1 on the chart, so y / t^4 -> 1.
  Chart c = make_chart(curve("C2(16)"));
  ResidueDisc disc = disc_of(c, 5, P2);
  EXPECT_EQ(disc.kind, ResidueDisc::Kind::kAffine);
  EXPECT_EQ(disc.x.value(), 0u);
  EXPECT_EQ(disc.y.value(), 1u);
  LocalExpansion L = local_expansion(c, disc, 6, 10);
  EXPECT_TRUE((L.y.c[0] - Padic::from_integer(1, 5, 10)).is_zero());
  EXPECT_TRUE(L.x.c[0].is_zero());
}

}  // namespace
}  // namespace tors3
