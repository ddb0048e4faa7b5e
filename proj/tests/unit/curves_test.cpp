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
#include "tors3/errors.hpp"

namespace tors3 {
namespace {

const std::vector<DegreeThreeMap>& corpus() {
  static const auto c = load_corpus(default_corpus_path());
  return c;
}

const DegreeThreeMap& map(const std::string& id) { return find_map(corpus(), id); }

QPoly T(const char* s) { return parse_poly(s, "t"); }
QPoly X(const char* s) { return parse_poly(s, "x"); }

TEST(Corpus, LoadsSixMaps) {
  ASSERT_EQ(corpus().size(), 6u);
  EXPECT_EQ(map("C2(16)").id, "X1(16)/f2");
  EXPECT_EQ(map("X1(20)/f1").curve_degree(), 1);
  EXPECT_THROW(map("C9(99)"), InvalidInput);
}

TEST(Corpus, RejectsMalformedRecords) {
  EXPECT_THROW(parse_corpus("[map a]\nparent_label = X\n"), ParseError);
  EXPECT_THROW(parse_corpus("key = value\n"), ParseError);
  EXPECT_TRUE(parse_corpus("# only a comment\n").empty());
}

TEST(ValidateMap, AllCorpusMapsValidate) {
  for (const auto& m : corpus()) EXPECT_TRUE(validate_map(m)) << m.id;
}

TEST(ValidateMap, MismatchedPairFails) {
  DegreeThreeMap m = map("X1(16)/f2");
  m.f = map("X1(16)/f3").f;
  EXPECT_FALSE(validate_map(m));
}

TEST(ValidateMap, PublishedSecondFunctionOnX120Fails) {
  // As printed, g2 = (y + 1)/(x*y + x); f2 is the minimal polynomial of
  // (y + 1)/(x*y + y) instead.
  DegreeThreeMap m = map("X1(20)/f2");
  m.g.num = parse_bipoly("y + 1", "x", "y");
  m.g.den = parse_bipoly("x*y + x", "x", "y");
  EXPECT_FALSE(validate_map(m));
}

TEST(ValidateMap, DenominatorVanishingOnCurveIsInvalid) {
  DegreeThreeMap m = map("X1(16)/f2");
  m.g.den = m.parent.F;
  EXPECT_THROW(validate_map(m), InvalidMap);
}

TEST(FiberCubic, Examples) {
  QPoly h = fiber_cubic(map("X1(16)/f4"), Rational(-1, 4));
  EXPECT_EQ(h * Rational(-16), X("16*x^3 - 33*x^2 - 15*x + 16"));
  EXPECT_THROW(fiber_cubic(map("X1(16)/f2"), Rational(0)), DegenerateFiber);
  // y = 1 is a degenerate fiber of the degree-1 map; the polynomial is
  // still F(x, 1) = 1 - x^3 - x^2 + x up to sign.
  BiPoly G = fiber_family(map("X1(20)/f1"));
  QPoly F1 = G.eval_b(Rational(0));
  EXPECT_TRUE(F1 == X("1 - x^3 - x^2 + x") || F1 == -X("1 - x^3 - x^2 + x"));
  EXPECT_THROW(fiber_cubic(map("X1(20)/f1"), Rational(0)), DegenerateFiber);
  QPoly h2 = fiber_cubic(map("X1(20)/f1"), Rational(1));
  QPoly F2 = parse_bipoly("y^3 - x^3*y^2 - x^2*y + x", "x", "y").eval_b(Rational(2));
  EXPECT_TRUE(h2 == F2 || h2 == -F2);
}

TEST(FiberCubic, DegenerateFiberCarriesLocus) {
  try {
    fiber_cubic(map("X1(16)/f2"), std::nullopt);
    FAIL() << "expected a degenerate fiber at infinity";
  } catch (const DegenerateFiber& e) {
    EXPECT_NE(e.locus().find("infinity"), std::string::npos);
  }
}

TEST(DiscriminantCurve, PublishedEquationsUpToSquares) {
  const std::map<std::string, QPoly> factor = {
      {"C1(16)", QPoly::constant(Rational(256))},
      {"C2(16)", QPoly::constant(Rational(4))},
      {"C3(16)", QPoly::constant(Rational(4))},
      {"C4(16)", T("(t-2)^2")},
      {"C2(20)", T("4*t^2")},
  };
  for (const auto& m : corpus()) {
    QPoly K = printed_square_factor(m);
    EXPECT_TRUE(is_square_polynomial(K)) << m.id;
    HyperellipticModel h = discriminant_curve(m);
    EXPECT_EQ(*h.raw_discriminant, K * m.printed_curve->shift(m.printed_shift)) << m.id;
    EXPECT_EQ(*h.raw_discriminant,
              *h.square_cofactor * *h.square_cofactor * h.d()) << m.id;
    auto it = factor.find(m.curve_id);
    if (it != factor.end()) EXPECT_EQ(K, it->second) << m.id;
  }
}

TEST(DiscriminantCurve, SquareClassExamples) {
  auto same_class = [](const QPoly& a, const QPoly& b) {
    auto [q, r] = QPoly::divmod(a, b);
    return r.is_zero() && q.degree() == 0 && is_rational_square(q.lc());
  };
  EXPECT_TRUE(same_class(discriminant_curve(map("X1(16)/f2")).d(),
                         T("t^8 - 12*t^7 + 54*t^6 - 112*t^5 + 97*t^4 - 32*t^3 + 4*t^2 - 4*t")));
  EXPECT_TRUE(same_class(discriminant_curve(map("X1(16)/f4")).d(),
                         T("t^6 - 4*t^5 - 4*t^4 - 40*t^3 + 20*t^2 - 32*t")));
  EXPECT_TRUE(same_class(
      discriminant_curve(map("X1(20)/f2")).d(),
      T("t^10 - 6*t^9 + 15*t^8 - 32*t^7 + 51*t^6 - 54*t^5 + 65*t^4 - 64*t^3 + 24*t^2 - 4*t")));
}

TEST(DiscriminantCurve, WrongPublishedEquationIsRejected) {
  DegreeThreeMap m = map("X1(20)/f1");
  m.printed_curve = T("-27*t^4 + t^2 + 5");
  EXPECT_THROW(printed_square_factor(m), InvalidMap);
}

TEST(Genus, Examples) {
  EXPECT_EQ(genus(printed_model(map("C4(16)"))), 2);
  EXPECT_EQ(genus(printed_model(map("C2(16)"))), 3);
  EXPECT_EQ(genus(printed_model(map("C2(20)"))), 4);
  EXPECT_EQ(genus(printed_model(map("C1(16)"))), 3);
  EXPECT_EQ(genus(printed_model(map("C1(20)"))), 3);
}

TEST(Genus, InvariantUnderInversion) {
  for (const auto& m : corpus()) {
    HyperellipticModel h = discriminant_curve(m);
    EXPECT_EQ(genus(inverted_model(h)), genus(h)) << m.id;
    EXPECT_EQ(genus(inverted_model(inverted_model(h))), genus(h)) << m.id;
  }
}

TEST(InfinitePoints, Examples) {
  EXPECT_EQ(count_infinite_points(printed_model(map("C1(16)"))), 1);
  EXPECT_EQ(count_infinite_points(printed_model(map("C2(16)"))), 2);
  EXPECT_EQ(count_infinite_points(printed_model(map("C1(20)"))), 0);
  EXPECT_THROW(HyperellipticModel(T("t^2*(t-1)")), InvalidCurve);
}

TEST(PointSearch, Examples) {
  using CP = CurvePoint;
  // In weighted projective coordinates (t : y : z) of weights (1, 3, 1)
  // the pair at t = -1/4 is (-1 : +-201 : 4), so the affine y is 201/64.
  HyperellipticModel h4 = printed_model(map("C4(16)"));
  EXPECT_FALSE(on_curve(h4, CP::affine(Rational(-1, 4), Rational(201, 4))));
  auto c4 = rational_point_search(h4, 10);
  std::vector<CP> want4 = {CP::affine(Rational(-1, 4), Rational(201, 64)),
                           CP::affine(Rational(-1, 4), Rational(-201, 64)),
                           CP::affine(0, 0), CP::infinity(1), CP::infinity(-1)};
  EXPECT_EQ(c4, want4);
  auto c2 = rational_point_search(printed_model(map("C2(16)")), 10);
  std::vector<CP> want2 = {CP::affine(0, 0), CP::infinity(1), CP::infinity(-1)};
  EXPECT_EQ(c2, want2);
  auto c120 = rational_point_search(printed_model(map("C1(20)")), 10);
  std::vector<CP> want120 = {CP::affine(-1, 0), CP::affine(1, 0)};
  EXPECT_EQ(c120, want120);
}

TEST(PointSearch, PointsLieOnCurveAndGrowWithHeight) {
  for (const auto& m : corpus()) {
    HyperellipticModel h = printed_model(m);
    auto small = rational_point_search(h, 8);
    auto large = rational_point_search(h, 16);
    for (const auto& P : large) EXPECT_TRUE(on_curve(h, P)) << m.id << " " << P;
    std::set<CurvePoint> big(large.begin(), large.end());
    for (const auto& P : small) EXPECT_TRUE(big.count(P)) << m.id << " " << P;
  }
}

TEST(CurvePoint, ParseRoundTrip) {
  for (const char* s : {"(-1/4,201/4)", "(0,0)", "(1:1:0)", "(1:-1:0)", "(1:0:0)"}) {
    EXPECT_EQ(CurvePoint::parse(s).to_string(), s);
  }
  EXPECT_THROW(CurvePoint::parse("(1,2"), ParseError);
}

// The resolvent property: disc(K_t) and d(t) agree up to rational squares.
TEST(Resolvent, FiberDiscriminantMatchesCurveSquareClass) {
  std::mt19937_64 rng(16);
  std::uniform_int_distribution<int> num(-60, 60), den(1, 40);
  for (const auto& m : corpus()) {
    HyperellipticModel h = discriminant_curve(m);
    int done = 0, tries = 0;
    while (done < 100 && tries < 1000) {
      ++tries;
      Rational t0(Integer(num(rng)), Integer(den(rng)));
      QPoly cubic;
      try {
        cubic = fiber_cubic(m, t0);
      } catch (const DegenerateFiber&) {
        continue;
      }
      Rational dt = h.d().eval(t0);
      if (dt.is_zero()) continue;
      EXPECT_TRUE(is_rational_square(discriminant(cubic) / dt)) << m.id << " t=" << t0.to_string();
      ++done;
    }
    EXPECT_EQ(done, 100) << m.id;
  }
}

}  // namespace
}  // namespace tors3
