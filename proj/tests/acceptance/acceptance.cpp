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

// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance          run all criteria
//   acceptance 3 7      run only criteria 3 and 7
//
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tors3/algebra.hpp"
#include "tors3/certify.hpp"
#include "tors3/curves.hpp"
#include "tors3/jacobian.hpp"
#include "tors3/number_field.hpp"
#include "tors3/padic.hpp"
#include "tors3/pipeline.hpp"
#include "tors3/sieve.hpp"
#include "tors3/verdicts.hpp"

namespace tors3 {
namespace {

using V = std::vector<Integer>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failed sub-checks; the criterion passes iff none failed.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  Outcome outcome() const {
    Outcome o;
    o.pass = failures_.empty();
    std::ostringstream os;
    if (o.pass) {
      os << checks_ << " checks";
    } else {
      os << failures_.size() << "/" << checks_ << " failed: ";
      for (size_t i = 0; i < failures_.size(); ++i) os << (i ? "; " : "") << failures_[i];
    }
    for (const auto& n : notes_) os << " | " << n;
    o.detail = os.str();
    return o;
  }

 private:
  int checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

const std::vector<DegreeThreeMap>& corpus() {
  static const auto c = load_corpus(default_corpus_path());
  return c;
}

HyperellipticModel curve(const std::string& id) { return printed_model(find_map(corpus(), id)); }

const CurvePoint P1 = CurvePoint::affine(0, 0);
const CurvePoint P2 = CurvePoint::infinity(1);
const CurvePoint P3 = CurvePoint::infinity(-1);
const RationalClass kX = RationalClass::difference(P1, P2);

std::set<CurvePoint> points(std::initializer_list<const char*> texts) {
  std::set<CurvePoint> out;
  for (const char* t : texts) out.insert(CurvePoint::parse(t));
  return out;
}

std::string show(const std::set<CurvePoint>& s) {
  std::string out = "{";
  for (const auto& P : s) out += (out.size() > 1 ? ", " : "") + P.to_string();
  return out + "}";
}

std::string show(const V& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
  return out + "]";
}

V ints(std::initializer_list<long> v) {
  V out;
  for (long x : v) out.emplace_back(x);
  return out;
}

// Certification runs of the default config, restricted to `ids`, shared
// between criteria in one process.
const RunResult& certified(const std::vector<std::string>& ids) {
  static std::map<std::vector<std::string>, RunResult> cache;
  auto it = cache.find(ids);
  if (it != cache.end()) return it->second;
  RunConfig cfg = load_run_config(default_config_path());
  std::vector<CurveConfig> kept;
  for (const auto& c : cfg.curves) {
    if (std::find(ids.begin(), ids.end(), c.certify.curve) != ids.end()) kept.push_back(c);
  }
  cfg.curves = kept;
  cfg.parallelism = 4;
  RunOptions opts;
  opts.scans = false;
  return cache.emplace(ids, run_corpus(cfg, opts)).first->second;
}

void expect_point_set(Checker& c, const RunResult& run, const std::string& id,
                      const std::set<CurvePoint>& want) {
  for (const auto& r : run.curves) {
    if (r.curve != id) continue;
    c.expect(r.verified(), id + " certified and re-verified" + (r.error.empty() ? "" : ": " + r.error));
    const auto claimed = r.claimed_points();
    const std::set<CurvePoint> got(claimed.begin(), claimed.end());
    c.expect(got == want && claimed.size() == want.size(), id + " claims " + show(got));
    return;
  }
  c.expect(false, id + " was not run");
}

// 1. Three rational points on C2(16), C3(16), C2(20).
Outcome criterion_1() {
  Checker c;
  const auto& run = certified({"C2(16)", "C3(16)", "C2(20)"});
  for (const char* id : {"C2(16)", "C3(16)", "C2(20)"}) {
    expect_point_set(c, run, id, points({"(0,0)", "(1:1:0)", "(1:-1:0)"}));
  }
  return c.outcome();
}

// 2. Point counts over the sieving primes.
Outcome criterion_2() {
  Checker c;
  for (auto [id, p, n] : std::vector<std::tuple<const char*, std::uint64_t, long>>{
           {"C2(16)", 5, 11}, {"C2(16)", 11, 16}, {"C2(20)", 3, 5}, {"C2(20)", 37, 39}}) {
    Integer got = count_points(curve(id), p, 1);
    c.expect(got == n, std::string("#") + id + "(F_" + std::to_string(p) + ") = " + got.get_str());
  }
  return c.outcome();
}

// 3. Invariant factors of J(F_p).
Outcome criterion_3() {
  Checker c;
  for (auto [id, p, want] : std::vector<std::tuple<const char*, std::uint64_t, V>>{
           {"C2(16)", 5, ints({363})},
           {"C2(16)", 11, ints({2, 1056})},
           {"C3(16)", 3, ints({54})},
           {"C3(16)", 17, ints({5274})},
           {"C2(20)", 3, ints({141})},
           {"C2(20)", 37, ints({3, 655791})}}) {
    V got = group_structure(curve(id), p).invariants;
    c.expect(got == want, std::string(id) + " J(F_" + std::to_string(p) + ") = " + show(got));
  }
  return c.outcome();
}

// 4. Annihilating differentials at precision p^5.
Outcome criterion_4() {
  Checker c;
  const long k = 5;
  for (auto [id, p, a, wrong] : std::vector<std::tuple<const char*, std::uint64_t, V, V>>{
           {"C2(16)", 5, ints({2983, 0, 1}), ints({2984, 0, 1})},
           {"C3(16)", 3, ints({118, 0, 1}), ints({117, 0, 1})},
           {"C2(20)", 3, ints({1, 4, 0, 1}), ints({1, 5, 0, 1})}}) {
    Chart chart = make_chart(curve(id));
    IntegrationResult r = integrate_between(chart, P1, P2, p, k);
    auto A = annihilator_space(r.integrals, chart.g, 1, k);
    c.expect(in_span(a, A, p, k), std::string(id) + ": " + show(a) + " annihilates mod p^5");
    // A congruence that holds only modulo a smaller power would also pass
    // a sloppy check; a neighbour must fail.
    c.expect(!in_span(wrong, A, p, k), std::string(id) + ": " + show(wrong) + " must not annihilate");
  }
  return c.outcome();
}

// Orientations (false: as computed, true: n -> -n mod n) under which the
// multiset `ours` equals `theirs`.
std::set<bool> orientations(V ours, V theirs, const Integer& n) {
  std::set<bool> out;
  std::sort(theirs.begin(), theirs.end());
  std::sort(ours.begin(), ours.end());
  if (ours == theirs) out.insert(false);
  for (auto& a : ours) a = (n - a) % n;
  std::sort(ours.begin(), ours.end());
  if (ours == theirs) out.insert(true);
  return out;
}

std::set<bool> meet(const std::set<bool>& a, const std::set<bool>& b) {
  std::set<bool> out;
  for (bool x : a) {
    if (b.count(x)) out.insert(x);
  }
  return out;
}

V in_subgroup(const SievePrime& sp) {
  V out;
  for (const auto& m : sp.multiples) {
    if (m) out.push_back(*m);
  }
  return out;
}

SieveResult sieve(const std::string& id, std::vector<std::uint64_t> S, const Integer& N) {
  SieveInstance inst;
  inst.curve = curve(id);
  inst.S = std::move(S);
  inst.N = N;
  inst.gamma = {{kX, 0}};
  inst.known_points = {P1, P2, P3};
  return run_sieve(inst);
}

// 5. Multiple lists of the sieve, up to one relabeling n -> -n mod N per
// curve (the sign of the generator is not determined by the lists).
Outcome criterion_5() {
  Checker c;
  {
    SieveResult r = sieve("C2(16)", {5, 11}, 22);
    c.expect(r.sound, "C2(16) sieve sound");
    V m5 = in_subgroup(r.at(5));
    auto o5 = orientations(m5, ints({0, 2, 2, 4, 4, 5, 5, 7, 7, 9, 10}), 11);
    c.expect(r.at(5).points.size() == 11 && !o5.empty(), "C2(16) F_5 list " + show(m5));
    V m11 = in_subgroup(r.at(11));
    auto o11 = orientations(m11, ints({0, 3, 10, 10, 17, 20, 21, 21}), 22);
    c.expect(r.at(11).points.size() == 16 && m11.size() == 8 && !o11.empty(),
             "C2(16) F_11 list " + show(m11));
    c.expect(!meet(o5, o11).empty(), "C2(16) lists agree on one orientation");
  }
  {
    SieveResult r = sieve("C2(20)", {3, 37}, 47);
    c.expect(r.sound, "C2(20) sieve sound");
    const SievePrime& f3 = r.at(3);
    V m3 = in_subgroup(f3);
    auto o3 = orientations(m3, ints({0, 19, 26, 45, 46}), 47);
    c.expect(!o3.empty(), "C2(20) F_3 list " + show(m3));
    V m37 = in_subgroup(r.at(37));
    auto o37 = orientations(m37, ints({0,  1,  1,  1,  2,  2,  3,  3,  6,  6,  7,  9,  12,
                                       14, 14, 16, 17, 18, 22, 23, 27, 28, 29, 31, 31, 33,
                                       36, 38, 39, 39, 42, 42, 43, 43, 44, 44, 44, 45, 46}),
                            47);
    c.expect(m37.size() == 39 && !o37.empty(), "C2(20) F_37 list " + show(m37));
    const auto both = meet(o3, o37);
    c.expect(!both.empty(), "C2(20) lists agree on one orientation");
    // Survivors over F_3 in the published orientation.
    const bool flip = !both.empty() && *both.begin();
    V survivors;
    for (size_t i = 0; i < f3.points.size(); ++i) {
      if (!f3.survives[i] || !f3.multiples[i]) continue;
      Integer n = *f3.multiples[i];
      survivors.push_back(flip ? Integer((47 - n) % 47) : n);
    }
    std::sort(survivors.begin(), survivors.end());
    c.expect(survivors == ints({0, 45, 46}), "C2(20) F_3 survivors " + show(survivors));
  }
  return c.outcome();
}

// 6. C1(16), C4(16) and C1(20).
Outcome criterion_6() {
  Checker c;
  const auto& run = certified({"C1(16)", "C4(16)", "C1(20)"});
  expect_point_set(c, run, "C1(16)", points({"(1/2,0)", "(1:0:0)"}));
  expect_point_set(c, run, "C4(16)",
                   points({"(0,0)", "(-1/4,201/64)", "(-1/4,-201/64)", "(1:1:0)", "(1:-1:0)"}));
  expect_point_set(c, run, "C1(20)", points({"(1,0)", "(-1,0)"}));
  for (const auto& r : run.curves) {
    if (r.curve == "C1(16)") c.expect(r.cert && r.cert->rank_bound == 0, "C1(16) uses the rank-0 sieve route");
  }
  // The published y = +-201/4 is the weighted representative (-1 : +-201 : 4)
  // of weights (1, 3, 1): the affine point has y = 201/64.
  const QPoly d = curve("C4(16)").d();
  const Rational t(Rational(-1) / 4);
  const Rational y64(Rational(201) / 64), y4(Rational(201) / 4);
  c.expect(d.eval(t) == y64 * y64, "(-1/4, 201/64) lies on C4(16)");
  c.expect(d.eval(t) != y4 * y4, "(-1/4, 201/4) is off the affine model");
  c.expect(y64 * 64 == 201, "weighted (-1 : 201 : 4) has affine y = 201/4^3");
  c.note("C4(16) y = +-201/64 in affine form, (-1 : +-201 : 4) in weights (1,3,1)");
  return c.outcome();
}

// 7. The exceptional Z/16 curve over the cyclic field.
Outcome criterion_7() {
  Checker c;
  const QPoly alpha{Rational(8) / 9, Rational(-1), Rational(-8), Rational(1)};
  CubicFieldClass cls = classify_cubic(alpha);
  c.expect(cls.status == CubicStatus::kCyclic, "x^3 - 8x^2 - x + 8/9 is " + to_string(cls.status));
  FiberInterpretation f = interpret_t(find_map(corpus(), "X1(16)/f4"), Rational(-1) / 4);
  c.expect(f.kind == FiberKind::kEllipticPoint && f.cubic.has_value(),
           "t = -1/4 on f4 is a non-cusp fiber");
  if (f.cubic) {
    std::ostringstream os;
    os << *f.cubic;
    c.expect(nf_is_isomorphic(alpha, *f.cubic), "Q(alpha) isomorphic to the field of " + os.str());
  }
  const std::optional<int> printed = torsion_order_at_origin(printed_exceptional_tate_curve(), 40);
  c.expect(printed == 16, "printed (a, b): order of (0,0) is " +
                              (printed ? std::to_string(*printed) : std::string("> 40")));
  const std::optional<int> corrected = torsion_order_at_origin(exceptional_tate_curve(), 40);
  c.note("with -311 alpha^2 in a, the order is " +
         (corrected ? std::to_string(*corrected) : std::string("> 40")));
  return c.outcome();
}

// 8. Resolvents of the six maps against the printed equations.
Outcome criterion_8() {
  Checker c;
  int n = 0;
  for (const auto& m : corpus()) {
    if (!m.printed_curve) continue;
    ++n;
    try {
      QPoly K = printed_square_factor(m);
      HyperellipticModel h = discriminant_curve(m);
      std::ostringstream os;
      os << K;
      c.expect(is_square_polynomial(K), m.id + ": factor " + os.str() + " is a square");
      c.expect(*h.raw_discriminant == K * m.printed_curve->shift(m.printed_shift),
               m.id + ": exact identity after the shift");
    } catch (const Error& e) {
      c.expect(false, m.id + ": " + e.what());
    }
  }
  c.expect(n == 6, std::to_string(n) + " printed equations");
  return c.outcome();
}

// 9. Fibers of the certified points.
Outcome criterion_9() {
  Checker c;
  const auto& run = certified({"C1(16)", "C2(16)", "C3(16)", "C4(16)", "C2(20)"});
  std::set<std::pair<std::string, std::string>> non_cusp;
  int fibers = 0;
  for (const auto& r : run.curves) {
    c.expect(r.verified(), r.curve + " certified");
    for (const auto& pf : r.fibers) {
      ++fibers;
      if (pf.fiber.kind == FiberKind::kEllipticPoint) {
        non_cusp.insert({r.curve, pf.fiber.t0 ? pf.fiber.t0->to_string() : "infinity"});
      }
    }
  }
  c.expect(fibers == 16, std::to_string(fibers) + " certified points interpreted");
  c.expect(non_cusp == std::set<std::pair<std::string, std::string>>{{"C4(16)", "-1/4"}},
           "non-cusp fibers: " + std::to_string(non_cusp.size()));
  return c.outcome();
}

// 10. Property suites, rerun here in compact form.
Outcome criterion_10() {
  Checker c;
  // Cantor group law, 10^3 triples per curve and prime.
  for (auto [id, p] : std::vector<std::pair<const char*, std::uint64_t>>{
           {"C2(16)", 5}, {"C2(16)", 11}, {"C3(16)", 17}, {"C4(16)", 7}, {"C1(16)", 5}, {"C2(20)", 37}}) {
    JacobianFp J(make_chart(curve(id)), p);
    const auto& G = J.group();
    std::mt19937_64 rng(p);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      FpDivisor a = J.random_element(rng), b = J.random_element(rng), e = J.random_element(rng);
      bool ok = G.is_valid(a) && G.add(a, b) == G.add(b, a) &&
                G.add(G.add(a, b), e) == G.add(a, G.add(b, e)) && G.add(a, G.zero()) == a &&
                G.add(a, G.neg(a)).is_zero();
      if (i % 100 == 0) ok = ok && G.mul(J.order(), a).is_zero();
      bad += !ok;
    }
    c.expect(bad == 0, std::string("group law ") + id + " mod " + std::to_string(p) + ": " +
                           std::to_string(bad) + " bad triples");
  }
  // L-polynomial functional equation.
  int lpolys = 0;
  for (const auto& m : corpus()) {
    HyperellipticModel h = printed_model(m);
    for (auto p : good_primes(h, 4)) {
      ++lpolys;
      c.expect(l_polynomial(h, p).functional_equation_holds(),
               "functional equation " + m.id + " p=" + std::to_string(p));
    }
  }
  // Strassmann bounds against enumeration: planted roots and Hensel roots
  // of random integer polynomials never exceed the bound.
  {
    std::mt19937_64 rng(11);
    int bad = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::uint64_t p = std::vector<std::uint64_t>{3, 5, 7}[trial % 3];
      QPoly f = QPoly::constant(Rational(1 + static_cast<long>(rng() % 5) * static_cast<long>(p)));
      std::set<long> planted;
      const int roots = static_cast<int>(rng() % 4);
      for (int i = 0; i < roots; ++i) {
        long r = static_cast<long>(rng() % (p * p * p));
        planted.insert(r);
        f = f * QPoly{Rational(-r), Rational(1)};
      }
      for (int i = 0; i < 2; ++i) f = f * QPoly{Rational(static_cast<long>(rng() % 7)), Rational(static_cast<long>(p)), Rational(1)};
      std::vector<Padic> coeffs;
      for (const auto& a : f.coeffs()) coeffs.push_back(Padic::from_rational(a, p, 30));
      int hensel = 0;
      const QPoly df = f.derivative();
      for (std::uint64_t a = 0; a < p; ++a) {
        const Rational fa = f.eval(Rational(static_cast<long>(a)));
        const Rational da = df.eval(Rational(static_cast<long>(a)));
        if (rational_mod(fa, Integer(static_cast<unsigned long>(p))) == 0 && rational_mod(da, Integer(static_cast<unsigned long>(p))) != 0) ++hensel;
      }
      int bound = strassmann_bound(coeffs);
      if (bound < static_cast<int>(planted.size()) || bound < hensel) ++bad;
    }
    c.expect(bad == 0, "Strassmann vs enumeration: " + std::to_string(bad) + " violations");
    // Disc bounds against a point search on C2(16) at 5.
    HyperellipticModel h = curve("C2(16)");
    Chart chart = make_chart(h);
    const auto pts = rational_point_search(h, 200);
    for (const auto& disc : all_discs(chart, 5)) {
      int found = 0;
      for (const auto& P : pts) {
        ResidueDisc d = disc_of(chart, 5, P);
        found += d.kind == disc.kind && d.x == disc.x && d.y == disc.y;
      }
      c.expect(disc_point_bound(chart, ints({2983, 0, 1}), disc, 5) >= found,
               "disc bound " + disc.to_string());
    }
  }
  // Sieve soundness: known points survive every sieve.
  {
    std::mt19937_64 rng(5);
    int unsound = 0;
    for (int trial = 0; trial < 12; ++trial) {
      const char* id = trial % 2 ? "C3(16)" : "C2(16)";
      std::vector<std::uint64_t> S;
      for (auto p : {5, 7, 11, 13}) {
        if (rng() % 2) S.push_back(static_cast<std::uint64_t>(p));
      }
      if (S.empty()) S.push_back(7);
      if (std::string(id) == "C3(16)") S.erase(std::remove(S.begin(), S.end(), 5u), S.end());
      if (S.empty()) S.push_back(7);
      const Integer N = std::vector<int>{2, 3, 4, 6, 11, 12, 22}[rng() % 7];
      try {
        unsound += !sieve(id, S, N).sound;
      } catch (const BadPrime&) {
      }
    }
    c.expect(unsound == 0, "sieve soundness: " + std::to_string(unsound) + " unsound runs");
  }
  // Certificate round trip.
  const auto& run = certified({"C1(16)", "C2(16)", "C3(16)", "C4(16)", "C1(20)"});
  for (const auto& r : run.curves) {
    const auto j = nlohmann::json::parse(r.certificate_json().dump());
    c.expect(verify_certificate_json(j).empty(), r.curve + " certificate verifies");
    auto dropped = j;
    dropped["claimed_points"].erase(dropped["claimed_points"].begin());
    c.expect(!verify_certificate_json(dropped).empty(), r.curve + " rejects a deleted point");
  }
  c.note(std::to_string(lpolys) + " L-polynomials");
  return c.outcome();
}

// 11. Discriminant-sign witnesses at height <= 50.
Outcome criterion_11() {
  Checker c;
  for (const auto& m : corpus()) {
    ScanReport s = scan_family(m, 50);
    c.expect(s.first_complex_witness.has_value(), m.id + ": no disc < 0 witness");
    c.expect(s.first_real_nonsquare_witness.has_value(), m.id + ": no real non-square witness");
    if (s.first_complex_witness && s.first_real_nonsquare_witness) {
      c.note(m.id + " t=" + s.first_complex_witness->to_string() + ", t=" +
             s.first_real_nonsquare_witness->to_string());
    }
  }
  return c.outcome();
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace tors3

int main(int argc, char** argv) {
  using namespace tors3;
  const std::vector<Criterion> all = {
      {1, "rational points of C2(16), C3(16), C2(20)", criterion_1},
      {2, "point counts over F_5, F_11, F_3, F_37", criterion_2},
      {3, "Jacobian group structures", criterion_3},
      {4, "Chabauty congruences mod p^5", criterion_4},
      {5, "sieve multiple lists", criterion_5},
      {6, "rational points of C1(16), C4(16), C1(20)", criterion_6},
      {7, "exceptional Z/16 curve over Q(alpha)", criterion_7},
      {8, "resolvent reproduction", criterion_8},
      {9, "cusp interpretation", criterion_9},
      {10, "property suites", criterion_10},
      {11, "scan witnesses at height <= 50", criterion_11},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& cr : all) {
    if (!selected.empty() && !selected.count(cr.number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << cr.number << "] " << cr.name << " ("
              << static_cast<int>(secs * 1000) << " ms): " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
