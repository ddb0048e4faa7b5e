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

// Re-verification of rational point certificates. Nothing recorded in the
// certificate is trusted beyond the inputs (model, primes, N, d, Gamma,
// annihilator vectors); every derived value is recomputed here and
// compared. Jacobian bases come from a different sampling seed than the
// prover's, so recorded coordinates are never reused, and the integrals
// are recomputed from twice the kernel multiple.

#include <algorithm>
#include <set>

#include "tors3/bipoly.hpp"
#include "tors3/certify.hpp"
#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

namespace {

constexpr std::uint64_t kVerifierSeed = 0x5EED0B5E55ULL;

std::string center_string(const ResidueDisc& d) {
  if (d.kind == ResidueDisc::Kind::kInfinity) return "O";
  return "(" + std::to_string(d.x.value()) + "," + std::to_string(d.y.value()) + ")";
}

bool all_zero(const std::vector<Integer>& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

struct PrimeCheck {
  std::vector<ChartPointFp> points;
  // in_coset[i][t]: d mu(P_i) - Gamma tuple t lies in N J(F_q).
  std::vector<std::vector<bool>> in_coset;
};

std::vector<std::vector<Integer>> all_tuples(const std::vector<Integer>& moduli) {
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> t(moduli.size(), 0);
  while (true) {
    out.push_back(t);
    size_t i = 0;
    for (; i < t.size(); ++i) {
      if (++t[i] < moduli[i]) break;
      t[i] = 0;
    }
    if (i == t.size()) break;
  }
  return out;
}

}  // namespace

std::vector<std::string> verify_certificate(const RationalPointCertificate& c) {
  std::vector<std::string> bad;
  auto fail = [&bad](const std::string& s) { bad.push_back(s); };
  if (!c.certified) fail("the certificate does not claim a complete point list");
  if (c.verifier_version != kVerifierVersion) fail("unknown certificate version " + c.verifier_version);

  HyperellipticModel h(parse_poly(c.model, "t"), c.curve);
  const Chart chart = make_chart(h);
  const std::uint64_t p = c.chabauty_prime;
  const long k = c.precision;

  // Claimed points: on the curve, distinct, and nothing the search sees
  // is missing.
  std::set<CurvePoint> claimed(c.claimed_points.begin(), c.claimed_points.end());
  if (claimed.size() != c.claimed_points.size()) fail("claimed points repeat");
  for (const auto& P : c.claimed_points) {
    if (!on_curve(h, P)) fail("claimed point " + P.to_string() + " is not on the curve");
  }
  for (const auto& P : rational_point_search(h, c.search_height)) {
    if (!claimed.count(P)) fail("rational point " + P.to_string() + " is not claimed");
  }

  // Torsion bound.
  for (auto q : c.torsion_primes) check_good_prime(h, q);
  const Integer tb = torsion_bound(h, c.torsion_primes);
  if (tb != c.torsion_bound) fail("torsion bound is " + tb.get_str());

  // Rank witness and annihilators.
  for (const auto& a : c.annihilators) {
    if (a.size() != static_cast<size_t>(chart.g)) {
      fail("annihilator vector of wrong length");
      return bad;
    }
    bool unit = std::any_of(a.begin(), a.end(), [p](const Integer& x) {
      return x % static_cast<unsigned long>(p) != 0;
    });
    if (!unit) fail("annihilator vector vanishes mod p");
  }
  if (c.rank_bound == 1) {
    if (c.gamma.size() != 1 || c.gamma[0].order != 0 || !c.integration_pair) {
      fail("rank 1 certificate needs one free generator and an integration pair");
      return bad;
    }
    const auto& [P1, P2] = *c.integration_pair;
    for (const RationalClass& cls : {RationalClass::difference(P1, P2), c.gamma[0].cls}) {
      if (class_order_report(h, cls, c.torsion_primes, tb).status != OrderStatus::kInfinite) {
        fail("class " + cls.to_string() + " is not shown to have infinite order");
      }
    }
    IntegrationResult fresh = integrate_between(chart, P1, P2, p, k, 2);
    if (fresh.integrals.size() != c.integrals.size()) {
      fail("wrong number of integrals");
    } else {
      for (size_t i = 0; i < fresh.integrals.size(); ++i) {
        if (!(fresh.integrals[i] == c.integrals[i])) {
          fail("integral I_" + std::to_string(i) + " recomputes to " + fresh.integrals[i].to_string());
        }
      }
    }
    // a is an exact annihilator modulo p^k exactly when sum a_i I_i
    // vanishes modulo p^(k + min v(I_i)).
    long vmin = k;
    for (const auto& x : fresh.integrals) {
      if (!x.is_zero()) vmin = std::min(vmin, x.valuation());
    }
    for (size_t j = 0; j < c.annihilators.size(); ++j) {
      Padic s = Padic::zero(p, 2 * k + 4);
      for (size_t i = 0; i < fresh.integrals.size(); ++i) {
        s += fresh.integrals[i] * Padic::from_integer(c.annihilators[j][i], p, 2 * k + 4);
      }
      if (s.precision() < k + vmin || !(s.is_zero() || s.valuation() >= k + vmin)) {
        fail("vector " + std::to_string(j) + " does not annihilate the integrals mod p^k");
      }
    }
  } else if (c.rank_bound == 0) {
    for (const auto& g : c.gamma) {
      auto o = exact_torsion_order(h, g.cls, tb);
      if (!o || *o != g.order) fail("torsion class " + g.cls.to_string() + " has another order");
    }
  } else {
    fail("unsupported rank bound");
    return bad;
  }

  // d: any multiple of a valid d is valid.
  {
    bool ok = false;
    if (c.N <= 0 || c.d <= 0 || c.N % c.d != 0) {
      fail("bad N or d");
      return bad;
    }
    if (c.rank_bound == 1) {
      Integer order = 1;
      for (auto q : c.S) {
        JacobianFp J(chart, q, kVerifierSeed);
        order = lcm(order, quotient_order(J, reduce_class(J, c.gamma[0].cls), c.N));
      }
      ok = c.d % compute_d(c.N, tb, order) == 0;
      if (!ok) {
        bool saturated = true;
        Integer n = c.N;
        for (Integer l = 2; n > 1; ++l) {
          if (n % l != 0) continue;
          while (n % l == 0) n /= l;
          auto it = c.saturation.find(l.get_ui());
          saturated = saturated && it != c.saturation.end() &&
                      saturation_check(h, c.gamma[0].cls, l.get_ui(), it->second, tb).status ==
                          SaturationStatus::kSaturated;
        }
        ok = saturated;
      }
    } else {
      JacobianFp J(chart, c.torsion_primes.front(), kVerifierSeed);
      std::vector<FpDivisor> gens;
      for (const auto& g : c.gamma) gens.push_back(reduce_class(J, g.cls));
      Integer size = subgroup_size(J, gens);
      ok = tb % size == 0 && c.d % gcd(c.N, tb / size) == 0;
    }
    if (!ok) fail("d = " + c.d.get_str() + " is not justified");
  }

  // The sieve, recomputed as coset membership tests.
  std::vector<Integer> moduli;
  for (const auto& g : c.gamma) moduli.push_back(g.order == 0 ? c.N : gcd(g.order, c.N));
  if (moduli != c.tuple_moduli) fail("tuple moduli differ");
  const auto tuples = all_tuples(moduli);
  if (c.primes.size() != c.S.size()) {
    fail("sieve transcript does not cover S");
    return bad;
  }
  std::vector<PrimeCheck> checks;
  for (size_t qi = 0; qi < c.S.size(); ++qi) {
    const std::uint64_t q = c.S[qi];
    const SievePrime& rec = c.primes[qi];
    if (rec.p != q) fail("sieve transcript out of order");
    check_good_prime(h, q);
    JacobianFp J(chart, q, kVerifierSeed);
    const Jacobian<Fp>& G = J.group();
    if (J.structure().invariants != rec.invariants) {
      fail("group structure at " + std::to_string(q) + " differs");
    }
    PrimeCheck pc;
    pc.points.push_back(std::nullopt);
    for (const auto& P : J.affine_points()) pc.points.push_back(P);
    if (pc.points != rec.points) {
      fail("point list at " + std::to_string(q) + " differs");
      return bad;
    }
    std::vector<FpDivisor> gens;
    for (const auto& g : c.gamma) gens.push_back(reduce_class(J, g.cls));
    std::vector<FpDivisor> combos;
    for (const auto& t : tuples) {
      FpDivisor T = G.zero();
      for (size_t i = 0; i < t.size(); ++i) T = G.add(T, G.mul(t[i], gens[i]));
      combos.push_back(T);
    }
    const FpDivisor base = J.reduce(c.base_point);
    for (size_t i = 0; i < pc.points.size(); ++i) {
      const auto& P = pc.points[i];
      FpDivisor A = P ? G.point(P->first, P->second) : G.zero();
      FpDivisor D = G.mul(c.d, G.sub(A, base));
      if (gens.size() == 1) {
        auto n = dlog_multiple(J, D, gens[0], c.N);
        if (n != rec.multiples[i]) {
          fail("multiple of point " + std::to_string(i) + " at " + std::to_string(q) + " is " +
               (n ? n->get_str() : "none"));
        }
      }
      std::vector<bool> row;
      for (const auto& T : combos) row.push_back(all_zero(J.coordinates(G.sub(D, T), c.N)));
      pc.in_coset.push_back(row);
    }
    checks.push_back(std::move(pc));
  }
  std::vector<std::vector<Integer>> survivors;
  std::vector<bool> alive(tuples.size(), true);
  for (size_t t = 0; t < tuples.size(); ++t) {
    for (const auto& pc : checks) {
      bool hit = false;
      for (const auto& row : pc.in_coset) hit = hit || row[t];
      alive[t] = alive[t] && hit;
    }
    if (alive[t]) survivors.push_back(tuples[t]);
  }
  if (survivors != c.survivors) fail("sieve survivors differ");
  std::vector<bool> survives_at_p;
  for (size_t qi = 0; qi < checks.size(); ++qi) {
    for (size_t i = 0; i < checks[qi].points.size(); ++i) {
      bool s = false;
      for (size_t t = 0; t < tuples.size(); ++t) s = s || (alive[t] && checks[qi].in_coset[i][t]);
      if (s != c.primes[qi].survives[i]) {
        fail("survival of point " + std::to_string(i) + " at " + std::to_string(c.S[qi]) + " differs");
      }
      if (c.S[qi] == p) survives_at_p.push_back(s);
    }
  }
  if (survives_at_p.empty()) {
    fail("the Chabauty prime is not in S");
    return bad;
  }

  // Coverage of C(F_p).
  const std::vector<ResidueDisc> discs = all_discs(chart, p);
  if (discs.size() != c.discs.size() || discs.size() != survives_at_p.size()) {
    fail("disc list does not match C(F_p)");
    return bad;
  }
  const PrimeCheck& pcp = checks[static_cast<size_t>(
      std::find(c.S.begin(), c.S.end(), p) - c.S.begin())];
  size_t covered = 0;
  for (const auto& disc : discs) {
    const std::string name = center_string(disc);
    auto rec = std::find_if(c.discs.begin(), c.discs.end(),
                            [&](const DiscRecord& r) { return r.disc == name; });
    if (rec == c.discs.end()) {
      fail("disc " + name + " is missing");
      continue;
    }
    int inside = 0;
    for (const auto& P : c.claimed_points) {
      if (disc_of(chart, p, P).to_string() == disc.to_string()) ++inside;
    }
    ChartPointFp center;
    if (disc.kind != ResidueDisc::Kind::kInfinity) center = std::make_pair(disc.x, disc.y);
    size_t idx = static_cast<size_t>(
        std::find(pcp.points.begin(), pcp.points.end(), center) - pcp.points.begin());
    if (rec->status == "bounded") {
      if (!rec->vector_index || *rec->vector_index < 0 ||
          static_cast<size_t>(*rec->vector_index) >= c.annihilators.size()) {
        fail("disc " + name + " has no annihilator");
        continue;
      }
      int b = disc_point_bound(chart, c.annihilators[static_cast<size_t>(*rec->vector_index)],
                               disc, k);
      if (!rec->bound || b != *rec->bound) fail("bound in disc " + name + " is " + std::to_string(b));
      if (b != inside) {
        fail("disc " + name + " allows " + std::to_string(b) + " points but holds " +
             std::to_string(inside) + " claimed");
        continue;
      }
      ++covered;
    } else if (rec->status == "eliminated") {
      if (idx >= survives_at_p.size() || survives_at_p[idx]) {
        fail("disc " + name + " is not eliminated by the sieve");
        continue;
      }
      if (inside > 0) fail("claimed point in eliminated disc " + name);
      ++covered;
    } else {
      fail("disc " + name + " is open");
    }
  }
  if (covered != discs.size()) fail("coverage of C(F_p) is incomplete");
  return bad;
}

}  // namespace tors3
