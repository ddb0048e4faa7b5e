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

#include "tors3/sieve.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>

#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

namespace {

using Key = std::vector<Integer>;

Key add_scaled(Key acc, const Key& v, const Integer& n, const std::vector<Integer>& mod) {
  for (size_t i = 0; i < acc.size(); ++i) {
    if (mod[i] == 1) continue;
    acc[i] = (acc[i] + n * v[i]) % mod[i];
    if (acc[i] < 0) acc[i] += mod[i];
  }
  return acc;
}

SievePrime sieve_prime(const SieveInstance& inst, const Chart& chart, std::uint64_t p) {
  check_good_prime(inst.curve, p);
  JacobianFp J(chart, p);
  const Jacobian<Fp>& G = J.group();
  SievePrime sp;
  sp.p = p;
  sp.invariants = J.structure().invariants;
  for (const auto& n : sp.invariants) sp.quotient_moduli.push_back(gcd(n, inst.N));

  std::vector<FpDivisor> gens;
  for (const auto& g : inst.gamma) {
    FpDivisor D = reduce_class(J, g.cls);
    if (g.order != 0 && !G.mul(g.order, D).is_zero()) {
      throw InvalidInput("torsion generator does not reduce to a class of the stated order at " +
                         std::to_string(p));
    }
    gens.push_back(D);
    sp.generator_images.push_back(J.coordinates(D, inst.N));
  }

  sp.points.push_back(std::nullopt);
  for (const auto& P : J.affine_points()) sp.points.push_back(P);
  const FpDivisor base = J.reduce(inst.base_point);
  const std::vector<FpDivisor> classes = J.point_classes();
  for (const auto& c : classes) {
    FpDivisor D = G.mul(inst.d, G.sub(c, base));
    sp.images.push_back(J.coordinates(D, inst.N));
    if (gens.size() == 1) {
      sp.multiples.push_back(dlog_multiple(J, D, gens[0], inst.N));
    } else {
      sp.multiples.push_back(std::nullopt);
    }
  }
  return sp;
}

}  // namespace

FpDivisor reduce_class(const JacobianFp& J, const RationalClass& c) {
  const Jacobian<Fp>& G = J.group();
  Integer degree = 0;
  FpDivisor D = G.zero();
  for (const auto& [n, P] : c.terms) {
    degree += n;
    D = G.add(D, G.mul(n, J.reduce(P)));
  }
  if (degree != 0) throw InvalidInput("divisor class of nonzero degree");
  return D;
}

std::string RationalClass::to_string() const {
  std::string out = "[";
  for (size_t i = 0; i < terms.size(); ++i) {
    const Integer& n = terms[i].first;
    if (i > 0) out += n < 0 ? " - " : " + ";
    else if (n < 0) out += "-";
    Integer a = abs(n);
    if (a != 1) out += a.get_str() + "*";
    out += terms[i].second.to_string();
  }
  return out + "]";
}

std::string model_point_string(const Chart& chart, const ChartPointFp& P, std::uint64_t p) {
  std::ostringstream os;
  if (!chart.inverted) {
    if (!P) return "(1:0:0)";
    os << "(" << P->first.value() << "," << P->second.value() << ")";
    return os.str();
  }
  if (!P) {
    os << "(" << Fp::from_rational(chart.r0, p).value() << ",0)";
    return os.str();
  }
  const auto& [s, w] = *P;
  if (s.is_zero()) {
    os << "(1:" << w.value() << ":0)";
    return os.str();
  }
  Fp t = Fp::from_rational(chart.r0, p) + s.inverse();
  Fp y = w / s.pow(static_cast<std::uint64_t>(chart.g + 1));
  os << "(" << t.value() << "," << y.value() << ")";
  return os.str();
}

const SievePrime& SieveResult::at(std::uint64_t p) const {
  for (const auto& sp : primes) {
    if (sp.p == p) return sp;
  }
  throw InvalidInput("prime " + std::to_string(p) + " is not in the sieve set");
}

std::vector<ChartPointFp> SieveResult::surviving_points(std::uint64_t p) const {
  const SievePrime& sp = at(p);
  std::vector<ChartPointFp> out;
  for (size_t i = 0; i < sp.points.size(); ++i) {
    if (sp.survives[i]) out.push_back(sp.points[i]);
  }
  return out;
}

SieveResult run_sieve(const SieveInstance& inst) {
  if (inst.N <= 0 || inst.d <= 0) throw InvalidInput("sieve needs N, d > 0");
  if (inst.N % inst.d != 0) throw InvalidInput("d must divide N");
  if (inst.S.empty()) throw InvalidInput("empty sieve set");
  const Chart chart = make_chart(inst.curve);

  SieveResult res;
  res.N = inst.N;
  res.d = inst.d;
  std::vector<std::future<SievePrime>> jobs;
  for (std::uint64_t p : inst.S) {
    jobs.push_back(std::async(std::launch::async,
                              [&inst, &chart, p] { return sieve_prime(inst, chart, p); }));
  }
  for (auto& j : jobs) res.primes.push_back(j.get());

  Integer total = 1;
  for (const auto& g : inst.gamma) {
    res.tuple_moduli.push_back(g.order == 0 ? inst.N : gcd(g.order, inst.N));
    total *= res.tuple_moduli.back();
  }
  if (total > 20000000) throw BudgetExceeded("Gamma / N Gamma too large to enumerate");

  std::vector<std::set<Key>> images(res.primes.size());
  for (size_t k = 0; k < res.primes.size(); ++k) {
    images[k] = std::set<Key>(res.primes[k].images.begin(), res.primes[k].images.end());
  }
  // Walk Gamma / N Gamma, keeping the quotient image at every prime in step.
  std::vector<std::set<Key>> hit(res.primes.size());
  std::vector<Integer> tuple(res.tuple_moduli.size(), 0);
  std::vector<Key> keys;
  for (const auto& sp : res.primes) keys.push_back(Key(sp.quotient_moduli.size(), 0));
  while (true) {
    bool ok = true;
    for (size_t k = 0; k < res.primes.size() && ok; ++k) ok = images[k].count(keys[k]) > 0;
    if (ok) {
      res.survivors.push_back(tuple);
      for (size_t k = 0; k < res.primes.size(); ++k) hit[k].insert(keys[k]);
    }
    size_t i = 0;
    for (; i < tuple.size(); ++i) {
      for (size_t k = 0; k < res.primes.size(); ++k) {
        keys[k] = add_scaled(keys[k], res.primes[k].generator_images[i], 1,
                             res.primes[k].quotient_moduli);
      }
      tuple[i] += 1;
      if (tuple[i] < res.tuple_moduli[i]) break;
      // Wrapped: the key moved by m_i times the generator; undo that.
      for (size_t k = 0; k < res.primes.size(); ++k) {
        keys[k] = add_scaled(keys[k], res.primes[k].generator_images[i], -res.tuple_moduli[i],
                             res.primes[k].quotient_moduli);
      }
      tuple[i] = 0;
    }
    if (i == tuple.size()) break;
  }

  for (size_t k = 0; k < res.primes.size(); ++k) {
    SievePrime& sp = res.primes[k];
    for (const auto& img : sp.images) sp.survives.push_back(hit[k].count(img) > 0);
  }

  for (const auto& P : inst.known_points) {
    for (const auto& sp : res.primes) {
      JacobianFp J(chart, sp.p);
      ChartPointFp r = J.reduce_point(P);
      auto it = std::find(sp.points.begin(), sp.points.end(), r);
      if (it == sp.points.end() || !sp.survives[static_cast<size_t>(it - sp.points.begin())]) {
        res.sound = false;
        res.unsound.push_back(P.to_string() + " at " + std::to_string(sp.p));
      }
    }
  }
  return res;
}

Integer quotient_order(const JacobianFp& J, const FpDivisor& D, const Integer& N) {
  const auto& inv = J.structure().invariants;
  std::vector<Integer> c = J.coordinates(D, N);
  Integer order = 1;
  for (size_t i = 0; i < inv.size(); ++i) {
    Integer m = gcd(inv[i], N);
    if (m == 1) continue;
    order = lcm(order, m / gcd(c[i], m));
  }
  return order;
}

Integer compute_d(const Integer& N, const Integer& torsion_bound, const Integer& order) {
  if (N <= 0 || torsion_bound <= 0 || order <= 0) throw InvalidInput("compute_d needs positive input");
  if (N % order != 0) throw InvalidInput("generator order must divide N");
  return gcd(N, (N / order) * torsion_bound);
}

SaturationResult saturation_check(const HyperellipticModel& h, const RationalClass& gen,
                                  std::uint64_t ell, std::uint64_t aux_prime,
                                  const Integer& torsion_bound) {
  if (!is_prime(ell)) throw InvalidInput("saturation needs a prime ell");
  check_good_prime(h, aux_prime);
  SaturationResult r;
  r.torsion_bound = torsion_bound;
  JacobianFp J(make_chart(h), aux_prime);
  const Integer L = static_cast<unsigned long>(ell);
  r.aux_image = J.coordinates(reduce_class(J, gen), L);
  bool zero = std::all_of(r.aux_image.begin(), r.aux_image.end(),
                          [](const Integer& c) { return c == 0; });
  if (torsion_bound % L == 0) {
    r.reason = std::to_string(ell) + " divides the torsion bound " + torsion_bound.get_str();
  } else if (zero) {
    r.reason = "image in J(F_" + std::to_string(aux_prime) + ")/" + std::to_string(ell) +
               " is zero";
  } else {
    r.status = SaturationStatus::kSaturated;
    r.reason = "no " + std::to_string(ell) + "-torsion and nonzero image in J(F_" +
               std::to_string(aux_prime) + ")/" + std::to_string(ell);
  }
  return r;
}

}  // namespace tors3
