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

#include "tors3/certify.hpp"

#include <algorithm>
#include <set>

#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

using nlohmann::json;

namespace {

Mumford<Rational> rational_class(const Chart& chart, const Jacobian<Rational>& J,
                                 const RationalClass& cls) {
  Mumford<Rational> D = J.zero();
  for (const auto& [n, P] : cls.terms) {
    auto img = chart.image(P);
    if (img) D = J.add(D, J.mul(n, J.point(img->first, img->second)));
  }
  return D;
}

std::string chart_point_string(const ChartPointFp& P) {
  if (!P) return "O";
  return "(" + std::to_string(P->first.value()) + "," + std::to_string(P->second.value()) + ")";
}

// Bounded discs need an annihilating differential with a small Strassmann
// bound; try the basis and then sums and differences of two vectors.
std::vector<std::vector<Integer>> candidate_vectors(const std::vector<std::vector<Integer>>& basis,
                                                    const Integer& pk) {
  std::vector<std::vector<Integer>> out = basis;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      for (int s : {1, -1}) {
        std::vector<Integer> v(basis[i].size());
        for (size_t t = 0; t < v.size(); ++t) {
          v[t] = (basis[i][t] + s * basis[j][t]) % pk;
          if (v[t] < 0) v[t] += pk;
        }
        out.push_back(v);
      }
    }
  }
  return out;
}

json integers(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

std::vector<Integer> integers_from(const json& a) {
  std::vector<Integer> v;
  for (const auto& x : a) v.emplace_back(x.get<std::string>());
  return v;
}

json chart_point_json(const ChartPointFp& P) {
  if (!P) return nullptr;
  return json::array({P->first.value(), P->second.value()});
}

ChartPointFp chart_point_from(const json& j, std::uint64_t p) {
  if (j.is_null()) return std::nullopt;
  return std::make_pair(Fp(j.at(0).get<std::uint64_t>(), p), Fp(j.at(1).get<std::uint64_t>(), p));
}

}  // namespace

json class_json(const RationalClass& c) {
  json a = json::array();
  for (const auto& [n, P] : c.terms) a.push_back({{"n", n.get_str()}, {"point", P.to_string()}});
  return a;
}

RationalClass class_from(const json& a) {
  RationalClass c;
  for (const auto& t : a) {
    c.terms.emplace_back(Integer(t.at("n").get<std::string>()),
                         CurvePoint::parse(t.at("point").get<std::string>()));
  }
  return c;
}

CertifyConfig certify_config_from_json(const json& j) {
  try {
    CertifyConfig c;
    c.curve = j.at("curve").get<std::string>();
    c.rank_bound = j.at("rank_bound").at("value").get<int>();
    c.rank_source = j.at("rank_bound").at("source").get<std::string>();
    if (c.rank_source.empty()) throw InvalidInput(c.curve + ": rank_bound.source is required");
    c.search_height = j.value("search_height", c.search_height);
    c.torsion_primes = j.value("torsion_primes", c.torsion_primes);
    c.chabauty_prime = j.value("chabauty_prime", std::uint64_t{0});
    c.precision = j.value("precision", c.precision);
    if (j.contains("P1")) c.P1 = CurvePoint::parse(j.at("P1").get<std::string>());
    if (j.contains("P2")) c.P2 = CurvePoint::parse(j.at("P2").get<std::string>());
    if (j.contains("base_point")) c.base_point = CurvePoint::parse(j.at("base_point").get<std::string>());
    for (const auto& g : j.value("gamma", json::array())) {
      c.gamma.push_back({class_from(g.at("class")), Integer(g.value("order", std::string("0")))});
    }
    c.S = j.value("S", std::vector<std::uint64_t>{});
    c.N = Integer(j.value("N", std::string("1")));
    const json saturation = j.value("saturation", json::object());
    for (const auto& [ell, aux] : saturation.items()) {
      c.saturation[std::stoull(ell)] = aux.get<std::uint64_t>();
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("certify config: ") + e.what());
  }
}

ClassOrderReport class_order_report(const HyperellipticModel& h, const RationalClass& cls,
                                    const std::vector<std::uint64_t>& primes,
                                    const Integer& torsion_bound) {
  ClassOrderReport rep;
  Chart chart = make_chart(h);
  for (auto p : primes) {
    JacobianFp J(chart, p);
    Integer o = J.element_order(reduce_class(J, cls));
    rep.reduction_orders.emplace_back(p, o);
    if (torsion_bound % o != 0) {
      rep.status = OrderStatus::kInfinite;
      rep.reason = "order " + o.get_str() + " mod " + std::to_string(p) +
                   " does not divide the torsion bound " + torsion_bound.get_str();
      return rep;
    }
    if (rep.reduction_orders.front().second != o) {
      rep.status = OrderStatus::kInfinite;
      rep.reason = "reduction orders differ between primes";
      return rep;
    }
  }
  rep.reason = "all reduction orders agree and divide the torsion bound";
  return rep;
}

std::optional<Integer> exact_torsion_order(const HyperellipticModel& h, const RationalClass& cls,
                                           const Integer& bound) {
  Chart chart = make_chart(h);
  Jacobian<Rational> J(chart.f, chart.g);
  Mumford<Rational> D = rational_class(chart, J, cls);
  // The order is the least divisor n of bound with n D = 0.
  for (Integer n = 1; n <= bound; ++n) {
    if (bound % n != 0) continue;
    if (J.mul(n, D).is_zero()) return n;
  }
  return std::nullopt;
}

Integer subgroup_size(const JacobianFp& J, const std::vector<FpDivisor>& gens) {
  const Jacobian<Fp>& G = J.group();
  std::set<std::vector<std::uint64_t>> seen{divisor_key(G.zero())};
  std::vector<FpDivisor> frontier{G.zero()};
  while (!frontier.empty()) {
    std::vector<FpDivisor> next;
    for (const auto& D : frontier) {
      for (const auto& g : gens) {
        FpDivisor E = G.add(D, g);
        if (seen.insert(divisor_key(E)).second) next.push_back(E);
      }
    }
    if (seen.size() > 4000000) throw BudgetExceeded("subgroup too large to enumerate");
    frontier = std::move(next);
  }
  return Integer(static_cast<unsigned long>(seen.size()));
}

RationalPointCertificate certify_rational_points(const HyperellipticModel& h,
                                                 const CertifyConfig& config) {
  if (config.rank_bound < 0 || config.rank_bound > 1) {
    throw Unsupported("only rank bounds 0 and 1 are supported");
  }
  if (config.rank_source.empty()) throw InvalidInput("rank bound needs a source");
  const std::uint64_t p = config.chabauty_prime;
  if (std::find(config.S.begin(), config.S.end(), p) == config.S.end()) {
    throw InvalidInput("the Chabauty prime must be in the sieve set");
  }
  if (config.gamma.empty()) throw InvalidInput("Gamma needs a generator");

  RationalPointCertificate cert;
  cert.curve = config.curve;
  cert.model = h.d().to_string("t");
  cert.rank_bound = config.rank_bound;
  cert.rank_source = config.rank_source;
  cert.search_height = config.search_height;
  cert.chabauty_prime = p;
  cert.precision = config.precision;
  cert.S = config.S;
  cert.N = config.N;
  cert.base_point = config.base_point;
  cert.saturation = config.saturation;

  const Chart chart = make_chart(h);
  const long k = config.precision;
  std::vector<CurvePoint> known = rational_point_search(h, config.search_height);
  std::sort(known.begin(), known.end());

  cert.torsion_primes = good_primes(h, config.torsion_primes);
  cert.torsion_bound = torsion_bound(h, cert.torsion_primes);

  // Rank >= 1 witness and the annihilator.
  cert.gamma = config.gamma;
  if (config.rank_bound == 1) {
    if (config.gamma.size() != 1 || config.gamma[0].order != 0) {
      throw InvalidInput("rank 1 needs Gamma generated by one free class");
    }
    RationalClass x = RationalClass::difference(config.P1, config.P2);
    for (const RationalClass& c : {x, config.gamma[0].cls}) {
      ClassOrderReport rep = class_order_report(h, c, cert.torsion_primes, cert.torsion_bound);
      if (rep.status != OrderStatus::kInfinite) {
        cert.failures.push_back("class " + c.to_string() + " not shown to have infinite order: " +
                                rep.reason);
        return cert;
      }
      if (!cert.infinite_order_class) {
        cert.infinite_order_class = c;
        cert.reduction_orders = rep.reduction_orders;
      }
    }
    IntegrationResult ir = integrate_between(chart, config.P1, config.P2, p, k);
    cert.integration_pair = std::make_pair(config.P1, config.P2);
    cert.integration_multiple = ir.multiple;
    cert.integrals = ir.integrals;
    cert.annihilators = annihilator_space(ir.integrals, chart.g, 1, k);
  } else {
    for (auto& gen : cert.gamma) {
      auto o = exact_torsion_order(h, gen.cls, cert.torsion_bound);
      if (!o) {
        cert.failures.push_back("Gamma class " + gen.cls.to_string() + " is not torsion");
        return cert;
      }
      if (gen.order != 0 && gen.order != *o) {
        throw InvalidInput("stated order of " + gen.cls.to_string() + " is wrong");
      }
      gen.order = *o;
    }
    cert.annihilators = annihilator_space(std::vector<Padic>(static_cast<size_t>(chart.g),
                                                             Padic::zero(p, k)),
                                          chart.g, 0, k);
  }

  // d.
  {
    std::vector<std::uint64_t> ells;
    for (Integer n = cert.N, l = 2; n > 1; ++l) {
      if (n % l == 0) {
        ells.push_back(l.get_ui());
        while (n % l == 0) n /= l;
      }
    }
    if (config.rank_bound == 1) {
      bool saturated = !ells.empty();
      std::string why;
      for (auto ell : ells) {
        auto it = config.saturation.find(ell);
        if (it == config.saturation.end()) {
          saturated = false;
          break;
        }
        SaturationResult s =
            saturation_check(h, cert.gamma[0].cls, ell, it->second, cert.torsion_bound);
        if (s.status != SaturationStatus::kSaturated) {
          saturated = false;
          break;
        }
        why += (why.empty() ? "" : "; ") + s.reason;
      }
      if (saturated) {
        cert.d = 1;
        cert.d_reason = "Gamma saturated at every prime of N: " + why;
      } else {
        Integer order = 1;
        for (auto q : cert.S) {
          JacobianFp J(chart, q);
          order = lcm(order, quotient_order(J, reduce_class(J, cert.gamma[0].cls), cert.N));
        }
        cert.d = compute_d(cert.N, cert.torsion_bound, order);
        cert.d_reason = "generator order " + order.get_str() + " in the product quotient, torsion bound " +
                        cert.torsion_bound.get_str();
      }
    } else {
      JacobianFp J(chart, cert.torsion_primes.front());
      std::vector<FpDivisor> gens;
      for (const auto& gen : cert.gamma) gens.push_back(reduce_class(J, gen.cls));
      Integer size = subgroup_size(J, gens);
      if (cert.torsion_bound % size != 0) throw InvalidInput("Gamma larger than the torsion bound");
      Integer e = cert.torsion_bound / size;
      cert.d = gcd(cert.N, e);
      cert.d_reason = "rank 0, |Gamma| = " + size.get_str() + ", e = " + e.get_str();
    }
  }

  SieveInstance inst{h, cert.S, cert.N, cert.d, cert.gamma, known, cert.base_point};
  SieveResult sr = run_sieve(inst);
  cert.tuple_moduli = sr.tuple_moduli;
  cert.primes = sr.primes;
  cert.survivors = sr.survivors;
  if (!sr.sound) {
    for (const auto& u : sr.unsound) cert.failures.push_back("known point eliminated: " + u);
  }

  // Coverage of C(F_p): every disc is bounded around its known points or
  // sieved out.
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), p, static_cast<unsigned long>(k));
  auto candidates = candidate_vectors(cert.annihilators, pk);
  const SievePrime& sp = sr.at(p);
  for (size_t i = 0; i < sp.points.size(); ++i) {
    ResidueDisc disc = disc_of(chart, p, sp.points[i]);
    DiscRecord rec;
    rec.disc = chart_point_string(sp.points[i]);
    rec.model_point = model_point_string(chart, sp.points[i], p);
    for (const auto& P : known) {
      if (disc_of(chart, p, P).to_string() == disc.to_string()) rec.known.push_back(P);
    }
    if (!rec.known.empty()) {
      for (size_t c = 0; c < candidates.size(); ++c) {
        int b = 0;
        try {
          b = disc_point_bound(chart, candidates[c], disc, k);
        } catch (const PrecisionError&) {
          continue;
        }
        if (!rec.bound || b < *rec.bound) {
          rec.bound = b;
          rec.vector_index = static_cast<int>(c);
        }
      }
      if (rec.bound && *rec.bound == static_cast<int>(rec.known.size())) {
        rec.status = "bounded";
      } else {
        rec.status = "open";
        cert.failures.push_back("disc " + rec.model_point + " holds " +
                                std::to_string(rec.known.size()) + " known points but its bound is " +
                                (rec.bound ? std::to_string(*rec.bound) : "unavailable"));
      }
    } else if (!sp.survives[i]) {
      rec.status = "eliminated";
    } else {
      rec.status = "open";
      cert.failures.push_back("disc " + rec.model_point + " has no known point and survives the sieve");
    }
    cert.discs.push_back(rec);
  }

  // Keep only the candidate vectors actually used, basis first.
  {
    std::vector<std::vector<Integer>> used = cert.annihilators;
    for (auto& rec : cert.discs) {
      if (!rec.vector_index) continue;
      const auto& v = candidates[static_cast<size_t>(*rec.vector_index)];
      auto it = std::find(used.begin(), used.end(), v);
      if (it == used.end()) {
        used.push_back(v);
        it = used.end() - 1;
      }
      rec.vector_index = static_cast<int>(it - used.begin());
    }
    cert.annihilators = used;
  }

  cert.claimed_points = known;
  cert.certified = cert.failures.empty();
  return cert;
}

json RationalPointCertificate::to_json() const {
  json j;
  j["curve"] = curve;
  j["model"] = model;
  j["certified"] = certified;
  j["failures"] = failures;
  json pts = json::array();
  for (const auto& P : claimed_points) pts.push_back(P.to_string());
  j["claimed_points"] = pts;
  j["rank_input"] = {{"value", rank_bound}, {"source", rank_source}};
  j["search_height"] = search_height;
  j["torsion"] = {{"bound", torsion_bound.get_str()},
                  {"primes", torsion_primes}};

  json ch;
  ch["p"] = chabauty_prime;
  ch["precision"] = precision;
  if (infinite_order_class) {
    json ro = json::array();
    for (const auto& [q, o] : reduction_orders) ro.push_back({{"p", q}, {"order", o.get_str()}});
    ch["infinite_order"] = {{"class", class_json(*infinite_order_class)}, {"reduction_orders", ro}};
  }
  if (integration_pair) {
    ch["P1"] = integration_pair->first.to_string();
    ch["P2"] = integration_pair->second.to_string();
    ch["kernel_multiple"] = integration_multiple.get_str();
    json I = json::array();
    for (const auto& x : integrals) {
      I.push_back({{"value", x.lift().to_string()}, {"precision", x.precision()}});
    }
    ch["integrals"] = I;
  }
  json av = json::array();
  for (const auto& a : annihilators) av.push_back(integers(a));
  ch["annihilator_vectors"] = av;
  json db = json::array();
  for (const auto& r : discs) {
    json e;
    e["disc"] = r.disc;
    e["point"] = r.model_point;
    json kn = json::array();
    for (const auto& P : r.known) kn.push_back(P.to_string());
    e["known"] = kn;
    e["status"] = r.status;
    e["vector"] = r.vector_index ? json(*r.vector_index) : json(nullptr);
    e["bound"] = r.bound ? json(*r.bound) : json(nullptr);
    db.push_back(e);
  }
  ch["disc_bounds"] = db;
  j["chabauty"] = ch;

  json sv;
  sv["S"] = S;
  sv["N"] = N.get_str();
  sv["d"] = d.get_str();
  sv["d_reason"] = d_reason;
  json sat = json::object();
  for (const auto& [ell, aux] : saturation) sat[std::to_string(ell)] = aux;
  sv["saturation"] = sat;
  sv["base_point"] = base_point.to_string();
  json gm = json::array();
  for (const auto& g : gamma) gm.push_back({{"class", class_json(g.cls)}, {"order", g.order.get_str()}});
  sv["gamma"] = gm;
  sv["tuple_moduli"] = integers(tuple_moduli);
  json per = json::array();
  for (const auto& q : primes) {
    json e;
    e["p"] = q.p;
    e["group"] = integers(q.invariants);
    e["quotient"] = integers(q.quotient_moduli);
    json gi = json::array();
    for (const auto& v : q.generator_images) gi.push_back(integers(v));
    e["generator_images"] = gi;
    json rows = json::array();
    for (size_t i = 0; i < q.points.size(); ++i) {
      json r;
      r["chart"] = chart_point_json(q.points[i]);
      r["image"] = integers(q.images[i]);
      r["multiple"] = q.multiples[i] ? json(q.multiples[i]->get_str()) : json(nullptr);
      r["survives"] = static_cast<bool>(q.survives[i]);
      rows.push_back(r);
    }
    e["points"] = rows;
    per.push_back(e);
  }
  sv["per_prime_multiples"] = per;
  json su = json::array();
  for (const auto& t : survivors) su.push_back(integers(t));
  sv["survivors"] = su;
  j["sieve"] = sv;
  j["verifier_version"] = verifier_version;
  return j;
}

RationalPointCertificate RationalPointCertificate::from_json(const json& j) {
  try {
    RationalPointCertificate c;
    c.curve = j.at("curve").get<std::string>();
    c.verifier_version = j.at("verifier_version").get<std::string>();
    c.model = j.at("model").get<std::string>();
    c.certified = j.at("certified").get<bool>();
    c.failures = j.at("failures").get<std::vector<std::string>>();
    for (const auto& s : j.at("claimed_points")) c.claimed_points.push_back(CurvePoint::parse(s));
    c.rank_bound = j.at("rank_input").at("value").get<int>();
    c.rank_source = j.at("rank_input").at("source").get<std::string>();
    c.search_height = j.at("search_height").get<int>();
    c.torsion_bound = Integer(j.at("torsion").at("bound").get<std::string>());
    c.torsion_primes = j.at("torsion").at("primes").get<std::vector<std::uint64_t>>();

    const json& ch = j.at("chabauty");
    c.chabauty_prime = ch.at("p").get<std::uint64_t>();
    c.precision = ch.at("precision").get<long>();
    if (ch.contains("infinite_order")) {
      c.infinite_order_class = class_from(ch.at("infinite_order").at("class"));
      for (const auto& r : ch.at("infinite_order").at("reduction_orders")) {
        c.reduction_orders.emplace_back(r.at("p").get<std::uint64_t>(),
                                        Integer(r.at("order").get<std::string>()));
      }
    }
    if (ch.contains("P1")) {
      c.integration_pair = std::make_pair(CurvePoint::parse(ch.at("P1").get<std::string>()),
                                          CurvePoint::parse(ch.at("P2").get<std::string>()));
      c.integration_multiple = Integer(ch.at("kernel_multiple").get<std::string>());
      for (const auto& x : ch.at("integrals")) {
        Rational v = Rational::parse(x.at("value").get<std::string>());
        long prec = x.at("precision").get<long>();
        c.integrals.push_back(Padic::from_rational(v, c.chabauty_prime, prec));
      }
    }
    for (const auto& a : ch.at("annihilator_vectors")) c.annihilators.push_back(integers_from(a));
    for (const auto& e : ch.at("disc_bounds")) {
      DiscRecord r;
      r.disc = e.at("disc").get<std::string>();
      r.model_point = e.at("point").get<std::string>();
      for (const auto& s : e.at("known")) r.known.push_back(CurvePoint::parse(s));
      r.status = e.at("status").get<std::string>();
      if (!e.at("vector").is_null()) r.vector_index = e.at("vector").get<int>();
      if (!e.at("bound").is_null()) r.bound = e.at("bound").get<int>();
      c.discs.push_back(r);
    }

    const json& sv = j.at("sieve");
    c.S = sv.at("S").get<std::vector<std::uint64_t>>();
    c.N = Integer(sv.at("N").get<std::string>());
    c.d = Integer(sv.at("d").get<std::string>());
    c.d_reason = sv.at("d_reason").get<std::string>();
    for (const auto& [ell, aux] : sv.at("saturation").items()) {
      c.saturation[std::stoull(ell)] = aux.get<std::uint64_t>();
    }
    c.base_point = CurvePoint::parse(sv.at("base_point").get<std::string>());
    for (const auto& g : sv.at("gamma")) {
      c.gamma.push_back({class_from(g.at("class")), Integer(g.at("order").get<std::string>())});
    }
    c.tuple_moduli = integers_from(sv.at("tuple_moduli"));
    for (const auto& e : sv.at("per_prime_multiples")) {
      SievePrime q;
      q.p = e.at("p").get<std::uint64_t>();
      q.invariants = integers_from(e.at("group"));
      q.quotient_moduli = integers_from(e.at("quotient"));
      for (const auto& v : e.at("generator_images")) q.generator_images.push_back(integers_from(v));
      for (const auto& r : e.at("points")) {
        q.points.push_back(chart_point_from(r.at("chart"), q.p));
        q.images.push_back(integers_from(r.at("image")));
        if (r.at("multiple").is_null()) {
          q.multiples.push_back(std::nullopt);
        } else {
          q.multiples.push_back(Integer(r.at("multiple").get<std::string>()));
        }
        q.survives.push_back(r.at("survives").get<bool>());
      }
      c.primes.push_back(q);
    }
    for (const auto& t : sv.at("survivors")) c.survivors.push_back(integers_from(t));
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace tors3
