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

#include "tors3/verdicts.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "tors3/algebra.hpp"
#include "tors3/bipoly.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

using nlohmann::json;

std::string to_string(CubicStatus s) {
  switch (s) {
    case CubicStatus::kReducible: return "reducible";
    case CubicStatus::kCyclic: return "cyclic";
    case CubicStatus::kS3: return "s3";
  }
  return "?";
}

std::string to_string(Signature s) {
  return s == Signature::kTotallyReal ? "totally_real" : "complex";
}

CubicFieldClass classify_cubic(const QPoly& h) {
  if (h.degree() != 3) throw InvalidInput("classify_cubic needs a cubic, got degree " +
                                          std::to_string(h.degree()));
  CubicFieldClass c;
  c.discriminant = discriminant(h);
  c.signature = c.discriminant.sign() < 0 ? Signature::kComplex : Signature::kTotallyReal;
  if (!cubic_rational_roots(h).empty()) {
    c.status = CubicStatus::kReducible;
  } else if (is_rational_square(c.discriminant)) {
    c.status = CubicStatus::kCyclic;
  } else {
    c.status = CubicStatus::kS3;
  }
  return c;
}

std::uint64_t count_points(const WeierstrassCurve<Fp>& E) {
  const std::uint64_t p = E.a1.modulus();
  if (p == 2) throw Unsupported("count_points needs odd p");
  std::uint64_t n = 1;  // O
  const Fp four = E.a1.from_integer(4);
  for (std::uint64_t v = 0; v < p; ++v) {
    Fp x(v, p);
    Fp s = E.a1 * x + E.a3;
    Fp rhs = four * (x * x * x + E.a2 * x * x + E.a4 * x + E.a6) + s * s;
    if (rhs.is_zero()) {
      n += 1;
    } else if (rhs.pow((p - 1) / 2).is_one()) {
      n += 2;
    }
  }
  return n;
}

TateCurve make_tate_curve(const NumberFieldElement& a, const NumberFieldElement& b) {
  TateCurve E{a.field(), a, b};
  if (E.model().discriminant().is_zero()) {
    throw InvalidCurve("singular model y^2 + a xy + b y = x^3 + b x^2");
  }
  return E;
}

namespace {

TateCurve exceptional_with(long a2) {
  QPoly h{Rational(8) / 9, Rational(-1), Rational(-8), Rational(1)};
  auto K = make_number_field(h);
  QPoly a{Rational(2240) / 2232, Rational(2543) / 2232, Rational(a2) / 2232};
  QPoly b{Rational(-376) / 155682, Rational(-2465) / 155682, Rational(481) / 155682};
  return make_tate_curve(NumberFieldElement(K, a), NumberFieldElement(K, b));
}

}  // namespace

TateCurve exceptional_tate_curve() { return exceptional_with(-311); }

TateCurve printed_exceptional_tate_curve() { return exceptional_with(-11); }

std::optional<int> torsion_order_at_origin(const TateCurve& E, int n_max) {
  if (n_max < 1) throw InvalidInput("n_max must be positive");
  auto W = E.model();
  if (W.discriminant().is_zero()) throw InvalidCurve("singular Tate model");
  using Point = WeierstrassCurve<NumberFieldElement>::Point;
  const Point P = std::make_pair(E.a.zero(), E.a.zero());
  Point Q = P;
  for (int n = 1; n <= n_max; ++n) {
    if (!Q) return n;
    Q = W.add(Q, P);
  }
  return std::nullopt;
}

namespace {

bool in_cusp_list(const DegreeThreeMap& m, const std::optional<Rational>& t0) {
  return t0 && std::find(m.cusp_list.begin(), m.cusp_list.end(), *t0) != m.cusp_list.end();
}

}  // namespace

FiberInterpretation interpret_t(const DegreeThreeMap& m, const std::optional<Rational>& t0) {
  FiberInterpretation out;
  out.t0 = t0;
  if (in_cusp_list(m, t0)) {
    out.reason = "listed cusp";
    return out;
  }
  try {
    out.cubic = fiber_cubic(m, t0);
  } catch (const DegenerateFiber& e) {
    out.reason = e.what();
    return out;
  }
  out.field = classify_cubic(*out.cubic);
  if (out.field->status == CubicStatus::kReducible) {
    out.reason = "fiber cubic has a rational root";
    return out;
  }
  out.kind = FiberKind::kEllipticPoint;
  out.reason = to_string(out.field->status) + " " + to_string(out.field->signature) +
               " cubic field";
  return out;
}

FiberInterpretation interpret_point(const DegreeThreeMap& m, const CurvePoint& P) {
  if (P.at_infinity) return interpret_t(m, std::nullopt);
  return interpret_t(m, P.x - m.printed_shift);
}

std::vector<Rational> scan_order(int height_bound) {
  std::vector<std::tuple<long, long, long, long>> keys;  // (height, b, |a|, a)
  for (long b = 1; b <= height_bound; ++b) {
    for (long a = -height_bound; a <= height_bound; ++a) {
      if (std::gcd(a, b) != 1) continue;
      keys.emplace_back(std::max(std::labs(a), b), b, std::labs(a), a);
    }
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Rational> out;
  for (const auto& [h, b, abs_a, a] : keys) out.push_back(Rational(Integer(a), Integer(b)));
  return out;
}

std::string ScanReport::to_csv() const {
  std::ostringstream os;
  os << "t,discriminant,class,signature\n";
  for (const auto& r : rows) {
    os << r.t << "," << r.discriminant << "," << to_string(r.cls.status) << ","
       << to_string(r.cls.signature) << "\n";
  }
  return os.str();
}

json ScanReport::summary_json() const {
  json j;
  j["map"] = map_id;
  j["height"] = height_bound;
  j["first_complex_witness"] =
      first_complex_witness ? json(first_complex_witness->to_string()) : json(nullptr);
  j["first_real_nonsquare_witness"] = first_real_nonsquare_witness
                                          ? json(first_real_nonsquare_witness->to_string())
                                          : json(nullptr);
  j["counts"] = counts;
  j["degenerate"] = json::array();
  for (const auto& t : degenerate) j["degenerate"].push_back(t.to_string());
  return j;
}

ScanReport scan_family(const DegreeThreeMap& m, int height_bound, int threads) {
  if (height_bound < 1) throw InvalidInput("scan height must be at least 1");
  const std::vector<Rational> ts = scan_order(height_bound);
  std::vector<std::optional<ScanRow>> slots(ts.size());
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(ts.size()));
  std::vector<std::future<void>> jobs;
  for (int w = 0; w < threads; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (size_t i = static_cast<size_t>(w); i < ts.size(); i += static_cast<size_t>(threads)) {
        try {
          QPoly c = fiber_cubic(m, ts[i]);
          CubicFieldClass cls = classify_cubic(c);
          slots[i] = ScanRow{ts[i], cls.discriminant, cls};
        } catch (const DegenerateFiber&) {
        }
      }
    }));
  }
  for (auto& j : jobs) j.get();

  ScanReport rep;
  rep.map_id = m.id;
  rep.height_bound = height_bound;
  for (const char* k : {"reducible", "cyclic", "s3_totally_real", "s3_complex"}) rep.counts[k] = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (!slots[i]) {
      rep.degenerate.push_back(ts[i]);
      continue;
    }
    const ScanRow& r = *slots[i];
    rep.rows.push_back(r);
    switch (r.cls.status) {
      case CubicStatus::kReducible: ++rep.counts["reducible"]; break;
      case CubicStatus::kCyclic: ++rep.counts["cyclic"]; break;
      case CubicStatus::kS3:
        if (r.cls.signature == Signature::kComplex) {
          ++rep.counts["s3_complex"];
          if (!rep.first_complex_witness) rep.first_complex_witness = r.t;
        } else {
          ++rep.counts["s3_totally_real"];
          if (!rep.first_real_nonsquare_witness) rep.first_real_nonsquare_witness = r.t;
        }
        break;
    }
  }
  rep.counts["degenerate"] = static_cast<int>(rep.degenerate.size());
  return rep;
}

QPoly even_quotient(const QPoly& d) {
  if (d.is_zero()) throw InvalidInput("zero polynomial has no even quotient");
  std::vector<Rational> q;
  for (int i = 0; i <= d.degree(); ++i) {
    if (i % 2 == 1) {
      if (!d.coeff(i).is_zero()) throw InvalidInput("polynomial is not even: " + d.to_string("t"));
    } else {
      q.push_back(d.coeff(i));
    }
  }
  return QPoly(std::move(q));
}

QuotientWeierstrass weierstrass_from_quartic(const QPoly& q, const Rational& root) {
  if (q.degree() != 4) throw InvalidInput("expected a quartic");
  if (!q.eval(root).is_zero()) throw InvalidInput("not a root: " + root.to_string());
  // q(root + w) = c1 w + c2 w^2 + c3 w^3 + c4 w^4.
  QPoly s = q.shift(root);
  const Rational c1 = s.coeff(1), c2 = s.coeff(2), c3 = s.coeff(3), c4 = s.coeff(4);
  if (c1.is_zero()) throw InvalidInput("root is not simple");
  QuotientWeierstrass w;
  w.quartic = q;
  w.root = root;
  w.c1 = c1;
  w.cubic = QPoly{c1 * c1 * c4, c1 * c3, c2, Rational(1)};
  return w;
}

WeierstrassCurve<Rational> weierstrass_curve(const QuotientWeierstrass& w) {
  return {Rational(0), w.cubic.coeff(2), Rational(0), w.cubic.coeff(1), w.cubic.coeff(0)};
}

RationalEcPoint quartic_to_weierstrass(const QuotientWeierstrass& w, const CurvePoint& P) {
  if (P.at_infinity) {
    // z = 0; Y = c1 * (y / u^2) at u = infinity.
    const Rational lc = w.quartic.coeff(4);
    if (!is_rational_square(lc)) throw InvalidInput("quartic has no rational points at infinity");
    return std::make_pair(Rational(0), w.c1 * rational_sqrt(lc) * Rational(P.inf_sign));
  }
  if (P.x == w.root) return std::nullopt;
  const Rational z = (P.x - w.root).inverse();
  return std::make_pair(w.c1 * z, w.c1 * P.y * z * z);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> reduction_counts(
    const QuotientWeierstrass& w, int count) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  const Rational disc = discriminant(w.cubic);
  for (std::uint64_t p = 3; static_cast<int>(out.size()) < count; p = next_prime(p)) {
    bool integral = true;
    for (const auto& c : w.cubic.coeffs()) {
      if (mpz_divisible_ui_p(c.denominator().get_mpz_t(), p)) integral = false;
    }
    if (!integral || mpz_divisible_ui_p(disc.numerator().get_mpz_t(), p)) continue;
    WeierstrassCurve<Fp> E{Fp(0, p), Fp::from_rational(w.cubic.coeff(2), p), Fp(0, p),
                           Fp::from_rational(w.cubic.coeff(1), p),
                           Fp::from_rational(w.cubic.coeff(0), p)};
    out.emplace_back(p, count_points(E));
  }
  return out;
}

QuotientTorsionBound quotient_torsion_bound(const QuotientWeierstrass& w,
                                            const std::vector<std::uint64_t>& primes) {
  using Point = WeierstrassCurve<Fp>::Point;
  struct Local {
    WeierstrassCurve<Fp> E;
    std::vector<Point> points;
  };
  std::vector<Local> locals;
  QuotientTorsionBound tb;
  tb.order_gcd = 0;
  for (std::uint64_t p : primes) {
    Local L{{Fp(0, p), Fp::from_rational(w.cubic.coeff(2), p), Fp(0, p),
             Fp::from_rational(w.cubic.coeff(1), p), Fp::from_rational(w.cubic.coeff(0), p)},
            {std::nullopt}};
    for (std::uint64_t x = 0; x < p; ++x) {
      for (std::uint64_t y = 0; y < p; ++y) {
        Point P = std::make_pair(Fp(x, p), Fp(y, p));
        if (L.E.contains(P)) L.points.push_back(P);
      }
    }
    tb.order_gcd = gcd(tb.order_gcd, Integer(static_cast<unsigned long>(L.points.size())));
    locals.push_back(std::move(L));
  }
  tb.rational_two_torsion = static_cast<int>(rational_roots(w.cubic).size());
  tb.bound = 1;
  if (tb.order_gcd == 0) return tb;
  for (const auto& [ell_z, k] : factor_integer(tb.order_gcd)) {
    const std::uint64_t ell = ell_z.get_ui();
    TorsionPart part;
    part.ell = ell;
    part.valuation = k;
    part.exponent = k;
    part.rank = ell == 2 ? (tb.rational_two_torsion == 3 ? 2 : tb.rational_two_torsion) : 1;
    for (const auto& L : locals) {
      Integer n(static_cast<unsigned long>(L.points.size()));
      while (mpz_divisible_ui_p(n.get_mpz_t(), ell)) n /= ell;
      int exponent = 0, killed = 0;
      for (const auto& P : L.points) {
        Point Q = L.E.multiply(P, n);
        int e = 0;
        for (; Q; ++e) Q = L.E.multiply(Q, ell);
        exponent = std::max(exponent, e);
        if (!L.E.multiply(P, ell)) ++killed;
      }
      int rank = 0;
      for (int m = killed; m > 1; m /= static_cast<int>(ell)) ++rank;
      part.exponent = std::min(part.exponent, exponent);
      part.rank = std::min(part.rank, rank);
    }
    mpz_ui_pow_ui(part.bound.get_mpz_t(), ell,
                  static_cast<unsigned long>(std::min(part.valuation, part.rank * part.exponent)));
    tb.bound *= part.bound;
    tb.parts.push_back(part);
  }
  return tb;
}

std::vector<CurvePoint> quartic_pullback_c120(const HyperellipticModel& c120,
                                              const std::vector<CurvePoint>& E_points,
                                              long height_check) {
  std::set<CurvePoint> pts(E_points.begin(), E_points.end());
  for (const auto& P : E_points) {
    if (!pts.count(P.conjugate())) {
      throw InvalidInput("quotient points not closed under negation: missing " +
                         P.conjugate().to_string());
    }
  }
  std::set<CurvePoint> out;
  for (const auto& P : E_points) {
    if (P.at_infinity) {
      // s^2 = u = infinity; the two points at infinity of C1(20) lie over
      // these, which requires a square leading coefficient there too.
      const Rational lc = c120.d().lc();
      if (is_rational_square(lc)) out.insert(CurvePoint::infinity(P.inf_sign));
      continue;
    }
    if (P.x.sign() < 0 || !is_rational_square(P.x)) continue;
    const Rational s = rational_sqrt(P.x);
    for (const Rational& x : {s, -s}) {
      CurvePoint Q = CurvePoint::affine(x, P.y);
      if (!on_curve(c120, Q)) throw InvalidInput("pullback left the curve at " + Q.to_string());
      out.insert(Q);
    }
  }
  if (height_check <= 0) return {out.begin(), out.end()};
  for (const auto& Q : rational_point_search(c120, height_check)) {
    if (!out.count(Q)) {
      throw InvalidInput("search found " + Q.to_string() + " outside the pullback");
    }
  }
  return {out.begin(), out.end()};
}

json QuotientCertificate::to_json() const {
  json j;
  j["curve"] = curve;
  j["route"] = "quotient";
  j["model"] = model;
  j["certified"] = certified;
  j["failures"] = failures;
  json pts = json::array();
  for (const auto& P : claimed_points) pts.push_back(P.to_string());
  j["claimed_points"] = pts;
  j["rank_input"] = {{"value", rank_bound}, {"source", rank_source}};
  j["search_height"] = search_height;
  j["quotient"] = {{"quartic", w.quartic.to_string("u")},
                   {"root", w.root.to_string()},
                   {"c1", w.c1.to_string()},
                   {"weierstrass", w.cubic.to_string("X")}};
  json cs = json::array();
  for (auto [p, n] : counts) cs.push_back({{"p", p}, {"count", std::to_string(n)}});
  json parts = json::array();
  for (const auto& t : torsion.parts) {
    parts.push_back({{"ell", t.ell},
                     {"valuation", t.valuation},
                     {"exponent", t.exponent},
                     {"rank", t.rank},
                     {"bound", t.bound.get_str()}});
  }
  j["torsion"] = {{"order_gcd", torsion.order_gcd.get_str()},
                  {"rational_two_torsion", torsion.rational_two_torsion},
                  {"parts", parts},
                  {"bound", torsion.bound.get_str()},
                  {"counts", cs}};
  json qp = json::array();
  for (const auto& P : quotient_points) qp.push_back(P.to_string());
  j["quotient_points"] = qp;
  j["verifier_version"] = "tors3-verify/1";
  return j;
}

QuotientCertificate QuotientCertificate::from_json(const json& j) {
  try {
    QuotientCertificate c;
    c.curve = j.at("curve").get<std::string>();
    c.model = j.at("model").get<std::string>();
    c.certified = j.at("certified").get<bool>();
    c.failures = j.at("failures").get<std::vector<std::string>>();
    for (const auto& s : j.at("claimed_points")) c.claimed_points.push_back(CurvePoint::parse(s));
    c.rank_bound = j.at("rank_input").at("value").get<int>();
    c.rank_source = j.at("rank_input").at("source").get<std::string>();
    c.search_height = j.at("search_height").get<int>();
    const json& q = j.at("quotient");
    c.w.quartic = parse_poly(q.at("quartic").get<std::string>(), "u");
    c.w.root = Rational::parse(q.at("root").get<std::string>());
    c.w.c1 = Rational::parse(q.at("c1").get<std::string>());
    c.w.cubic = parse_poly(q.at("weierstrass").get<std::string>(), "X");
    const json& t = j.at("torsion");
    c.torsion.order_gcd = Integer(t.at("order_gcd").get<std::string>());
    c.torsion.rational_two_torsion = t.at("rational_two_torsion").get<int>();
    for (const auto& e : t.at("parts")) {
      c.torsion.parts.push_back({e.at("ell").get<std::uint64_t>(), e.at("valuation").get<int>(),
                                 e.at("exponent").get<int>(), e.at("rank").get<int>(),
                                 Integer(e.at("bound").get<std::string>())});
    }
    c.torsion.bound = Integer(t.at("bound").get<std::string>());
    for (const auto& e : j.at("torsion").at("counts")) {
      c.counts.emplace_back(e.at("p").get<std::uint64_t>(),
                            std::stoull(e.at("count").get<std::string>()));
    }
    for (const auto& s : j.at("quotient_points")) c.quotient_points.push_back(CurvePoint::parse(s));
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("quotient certificate: ") + e.what());
  }
}

namespace {

// Quotient points found by search, and the checks that make them all of
// E(Q) when E has rank 0: they are distinct on the Weierstrass model,
// closed under addition, and as many as the reduction bound allows.
void check_quotient_group(const QuotientWeierstrass& w, const std::vector<CurvePoint>& pts,
                          const Integer& bound, std::vector<std::string>& failures) {
  auto E = weierstrass_curve(w);
  std::vector<RationalEcPoint> images;
  for (const auto& P : pts) {
    auto Q = quartic_to_weierstrass(w, P);
    if (!E.contains(Q)) failures.push_back("image of " + P.to_string() + " is off the cubic model");
    if (std::find(images.begin(), images.end(), Q) != images.end()) {
      failures.push_back("two quotient points have the same image");
    }
    images.push_back(Q);
  }
  for (const auto& A : images) {
    for (const auto& B : images) {
      if (std::find(images.begin(), images.end(), E.add(A, B)) == images.end()) {
        failures.push_back("found points are not closed under addition");
        return;
      }
    }
  }
  if (Integer(static_cast<unsigned long>(images.size())) != bound) {
    failures.push_back("found " + std::to_string(images.size()) +
                       " quotient points but the torsion bound is " + bound.get_str());
  }
}

}  // namespace

QuotientCertificate certify_quotient_route(const HyperellipticModel& h, int rank_bound,
                                           const std::string& rank_source, int search_height,
                                           int torsion_primes) {
  QuotientCertificate cert;
  cert.curve = h.label();
  cert.model = h.d().to_string("t");
  cert.rank_bound = rank_bound;
  cert.rank_source = rank_source;
  cert.search_height = search_height;
  if (rank_bound != 0) cert.failures.push_back("quotient route needs rank 0 on the quotient");

  const QPoly q = even_quotient(h.d());
  HyperellipticModel E(q, h.label() + "/quotient");
  cert.quotient_points = rational_point_search(E, search_height);
  std::optional<Rational> root;
  for (const auto& P : cert.quotient_points) {
    if (!P.at_infinity && P.y.is_zero()) {
      root = P.x;
      break;
    }
  }
  if (!root) {
    cert.failures.push_back("no rational root of the quartic found");
    return cert;
  }
  cert.w = weierstrass_from_quartic(q, *root);
  cert.counts = reduction_counts(cert.w, torsion_primes);
  std::vector<std::uint64_t> primes;
  for (auto [p, n] : cert.counts) primes.push_back(p);
  cert.torsion = quotient_torsion_bound(cert.w, primes);
  check_quotient_group(cert.w, cert.quotient_points, cert.torsion.bound, cert.failures);
  try {
    cert.claimed_points = quartic_pullback_c120(h, cert.quotient_points, search_height);
  } catch (const InvalidInput& e) {
    cert.failures.push_back(e.what());
  }
  cert.certified = cert.failures.empty();
  return cert;
}

std::vector<std::string> verify_quotient_certificate(const QuotientCertificate& c) {
  std::vector<std::string> issues;
  HyperellipticModel h(parse_poly(c.model, "t"), c.curve);
  if (c.rank_bound != 0) issues.push_back("rank bound is not 0");
  if (c.rank_source.empty()) issues.push_back("rank source missing");
  QPoly q;
  try {
    q = even_quotient(h.d());
  } catch (const InvalidInput& e) {
    issues.push_back(e.what());
    return issues;
  }
  if (!(q == c.w.quartic)) issues.push_back("recorded quartic differs from the even quotient");
  QuotientWeierstrass w;
  try {
    w = weierstrass_from_quartic(q, c.w.root);
  } catch (const InvalidInput& e) {
    issues.push_back(e.what());
    return issues;
  }
  if (!(w.cubic == c.w.cubic) || !(w.c1 == c.w.c1)) issues.push_back("Weierstrass model differs");

  // Reduction counts, at the recorded primes, by direct enumeration of
  // the affine points of Y^2 = cubic(X).
  Integer order_gcd = 0;
  std::vector<std::uint64_t> primes;
  const Rational disc = discriminant(w.cubic);
  for (auto [p, n] : c.counts) {
    if (p < 3 || !is_prime(p) || mpz_divisible_ui_p(disc.numerator().get_mpz_t(), p)) {
      issues.push_back("bad reduction prime " + std::to_string(p));
      continue;
    }
    std::vector<std::uint64_t> sq(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) ++sq[mulmod(y, y, p)];
    std::uint64_t m = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
      m += sq[Fp::from_rational(w.cubic.eval(Rational(Integer(static_cast<unsigned long>(x)))), p)
                  .value()];
    }
    if (m != n) issues.push_back("#E(F_" + std::to_string(p) + ") is " + std::to_string(m));
    order_gcd = gcd(order_gcd, Integer(static_cast<unsigned long>(m)));
    primes.push_back(p);
  }
  QuotientTorsionBound tb = quotient_torsion_bound(w, primes);
  if (tb.order_gcd != order_gcd) issues.push_back("group orders disagree between counts");
  if (tb.bound != c.torsion.bound) issues.push_back("torsion bound is " + tb.bound.get_str());
  const Integer bound = tb.bound;

  std::vector<CurvePoint> found = rational_point_search(HyperellipticModel(q), c.search_height);
  std::set<CurvePoint> recorded(c.quotient_points.begin(), c.quotient_points.end());
  for (const auto& P : found) {
    if (!recorded.count(P)) issues.push_back("quotient point " + P.to_string() + " not recorded");
  }
  for (const auto& P : c.quotient_points) {
    if (!on_curve(HyperellipticModel(q), P)) issues.push_back(P.to_string() + " not on quotient");
  }
  check_quotient_group(w, c.quotient_points, bound, issues);
  try {
    auto pulled = quartic_pullback_c120(h, c.quotient_points, c.search_height);
    std::set<CurvePoint> a(pulled.begin(), pulled.end());
    std::set<CurvePoint> b(c.claimed_points.begin(), c.claimed_points.end());
    if (a != b) issues.push_back("claimed points differ from the pullback");
  } catch (const InvalidInput& e) {
    issues.push_back(e.what());
  }
  return issues;
}

}  // namespace tors3
