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

#include "tors3/curves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tors3/algebra.hpp"
#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

HyperellipticModel::HyperellipticModel(QPoly d, std::string label)
    : d_(std::move(d)), label_(std::move(label)) {
  if (d_.degree() < 1) throw InvalidCurve("hyperelliptic model of degree < 1");
  if (!is_squarefree(d_)) throw InvalidCurve("right-hand side is not squarefree");
  genus_ = (d_.degree() + 1) / 2 - 1;
  if (d_.degree() % 2) {
    infinite_points_ = 1;
  } else {
    infinite_points_ = is_rational_square(d_.lc()) ? 2 : 0;
  }
}

int genus(const HyperellipticModel& h) { return h.genus(); }
int count_infinite_points(const HyperellipticModel& h) {
  return h.infinite_points();
}

std::string CurvePoint::to_string() const {
  if (at_infinity) {
    if (inf_sign > 0) return "(1:1:0)";
    if (inf_sign < 0) return "(1:-1:0)";
    return "(1:0:0)";
  }
  return "(" + x.to_string() + "," + y.to_string() + ")";
}

CurvePoint CurvePoint::parse(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s == "(1:1:0)") return infinity(1);
  if (s == "(1:-1:0)") return infinity(-1);
  if (s == "(1:0:0)") return infinity(0);
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') {
    throw ParseError("bad point '" + text + "'");
  }
  size_t comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("bad point '" + text + "'");
  return affine(Rational::parse(s.substr(1, comma - 1)),
                Rational::parse(s.substr(comma + 1, s.size() - comma - 2)));
}

bool operator<(const CurvePoint& a, const CurvePoint& b) {
  if (a.at_infinity != b.at_infinity) return !a.at_infinity;
  if (a.at_infinity) return a.inf_sign > b.inf_sign;
  if (a.x != b.x) return a.x < b.x;
  return a.y > b.y;
}

std::ostream& operator<<(std::ostream& os, const CurvePoint& p) {
  return os << p.to_string();
}

bool on_curve(const HyperellipticModel& h, const CurvePoint& P) {
  if (P.at_infinity) {
    if (h.d().degree() % 2) return P.inf_sign == 0;
    return h.infinite_points() == 2 && (P.inf_sign == 1 || P.inf_sign == -1);
  }
  return P.y * P.y == h.d().eval(P.x);
}

namespace {

// Embeds a polynomial in the named plane variable into BiPoly(x, y).
BiPoly in_variable(const QPoly& p, const std::string& var) {
  return var == "x" ? BiPoly::from_coeffs_in_b({p}) : BiPoly::from_coeffs_in_a({p});
}

// Reorders a BiPoly(x, y) so that `var` is the first variable.
BiPoly with_first(const BiPoly& p, const std::string& var) {
  return var == "x" ? p : p.swapped();
}

}  // namespace

bool validate_map(const DegreeThreeMap& m) {
  const std::string& v = m.curve_variable;
  if (v != "x" && v != "y") throw InvalidMap("curve variable must be x or y");
  const std::string w = m.other_variable();
  const BiPoly& F = m.parent.F;
  BiPoly Fw = with_first(F, w);
  if (m.g.den.is_zero()) throw InvalidMap("g has zero denominator");
  if (pseudo_remainder_in_a(with_first(m.g.den, w), Fw).is_zero()) {
    throw InvalidMap("denominator of g vanishes on the curve");
  }
  std::vector<QPoly> fj = m.f.coeffs_in_b();
  int dt = static_cast<int>(fj.size()) - 1;
  BiPoly E;
  for (int j = 0; j <= dt; ++j) {
    E += in_variable(fj[j], v) * m.g.num.pow(j) * m.g.den.pow(dt - j);
  }
  bool vanishes = pseudo_remainder_in_a(with_first(E, w), Fw).is_zero();
  int dv = m.f.degree_a();
  int dw = Fw.degree_a();
  bool degrees_ok = (dv == 3 && dt == dw) || (dv == 1 && dt == 1 && dw == 3);
  return vanishes && degrees_ok;
}

BiPoly fiber_family(const DegreeThreeMap& m) {
  int dv = m.f.degree_a();
  if (dv == 3) return m.f;
  if (dv != 1) throw InvalidMap("curve variable degree must be 1 or 3");
  // v = -beta(t) / alpha(t)
  std::vector<QPoly> cv = m.f.coeffs_in_a();
  QPoly alpha = cv[1], beta = cv[0];
  BiPoly Fv = with_first(m.parent.F, m.curve_variable);  // (v, w)
  std::vector<QPoly> Fk = Fv.coeffs_in_a();              // polys in w
  int K = static_cast<int>(Fk.size()) - 1;
  BiPoly G;
  BiPoly A = BiPoly::from_coeffs_in_a({alpha});  // alpha(t) as (w, t)
  BiPoly B = BiPoly::from_coeffs_in_a({-beta});
  for (int k = 0; k <= K; ++k) {
    G += BiPoly::from_coeffs_in_b({Fk[k]}) * B.pow(k) * A.pow(K - k);
  }
  return G;
}

QPoly fiber_cubic(const DegreeThreeMap& m, const std::optional<Rational>& t0) {
  BiPoly G = fiber_family(m);
  QPoly h;
  std::string where = t0 ? "t = " + t0->to_string() : "t = infinity";
  if (t0) {
    h = G.eval_b(*t0);
  } else {
    std::vector<QPoly> ct = G.coeffs_in_b();
    h = ct.back();
  }
  if (h.degree() < 3) {
    throw DegenerateFiber("fiber degree drops at " + where,
                          "leading coefficient vanishes at " + where);
  }
  if (discriminant(h).is_zero()) {
    throw DegenerateFiber("fiber discriminant vanishes at " + where,
                          "discriminant vanishes at " + where);
  }
  return h;
}

HyperellipticModel discriminant_curve(const DegreeThreeMap& m) {
  BiPoly G = fiber_family(m);
  QPoly delta = discriminant_in_a(G);
  if (delta.is_zero()) throw InvalidMap("discriminant vanishes identically");
  auto sd = squarefree_decompose(delta);
  HyperellipticModel h(sd.s, m.curve_id);
  h.raw_discriminant = delta;
  h.square_cofactor = sd.c;
  h.provenance = m.id;
  return h;
}

bool is_square_polynomial(const QPoly& sq) {
  if (sq.is_zero()) return true;
  if (!is_rational_square(sq.lc())) return false;
  std::vector<QPoly> f = yun_factors(sq);
  for (size_t i = 0; i < f.size(); ++i) {
    if ((i + 1) % 2 == 1 && f[i].degree() > 0) return false;
  }
  return true;
}

QPoly printed_square_factor(const DegreeThreeMap& m) {
  if (!m.printed_curve) throw InvalidMap("map has no published curve");
  HyperellipticModel h = discriminant_curve(m);
  QPoly shifted = m.printed_curve->shift(m.printed_shift);
  auto [K, rem] = QPoly::divmod(*h.raw_discriminant, shifted);
  if (!rem.is_zero() || K.is_zero() || !is_square_polynomial(K)) {
    throw InvalidMap("published curve is not the resolvent up to a square");
  }
  return K;
}

HyperellipticModel printed_model(const DegreeThreeMap& m) {
  if (!m.printed_curve) throw InvalidMap("map has no published curve");
  HyperellipticModel h(*m.printed_curve, m.curve_id);
  h.provenance = m.id;
  return h;
}

HyperellipticModel inverted_model(const HyperellipticModel& h) {
  int n = 2 * h.genus() + 2;
  HyperellipticModel r(h.d().reversed(n), h.label());
  return r;
}

std::vector<CurvePoint> rational_point_search(const HyperellipticModel& h,
                                              long height_bound) {
  if (height_bound < 1) throw InvalidInput("height bound must be positive");
  const QPoly& d = h.d();
  int n = 2 * h.genus() + 2;  // even homogenization degree
  std::vector<Integer> e = primitive_integer_coeffs(d);
  // d = lambda * sum e_i t^i
  Rational lambda = d.lc() / Rational(e.back());
  Integer scale = lambda.numerator() * lambda.denominator();
  std::vector<CurvePoint> out;
  std::vector<Integer> apow(static_cast<size_t>(n) + 1), bpow(static_cast<size_t>(n) + 1);
  for (long b = 1; b <= height_bound; ++b) {
    bpow[0] = 1;
    for (int i = 1; i <= n; ++i) bpow[i] = bpow[i - 1] * b;
    for (long a = -height_bound; a <= height_bound; ++a) {
      if (std::gcd(a, b) != 1) continue;
      apow[0] = 1;
      for (int i = 1; i <= n; ++i) apow[i] = apow[i - 1] * a;
      Integer E = 0;
      for (size_t i = 0; i < e.size(); ++i) E += e[i] * apow[i] * bpow[n - i];
      Integer s = scale * E;
      if (s < 0 || !mpz_perfect_square_p(s.get_mpz_t())) continue;
      Rational t{Integer(a), Integer(b)};
      Rational y2 = d.eval(t);
      Rational y = rational_sqrt(y2);
      out.push_back(CurvePoint::affine(t, y));
      if (!y.is_zero()) out.push_back(CurvePoint::affine(t, -y));
    }
  }
  if (d.degree() % 2) {
    out.push_back(CurvePoint::infinity(0));
  } else if (h.infinite_points() == 2) {
    out.push_back(CurvePoint::infinity(1));
    out.push_back(CurvePoint::infinity(-1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tors3
