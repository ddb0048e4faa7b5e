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

#include "tors3/algebra.hpp"

#include <algorithm>

#include "tors3/errors.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

std::vector<QPoly> yun_factors(const QPoly& d) {
  if (d.is_zero()) throw InvalidInput("squarefree decomposition of zero");
  std::vector<QPoly> out;
  QPoly a = d.monic();
  if (a.degree() == 0) return out;
  QPoly da = a.derivative();
  QPoly b = gcd(a, da);
  QPoly c = a / b;
  QPoly e = da / b - c.derivative();
  while (c.degree() > 0) {
    QPoly ai = gcd(c, e);
    out.push_back(ai);
    c = c / ai;
    e = e / ai - c.derivative();
  }
  return out;
}

SquarefreeDecomposition squarefree_decompose(const QPoly& d) {
  std::vector<QPoly> f = yun_factors(d);
  Rational lc = d.lc();
  // lc = b * (k/den)^2 with b a squarefree integer
  Integer nd = lc.numerator() * lc.denominator();
  auto [b, k] = squarefree_part(nd);
  QPoly s = QPoly::constant(Rational(b));
  QPoly c = QPoly::constant(Rational(k, lc.denominator()));
  for (size_t i = 0; i < f.size(); ++i) {
    int m = static_cast<int>(i) + 1;
    if (m % 2) s *= f[i];
    if (m / 2) c *= f[i].pow(static_cast<unsigned long>(m / 2));
  }
  return {s, c};
}

bool is_squarefree(const QPoly& d) {
  if (d.degree() <= 0) return !d.is_zero();
  return gcd(d, d.derivative()).degree() == 0;
}

bool is_rational_square(const Rational& q) {
  if (q.sign() < 0) return false;
  if (q.is_zero()) return true;
  return mpz_perfect_square_p(q.numerator().get_mpz_t()) &&
         mpz_perfect_square_p(q.denominator().get_mpz_t());
}

Rational rational_sqrt(const Rational& q) {
  if (!is_rational_square(q)) throw InvalidInput("not a rational square");
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.numerator().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.denominator().get_mpz_t());
  return Rational(n, d);
}

std::vector<Integer> primitive_integer_coeffs(const QPoly& f) {
  Integer l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, c.denominator());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    out.push_back(c.numerator() * (l / c.denominator()));
    g = gcd(g, out.back());
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

std::vector<Rational> rational_roots(const QPoly& f) {
  if (f.is_zero()) throw InvalidInput("roots of the zero polynomial");
  std::vector<Rational> roots;
  QPoly g = f;
  while (g.degree() > 0 && g.coeffs()[0].is_zero()) {
    roots.push_back(Rational(0));
    g = g / QPoly::x(Rational(1));
  }
  if (g.degree() > 0) {
    std::vector<Integer> ic = primitive_integer_coeffs(g);
    std::vector<Integer> pn = divisors(ic.front());
    std::vector<Integer> qd = divisors(ic.back());
    std::vector<Rational> cands;
    for (const auto& p : pn) {
      for (const auto& q : qd) {
        cands.push_back(Rational(p, q));
        cands.push_back(Rational(-p, q));
      }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& r : cands) {
      QPoly lin({-r, Rational(1)});
      while (g.degree() > 0) {
        auto [q, rem] = QPoly::divmod(g, lin);
        if (!rem.is_zero()) break;
        roots.push_back(r);
        g = q;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Rational> cubic_rational_roots(const QPoly& h) {
  if (h.degree() != 3) throw InvalidInput("expected a cubic");
  return rational_roots(h);
}

}  // namespace tors3
