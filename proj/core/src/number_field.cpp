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

#include "tors3/number_field.hpp"

#include <algorithm>
#include <array>

#include "tors3/algebra.hpp"
#include "tors3/errors.hpp"
#include "tors3/finite_field.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

std::shared_ptr<const NumberField> make_number_field(const QPoly& h) {
  if (h.degree() < 1) throw InvalidInput("number field of degree < 1");
  if (h.degree() <= 3 && !rational_roots(h).empty()) {
    throw InvalidInput("defining polynomial is reducible");
  }
  auto k = std::make_shared<NumberField>();
  k->h = h.monic();
  return k;
}

NumberFieldElement::NumberFieldElement(std::shared_ptr<const NumberField> k,
                                       const QPoly& rep)
    : k_(std::move(k)), rep_(rep % k_->h) {}

NumberFieldElement NumberFieldElement::generator(
    std::shared_ptr<const NumberField> k) {
  return {k, QPoly::x(Rational(1))};
}

NumberFieldElement NumberFieldElement::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero in a number field");
  auto [g, s, t] = xgcd(rep_, k_->h);
  (void)t;
  if (g.degree() != 0) throw InvalidInput("defining polynomial is reducible");
  return {k_, s};
}

NumberFieldElement& NumberFieldElement::operator+=(const NumberFieldElement& o) {
  rep_ += o.rep_;
  return *this;
}

NumberFieldElement& NumberFieldElement::operator-=(const NumberFieldElement& o) {
  rep_ -= o.rep_;
  return *this;
}

NumberFieldElement& NumberFieldElement::operator*=(const NumberFieldElement& o) {
  rep_ = (rep_ * o.rep_) % k_->h;
  return *this;
}

namespace {

Integer mod_eval(const std::vector<Integer>& c, const Integer& x,
                 const Integer& m) {
  Integer acc = 0;
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * x + c[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

// Lifts a simple root r of h mod l to a root mod l^k.
Integer hensel_root(const QPoly& h, std::uint64_t l, std::uint64_t r, int k) {
  Integer lk;
  mpz_ui_pow_ui(lk.get_mpz_t(), l, static_cast<unsigned long>(k));
  std::vector<Integer> c, dc;
  for (const auto& a : h.coeffs()) c.push_back(rational_mod(a, lk));
  QPoly dh = h.derivative();
  for (const auto& a : dh.coeffs()) dc.push_back(rational_mod(a, lk));
  Integer x(static_cast<unsigned long>(r));
  for (int prec = 1; prec < k; prec *= 2) {
    Integer fx = mod_eval(c, x, lk);
    Integer dfx = mod_eval(dc, x, lk), inv;
    if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), lk.get_mpz_t()) == 0) {
      throw Error("Hensel lift of a non-simple root");
    }
    x = x - fx * inv;
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), lk.get_mpz_t());
  }
  return x;
}

// Solves the 3x3 Vandermonde system sum_j c_j a_i^j = b_i mod m.
std::optional<std::array<Integer, 3>> solve_vandermonde(
    const std::array<Integer, 3>& a, const std::array<Integer, 3>& b,
    const Integer& m) {
  std::array<std::array<Integer, 4>, 3> M;
  for (int i = 0; i < 3; ++i) {
    M[i] = {1, a[i], a[i] * a[i], b[i]};
    for (auto& x : M[i]) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int r = col; r < 3; ++r) {
      Integer g = gcd(M[r][col], m);
      if (g == 1) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(M[col], M[piv]);
    Integer inv;
    mpz_invert(inv.get_mpz_t(), M[col][col].get_mpz_t(), m.get_mpz_t());
    for (auto& x : M[col]) {
      x *= inv;
      mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }
    for (int r = 0; r < 3; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Integer f = M[r][col];
      for (int j = 0; j < 4; ++j) {
        M[r][j] -= f * M[col][j];
        mpz_mod(M[r][j].get_mpz_t(), M[r][j].get_mpz_t(), m.get_mpz_t());
      }
    }
  }
  return std::array<Integer, 3>{M[0][3], M[1][3], M[2][3]};
}

bool good_prime_for(const QPoly& h, std::uint64_t l) {
  Integer L(static_cast<unsigned long>(l));
  for (const auto& c : h.coeffs()) {
    if (mpz_divisible_p(c.denominator().get_mpz_t(), L.get_mpz_t())) return false;
  }
  Rational d = discriminant(h);
  return !mpz_divisible_p(d.numerator().get_mpz_t(), L.get_mpz_t());
}

std::vector<Fp> roots_mod(const QPoly& h, std::uint64_t l) {
  std::vector<Fp> c;
  for (const auto& a : h.coeffs()) c.push_back(Fp::from_rational(a, l));
  return ff_poly_roots(FpPoly(c));
}

void check_cubic(const QPoly& h) {
  if (h.degree() != 3) throw InvalidInput("expected a cubic");
  if (!cubic_rational_roots(h).empty()) {
    throw InvalidInput("cubic is reducible over Q");
  }
}

enum class Verdict { kIsomorphic, kNot, kUnknown };

Verdict decide(const QPoly& h1, const QPoly& h2, QPoly* embedding) {
  QPoly a = h1.monic(), b = h2.monic();
  if (!is_rational_square(discriminant(a) / discriminant(b))) {
    return Verdict::kNot;
  }
  auto k = make_number_field(a);
  int precision = 16;
  std::uint64_t l = 3;
  for (int tries = 0; tries < 4000; ++tries) {
    l = next_prime(l);
    if (!good_prime_for(a, l) || !good_prime_for(b, l)) continue;
    std::vector<Fp> ra = roots_mod(a, l), rb = roots_mod(b, l);
    if (ra.size() != rb.size()) return Verdict::kNot;
    if (ra.size() != 3) continue;
    Integer m;
    mpz_ui_pow_ui(m.get_mpz_t(), l, static_cast<unsigned long>(precision));
    std::array<Integer, 3> al, bl;
    for (int i = 0; i < 3; ++i) {
      al[i] = hensel_root(a, l, ra[i].value(), precision);
      bl[i] = hensel_root(b, l, rb[i].value(), precision);
    }
    std::array<int, 3> perm{0, 1, 2};
    do {
      std::array<Integer, 3> target{bl[perm[0]], bl[perm[1]], bl[perm[2]]};
      auto sol = solve_vandermonde(al, target, m);
      if (!sol) continue;
      std::vector<Rational> coeffs;
      bool ok = true;
      for (const auto& x : *sol) {
        auto r = rational_reconstruct(x, m);
        if (!r) {
          ok = false;
          break;
        }
        coeffs.push_back(*r);
      }
      if (!ok) continue;
      QPoly beta(coeffs);
      NumberFieldElement e(k, beta);
      NumberFieldElement acc = e.zero();
      for (int i = b.degree(); i >= 0; --i) {
        acc = acc * e + e.from_rational(b.coeffs()[i]);
      }
      if (acc.is_zero()) {
        if (embedding) *embedding = e.rep();
        return Verdict::kIsomorphic;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    precision *= 2;
    if (precision > 4096) precision = 4096;
  }
  return Verdict::kUnknown;
}

}  // namespace

std::optional<QPoly> nf_find_embedding(const QPoly& h1, const QPoly& h2) {
  check_cubic(h1);
  check_cubic(h2);
  QPoly e;
  if (decide(h1, h2, &e) == Verdict::kIsomorphic) return e;
  return std::nullopt;
}

bool nf_is_isomorphic(const QPoly& h1, const QPoly& h2) {
  check_cubic(h1);
  check_cubic(h2);
  switch (decide(h1, h2, nullptr)) {
    case Verdict::kIsomorphic:
      return true;
    case Verdict::kNot:
      return false;
    case Verdict::kUnknown:
      break;
  }
  throw Error("cubic field isomorphism undecided within the prime budget");
}

}  // namespace tors3
