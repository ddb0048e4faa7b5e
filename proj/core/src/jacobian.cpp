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

#include "tors3/jacobian.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <set>

#include "tors3/algebra.hpp"
#include "tors3/ntheory.hpp"

namespace tors3 {

namespace {

constexpr std::uint64_t kCountBudget = 100000000;  // field elements
constexpr std::uint64_t kEnumerationBudget = 1u << 21;

FpPoly to_fp(const QPoly& f, std::uint64_t p) {
  std::vector<Fp> c;
  for (const auto& a : f.coeffs()) c.push_back(Fp::from_rational(a, p));
  return FpPoly(std::move(c));
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// F_{p^k} with elements stored as coefficient arrays over the canonical
// modulus; fast enough to enumerate fields of size up to ~10^8.
struct SmallField {
  using Elem = std::array<std::uint64_t, 8>;
  std::uint64_t p;
  int k;
  std::vector<std::uint64_t> m;  // m_0 .. m_{k-1}; X^k = -sum m_j X^j

  SmallField(std::uint64_t p_, int k_) : p(p_), k(k_) {
    if (k > 8) throw Unsupported("extension degree above 8");
    auto ctx = canonical_field(p, k);
    m.assign(ctx->modulus.begin(), ctx->modulus.begin() + k);
  }

  void mul(const Elem& a, const Elem& b, Elem& out) const {
    std::uint64_t t[16] = {0};
    for (int i = 0; i < k; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < k; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    }
    for (int i = 2 * k - 2; i >= k; --i) {
      std::uint64_t c = t[i];
      if (!c) continue;
      for (int j = 0; j < k; ++j) {
        t[i - k + j] = (t[i - k + j] + c * ((p - m[j]) % p)) % p;
      }
    }
    for (int i = 0; i < k; ++i) out[i] = t[i];
  }

  void add_const(Elem& a, std::uint64_t c) const { a[0] = (a[0] + c) % p; }

  std::uint64_t index(const Elem& a) const {
    std::uint64_t n = 0;
    for (int i = k - 1; i >= 0; --i) n = n * p + a[i];
    return n;
  }

  Elem from_index(std::uint64_t n) const {
    Elem a{};
    for (int i = 0; i < k; ++i) {
      a[i] = n % p;
      n /= p;
    }
    return a;
  }
};

Integer count_affine_prime_field(const std::vector<std::uint64_t>& d, std::uint64_t p) {
  std::vector<std::uint8_t> square(p, 0);
  for (std::uint64_t x = 0; x < p; ++x) square[mulmod(x, x, p)] = 1;
  Integer total = 0;
  long acc = 0;
  for (std::uint64_t t = 0; t < p; ++t) {
    std::uint64_t v = 0;
    for (size_t i = d.size(); i-- > 0;) v = (mulmod(v, t, p) + d[i]) % p;
    acc += v == 0 ? 1 : (square[v] ? 2 : 0);
  }
  total = acc;
  return total;
}

Integer count_affine_extension(const std::vector<std::uint64_t>& d, std::uint64_t p, int k) {
  SmallField F(p, k);
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  std::vector<std::uint8_t> square(q, 0);
  SmallField::Elem a, s;
  for (std::uint64_t n = 0; n < q; ++n) {
    a = F.from_index(n);
    F.mul(a, a, s);
    square[F.index(s)] = 1;
  }
  long acc = 0;
  SmallField::Elem v;
  for (std::uint64_t n = 0; n < q; ++n) {
    a = F.from_index(n);
    v = SmallField::Elem{};
    v[0] = d.back();
    for (size_t i = d.size() - 1; i-- > 0;) {
      F.mul(v, a, v);
      F.add_const(v, d[i]);
    }
    std::uint64_t idx = F.index(v);
    acc += idx == 0 ? 1 : (square[idx] ? 2 : 0);
  }
  return Integer(acc);
}

// Durand-Kerner roots of a monic polynomial given by its coefficients
// c_0 .. c_{n-1} (c_n = 1).
std::vector<std::complex<long double>> complex_roots(const std::vector<long double>& c) {
  using C = std::complex<long double>;
  size_t n = c.size();
  std::vector<C> z(n);
  long double radius = 1;
  for (auto x : c) radius = std::max(radius, 1 + std::fabs(x));
  for (size_t i = 0; i < n; ++i) z[i] = std::polar(radius * 0.9L, 0.4L + 6.2831853L * i / n);
  auto eval = [&](C x) {
    C acc = 1;
    for (size_t i = n; i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    long double move = 0;
    for (size_t i = 0; i < n; ++i) {
      C den = 1;
      for (size_t j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      C step = eval(z[i]) / den;
      z[i] -= step;
      move = std::max(move, std::abs(step));
    }
    if (move < 1e-15L) break;
  }
  return z;
}

Integer crt_pair(const Integer& a, const Integer& m, const Integer& b, const Integer& n) {
  // x = a mod m, x = b mod n, gcd(m, n) = 1
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(m % n).get_mpz_t(), n.get_mpz_t());
  Integer k = ((b - a) % n) * inv % n;
  if (k < 0) k += n;
  Integer x = a + m * k;
  Integer mn = m * n;
  x %= mn;
  if (x < 0) x += mn;
  return x;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  Integer am = a % m;
  if (am < 0) am += m;
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error("non-invertible residue");
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- chart

std::optional<std::pair<Rational, Rational>> Chart::image(const CurvePoint& P) const {
  if (!on_curve(model, P)) throw InvalidInput("point " + P.to_string() + " not on curve");
  if (!inverted) {
    if (P.at_infinity) return std::nullopt;
    return std::make_pair(P.x, P.y);
  }
  if (P.at_infinity) {
    return std::make_pair(Rational(0), P.inf_sign > 0 ? *sqrt_lc : -*sqrt_lc);
  }
  if (P.x == r0) return std::nullopt;
  Rational s = (P.x - r0).inverse();
  return std::make_pair(s, P.y * s.pow(g + 1));
}

CurvePoint Chart::preimage(const std::optional<std::pair<Rational, Rational>>& Q) const {
  if (!inverted) {
    if (!Q) return CurvePoint::infinity(0);
    return CurvePoint::affine(Q->first, Q->second);
  }
  if (!Q) return CurvePoint::affine(r0, 0);
  const auto& [s, w] = *Q;
  if (s.is_zero()) return CurvePoint::infinity(w == *sqrt_lc ? 1 : -1);
  return CurvePoint::affine(r0 + s.inverse(), w / s.pow(g + 1));
}

Chart make_chart(const HyperellipticModel& h) {
  Chart c;
  c.model = h;
  c.g = h.genus();
  const QPoly& d = h.d();
  if (d.degree() % 2) {
    c.f = d;
    return c;
  }
  std::vector<Rational> roots = rational_roots(d);
  if (roots.empty()) {
    throw Unsupported("even model without a rational Weierstrass point");
  }
  Rational best = roots.front();
  for (const auto& r : roots) {
    if (r.height() < best.height()) best = r;
  }
  c.inverted = true;
  c.r0 = best;
  c.f = d.shift(best).reversed(2 * c.g + 2);
  if (is_rational_square(d.lc())) c.sqrt_lc = rational_sqrt(d.lc());
  return c;
}

// ---------------------------------------------------------- counting

void check_good_prime(const HyperellipticModel& h, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw BadPrime("p = " + std::to_string(p) + " is not an odd prime");
  FpPoly d = to_fp(h.d(), p);  // throws BadPrime on p-adic denominators
  if (d.degree() != h.d().degree()) {
    throw BadPrime("leading coefficient vanishes mod " + std::to_string(p));
  }
  if (discriminant(d).is_zero()) {
    throw BadPrime("discriminant vanishes mod " + std::to_string(p));
  }
}

Integer count_points(const HyperellipticModel& h, std::uint64_t p, int k) {
  check_good_prime(h, p);
  if (k < 1) throw InvalidInput("extension degree must be positive");
  Integer q = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(k));
  if (q > Integer(static_cast<unsigned long>(kCountBudget))) {
    throw BudgetExceeded("p^k above the enumeration budget");
  }
  std::vector<std::uint64_t> d;
  for (const auto& a : h.d().coeffs()) d.push_back(rational_mod(a, p));
  Integer affine = k == 1 ? count_affine_prime_field(d, p) : count_affine_extension(d, p, k);
  int infinite;
  if (h.d().degree() % 2) {
    infinite = 1;
  } else if (k % 2 == 0) {
    infinite = 2;
  } else {
    // lc is a square in F_{p^k}, k odd, iff it is a square in F_p.
    infinite = powmod(d.back(), (p - 1) / 2, p) == 1 ? 2 : 0;
  }
  return affine + infinite;
}

// ---------------------------------------------------------- L-polynomial

Integer LPolynomial::eval(const Integer& T) const {
  Integer acc = 0;
  for (size_t i = a.size(); i-- > 0;) acc = acc * T + a[i];
  return acc;
}

bool LPolynomial::functional_equation_holds() const {
  if (a.size() != static_cast<size_t>(2 * g + 1) || a[0] != 1) return false;
  Integer P(static_cast<unsigned long>(p));
  for (int i = 0; i <= g; ++i) {
    if (a[2 * g - i] != ipow(P, g - i) * a[i]) return false;
  }
  return true;
}

double LPolynomial::max_root_deviation() const {
  // Reciprocal roots of L are the roots of T^(2g) L(1/T) = sum a_i T^(2g-i).
  int n = 2 * g;
  std::vector<long double> c(n);
  for (int i = 0; i < n; ++i) c[i] = a[n - i].get_d();
  double worst = 0;
  long double r = std::sqrt(static_cast<long double>(p));
  for (const auto& z : complex_roots(c)) {
    worst = std::max(worst, static_cast<double>(std::fabs(std::abs(z) - r)));
  }
  return worst;
}

LPolynomial l_polynomial(const HyperellipticModel& h, std::uint64_t p) {
  check_good_prime(h, p);
  int g = h.genus();
  if (g > 4) throw Unsupported("L-polynomials are computed for genus <= 4");
  LPolynomial L;
  L.p = p;
  L.g = g;
  Integer P(static_cast<unsigned long>(p));
  std::vector<Integer> s(static_cast<size_t>(g) + 1);
  for (int k = 1; k <= g; ++k) {
    s[k] = ipow(P, k) + 1 - count_points(h, p, k);
  }
  L.a.assign(static_cast<size_t>(2 * g) + 1, Integer(0));
  L.a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= k; ++i) acc += s[i] * L.a[k - i];
    if (acc % k != 0) throw Error("Newton identity produced a non-integer coefficient");
    L.a[k] = -acc / k;
  }
  for (int i = 0; i < g; ++i) L.a[2 * g - i] = ipow(P, g - i) * L.a[i];
  return L;
}

// ---------------------------------------------------------- J(F_p)

struct JacobianFp::PrimePart {
  Integer ell;
  int e = 0;
  Integer cofactor;                 // #J / ell^e
  std::vector<FpDivisor> basis;     // descending exponents
  std::vector<int> exps;
  std::vector<int> position;        // invariant index -> basis index or -1
  std::map<std::vector<std::uint64_t>, std::vector<Integer>> table;  // non-cyclic
  // Baby steps for the cyclic case: key(j * gamma) -> j.
  std::map<std::vector<std::uint64_t>, Integer> baby;
  FpDivisor gamma;
  Integer giant;
};

std::vector<std::uint64_t> divisor_key(const FpDivisor& D) {
  std::vector<std::uint64_t> k;
  int n = D.u.degree();
  k.push_back(static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) k.push_back(D.u.coeff(i).value());
  for (int i = 0; i < n; ++i) k.push_back(i <= D.v.degree() ? D.v.coeff(i).value() : 0);
  return k;
}

Integer AbelianGroupStructure::order() const {
  Integer n = 1;
  for (const auto& a : invariants) n *= a;
  return n;
}

JacobianFp::JacobianFp(const Chart& chart, std::uint64_t p, std::uint64_t seed)
    : chart_(chart), p_(p), seed_(seed) {
  check_good_prime(chart.model, p);
  FpPoly f = to_fp(chart.f, p);
  if (f.degree() != 2 * chart.g + 1 || discriminant(f).is_zero()) {
    throw BadPrime("chart model has bad reduction at " + std::to_string(p));
  }
  jac_ = std::make_unique<Jacobian<Fp>>(f, chart.g);
  l_ = tors3::l_polynomial(chart.model, p);
  order_ = l_.at_one();
  factors_ = factor_integer(order_);
}

JacobianFp::~JacobianFp() = default;

std::optional<std::pair<Fp, Fp>> JacobianFp::reduce_point(const CurvePoint& P) const {
  auto img = chart_.image(P);
  if (!img) return std::nullopt;
  const auto& [s, w] = *img;
  if (!s.is_zero() && valuation(s, static_cast<unsigned long>(p_)) < 0) {
    return std::nullopt;
  }
  return std::make_pair(Fp::from_rational(s, p_), Fp::from_rational(w, p_));
}

FpDivisor JacobianFp::reduce(const CurvePoint& P) const {
  auto q = reduce_point(P);
  if (!q) return jac_->zero();
  return jac_->point(q->first, q->second);
}

std::vector<std::pair<Fp, Fp>> JacobianFp::affine_points() const {
  std::vector<std::pair<Fp, Fp>> out;
  const FpPoly& f = jac_->f();
  for (std::uint64_t s = 0; s < p_; ++s) {
    Fp x(s, p_);
    Fp v = f.eval(x);
    if (v.is_zero()) {
      out.emplace_back(x, v);
      continue;
    }
    auto r = sqrt_mod(v.value(), p_);
    if (!r) continue;
    std::uint64_t a = std::min(*r, p_ - *r), b = std::max(*r, p_ - *r);
    out.emplace_back(x, Fp(a, p_));
    out.emplace_back(x, Fp(b, p_));
  }
  return out;
}

std::vector<FpDivisor> JacobianFp::point_classes() const {
  std::vector<FpDivisor> out{jac_->zero()};
  for (const auto& [x, y] : affine_points()) out.push_back(jac_->point(x, y));
  return out;
}

Integer JacobianFp::element_order(const FpDivisor& D) const {
  Integer n = order_;
  for (const auto& [ell, e] : factors_) {
    for (int i = 0; i < e; ++i) {
      if (jac_->mul(n / ell, D).is_zero()) {
        n /= ell;
      } else {
        break;
      }
    }
  }
  return n;
}

FpDivisor JacobianFp::random_element(std::mt19937_64& rng) const {
  const int g = chart_.g;
  const FpPoly& f = jac_->f();
  std::uniform_int_distribution<std::uint64_t> coef(0, p_ - 1);
  std::uniform_int_distribution<int> degree(1, g);
  auto prime_divisor = [&]() {
    while (true) {
      int k = degree(rng);
      std::vector<Fp> c;
      for (int i = 0; i < k; ++i) c.emplace_back(coef(rng), p_);
      c.emplace_back(1, p_);
      FpPoly u(c);
      if (k > 1 && !is_irreducible(u)) continue;
      FpPoly r = f % u;
      FpPoly v;
      if (k == 1) {
        Fp a = r.coeff(0, Fp(0, p_));
        auto s = sqrt_mod(a.value(), p_);
        if (!s) continue;
        v = FpPoly::constant(Fp(*s, p_));
      } else {
        auto ctx = field_with_modulus(u);
        std::vector<std::uint64_t> rc(static_cast<size_t>(k), 0);
        for (int i = 0; i <= r.degree(); ++i) rc[i] = r.coeff(i).value();
        auto s = Fq(ctx, rc).sqrt();
        if (!s) continue;
        std::vector<Fp> vc;
        for (auto x : s->coeffs()) vc.emplace_back(x, p_);
        v = FpPoly(vc);
      }
      if (rng() & 1) v = -v;
      return FpDivisor{u, v};
    }
  };
  FpDivisor acc = jac_->zero();
  for (int i = 0; i < g; ++i) acc = jac_->add(acc, prime_divisor());
  return acc;
}

void JacobianFp::compute_structure() const {
  std::mt19937_64 rng(seed_ ^ (p_ * 0x9E3779B97F4A7C15ULL));
  const Jacobian<Fp>& J = *jac_;
  std::vector<PrimePart> parts;
  for (const auto& [ell, e] : factors_) {
    PrimePart part;
    part.ell = ell;
    part.e = e;
    Integer le = ipow(ell, static_cast<unsigned long>(e));
    part.cofactor = order_ / le;
    auto ell_order = [&](const FpDivisor& h) {
      int j = 0;
      FpDivisor y = h;
      while (!y.is_zero()) {
        y = J.mul(ell, y);
        ++j;
      }
      return j;
    };
    // A cyclic ell-part shows up as an element of order ell^e quickly.
    bool cyclic = false;
    int best = 0;
    FpDivisor best_elem = J.zero();
    for (int attempt = 0; attempt < 24 && !cyclic; ++attempt) {
      FpDivisor h = J.mul(part.cofactor, random_element(rng));
      int j = ell_order(h);
      if (j > best) {
        best = j;
        best_elem = h;
      }
      cyclic = (j == e);
    }
    if (cyclic) {
      part.basis = {best_elem};
      part.exps = {e};
    } else {
      if (le > Integer(static_cast<unsigned long>(kEnumerationBudget))) {
        throw BudgetExceeded("non-cyclic " + ell.get_str() + "-part too large to enumerate");
      }
      // Enumerate the ell-part as the span of random projections.
      std::set<std::vector<std::uint64_t>> seen{divisor_key(J.zero())};
      std::vector<FpDivisor> elems{J.zero()};
      int stalls = 0;
      while (Integer(static_cast<unsigned long>(elems.size())) < le) {
        FpDivisor h = J.mul(part.cofactor, random_element(rng));
        if (seen.count(divisor_key(h))) {
          if (++stalls > 500) throw Error("structure search does not reach the group order");
          continue;
        }
        int m = 0;
        FpDivisor y = h;
        Integer mult = 1;
        while (!seen.count(divisor_key(y))) {
          y = J.mul(ell, y);
          mult *= ell;
          ++m;
        }
        std::vector<FpDivisor> base = elems;
        FpDivisor step = h;
        for (Integer k = 1; k < mult; ++k) {
          for (const auto& s : base) {
            FpDivisor z = J.add(s, step);
            if (seen.insert(divisor_key(z)).second) elems.push_back(z);
          }
          step = J.add(step, h);
        }
      }
      // Greedy basis: repeatedly take an element of maximal order modulo
      // the span so far and correct it into a direct complement.
      std::map<std::vector<std::uint64_t>, std::vector<Integer>> span{{divisor_key(J.zero()), {}}};
      while (Integer(static_cast<unsigned long>(span.size())) < le) {
        int bj = -1;
        FpDivisor bx;
        std::vector<Integer> bc;
        for (const auto& x : elems) {
          int j = 0;
          FpDivisor y = x;
          auto it = span.find(divisor_key(y));
          while (it == span.end()) {
            y = J.mul(ell, y);
            ++j;
            it = span.find(divisor_key(y));
          }
          if (j > bj) {
            bj = j;
            bx = x;
            bc = it->second;
          }
        }
        Integer lj = ipow(ell, static_cast<unsigned long>(bj));
        FpDivisor corrected = bx;
        for (size_t i = 0; i < bc.size(); ++i) {
          if (bc[i] % lj != 0) throw Error("greedy basis correction failed");
          corrected = J.sub(corrected, J.mul(bc[i] / lj, part.basis[i]));
        }
        part.basis.push_back(corrected);
        part.exps.push_back(bj);
        // Rebuild the span with coordinates.
        span.clear();
        std::vector<std::pair<FpDivisor, std::vector<Integer>>> cur{{J.zero(), {}}};
        for (size_t i = 0; i < part.basis.size(); ++i) {
          Integer oi = ipow(ell, static_cast<unsigned long>(part.exps[i]));
          std::vector<std::pair<FpDivisor, std::vector<Integer>>> next;
          for (const auto& [D, c] : cur) {
            FpDivisor z = D;
            for (Integer k = 0; k < oi; ++k) {
              auto cc = c;
              cc.push_back(k);
              next.emplace_back(z, cc);
              z = J.add(z, part.basis[i]);
            }
          }
          cur = std::move(next);
        }
        for (auto& [D, c] : cur) span[divisor_key(D)] = c;
      }
      part.table = std::move(span);
    }
    parts.push_back(std::move(part));
  }

  size_t r = 0;
  for (const auto& part : parts) r = std::max(r, part.basis.size());
  AbelianGroupStructure S;
  S.invariants.assign(r, Integer(1));
  S.generators.assign(r, J.zero());
  for (auto& part : parts) {
    part.position.assign(r, -1);
    size_t len = part.basis.size();
    for (size_t i = 0; i < r; ++i) {
      // The basis is in descending order; the largest invariant is last.
      size_t pos = r - 1 - i;
      if (pos >= len) continue;
      part.position[i] = static_cast<int>(pos);
      S.invariants[i] *= ipow(part.ell, static_cast<unsigned long>(part.exps[pos]));
      S.generators[i] = J.add(S.generators[i], part.basis[pos]);
    }
    if (part.table.empty()) {
      // Cyclic: baby steps for gamma = ell^(e-1) * b, of order ell.
      part.gamma = J.mul(ipow(part.ell, static_cast<unsigned long>(part.e - 1)), part.basis[0]);
      Integer m = 1;
      while (m * m < part.ell) ++m;
      part.giant = m;
      FpDivisor z = J.zero();
      for (Integer j = 0; j < m; ++j) {
        part.baby.emplace(divisor_key(z), j);
        z = J.add(z, part.gamma);
      }
    }
  }
  // Certify generator orders exactly.
  for (size_t i = 0; i < r; ++i) {
    if (!J.mul(S.invariants[i], S.generators[i]).is_zero()) {
      throw Error("generator order check failed");
    }
    for (const auto& [ell, e] : factor_integer(S.invariants[i])) {
      if (J.mul(S.invariants[i] / ell, S.generators[i]).is_zero()) {
        throw Error("generator order check failed");
      }
    }
    if (i + 1 < r && S.invariants[i + 1] % S.invariants[i] != 0) {
      throw Error("invariant factors do not divide each other");
    }
  }
  if (S.order() != order_) throw Error("structure does not match the group order");
  structure_ = std::move(S);
  parts_ = std::move(parts);
}

const AbelianGroupStructure& JacobianFp::structure() const {
  std::call_once(structure_once_, [this] { compute_structure(); });
  return structure_;
}

std::vector<Integer> JacobianFp::prime_part_coordinates(const PrimePart& part,
                                                        const FpDivisor& D) const {
  const Jacobian<Fp>& J = *jac_;
  if (!part.table.empty()) {
    auto it = part.table.find(divisor_key(D));
    if (it == part.table.end()) throw Error("element outside the enumerated prime part");
    return it->second;
  }
  // Pohlig-Hellman in the cyclic group of order ell^e.
  const FpDivisor& b = part.basis[0];
  Integer x = 0;
  Integer lk = 1;
  for (int k = 0; k < part.e; ++k) {
    FpDivisor h = J.mul(ipow(part.ell, static_cast<unsigned long>(part.e - 1 - k)),
                        J.sub(D, J.mul(x, b)));
    FpDivisor step = J.neg(J.mul(part.giant, part.gamma));
    std::optional<Integer> digit;
    FpDivisor y = h;
    for (Integer i = 0; i <= part.giant; ++i) {
      auto it = part.baby.find(divisor_key(y));
      if (it != part.baby.end()) {
        digit = i * part.giant + it->second;
        break;
      }
      y = J.add(y, step);
    }
    if (!digit) throw Error("discrete logarithm not found in cyclic prime part");
    x += *digit * lk;
    lk *= part.ell;
  }
  return {x};
}

std::vector<Integer> JacobianFp::coordinates(const FpDivisor& D, const Integer& N) const {
  const AbelianGroupStructure& S = structure();
  size_t r = S.invariants.size();
  std::vector<Integer> c(r, Integer(0)), mod(r, Integer(1));
  for (const auto& part : parts_) {
    if (N != 0 && N % part.ell != 0) continue;
    FpDivisor Dl = jac_->mul(part.cofactor, D);
    std::vector<Integer> local = prime_part_coordinates(part, Dl);
    for (size_t i = 0; i < r; ++i) {
      int pos = part.position[i];
      if (pos < 0) continue;
      Integer li = ipow(part.ell, static_cast<unsigned long>(part.exps[pos]));
      Integer value = local[pos] * mod_inverse(part.cofactor, li) % li;
      c[i] = crt_pair(c[i], mod[i], value, li);
      mod[i] *= li;
    }
  }
  for (size_t i = 0; i < r; ++i) {
    Integer m = N == 0 ? S.invariants[i] : gcd(S.invariants[i], N);
    c[i] %= m;
    if (c[i] < 0) c[i] += m;
  }
  return c;
}

AbelianGroupStructure group_structure(const HyperellipticModel& h, std::uint64_t p) {
  JacobianFp J(make_chart(h), p);
  return J.structure();
}

FpDivisor mu_embed(const JacobianFp& J, const CurvePoint& P, const CurvePoint& base) {
  return J.group().sub(J.reduce(P), J.reduce(base));
}

FpDivisor mu_embed(const JacobianFp& J, const std::optional<std::pair<Fp, Fp>>& P,
                   const CurvePoint& base) {
  FpDivisor D = P ? J.group().point(P->first, P->second) : J.group().zero();
  return J.group().sub(D, J.reduce(base));
}

std::optional<Integer> dlog_multiple(const JacobianFp& J, const FpDivisor& target,
                                     const FpDivisor& gen, const Integer& N) {
  if (N <= 0) throw InvalidInput("quotient modulus must be positive");
  const AbelianGroupStructure& S = J.structure();
  std::vector<Integer> ct = J.coordinates(target, N), cg = J.coordinates(gen, N);
  Integer n0 = 0, M = 1;
  for (size_t i = 0; i < S.invariants.size(); ++i) {
    Integer m = gcd(S.invariants[i], N);
    if (m == 1) continue;
    Integer a = cg[i], b = ct[i];
    Integer g = gcd(a, m);
    if (b % g != 0) return std::nullopt;
    Integer mg = m / g;
    Integer r = mg == 1 ? Integer(0) : (b / g) * mod_inverse(a / g, mg) % mg;
    // Combine n = n0 mod M with n = r mod mg.
    Integer g2 = gcd(M, mg);
    Integer diff = r - n0;
    if (diff % g2 != 0) return std::nullopt;
    Integer m2 = mg / g2;
    Integer k = m2 == 1 ? Integer(0) : (diff / g2) * mod_inverse(M / g2, m2) % m2;
    n0 += M * k;
    M = lcm(M, mg);
    n0 %= M;
    if (n0 < 0) n0 += M;
  }
  return n0;
}

std::vector<std::uint64_t> good_primes(const HyperellipticModel& h, int count,
                                       std::uint64_t start) {
  std::optional<Chart> chart;
  try {
    chart = make_chart(h);
  } catch (const Unsupported&) {
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = start < 3 ? 3 : start; static_cast<int>(out.size()) < count; ++p) {
    if (!is_prime(p)) continue;
    try {
      check_good_prime(h, p);
      if (chart) {
        FpPoly f = to_fp(chart->f, p);
        if (f.degree() != 2 * chart->g + 1 || discriminant(f).is_zero()) continue;
      }
    } catch (const BadPrime&) {
      continue;
    }
    out.push_back(p);
  }
  return out;
}

Integer torsion_bound(const HyperellipticModel& h, const std::vector<std::uint64_t>& primes) {
  Integer b = 0;
  for (auto p : primes) {
    try {
      b = gcd(b, l_polynomial(h, p).at_one());
    } catch (const BadPrime&) {
      continue;
    }
  }
  if (b == 0) throw BadPrime("no good prime in the list");
  return b;
}

InfiniteOrderReport certify_infinite_order(const HyperellipticModel& h, const CurvePoint& P1,
                                           const CurvePoint& P2,
                                           const std::vector<std::uint64_t>& primes) {
  InfiniteOrderReport rep;
  if (P1 == P2) {
    rep.status = OrderStatus::kTorsion;
    rep.reason = "P1 = P2, the class is zero";
    return rep;
  }
  Chart chart = make_chart(h);
  rep.torsion_bound = torsion_bound(h, primes);
  for (auto p : primes) {
    std::unique_ptr<JacobianFp> J;
    try {
      J = std::make_unique<JacobianFp>(chart, p);
    } catch (const BadPrime&) {
      continue;
    }
    FpDivisor D = J->group().sub(J->reduce(P1), J->reduce(P2));
    Integer o = J->element_order(D);
    rep.reduction_orders.emplace_back(p, o);
    if (rep.torsion_bound % o != 0) {
      rep.status = OrderStatus::kInfinite;
      rep.reason = "order " + o.get_str() + " mod " + std::to_string(p) +
                   " does not divide the torsion bound " + rep.torsion_bound.get_str();
      return rep;
    }
    if (rep.reduction_orders.front().second != o) {
      rep.status = OrderStatus::kInfinite;
      rep.reason = "reduction orders differ between primes";
      return rep;
    }
  }
  rep.status = OrderStatus::kInconclusive;
  rep.reason = "all reduction orders agree and divide the torsion bound";
  return rep;
}

}  // namespace tors3
