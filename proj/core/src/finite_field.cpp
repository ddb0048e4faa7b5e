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

#include "tors3/finite_field.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace tors3 {

Integer FqContext::order() const {
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(k));
  return q;
}

bool is_irreducible(const FpPoly& f) {
  int k = f.degree();
  if (k <= 0) return false;
  if (k == 1) return true;
  FpPoly g = f.monic();
  const Fp& like = g.lc();
  Integer p(static_cast<unsigned long>(like.modulus()));
  FpPoly X = FpPoly::x(like);
  // X^(p^k) = X mod g, and gcd(X^(p^(k/r)) - X, g) = 1 for primes r | k.
  std::vector<FpPoly> frob{X % g};
  for (int i = 1; i <= k; ++i) frob.push_back(powmod(frob.back(), p, g));
  if (!(frob[k] == X % g)) return false;
  for (const auto& [r, e] : factor_u64(static_cast<std::uint64_t>(k))) {
    (void)e;
    FpPoly d = gcd(g, frob[k / static_cast<int>(r)] - X);
    if (d.degree() > 0) return false;
  }
  return true;
}

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const FqContext>>&
registry() {
  static std::map<std::pair<std::uint64_t, int>,
                  std::shared_ptr<const FqContext>>
      r;
  return r;
}

}  // namespace

std::shared_ptr<const FqContext> field_with_modulus(const FpPoly& modulus) {
  if (!is_irreducible(modulus)) {
    throw InvalidInput("field modulus is not irreducible");
  }
  auto ctx = std::make_shared<FqContext>();
  FpPoly m = modulus.monic();
  ctx->p = m.lc().modulus();
  ctx->k = m.degree();
  for (const Fp& c : m.coeffs()) ctx->modulus.push_back(c.value());
  return ctx;
}

std::shared_ptr<const FqContext> canonical_field(std::uint64_t p, int k) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("field characteristic must be an odd prime");
  if (k < 1) throw InvalidInput("field degree must be positive");
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_pair(p, k);
  auto it = registry().find(key);
  if (it != registry().end()) return it->second;
  std::shared_ptr<const FqContext> ctx;
  for (std::uint64_t n = 0;; ++n) {
    std::vector<Fp> c;
    std::uint64_t m = n;
    for (int i = 0; i < k; ++i) {
      c.push_back(Fp(m % p, p));
      m /= p;
    }
    if (m != 0) throw Error("no irreducible polynomial found");
    c.push_back(Fp(1, p));
    FpPoly f(c);
    if (is_irreducible(f)) {
      auto out = std::make_shared<FqContext>();
      out->p = p;
      out->k = k;
      for (int i = 0; i <= k; ++i) out->modulus.push_back(f.coeff(i).value());
      ctx = out;
      break;
    }
  }
  registry()[key] = ctx;
  return ctx;
}

Fq::Fq(std::shared_ptr<const FqContext> ctx, std::vector<std::uint64_t> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {
  c_.resize(static_cast<size_t>(ctx_->k), 0);
  for (auto& x : c_) x %= ctx_->p;
}

Fq Fq::from_index(std::shared_ptr<const FqContext> ctx, std::uint64_t n) {
  std::vector<std::uint64_t> c(static_cast<size_t>(ctx->k));
  for (auto& x : c) {
    x = n % ctx->p;
    n /= ctx->p;
  }
  return Fq(std::move(ctx), std::move(c));
}

Fq Fq::from_fp(std::shared_ptr<const FqContext> ctx, std::uint64_t v) {
  std::vector<std::uint64_t> c(static_cast<size_t>(ctx->k), 0);
  if (!c.empty()) c[0] = v % ctx->p;
  return Fq(std::move(ctx), std::move(c));
}

Fq Fq::generator(std::shared_ptr<const FqContext> ctx) {
  if (ctx->k == 1) {
    return from_fp(ctx, (ctx->p - ctx->modulus[0]) % ctx->p);
  }
  std::vector<std::uint64_t> c(static_cast<size_t>(ctx->k), 0);
  c[1] = 1;
  return Fq(std::move(ctx), std::move(c));
}

std::uint64_t Fq::index() const {
  std::uint64_t n = 0;
  for (size_t i = c_.size(); i-- > 0;) n = n * ctx_->p + c_[i];
  return n;
}

Fq Fq::from_integer(const Integer& n) const {
  Integer r = n % Integer(static_cast<unsigned long>(ctx_->p));
  if (r < 0) r += static_cast<unsigned long>(ctx_->p);
  return from_fp(ctx_, r.get_ui());
}

bool Fq::is_zero() const {
  for (auto x : c_) {
    if (x) return false;
  }
  return true;
}

Fq Fq::operator-() const {
  Fq r = *this;
  for (auto& x : r.c_) x = x ? ctx_->p - x : 0;
  return r;
}

Fq& Fq::operator+=(const Fq& o) {
  for (size_t i = 0; i < c_.size(); ++i) {
    c_[i] += o.c_[i];
    if (c_[i] >= ctx_->p) c_[i] -= ctx_->p;
  }
  return *this;
}

Fq& Fq::operator-=(const Fq& o) {
  for (size_t i = 0; i < c_.size(); ++i) {
    c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + ctx_->p - o.c_[i];
  }
  return *this;
}

Fq& Fq::operator*=(const Fq& o) {
  const std::uint64_t p = ctx_->p;
  const int k = ctx_->k;
  std::vector<std::uint64_t> t(static_cast<size_t>(2 * k - 1), 0);
  for (int i = 0; i < k; ++i) {
    if (!c_[i]) continue;
    for (int j = 0; j < k; ++j) {
      t[i + j] = (t[i + j] + mulmod(c_[i], o.c_[j], p)) % p;
    }
  }
  for (int i = 2 * k - 2; i >= k; --i) {
    std::uint64_t f = t[i];
    if (!f) continue;
    for (int j = 0; j < k; ++j) {
      std::uint64_t s = mulmod(f, ctx_->modulus[j], p);
      t[i - k + j] = (t[i - k + j] + p - s) % p;
    }
    t[i] = 0;
  }
  t.resize(static_cast<size_t>(k));
  c_ = std::move(t);
  return *this;
}

Fq Fq::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero in F_q");
  const std::uint64_t p = ctx_->p;
  std::vector<Fp> a, m;
  for (auto x : c_) a.push_back(Fp(x, p));
  for (auto x : ctx_->modulus) m.push_back(Fp(x, p));
  auto [g, s, t] = xgcd(FpPoly(a), FpPoly(m));
  (void)t;
  if (g.degree() != 0) throw InvalidInput("non-invertible element of F_q");
  std::vector<std::uint64_t> c;
  for (int i = 0; i < ctx_->k; ++i) c.push_back(s.coeff(i, Fp(0, p)).value());
  return Fq(ctx_, std::move(c));
}

Fq Fq::pow(const Integer& e) const {
  if (e < 0) return inverse().pow(-e);
  Fq r = one(), b = *this;
  Integer x = e;
  while (x > 0) {
    if (mpz_odd_p(x.get_mpz_t())) r *= b;
    x >>= 1;
    if (x > 0) b *= b;
  }
  return r;
}

bool Fq::is_square() const {
  if (is_zero()) return true;
  return pow((ctx_->order() - 1) / 2) == one();
}

std::optional<Fq> Fq::sqrt() const {
  if (is_zero()) return *this;
  if (!is_square()) return std::nullopt;
  Integer q = ctx_->order();
  Integer t = q - 1;
  int s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t >>= 1;
    ++s;
  }
  Fq z = one();
  for (std::uint64_t n = 2;; ++n) {
    z = from_index(ctx_, n);
    if (!z.is_square()) break;
  }
  Fq c = z.pow(t);
  Fq x = pow((t + 1) / 2);
  Fq b = pow(t);
  int m = s;
  while (!(b == one())) {
    int i = 0;
    Fq bb = b;
    while (!(bb == one())) {
      bb *= bb;
      ++i;
    }
    Fq w = c;
    for (int j = 0; j < m - i - 1; ++j) w *= w;
    m = i;
    c = w * w;
    x *= w;
    b *= c;
  }
  return x;
}

std::ostream& operator<<(std::ostream& os, const Fq& a) {
  os << "[";
  for (size_t i = 0; i < a.c_.size(); ++i) os << (i ? "," : "") << a.c_[i];
  return os << "]";
}

}  // namespace tors3
