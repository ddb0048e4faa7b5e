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

#include "tors3/padic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tors3/ntheory.hpp"
#include "padic_internal.hpp"

namespace tors3 {

using detail::floor_log;
using detail::iterations_for;
using detail::ppow;

// ---------------------------------------------------------------- Padic

Padic Padic::normalize(std::uint64_t p, long cap, Integer w, long vb, long N) {
  N = std::min(N, cap);
  if (N <= vb) return Padic(p, cap, N, N, 0);
  Integer mod = ppow(p, N - vb);
  mpz_mod(w.get_mpz_t(), w.get_mpz_t(), mod.get_mpz_t());
  if (w == 0) return Padic(p, cap, N, N, 0);
  Integer P = p;
  long k = static_cast<long>(mpz_remove(w.get_mpz_t(), w.get_mpz_t(), P.get_mpz_t()));
  return Padic(p, cap, N, vb + k, std::move(w));
}

Padic Padic::zero(std::uint64_t p, long precision) {
  return Padic(p, precision, precision, precision, 0);
}

Padic Padic::from_integer(const Integer& n, std::uint64_t p, long precision) {
  return normalize(p, precision, n, 0, precision);
}

Padic Padic::from_rational(const Rational& q, std::uint64_t p, long precision) {
  if (q.is_zero()) return zero(p, precision);
  Integer num = q.numerator(), den = q.denominator();
  Integer P = p;
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), P.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t()));
  long v = vn - vd;
  if (precision <= v) return zero(p, precision);
  Integer mod = ppow(p, precision - v);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return normalize(p, precision, num * inv, v, precision);
}

Padic Padic::inverse() const {
  if (is_zero()) {
    throw PrecisionError("inverse of a p-adic number known only to be 0 mod p^" +
                         std::to_string(N_));
  }
  long v = -v_;
  long N = std::min(N_ - 2 * v_, cap_);
  if (N <= v) return Padic(p_, cap_, N, N, 0);
  Integer mod = ppow(p_, N - v);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), u_.get_mpz_t(), mod.get_mpz_t());
  return normalize(p_, cap_, inv, v, N);
}

Padic Padic::with_precision(long N) const {
  return normalize(p_, cap_, u_, v_, std::min(N, N_));
}

Integer Padic::residue(long k) const {
  if (N_ < k) {
    throw PrecisionError("p-adic value known mod p^" + std::to_string(N_) + ", need p^" +
                         std::to_string(k));
  }
  if (is_zero()) return 0;
  if (v_ < 0) throw InvalidInput("residue of a non-integral p-adic number");
  Integer mod = ppow(p_, k);
  Integer r = u_ * ppow(p_, v_);
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return r;
}

Rational Padic::lift() const {
  if (is_zero()) return Rational(0);
  if (v_ >= 0) return Rational(Integer(u_ * ppow(p_, v_)));
  return Rational(u_, ppow(p_, -v_));
}

std::string Padic::to_string() const {
  std::ostringstream os;
  os << lift().to_string() << " + O(" << p_ << "^" << N_ << ")";
  return os.str();
}

Padic Padic::operator-() const { return normalize(p_, cap_, -u_, v_, N_); }

Padic operator+(const Padic& a, const Padic& b) {
  if (a.p_ != b.p_) throw InvalidInput("p-adic numbers over different primes");
  long cap = std::min(a.cap_, b.cap_);
  long N = std::min({a.N_, b.N_, cap});
  long vb = std::min(a.v_, b.v_);
  if (vb >= N) return Padic(a.p_, cap, N, N, 0);
  Integer w = a.u_ * ppow(a.p_, a.v_ - vb) + b.u_ * ppow(a.p_, b.v_ - vb);
  return Padic::normalize(a.p_, cap, std::move(w), vb, N);
}

Padic operator*(const Padic& a, const Padic& b) {
  if (a.p_ != b.p_) throw InvalidInput("p-adic numbers over different primes");
  long cap = std::min(a.cap_, b.cap_);
  long N = std::min({a.N_ + b.v_, b.N_ + a.v_, cap});
  if (a.is_zero() || b.is_zero()) return Padic(a.p_, cap, N, N, 0);
  return Padic::normalize(a.p_, cap, a.u_ * b.u_, a.v_ + b.v_, N);
}

// ---------------------------------------------------------------- Z_q

namespace detail {

std::shared_ptr<const ZqContext> make_zq_context(std::shared_ptr<const FqContext> residue) {
  auto ctx = std::make_shared<ZqContext>();
  ctx->p = residue->p;
  ctx->d = residue->k;
  ctx->residue = residue;
  for (auto c : residue->modulus) ctx->phi.push_back(Integer(static_cast<unsigned long>(c)));
  // Tr(X^k) are the power sums of the roots of phi.
  int d = ctx->d;
  std::vector<Integer> P(static_cast<size_t>(2 * d), Integer(0));
  P[0] = d;
  for (int k = 1; k < 2 * d; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= std::min(k - 1, d); ++i) acc += ctx->phi[d - i] * P[k - i];
    if (k <= d) acc += Integer(k) * ctx->phi[d - k];
    P[k] = -acc;
  }
  ctx->traces = P;
  return ctx;
}

Zq::Zq(std::shared_ptr<const ZqContext> ctx, std::vector<Padic> c)
    : ctx_(std::move(ctx)), c_(std::move(c)) {
  if (static_cast<int>(c_.size()) != ctx_->d) throw InvalidInput("Z_q element of wrong length");
}

Zq Zq::from_padic(std::shared_ptr<const ZqContext> ctx, const Padic& a) {
  std::vector<Padic> c(static_cast<size_t>(ctx->d), a.zero());
  c[0] = a;
  return Zq(std::move(ctx), std::move(c));
}

long Zq::cap() const {
  long m = c_[0].cap();
  for (const auto& a : c_) m = std::min(m, a.cap());
  return m;
}

long Zq::precision() const {
  long m = c_[0].precision();
  for (const auto& a : c_) m = std::min(m, a.precision());
  return m;
}

long Zq::valuation() const {
  long m = c_[0].valuation();
  for (const auto& a : c_) m = std::min(m, a.valuation());
  return m;
}

bool Zq::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Padic& a) { return a.is_zero(); });
}

namespace {

Zq scaled(const Zq& a, const Padic& s) {
  std::vector<Padic> c = a.coeffs();
  for (auto& x : c) x *= s;
  return Zq(a.context(), std::move(c));
}

}  // namespace

Zq Zq::inverse() const {
  if (is_zero()) throw PrecisionError("inverse of an element of Z_q known only to be 0");
  long v = 0;
  bool found = false;
  for (const auto& a : c_) {
    if (a.is_zero()) continue;
    if (!found || a.valuation() < v) v = a.valuation();
    found = true;
  }
  for (const auto& a : c_) {
    if (a.is_zero() && a.precision() <= v) {
      throw PrecisionError("valuation of a Z_q element is not determined");
    }
  }
  std::uint64_t p = prime();
  Rational s = v >= 0 ? Rational(Integer(1), ppow(p, v)) : Rational(ppow(p, -v));
  Padic scale = Padic::from_rational(s, p, cap());
  Zq u = scaled(*this, scale);
  Zq y = lift_elem(reduce_elem(u).inverse(), u);
  Zq two = u.from_integer(2);
  for (int it = 0; it < iterations_for(cap()); ++it) y = y * (two - u * y);
  return scaled(y, scale);
}

Zq Zq::with_precision(long N) const {
  std::vector<Padic> c;
  for (const auto& a : c_) c.push_back(a.with_precision(N));
  return Zq(ctx_, std::move(c));
}

Padic Zq::trace() const {
  Padic acc = c_[0].zero();
  for (int i = 0; i < ctx_->d; ++i) acc += c_[i] * c_[i].from_integer(ctx_->traces[i]);
  return acc;
}

Zq Zq::operator-() const {
  std::vector<Padic> c;
  for (const auto& a : c_) c.push_back(-a);
  return Zq(ctx_, std::move(c));
}

Zq operator+(const Zq& a, const Zq& b) {
  std::vector<Padic> c;
  for (size_t i = 0; i < a.c_.size(); ++i) c.push_back(a.c_[i] + b.c_[i]);
  return Zq(a.ctx_, std::move(c));
}

Zq operator*(const Zq& a, const Zq& b) {
  int d = a.ctx_->d;
  std::vector<Padic> t(static_cast<size_t>(2 * d - 1), a.c_[0].zero());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) t[i + j] += a.c_[i] * b.c_[j];
  }
  for (int i = 2 * d - 2; i >= d; --i) {
    for (int j = 0; j < d; ++j) {
      t[i - d + j] -= t[i] * t[i].from_integer(a.ctx_->phi[j]);
    }
  }
  t.resize(static_cast<size_t>(d));
  return Zq(a.ctx_, std::move(t));
}

std::ostream& operator<<(std::ostream& os, const Zq& a) {
  os << "[";
  for (size_t i = 0; i < a.c_.size(); ++i) os << (i ? ", " : "") << a.c_[i];
  return os << "]";
}

Fp reduce_elem(const Padic& a) { return Fp(a.residue(1).get_ui(), a.prime()); }

Fq reduce_elem(const Zq& a) {
  std::vector<std::uint64_t> c;
  for (const auto& x : a.coeffs()) c.push_back(x.residue(1).get_ui());
  return Fq(a.context()->residue, std::move(c));
}

Padic lift_elem(const Fp& a, const Padic& like) {
  return like.from_integer(Integer(static_cast<unsigned long>(a.value())));
}

Zq lift_elem(const Fq& a, const Zq& like) {
  std::vector<Padic> c(static_cast<size_t>(like.context()->d), like.coeffs()[0].zero());
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    c[i] = like.coeffs()[0].from_integer(Integer(static_cast<unsigned long>(a.coeffs()[i])));
  }
  return Zq(like.context(), std::move(c));
}

}  // namespace detail

PadicPoly to_padic(const QPoly& f, std::uint64_t p, long precision) {
  std::vector<Padic> c;
  for (const auto& a : f.coeffs()) c.push_back(Padic::from_rational(a, p, precision));
  return PadicPoly(std::move(c));
}

// ---------------------------------------------------------------- series

PadicSeries series_from_poly(const PadicPoly& f, int order, const Padic& like) {
  return detail::s_of(f, order, like);
}
PadicSeries series_add(const PadicSeries& a, const PadicSeries& b) { return detail::s_add(a, b); }
PadicSeries series_mul(const PadicSeries& a, const PadicSeries& b) { return detail::s_mul(a, b); }
PadicSeries series_scale(const PadicSeries& a, const Padic& x) { return detail::s_scale(a, x); }
PadicSeries series_compose(const PadicSeries& a, const PadicSeries& b) {
  return detail::s_compose(a, b);
}
PadicSeries series_derivative(const PadicSeries& a) { return detail::s_derivative(a); }
PadicSeries series_integrate(const PadicSeries& a) { return detail::s_integrate(a); }
PadicSeries series_binomial(const PadicSeries& E, const Rational& alpha) {
  return detail::s_binomial(E, alpha);
}
PadicSeries series_revert(const PadicSeries& a) { return detail::s_revert(a); }

// ---------------------------------------------------------------- Hensel

PadicPoly hensel_factor(const PadicPoly& P, const FpPoly& Abar) {
  return detail::hensel_lift(P, Abar);
}

Padic padic_sqrt(const Padic& a, std::uint64_t residue) {
  if (a.is_zero() || a.valuation() != 0) throw InvalidInput("p-adic square root of a non-unit");
  Padic y = a.from_integer(Integer(static_cast<unsigned long>(residue)));
  Padic half = a.from_integer(2).inverse();
  for (int i = 0; i < iterations_for(a.cap()); ++i) y = (y + a / y) * half;
  return y;
}

int strassmann_bound(const std::vector<Padic>& c, bool skip_constant) {
  size_t start = skip_constant ? 1 : 0;
  long M = 0;
  bool found = false;
  for (size_t n = start; n < c.size(); ++n) {
    if (c[n].is_zero()) continue;
    if (!found || c[n].valuation() < M) M = c[n].valuation();
    found = true;
  }
  if (!found) throw PrecisionError("all Strassmann coefficients are zero to working precision");
  int bound = 0;
  for (size_t n = start; n < c.size(); ++n) {
    if (!c[n].is_zero() && c[n].valuation() == M) bound = static_cast<int>(n);
  }
  for (size_t n = static_cast<size_t>(bound) + 1; n < c.size(); ++n) {
    if (c[n].is_zero() && c[n].precision() <= M) {
      throw PrecisionError("coefficient " + std::to_string(n) +
                           " may still reach the minimal valuation");
    }
  }
  return bound;
}

// ---------------------------------------------------------------- discs

std::vector<QPoly> chart_differentials(const Chart& chart) {
  std::vector<QPoly> out;
  int g = chart.g;
  for (int i = 0; i < g; ++i) {
    if (!chart.inverted) {
      out.push_back(QPoly::monomial(Rational(1), i));
    } else {
      QPoly lin({Rational(1), chart.r0});  // r0 s + 1
      out.push_back(-(lin.pow(static_cast<unsigned long>(i)) *
                      QPoly::monomial(Rational(1), g - 1 - i)));
    }
  }
  return out;
}

std::string ResidueDisc::to_string() const {
  switch (kind) {
    case Kind::kInfinity:
      return "O";
    case Kind::kWeierstrass:
      return "W(" + std::to_string(x.value()) + ",0)";
    case Kind::kAffine:
      break;
  }
  return "(" + std::to_string(x.value()) + "," + std::to_string(y.value()) + ")";
}

ResidueDisc disc_of(const Chart& chart, std::uint64_t p,
                    const std::optional<std::pair<Fp, Fp>>& center) {
  ResidueDisc d;
  d.p = p;
  if (!center) {
    d.kind = ResidueDisc::Kind::kInfinity;
    d.x = d.y = Fp(0, p);
    return d;
  }
  d.x = center->first;
  d.y = center->second;
  d.lift = Integer(static_cast<unsigned long>(d.x.value()));
  std::uint64_t fx = 0;
  {
    std::vector<Fp> c;
    for (const auto& a : chart.f.coeffs()) c.push_back(Fp::from_rational(a, p));
    fx = FpPoly(c).eval(d.x).value();
  }
  d.kind = fx == 0 ? ResidueDisc::Kind::kWeierstrass : ResidueDisc::Kind::kAffine;
  return d;
}

ResidueDisc disc_of(const Chart& chart, std::uint64_t p, const CurvePoint& P) {
  auto img = chart.image(P);
  if (!img || (!img->first.is_zero() && valuation(img->first, p) < 0)) {
    return disc_of(chart, p, std::nullopt);
  }
  return disc_of(chart, p,
                 std::make_pair(Fp::from_rational(img->first, p), Fp::from_rational(img->second, p)));
}

std::vector<ResidueDisc> all_discs(const Chart& chart, std::uint64_t p) {
  std::vector<ResidueDisc> out{disc_of(chart, p, std::nullopt)};
  std::vector<Fp> c;
  for (const auto& a : chart.f.coeffs()) c.push_back(Fp::from_rational(a, p));
  FpPoly f(c);
  for (std::uint64_t s = 0; s < p; ++s) {
    Fp x(s, p);
    Fp v = f.eval(x);
    if (v.is_zero()) {
      out.push_back(disc_of(chart, p, std::make_pair(x, v)));
      continue;
    }
    auto r = sqrt_mod(v.value(), p);
    if (!r) continue;
    std::uint64_t a = std::min(*r, p - *r), b = std::max(*r, p - *r);
    out.push_back(disc_of(chart, p, std::make_pair(x, Fp(a, p))));
    out.push_back(disc_of(chart, p, std::make_pair(x, Fp(b, p))));
  }
  return out;
}

namespace {

// Data of a Weierstrass disc: the local model F(z) = f(X_W + z) with
// F(0) = 0, and the polynomial shift applied to differentials.
struct WeierstrassData {
  PadicPoly F;  // in z
  Padic XW;
  bool other_chart = false;
};

PadicPoly other_chart_model(const Chart& chart, std::uint64_t p, long N) {
  return to_padic(chart.f.reversed(2 * chart.g + 2), p, N);
}

PadicPoly other_chart_differential(const PadicPoly& h, int g) {
  return -h.reversed(g - 1);
}

WeierstrassData weierstrass_data(const Chart& chart, const ResidueDisc& disc, long N) {
  WeierstrassData w;
  std::uint64_t p = disc.p;
  if (disc.kind == ResidueDisc::Kind::kInfinity) {
    w.other_chart = true;
    w.F = other_chart_model(chart, p, N);
    w.XW = Padic::zero(p, N);
  } else {
    PadicPoly f = to_padic(chart.f, p, N);
    FpPoly lin({-disc.x, Fp(1, p)});
    PadicPoly root = hensel_factor(f, lin);
    w.XW = -root.coeff(0, Padic::zero(p, N));
    w.F = f.shift(w.XW);
  }
  std::vector<Padic> c = w.F.coeffs();
  c[0] = Padic::zero(p, N);
  w.F = PadicPoly(c);
  return w;
}

PadicSeries series_of(const PadicPoly& f, int order, std::uint64_t p, long N) {
  return detail::s_of(f, order, Padic::zero(p, N));
}

// s -> s^2 substitution.
PadicSeries in_square(const PadicSeries& a) {
  PadicSeries s;
  s.order = 2 * a.order - 1;
  s.c.assign(static_cast<size_t>(s.order), a.c[0].zero());
  for (int i = 0; i < a.order; ++i) s.c[2 * i] = a.c[i];
  return s;
}

PadicSeries omega_series_padic(const Chart& chart, const ResidueDisc& disc, const PadicPoly& h,
                               int order, long N) {
  std::uint64_t p = disc.p;
  if (disc.kind == ResidueDisc::Kind::kAffine) {
    PadicPoly f = to_padic(chart.f, p, N);
    Padic x0 = Padic::from_integer(disc.lift, p, N);
    PadicPoly fs = f.shift(x0);
    Padic d0 = fs.coeff(0, x0.zero());
    Padic y0 = padic_sqrt(d0, disc.y.value());
    PadicSeries E = series_scale(series_of(fs - PadicPoly::constant(d0), order, p, N), d0.inverse());
    PadicSeries R = series_binomial(E, Rational(-1, 2));
    PadicSeries H = series_of(h.shift(x0), order, p, N);
    return series_scale(series_mul(H, R), y0.inverse());
  }
  WeierstrassData w = weierstrass_data(chart, disc, N);
  int half = order / 2 + 1;
  PadicSeries Z = series_revert(series_of(w.F, half + 1, p, N));
  PadicSeries Zd = series_derivative(Z);
  PadicPoly hh = w.other_chart ? other_chart_differential(h, chart.g) : h;
  PadicSeries Hs = series_mul(series_compose(series_of(hh.shift(w.XW), half, p, N), Z), Zd);
  PadicSeries out = series_scale(in_square(Hs), Padic::from_integer(2, p, N));
  out.order = std::min(out.order, order);
  out.c.resize(static_cast<size_t>(out.order));
  return out;
}


}  // namespace

LocalExpansion local_expansion(const Chart& chart, const ResidueDisc& disc, int order,
                               long precision) {
  std::uint64_t p = disc.p;
  long N = precision;
  LocalExpansion L;
  if (disc.kind == ResidueDisc::Kind::kAffine) {
    PadicPoly f = to_padic(chart.f, p, N);
    Padic x0 = Padic::from_integer(disc.lift, p, N);
    PadicPoly fs = f.shift(x0);
    Padic d0 = fs.coeff(0, x0.zero());
    Padic y0 = padic_sqrt(d0, disc.y.value());
    PadicSeries E = series_scale(series_of(fs - PadicPoly::constant(d0), order, p, N), d0.inverse());
    L.x = series_of(PadicPoly({x0, x0.one()}), order, p, N);
    L.y = series_scale(series_binomial(E, Rational(1, 2)), y0);
    return L;
  }
  WeierstrassData w = weierstrass_data(chart, disc, N);
  int half = order / 2 + 1;
  PadicSeries Z = series_revert(series_of(w.F, half, p, N));
  L.x = in_square(Z);
  L.x.c[0] = w.XW;
  L.x.order = std::min(L.x.order, order);
  L.x.c.resize(static_cast<size_t>(L.x.order));
  L.y = series_of(PadicPoly({Padic::zero(p, N), Padic::from_integer(1, p, N)}), order, p, N);
  L.other_chart = w.other_chart;
  return L;
}

PadicSeries omega_series(const Chart& chart, const ResidueDisc& disc, const QPoly& h, int order,
                         long precision) {
  return omega_series_padic(chart, disc, to_padic(h, disc.p, precision), order, precision);
}

Padic disc_parameter(const Chart& chart, const ResidueDisc& disc, const CurvePoint& P,
                     long precision) {
  std::uint64_t p = disc.p;
  ResidueDisc dP = disc_of(chart, p, P);
  if (dP.kind != disc.kind || !(dP.x == disc.x) || !(dP.y == disc.y)) {
    throw InvalidInput("point " + P.to_string() + " is not in disc " + disc.to_string());
  }
  auto img = chart.image(P);
  if (disc.kind == ResidueDisc::Kind::kInfinity) {
    if (!img) return Padic::zero(p, precision);
    const auto& [x, w] = *img;
    return Padic::from_rational(w / x.pow(chart.g + 1), p, precision);
  }
  const auto& [x, w] = *img;
  if (disc.kind == ResidueDisc::Kind::kWeierstrass) return Padic::from_rational(w, p, precision);
  return Padic::from_rational(x - Rational(disc.lift), p,
                              precision);
}

Padic tiny_integral(const Chart& chart, int omega_index, const CurvePoint& P, const CurvePoint& Q,
                    std::uint64_t p, long k) {
  ResidueDisc disc = disc_of(chart, p, P);
  ResidueDisc dQ = disc_of(chart, p, Q);
  if (dQ.kind != disc.kind || !(dQ.x == disc.x) || !(dQ.y == disc.y)) {
    throw InvalidInput("tiny integral between different residue discs");
  }
  return tiny_integral(chart, disc, omega_index, P, Q, k);
}

Padic tiny_integral(const Chart& chart, const ResidueDisc& disc, int omega_index,
                    const CurvePoint& P, const CurvePoint& Q, long k) {
  std::vector<QPoly> hs = chart_differentials(chart);
  if (omega_index < 0 || omega_index >= static_cast<int>(hs.size())) {
    throw InvalidInput("differential index out of range");
  }
  std::uint64_t p = disc.p;
  long N = k + 12;
  Padic sP = disc_parameter(chart, disc, P, N), sQ = disc_parameter(chart, disc, Q, N);
  long r = std::min(sP.valuation(), sQ.valuation());
  if (r < 1) throw Error("disc parameter is not small");
  long T = k + 2;
  int K = 1;
  // Terms n >= K have valuation >= (n + 1) r - log_p(n + 1) >= T.
  while (true) {
    bool ok = true;
    for (int n = K; n < K + 200; ++n) {
      if ((n + 1) * r - floor_log(p, n + 1) < T) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    ++K;
  }
  PadicSeries w = omega_series(chart, disc, hs[omega_index], K, N);
  Padic acc = Padic::zero(p, N);
  Padic pP = sP, pQ = sQ;
  for (int n = 0; n < K; ++n) {
    acc += w.c[n] * (pQ - pP) / Padic::from_integer(n + 1, p, N);
    pP *= sP;
    pQ *= sQ;
  }
  return acc.with_precision(T);
}

Padic tiny_integral(const Chart& chart, const std::vector<Integer>& a, const CurvePoint& P,
                    const CurvePoint& Q, std::uint64_t p, long k) {
  if (static_cast<int>(a.size()) != chart.g) throw InvalidInput("coefficient vector has the wrong length");
  Padic acc = Padic::zero(p, k + 2);
  for (int i = 0; i < chart.g; ++i) {
    if (a[i] == 0) continue;
    acc += tiny_integral(chart, i, P, Q, p, k) * Padic::from_integer(a[i], p, k + 2);
  }
  return acc;
}

// ---------------------------------------------------------- integration

namespace {

using detail::Zq;

// Lower bound for the valuation of every root of a monic polynomial, from
// its Newton polygon.
template <class K>
Rational root_valuation_bound(const Poly<K>& monic) {
  int e = monic.degree();
  Rational r(1000000);
  for (int i = 0; i < e; ++i) {
    // an unknown zero counts with its precision
    Rational q(Integer(monic.coeffs()[i].valuation()), Integer(e - i));
    if (q < r) r = q;
  }
  return r;
}

// Smallest K with n r - loss(n) >= T for all n >= K.
int terms_needed(const Rational& r, long T, const std::function<long(long)>& loss) {
  if (r <= Rational(0)) throw Error("roots are not in the disc");
  int K = 1;
  while (true) {
    bool ok = true;
    for (long n = K; n < K + 400; ++n) {
      if (Rational(n) * r < Rational(T + loss(n))) {
        ok = false;
        K = static_cast<int>(n) + 1;
        break;
      }
    }
    if (ok) return K;
  }
}

// Newton identities: power sums of the roots of a monic polynomial.
template <class K>
std::vector<K> power_sums(const Poly<K>& monic, int count) {
  int e = monic.degree();
  const K zero = monic.lc().zero();
  std::vector<K> P(static_cast<size_t>(count), zero);
  if (count == 0) return P;
  P[0] = zero.from_integer(e);
  for (int k = 1; k < count; ++k) {
    K acc = zero;
    for (int i = 1; i <= std::min(k - 1, e); ++i) acc += monic.coeff(e - i, zero) * P[k - i];
    if (k <= e) acc += monic.coeff(e - k, zero) * zero.from_integer(k);
    P[k] = -acc;
  }
  return P;
}

// sum_j Y(z_j) psi(z_j) over the roots z_j of `factor`.
template <class K>
K root_sum(const Poly<K>& factor, const Poly<K>& Y, const Series<K>& psi) {
  int n_terms = psi.order;
  int dy = std::max(Y.degree(), 0);
  std::vector<K> P = power_sums(factor, n_terms + dy + 1);
  const K zero = factor.lc().zero();
  K acc = zero;
  for (int n = 0; n < n_terms; ++n) {
    K S = zero;
    for (int i = 0; i <= Y.degree(); ++i) S += Y.coeff(i, zero) * P[n + i];
    acc += psi.c[n] * S;
  }
  return acc;
}

// Points (x_j, y_j) with x_j - x0 the roots of factor(x0 + z), in a disc
// where f(x0) is a unit. With R = (f(x0 + z) / f(x0))^(-1/2) the integral
// from the lifted center (x0, +-sqrt f(x0)) is y_j R(z_j) / f(x0) times
// int_0^{z_j} h(x0 + z) R(z) dz, so no square root is needed.
template <class K>
std::vector<K> non_weierstrass_group(const Poly<K>& f, const std::vector<Poly<K>>& hs,
                                     const Poly<K>& v, const Poly<K>& factor, const K& x0,
                                     long T) {
  std::uint64_t p = x0.prime();
  Poly<K> fac = factor.shift(x0);
  int n_terms = terms_needed(root_valuation_bound(fac), T, [p](long n) { return detail::floor_log(p, n); });
  Poly<K> fs = f.shift(x0);
  K d0 = fs.coeff(0, x0.zero());
  K d0inv = d0.inverse();
  Series<K> E = detail::s_scale(detail::s_of(fs - Poly<K>::constant(d0), n_terms, x0), d0inv);
  Series<K> R = detail::s_binomial(E, Rational(-1, 2));
  Poly<K> Y = v.shift(x0);
  std::vector<K> out;
  for (const auto& h : hs) {
    Series<K> G = detail::s_integrate(detail::s_mul(detail::s_of(h.shift(x0), n_terms, x0), R));
    G.order = n_terms;
    G.c.resize(static_cast<size_t>(n_terms));
    Series<K> psi = detail::s_scale(detail::s_mul(R, G), d0inv);
    out.push_back(root_sum(fac, Y, psi));
  }
  return out;
}

// Points near the Weierstrass point (XW, 0) of y^2 = F(x - XW), F(0) = 0.
// With x = XW + Z(u), u = y^2, the integral from (XW, 0) is
// y * sum_k 2 H_k u^k / (2k + 1), H = h(XW + Z(u)) Z'(u).
template <class K>
std::vector<K> weierstrass_group(const Poly<K>& F, const K& XW, const std::vector<Poly<K>>& hs,
                                 const Poly<K>& v, const Poly<K>& factor, long T) {
  std::uint64_t p = XW.prime();
  Poly<K> fac = factor.shift(XW);
  int n_terms = terms_needed(root_valuation_bound(fac), T,
                             [p](long n) { return detail::floor_log(p, 2 * n + 1); }) + 1;
  Series<K> Fs = detail::s_of(F, n_terms + 1, XW);
  Series<K> Z = detail::s_revert(Fs);
  Series<K> Zd = detail::s_derivative(Z);
  Poly<K> Y = v.shift(XW);
  std::vector<K> out;
  for (const auto& h : hs) {
    Series<K> H = detail::s_mul(detail::s_compose(detail::s_of(h.shift(XW), n_terms, XW), Z), Zd);
    Series<K> G = H;
    for (int k = 0; k < G.order; ++k) G.c[k] = H.c[k] * XW.from_rational(Rational(2, 2 * k + 1));
    Series<K> Fk = Fs;
    Fk.order = G.order;
    Fk.c.resize(static_cast<size_t>(G.order));
    out.push_back(root_sum(fac, Y, detail::s_compose(G, Fk)));
  }
  return out;
}

long min_valuation(const QPoly& f, std::uint64_t p) {
  long m = 0;
  for (const auto& c : f.coeffs()) {
    if (!c.is_zero()) m = std::min(m, valuation(c, p));
  }
  return m;
}

Poly<Zq> to_zq(const PadicPoly& f, const std::shared_ptr<const detail::ZqContext>& ctx) {
  std::vector<Zq> c;
  for (const auto& a : f.coeffs()) c.push_back(Zq::from_padic(ctx, a));
  return Poly<Zq>(std::move(c));
}

template <class K>
Poly<K> without_constant(Poly<K> F) {
  std::vector<K> c = F.coeffs();
  c[0] = c[0].zero();
  return Poly<K>(std::move(c));
}

// Contribution of the points whose x reduces to the root a (in F_p or in
// F_{p^d}) of multiplicity e of the reduction of A.
template <class K, class F>
std::vector<K> residue_group(const Poly<K>& f, const std::vector<Poly<K>>& hs, const Poly<K>& v,
                             const Poly<K>& A, const F& a, int e, long T) {
  Poly<F> lin({-a, a.one()});
  Poly<K> Aa = e == A.degree() ? A : detail::hensel_lift(A, lin.pow(static_cast<unsigned long>(e)));
  if (detail::reduce_poly(f).eval(a).is_zero()) {
    Poly<K> root = detail::hensel_lift(f, lin);
    K XW = -root.coeff(0, f.lc().zero());
    return weierstrass_group(without_constant(f.shift(XW)), XW, hs, v, Aa, T);
  }
  return non_weierstrass_group(f, hs, v, Aa, detail::lift_elem(a, f.lc()), T);
}

// sum over the support of D = sum [Q_j - O] of int_O^{Q_j} omega_i, for
// D in the kernel of reduction. Points are grouped by residue disc: the
// disc at O (x not integral), Weierstrass discs and the rest. Each group
// is a symmetric function of the roots of a factor of u, evaluated by
// power sums. The centres of all groups add up to a principal divisor or
// to 2-torsion, whose integrals vanish.
std::vector<Padic> kernel_integrals(const Chart& chart, const Mumford<Rational>& D,
                                    std::uint64_t p, long T, long N) {
  int g = chart.g;
  PadicPoly f = to_padic(chart.f, p, N);
  std::vector<PadicPoly> hs;
  for (const auto& h : chart_differentials(chart)) hs.push_back(to_padic(h, p, N));
  std::vector<Padic> sums(static_cast<size_t>(g), Padic::zero(p, N));
  PadicPoly v = to_padic(D.v, p, N);

  long mu = min_valuation(D.u, p);
  PadicPoly A;
  if (mu >= 0) {
    A = to_padic(D.u, p, N);
  } else {
    PadicPoly Pstar = to_padic(D.u * Rational(detail::ppow(p, -mu)), p, N);
    FpPoly Pbar = detail::reduce_poly(Pstar);
    PadicPoly Bstar;
    if (Pbar.degree() > 0) {
      A = hensel_factor(Pstar, Pbar.monic());
      Bstar = Pstar / A;
    } else {
      A = PadicPoly::constant(Padic::from_integer(1, p, N));
      Bstar = Pstar;
    }
    // Roots of Bstar have negative valuation; z = 1/x lies in the disc at O.
    PadicPoly Brev = Bstar.reversed(Bstar.degree());
    Brev = Brev * Brev.lc().inverse();
    std::vector<PadicPoly> hoc;
    for (const auto& h : hs) hoc.push_back(-h.reversed(g - 1));
    PadicPoly Yoc = v.is_zero() ? PadicPoly() : v.reversed(g + 1);
    PadicPoly Foc = without_constant(to_padic(chart.f.reversed(2 * g + 2), p, N));
    auto part = weierstrass_group(Foc, Padic::zero(p, N), hoc, Yoc, Brev, T);
    for (int i = 0; i < g; ++i) sums[i] += part[i];
  }
  if (A.degree() <= 0) return sums;

  FpPoly Abar = detail::reduce_poly(A);
  int remaining = Abar.degree();
  {
    std::vector<Fp> roots = ff_poly_roots(Abar);
    for (size_t i = 0; i < roots.size();) {
      size_t j = i;
      while (j < roots.size() && roots[j] == roots[i]) ++j;
      int e = static_cast<int>(j - i);
      auto part = residue_group(f, hs, v, A, roots[i], e, T);
      for (int k = 0; k < g; ++k) sums[k] += part[k];
      remaining -= e;
      i = j;
    }
  }
  // Residues in F_{p^d}: one Frobenius orbit at a time, over the
  // unramified extension of degree d; the orbit contributes the trace.
  for (int d = 2; remaining > 0; ++d) {
    if (d > Abar.degree()) throw Error("residues of the divisor were not all found");
    auto fq = canonical_field(p, d);
    auto zq = detail::make_zq_context(fq);
    std::vector<Fq> c;
    for (const auto& a : Abar.coeffs()) c.push_back(Fq::from_fp(fq, a.value()));
    std::vector<Fq> roots = ff_poly_roots(FqPoly(c));
    Poly<Zq> fz = to_zq(f, zq), vz = to_zq(v, zq), Az = to_zq(A, zq);
    std::vector<Poly<Zq>> hz;
    for (const auto& h : hs) hz.push_back(to_zq(h, zq));
    std::vector<std::uint64_t> done;
    for (size_t i = 0; i < roots.size();) {
      size_t j = i;
      while (j < roots.size() && roots[j] == roots[i]) ++j;
      int e = static_cast<int>(j - i);
      const Fq& a = roots[i];
      i = j;
      std::vector<Fq> orbit{a};
      for (int s = 1; s < d; ++s) orbit.push_back(orbit.back().pow(Integer(static_cast<unsigned long>(p))));
      bool exact = true;
      for (int s = 1; s < d; ++s) {
        if (orbit[s] == a) exact = false;
      }
      if (!exact) continue;  // lies in a smaller field, handled there
      if (std::find(done.begin(), done.end(), a.index()) != done.end()) continue;
      for (const auto& b : orbit) done.push_back(b.index());
      auto part = residue_group(fz, hz, vz, Az, a, e, T);
      for (int k = 0; k < g; ++k) sums[k] += part[k].trace();
      remaining -= e * d;
    }
  }
  return sums;
}

}  // namespace

IntegrationResult integrate_between(const Chart& chart, const CurvePoint& P1,
                                    const CurvePoint& P2, std::uint64_t p, long k,
                                    int multiplier) {
  if (multiplier < 1) throw InvalidInput("multiplier must be positive");
  JacobianFp Jp(chart, p);
  FpDivisor Dp = Jp.group().sub(Jp.reduce(P1), Jp.reduce(P2));
  IntegrationResult res;
  res.p = p;
  res.k = k;
  res.m = Jp.element_order(Dp);
  res.multiple = res.m * multiplier;

  Jacobian<Rational> JQ(chart.f, chart.g);
  auto qclass = [&](const CurvePoint& P) {
    auto img = chart.image(P);
    return img ? JQ.point(img->first, img->second) : JQ.zero();
  };
  Mumford<Rational> D = JQ.mul(res.multiple, JQ.sub(qclass(P1), qclass(P2)));
  if (D.is_zero()) {
    // [P1 - P2] is torsion; every integral vanishes.
    res.integrals.assign(static_cast<size_t>(chart.g), Padic::zero(p, k));
    return res;
  }
  long vm = valuation(res.multiple, p);
  // When p | m the division by m costs v_p(m) digits; they are added to
  // the target instead of switching primes.
  long T = k + vm + 2;
  long extra = 0;
  for (const auto* poly : {&D.u, &D.v}) {
    for (const auto& c : poly->coeffs()) {
      if (!c.is_zero()) extra = std::max(extra, -valuation(c, p));
    }
  }
  long N0 = T + 20 + 2 * extra;
  for (long N = N0; N <= 8 * N0; N *= 2) {
    std::vector<Padic> sums = kernel_integrals(chart, D, p, T, N);
    Padic m = Padic::from_integer(res.multiple, p, N);
    std::vector<Padic> I;
    bool enough = true;
    for (const auto& s : sums) {
      Padic x = (s / m).with_precision(T - vm);
      if (x.precision() < k) enough = false;
      I.push_back(x);
    }
    if (enough) {
      res.integrals = I;
      res.working_precision = N;
      return res;
    }
  }
  throw PrecisionError("integrals did not reach precision p^" + std::to_string(k));
}

// ---------------------------------------------------------- annihilators

std::vector<std::vector<Integer>> annihilator_space(const std::vector<Padic>& I, int g, int rank,
                                                    long k) {
  std::vector<std::vector<Integer>> out;
  if (rank == 0) {
    for (int i = 0; i < g; ++i) {
      std::vector<Integer> e(static_cast<size_t>(g), Integer(0));
      e[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  if (rank != 1) throw Unsupported("annihilators are computed for rank <= 1");
  if (static_cast<int>(I.size()) != g) throw InvalidInput("need one integral per differential");
  if (rank >= g) throw InvalidInput("rank must be below the genus");
  int j = -1;
  for (int i = 0; i < g; ++i) {
    if (I[i].is_zero()) continue;
    if (j < 0 || I[i].valuation() < I[j].valuation()) j = i;
  }
  if (j < 0) throw PrecisionError("all integrals vanish to working precision");
  std::uint64_t p = I[j].prime();
  Integer mod = ppow(p, k);
  for (int i = 0; i < g; ++i) {
    if (i == j) continue;
    Padic q = I[i] / I[j];
    Integer r = q.residue(k);
    std::vector<Integer> a(static_cast<size_t>(g), Integer(0));
    a[i] = 1;
    a[j] = (mod - r) % mod;
    out.push_back(a);
  }
  return out;
}

bool in_span(const std::vector<Integer>& a, const std::vector<std::vector<Integer>>& basis,
             std::uint64_t p, long k) {
  Integer mod = ppow(p, k);
  std::vector<Integer> r = a;
  for (const auto& b : basis) {
    int piv = -1;
    for (size_t i = 0; i < b.size(); ++i) {
      if (b[i] != 1) continue;
      bool clean = true;
      for (const auto& other : basis) {
        if (&other != &b && other[i] % mod != 0) clean = false;
      }
      if (clean) {
        piv = static_cast<int>(i);
        break;
      }
    }
    if (piv < 0) throw InvalidInput("basis is not in echelon form");
    Integer c = r[piv];
    for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
  }
  for (auto& x : r) {
    if (x % mod != 0) return false;
  }
  return true;
}

bool nonvanishing_at(const Chart& chart, const QPoly& h, const ResidueDisc& disc) {
  std::uint64_t p = disc.p;
  if (disc.kind == ResidueDisc::Kind::kInfinity) {
    // h_oc(0) = -(coefficient of x^(g-1) in h)
    return rational_mod(h.coeff(chart.g - 1, Rational(0)), p) != 0;
  }
  std::vector<Fp> c;
  for (const auto& a : h.coeffs()) c.push_back(Fp::from_rational(a, p));
  return !FpPoly(c).eval(disc.x).is_zero();
}

bool nonvanishing_at(const Chart& chart, const std::vector<Integer>& a, const ResidueDisc& disc) {
  std::vector<QPoly> hs = chart_differentials(chart);
  if (a.size() != hs.size()) throw InvalidInput("coefficient vector has the wrong length");
  QPoly h;
  for (size_t i = 0; i < hs.size(); ++i) h = h + hs[i] * Rational(a[i]);
  return nonvanishing_at(chart, h, disc);
}

int disc_point_bound(const Chart& chart, const std::vector<Integer>& a, const ResidueDisc& disc,
                     long k) {
  std::uint64_t p = disc.p;
  std::vector<Padic> ap;
  for (int K = 16;; K *= 2) {
    long N = k + K + 10;
    // a is known mod p^k only; combine the exact series so that the
    // imprecision stays attached to every coefficient.
    std::vector<QPoly> hs = chart_differentials(chart);
    if (a.size() != hs.size()) throw InvalidInput("coefficient vector has the wrong length");
    PadicSeries w;
    for (size_t i = 0; i < hs.size(); ++i) {
      Padic ai = Padic::from_integer(a[i], p, N).with_precision(k);
      PadicSeries wi = series_scale(omega_series(chart, disc, hs[i], K, N), ai);
      w = i == 0 ? wi : series_add(w, wi);
    }
    // lambda(t) = int_0^{p t} w(s) ds = sum_n w_{n-1} p^n t^n / n
    std::vector<Padic> c{Padic::zero(p, N)};
    for (int n = 1; n <= w.order; ++n) {
      c.push_back(w.c[n - 1] * Padic::from_integer(ppow(p, n), p, N + n) /
                  Padic::from_integer(n, p, N + n));
    }
    int bound = strassmann_bound(c, true);
    long M = c[bound].valuation();
    // Every omitted term has valuation >= n - log_p(n) with n > w.order.
    bool tail_ok = true;
    for (long n = w.order + 1; n < w.order + 400; ++n) {
      if (n - floor_log(p, n) <= M) tail_ok = false;
    }
    if (tail_ok) return bound;
    if (K > 512) throw PrecisionError("Strassmann corner not determined");
  }
}

}  // namespace tors3
