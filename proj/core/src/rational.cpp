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

#include "tors3/rational.hpp"

#include "tors3/errors.hpp"

namespace tors3 {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ParseError("empty rational");
  s = s.substr(b, e - b + 1);
  size_t slash = s.find('/');
  Integer num, den = 1;
  auto parse_int = [](const std::string& t, Integer& out) {
    std::string u = t;
    if (!u.empty() && u[0] == '+') u = u.substr(1);
    if (u.empty() || out.set_str(u, 10) != 0) {
      throw ParseError("bad integer '" + t + "'");
    }
  };
  if (slash == std::string::npos) {
    parse_int(s, num);
  } else {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
  }
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw InvalidInput("inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidInput("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(n, d);
}

Integer Rational::height() const {
  Integer n = ::abs(q_.get_num());
  Integer d = q_.get_den();
  return n > d ? n : d;
}

long valuation(const Integer& n, unsigned long p) {
  if (n == 0) throw InvalidInput("valuation of zero");
  Integer m = n;
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rational& q, unsigned long p) {
  if (q.is_zero()) throw InvalidInput("valuation of zero");
  return valuation(q.numerator(), p) - valuation(q.denominator(), p);
}

}  // namespace tors3
