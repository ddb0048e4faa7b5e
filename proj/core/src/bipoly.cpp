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

#include "tors3/bipoly.hpp"

#include <cctype>
#include <sstream>

#include "tors3/errors.hpp"

namespace tors3 {

BiPoly::BiPoly(Terms terms) : terms_(std::move(terms)) { trim(); }

void BiPoly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

BiPoly BiPoly::constant(const Rational& c) { return BiPoly(Terms{{{0, 0}, c}}); }
BiPoly BiPoly::var_a() { return BiPoly(Terms{{{1, 0}, Rational(1)}}); }
BiPoly BiPoly::var_b() { return BiPoly(Terms{{{0, 1}, Rational(1)}}); }

BiPoly BiPoly::from_coeffs_in_a(const std::vector<QPoly>& c) {
  Terms t;
  for (size_t i = 0; i < c.size(); ++i) {
    for (int j = 0; j <= c[i].degree(); ++j) {
      t[{static_cast<int>(i), j}] = c[i].coeffs()[j];
    }
  }
  return BiPoly(std::move(t));
}

BiPoly BiPoly::from_coeffs_in_b(const std::vector<QPoly>& c) {
  return from_coeffs_in_a(c).swapped();
}

int BiPoly::degree_a() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BiPoly::degree_b() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

Rational BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational() : it->second;
}

QPoly BiPoly::eval_a(const Rational& a) const {
  std::vector<Rational> c(static_cast<size_t>(std::max(degree_b(), 0)) + 1);
  for (const auto& [e, v] : terms_) c[e.second] += v * a.pow(e.first);
  return QPoly(std::move(c));
}

QPoly BiPoly::eval_b(const Rational& b) const { return swapped().eval_a(b); }

Rational BiPoly::eval(const Rational& a, const Rational& b) const {
  Rational s;
  for (const auto& [e, v] : terms_) s += v * a.pow(e.first) * b.pow(e.second);
  return s;
}

std::vector<QPoly> BiPoly::coeffs_in_a() const {
  int da = degree_a();
  std::vector<std::vector<Rational>> c(static_cast<size_t>(da + 1));
  for (const auto& [e, v] : terms_) {
    auto& row = c[e.first];
    if (row.size() <= static_cast<size_t>(e.second)) row.resize(e.second + 1);
    row[e.second] = v;
  }
  std::vector<QPoly> out;
  for (auto& row : c) out.emplace_back(std::move(row));
  return out;
}

std::vector<QPoly> BiPoly::coeffs_in_b() const { return swapped().coeffs_in_a(); }

BiPoly BiPoly::swapped() const {
  Terms t;
  for (const auto& [e, v] : terms_) t[{e.second, e.first}] = v;
  return BiPoly(std::move(t));
}

BiPoly BiPoly::pow(int e) const {
  if (e < 0) throw InvalidInput("negative power of a polynomial");
  BiPoly r = constant(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

BiPoly BiPoly::operator-() const {
  Terms t = terms_;
  for (auto& [e, v] : t) v = -v;
  return BiPoly(std::move(t));
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [e, v] : o.terms_) terms_[e] += v;
  trim();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [e, v] : o.terms_) terms_[e] -= v;
  trim();
  return *this;
}

BiPoly operator*(const BiPoly& x, const BiPoly& y) {
  BiPoly::Terms t;
  for (const auto& [e1, v1] : x.terms_) {
    for (const auto& [e2, v2] : y.terms_) {
      t[{e1.first + e2.first, e1.second + e2.second}] += v1 * v2;
    }
  }
  return BiPoly(std::move(t));
}

BiPoly operator*(const BiPoly& x, const Rational& s) {
  BiPoly::Terms t = x.terms_;
  for (auto& [e, v] : t) v *= s;
  return BiPoly(std::move(t));
}

std::string BiPoly::to_string(const std::string& a, const std::string& b) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, v] = *it;
    Rational c = v;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    c = c.abs();
    bool mono = e.first > 0 || e.second > 0;
    bool wrote = false;
    if (!mono || !c.is_one()) {
      os << c;
      wrote = true;
    }
    auto put = [&](const std::string& name, int k) {
      if (k == 0) return;
      if (wrote) os << "*";
      os << name;
      if (k > 1) os << "^" << k;
      wrote = true;
    };
    put(a, e.first);
    put(b, e.second);
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::string a, std::string b)
      : s_(s), a_(std::move(a)), b_(std::move(b)) {}

  BiPoly parse() {
    BiPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("polynomial parse error at " + std::to_string(pos_) +
                     ": " + why + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  BiPoly expr() {
    BiPoly r = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        r += term();
      } else if (peek('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }
  BiPoly term() {
    BiPoly r = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        r = r * unary();
      } else if (peek('/')) {
        ++pos_;
        BiPoly d = unary();
        if (d.degree_a() > 0 || d.degree_b() > 0 || d.is_zero()) {
          fail("division by a non-constant or zero");
        }
        r = r * d.coeff(0, 0).inverse();
      } else {
        return r;
      }
    }
  }
  BiPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }
  BiPoly power() {
    BiPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(std::stoi(std::string(s_.substr(start, pos_ - start))));
    }
    return base;
  }
  BiPoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer n(std::string(s_.substr(start, pos_ - start)));
      return BiPoly::constant(Rational(n));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == a_) return BiPoly::var_a();
      if (name == b_) return BiPoly::var_b();
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::string a_, b_;
  size_t pos_ = 0;
};

}  // namespace

BiPoly parse_bipoly(std::string_view text, const std::string& a,
                    const std::string& b) {
  return Parser(text, a, b).parse();
}

QPoly parse_poly(std::string_view text, const std::string& var) {
  BiPoly p = Parser(text, var, "\x01").parse();
  if (p.degree_b() > 0) throw ParseError("unexpected second variable");
  return p.eval_b(Rational(0));
}

QPoly interpolate(const std::vector<Rational>& xs,
                  const std::vector<Rational>& ys) {
  size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  }
  QPoly result = QPoly::constant(dd[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    result = result * QPoly({-xs[k], Rational(1)}) + QPoly::constant(dd[k]);
  }
  return result;
}

QPoly discriminant_in_a(const BiPoly& f) {
  int n = f.degree_a();
  if (n < 1) throw InvalidInput("discriminant in a variable of degree < 1");
  std::vector<QPoly> ca = f.coeffs_in_a();
  const QPoly& lead = ca.back();
  int bound = (2 * n - 2) * std::max(f.degree_b(), 0);
  std::vector<Rational> xs, ys;
  for (long k = 0; static_cast<int>(xs.size()) <= bound; ++k) {
    Rational b = (k % 2 == 0) ? Rational(k / 2) : Rational(-(k + 1) / 2);
    if (lead.eval(b).is_zero()) continue;
    xs.push_back(b);
    ys.push_back(discriminant(f.eval_b(b)));
  }
  return interpolate(xs, ys);
}

BiPoly pseudo_remainder_in_a(const BiPoly& num, const BiPoly& den) {
  std::vector<QPoly> r = num.coeffs_in_a();
  std::vector<QPoly> d = den.coeffs_in_a();
  if (d.empty()) throw InvalidInput("pseudo-division by zero");
  int dd = static_cast<int>(d.size()) - 1;
  const QPoly& lead = d.back();
  auto deg = [&]() {
    int k = static_cast<int>(r.size()) - 1;
    while (k >= 0 && r[k].is_zero()) --k;
    return k;
  };
  for (int k = deg(); k >= dd; k = deg()) {
    QPoly top = r[k];
    for (auto& c : r) c = c * lead;
    for (int j = 0; j <= dd; ++j) r[k - dd + j] = r[k - dd + j] - top * d[j];
    r.resize(static_cast<size_t>(k));
  }
  return BiPoly::from_coeffs_in_a(r);
}

}  // namespace tors3
