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

#ifndef TORS3_BIPOLY_HPP_
#define TORS3_BIPOLY_HPP_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Polynomial in two variables (a, b) over Q, stored sparsely by exponent
// pair (i, j) for a^i b^j. Variable names are kept by the owner.
class BiPoly {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  BiPoly() = default;
  explicit BiPoly(Terms terms);
  static BiPoly constant(const Rational& c);
  static BiPoly var_a();
  static BiPoly var_b();
  static BiPoly from_coeffs_in_a(const std::vector<QPoly>& c);
  static BiPoly from_coeffs_in_b(const std::vector<QPoly>& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree_a() const;
  int degree_b() const;
  Rational coeff(int i, int j) const;

  // Substitute a value for one variable.
  QPoly eval_a(const Rational& a) const;
  QPoly eval_b(const Rational& b) const;
  Rational eval(const Rational& a, const Rational& b) const;

  // Entry i is the coefficient of a^i (resp. b^i) as a polynomial in the
  // other variable.
  std::vector<QPoly> coeffs_in_a() const;
  std::vector<QPoly> coeffs_in_b() const;

  BiPoly swapped() const;
  BiPoly pow(int e) const;

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly x, const BiPoly& y) { return x += y; }
  friend BiPoly operator-(BiPoly x, const BiPoly& y) { return x -= y; }
  friend BiPoly operator*(const BiPoly& x, const BiPoly& y);
  friend BiPoly operator*(const BiPoly& x, const Rational& s);
  friend bool operator==(const BiPoly& x, const BiPoly& y) {
    return x.terms_ == y.terms_;
  }

  std::string to_string(const std::string& a, const std::string& b) const;

 private:
  void trim();
  Terms terms_;
};

// Parses sums of products of rational constants, the two named variables,
// parentheses and non-negative integer powers, e.g. "(x^2 - 1)*t^2 - 4*x^2*t".
BiPoly parse_bipoly(std::string_view text, const std::string& a,
                    const std::string& b);
QPoly parse_poly(std::string_view text, const std::string& var);

// Discriminant with respect to a, as a polynomial in b. Computed by
// evaluation at enough values of b and interpolation.
QPoly discriminant_in_a(const BiPoly& f);

// Pseudo-remainder of `num` by `den` as polynomials in a over Q[b].
BiPoly pseudo_remainder_in_a(const BiPoly& num, const BiPoly& den);

// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
QPoly interpolate(const std::vector<Rational>& xs,
                  const std::vector<Rational>& ys);

}  // namespace tors3

#endif  // TORS3_BIPOLY_HPP_
