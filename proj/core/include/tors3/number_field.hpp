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

#ifndef TORS3_NUMBER_FIELD_HPP_
#define TORS3_NUMBER_FIELD_HPP_

#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Q[x]/(h) for monic irreducible h; the degree-3 case is the one used.
struct NumberField {
  QPoly h;
  int degree() const { return h.degree(); }
};

// Builds Q[x]/(monic(h)); cubics are checked for irreducibility.
std::shared_ptr<const NumberField> make_number_field(const QPoly& h);

class NumberFieldElement {
 public:
  NumberFieldElement() = default;
  NumberFieldElement(std::shared_ptr<const NumberField> k, const QPoly& rep);
  static NumberFieldElement generator(std::shared_ptr<const NumberField> k);

  const std::shared_ptr<const NumberField>& field() const { return k_; }
  const QPoly& rep() const { return rep_; }

  NumberFieldElement zero() const { return {k_, QPoly()}; }
  NumberFieldElement one() const { return {k_, QPoly::constant(1)}; }
  NumberFieldElement from_integer(const Integer& n) const {
    return {k_, QPoly::constant(Rational(n))};
  }
  NumberFieldElement from_rational(const Rational& q) const {
    return {k_, QPoly::constant(q)};
  }
  bool is_zero() const { return rep_.is_zero(); }
  NumberFieldElement inverse() const;

  NumberFieldElement operator-() const { return {k_, -rep_}; }
  NumberFieldElement& operator+=(const NumberFieldElement& o);
  NumberFieldElement& operator-=(const NumberFieldElement& o);
  NumberFieldElement& operator*=(const NumberFieldElement& o);
  NumberFieldElement& operator/=(const NumberFieldElement& o) {
    return *this *= o.inverse();
  }
  friend NumberFieldElement operator+(NumberFieldElement a,
                                      const NumberFieldElement& b) {
    return a += b;
  }
  friend NumberFieldElement operator-(NumberFieldElement a,
                                      const NumberFieldElement& b) {
    return a -= b;
  }
  friend NumberFieldElement operator*(NumberFieldElement a,
                                      const NumberFieldElement& b) {
    return a *= b;
  }
  friend NumberFieldElement operator/(NumberFieldElement a,
                                      const NumberFieldElement& b) {
    return a /= b;
  }
  friend bool operator==(const NumberFieldElement& a,
                         const NumberFieldElement& b) {
    return a.rep_ == b.rep_;
  }
  friend std::ostream& operator<<(std::ostream& os,
                                  const NumberFieldElement& a) {
    return os << a.rep_.to_string("a");
  }

 private:
  std::shared_ptr<const NumberField> k_;
  QPoly rep_;
};

// Decides whether Q[x]/(h1) and Q[x]/(h2) are isomorphic for irreducible
// cubics. Positive answers come with an explicit root of h2 in
// Q[x]/(h1), negative ones with a discriminant class or a prime whose
// splitting differs.
bool nf_is_isomorphic(const QPoly& h1, const QPoly& h2);

// A root of h2 in Q[x]/(h1), as a polynomial in x, if one was found.
std::optional<QPoly> nf_find_embedding(const QPoly& h1, const QPoly& h2);

}  // namespace tors3

#endif  // TORS3_NUMBER_FIELD_HPP_
