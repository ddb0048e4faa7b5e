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

#ifndef TORS3_ALGEBRA_HPP_
#define TORS3_ALGEBRA_HPP_

#include <utility>
#include <vector>

#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

struct SquarefreeDecomposition {
  QPoly s;  // squarefree, same square class as d
  QPoly c;  // d = s * c^2
};

SquarefreeDecomposition squarefree_decompose(const QPoly& d);

// Yun's factorization of the monic part: monic(d) = prod a_i^i.
std::vector<QPoly> yun_factors(const QPoly& d);

bool is_squarefree(const QPoly& d);
bool is_rational_square(const Rational& q);
// The square root of a rational square.
Rational rational_sqrt(const Rational& q);

// All rational roots with multiplicity, ascending.
std::vector<Rational> rational_roots(const QPoly& f);
std::vector<Rational> cubic_rational_roots(const QPoly& h);

// Integer polynomial with coprime coefficients proportional to f.
std::vector<Integer> primitive_integer_coeffs(const QPoly& f);

}  // namespace tors3

#endif  // TORS3_ALGEBRA_HPP_
