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

#ifndef TORS3_NTHEORY_HPP_
#define TORS3_NTHEORY_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tors3/rational.hpp"

namespace tors3 {

bool is_prime(const Integer& n);
bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);  // smallest prime > n

// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);

// Positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n);

// n = s * k^2 with s squarefree (sign kept in s).
std::pair<Integer, Integer> squarefree_part(const Integer& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

// Square root of a modulo an odd prime p, if a is a square.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

// Reduction of a rational into Z/m, requires gcd(den, m) = 1.
Integer rational_mod(const Rational& q, const Integer& m);
std::uint64_t rational_mod(const Rational& q, std::uint64_t p);

// Finds a/b = x mod m with |a|, b <= sqrt(m/2), if one exists.
std::optional<Rational> rational_reconstruct(const Integer& x,
                                             const Integer& m);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

}  // namespace tors3

#endif  // TORS3_NTHEORY_HPP_
