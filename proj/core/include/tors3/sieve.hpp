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

#ifndef TORS3_SIEVE_HPP_
#define TORS3_SIEVE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tors3/curves.hpp"
#include "tors3/finite_field.hpp"
#include "tors3/jacobian.hpp"

namespace tors3 {

// The class of sum n_i [P_i] in J(Q); the degrees must sum to 0.
struct RationalClass {
  std::vector<std::pair<Integer, CurvePoint>> terms;

  // multiplier * [plus - minus].
  static RationalClass difference(const CurvePoint& plus, const CurvePoint& minus,
                                  const Integer& multiplier = 1) {
    return {{{multiplier, plus}, {-multiplier, minus}}};
  }
  std::string to_string() const;
};

FpDivisor reduce_class(const JacobianFp& J, const RationalClass& c);

// A generator of Gamma. order == 0 marks a free generator; otherwise it is
// the exact order of a torsion class.
struct GammaGenerator {
  RationalClass cls;
  Integer order = 0;
};

struct SieveInstance {
  HyperellipticModel curve;
  std::vector<std::uint64_t> S;
  Integer N = 1;
  Integer d = 1;
  std::vector<GammaGenerator> gamma;
  std::vector<CurvePoint> known_points;
  CurvePoint base_point = CurvePoint::infinity(1);
};

// A point of C(F_p) in chart coordinates; nullopt is O.
using ChartPointFp = std::optional<std::pair<Fp, Fp>>;

// The point on the input model, "(x,y)" or "(1:y:0)", reduced mod p.
std::string model_point_string(const Chart& chart, const ChartPointFp& P, std::uint64_t p);

struct SievePrime {
  std::uint64_t p = 0;
  std::vector<Integer> invariants;       // J(F_p)
  std::vector<Integer> quotient_moduli;  // gcd(n_i, N): J(F_p)/N J(F_p)
  std::vector<std::vector<Integer>> generator_images;
  std::vector<ChartPointFp> points;      // O first, then affine points
  std::vector<std::vector<Integer>> images;  // d * mu(P) in the quotient
  // With a single generator x: the least n with d * mu(P) = n x, if any.
  std::vector<std::optional<Integer>> multiples;
  std::vector<bool> survives;
};

struct SieveResult {
  Integer N, d;
  std::vector<Integer> tuple_moduli;  // Gamma / N Gamma is a quotient of prod Z/m_i
  std::vector<SievePrime> primes;     // in the order of S
  std::vector<std::vector<Integer>> survivors;
  // Every known point reduces to a surviving point at every prime.
  bool sound = true;
  std::vector<std::string> unsound;

  const SievePrime& at(std::uint64_t p) const;
  std::vector<ChartPointFp> surviving_points(std::uint64_t p) const;
};

SieveResult run_sieve(const SieveInstance& inst);

// Order of the image of D in J(F_p) / N J(F_p).
Integer quotient_order(const JacobianFp& J, const FpDivisor& D, const Integer& N);

// A d with d J(Q) inside Gamma + N J(Q), for Gamma generated by one free
// class x whose image in prod_S J(F_p)/N J(F_p) has order `order`, and
// |J(Q)_tors| dividing torsion_bound. J(Q)/(Gamma + N J(Q)) has order
// dividing (N / order) * |J(Q)_tors / N|, which gives
// d = gcd(N, (N / order) * torsion_bound).
Integer compute_d(const Integer& N, const Integer& torsion_bound, const Integer& order);

enum class SaturationStatus { kSaturated, kInconclusive };

struct SaturationResult {
  SaturationStatus status = SaturationStatus::kInconclusive;
  Integer torsion_bound;
  std::vector<Integer> aux_image;  // image in J(F_aux) / ell J(F_aux)
  std::string reason;
};

// Whether the class is not in ell * J(Q): J(Q) has no ell-torsion (ell does
// not divide torsion_bound) and the class is nonzero in J(F_aux)/ell.
SaturationResult saturation_check(const HyperellipticModel& h, const RationalClass& gen,
                                  std::uint64_t ell, std::uint64_t aux_prime,
                                  const Integer& torsion_bound);

}  // namespace tors3

#endif  // TORS3_SIEVE_HPP_
