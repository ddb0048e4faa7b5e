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

#ifndef TORS3_CERTIFY_HPP_
#define TORS3_CERTIFY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tors3/curves.hpp"
#include "tors3/jacobian.hpp"
#include "tors3/padic.hpp"
#include "tors3/sieve.hpp"

namespace tors3 {

inline constexpr const char* kVerifierVersion = "tors3-verify/1";

// How to certify C(Q) for one curve. The rank bound is an input; only
// rank >= 1 (an explicit class of infinite order) is checked here.
struct CertifyConfig {
  std::string curve;
  int rank_bound = 1;
  std::string rank_source;
  int search_height = 64;
  int torsion_primes = 8;

  std::uint64_t chabauty_prime = 0;
  long precision = 5;
  // Rank 1: the integrals of [P1 - P2] cut out the annihilator.
  CurvePoint P1 = CurvePoint::affine(0, 0);
  CurvePoint P2 = CurvePoint::infinity(1);

  // Gamma. Rank 1: one free class. Rank 0: torsion classes (order 0
  // here means "compute it").
  std::vector<GammaGenerator> gamma;
  std::vector<std::uint64_t> S;
  Integer N = 1;
  CurvePoint base_point = CurvePoint::infinity(1);
  // ell -> auxiliary prime, for saturation of Gamma at the primes of N.
  std::map<std::uint64_t, std::uint64_t> saturation;
};

// Fields: curve, rank_bound {value, source}, search_height, torsion_primes,
// chabauty_prime, precision, P1, P2, base_point, gamma [{class, order}],
// S, N (decimal string) and saturation {"ell": aux}. Points use the
// CurvePoint text form; a class is [{"n": "1", "point": "(0,0)"}, ...].
CertifyConfig certify_config_from_json(const nlohmann::json& j);

nlohmann::json class_json(const RationalClass& c);
RationalClass class_from(const nlohmann::json& a);

struct ClassOrderReport {
  OrderStatus status = OrderStatus::kInconclusive;
  std::vector<std::pair<std::uint64_t, Integer>> reduction_orders;
  std::string reason;
};

// Infinite order via reductions: torsion injects into J(F_p) for odd good
// p, so an order not dividing torsion_bound, or two different orders,
// prove it.
ClassOrderReport class_order_report(const HyperellipticModel& h, const RationalClass& cls,
                                    const std::vector<std::uint64_t>& primes,
                                    const Integer& torsion_bound);

// Exact order of a class in J(Q), if it divides `bound`; nullopt otherwise.
std::optional<Integer> exact_torsion_order(const HyperellipticModel& h, const RationalClass& cls,
                                           const Integer& bound);

// Size of the subgroup of J(F_p) generated by the reductions.
Integer subgroup_size(const JacobianFp& J, const std::vector<FpDivisor>& gens);

struct DiscRecord {
  std::string disc;         // chart coordinates
  std::string model_point;  // the F_p point on the curve's own model
  std::vector<CurvePoint> known;
  std::string status;       // "bounded", "eliminated" or "open"
  std::optional<int> vector_index;
  std::optional<int> bound;
};

struct RationalPointCertificate {
  std::string curve;
  std::string model;  // polynomial in t
  std::vector<CurvePoint> claimed_points;
  int rank_bound = 1;
  std::string rank_source;
  int search_height = 0;
  Integer torsion_bound;
  std::vector<std::uint64_t> torsion_primes;

  // Rank >= 1 witness and the Chabauty data at one prime.
  std::optional<RationalClass> infinite_order_class;
  std::vector<std::pair<std::uint64_t, Integer>> reduction_orders;
  std::uint64_t chabauty_prime = 0;
  long precision = 0;
  std::optional<std::pair<CurvePoint, CurvePoint>> integration_pair;
  Integer integration_multiple;
  std::vector<Padic> integrals;
  std::vector<std::vector<Integer>> annihilators;
  std::vector<DiscRecord> discs;

  // The sieve.
  std::vector<std::uint64_t> S;
  Integer N, d;
  std::string d_reason;
  std::map<std::uint64_t, std::uint64_t> saturation;
  std::vector<GammaGenerator> gamma;
  CurvePoint base_point;
  std::vector<Integer> tuple_moduli;
  std::vector<SievePrime> primes;
  std::vector<std::vector<Integer>> survivors;

  bool certified = false;
  std::vector<std::string> failures;
  std::string verifier_version = kVerifierVersion;

  nlohmann::json to_json() const;
  static RationalPointCertificate from_json(const nlohmann::json& j);
};

RationalPointCertificate certify_rational_points(const HyperellipticModel& h,
                                                 const CertifyConfig& config);

// Independent re-check of a certificate: rebuilds every group, dlog,
// integral and bound (Jacobian bases from a different seed, integrals from
// twice the recorded kernel multiple) and compares. Returns the list of
// discrepancies; empty means accepted.
std::vector<std::string> verify_certificate(const RationalPointCertificate& cert);

}  // namespace tors3

#endif  // TORS3_CERTIFY_HPP_
