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

#ifndef TORS3_CURVES_HPP_
#define TORS3_CURVES_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tors3/bipoly.hpp"
#include "tors3/poly.hpp"
#include "tors3/rational.hpp"

namespace tors3 {

// Affine plane model F(x, y) = 0.
struct PlaneModel {
  std::string label;
  BiPoly F;  // variables (x, y)
};

struct RationalFunction {
  BiPoly num;  // variables (x, y)
  BiPoly den;
};

// A degree-3 function g on a plane model together with its minimal
// polynomial f(v, t), v being the curve variable (x or y).
struct DegreeThreeMap {
  std::string id;
  PlaneModel parent;
  RationalFunction g;
  BiPoly f;                    // variables (v, t)
  std::string curve_variable;  // "x" or "y"

  // Published resolvent curve, in the coordinate s = t + printed_shift.
  std::optional<QPoly> printed_curve;
  Rational printed_shift;
  std::string curve_id;
  std::vector<Rational> cusp_list;

  // The variable of the plane model that is not the curve variable.
  std::string other_variable() const { return curve_variable == "x" ? "y" : "x"; }
  int curve_degree() const { return f.degree_a(); }
};

// y^2 = d(t) with squarefree d.
class HyperellipticModel {
 public:
  HyperellipticModel() = default;
  explicit HyperellipticModel(QPoly d, std::string label = "");

  const QPoly& d() const { return d_; }
  int genus() const { return genus_; }
  int infinite_points() const { return infinite_points_; }
  const std::string& label() const { return label_; }

  // Square cofactor and raw discriminant when built from a map.
  std::optional<QPoly> raw_discriminant;
  std::optional<QPoly> square_cofactor;
  std::string provenance;

 private:
  QPoly d_;
  int genus_ = 0;
  int infinite_points_ = 0;
  std::string label_;
};

// Rational point of a hyperelliptic model. Points at infinity of
// even-degree models carry sign +1 (y/t^(g+1) -> +sqrt(lc)) or -1; the
// single point at infinity of an odd-degree model has sign 0.
struct CurvePoint {
  bool at_infinity = false;
  int inf_sign = 0;
  Rational x, y;

  static CurvePoint affine(const Rational& x, const Rational& y) {
    return {false, 0, x, y};
  }
  static CurvePoint infinity(int sign) { return {true, sign, {}, {}}; }

  CurvePoint conjugate() const {
    if (at_infinity) return infinity(-inf_sign);
    return affine(x, -y);
  }
  std::string to_string() const;
  static CurvePoint parse(const std::string& text);
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    return a.at_infinity == b.at_infinity && a.inf_sign == b.inf_sign &&
           a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const CurvePoint& a, const CurvePoint& b);
};

std::ostream& operator<<(std::ostream& os, const CurvePoint& p);

bool on_curve(const HyperellipticModel& h, const CurvePoint& P);

bool validate_map(const DegreeThreeMap& m);

// The cubic whose root field is K_t; t0 = nullopt stands for t = infinity.
// Throws DegenerateFiber if the degree drops or the discriminant vanishes.
QPoly fiber_cubic(const DegreeThreeMap& m, const std::optional<Rational>& t0);

// Fiber polynomial family G(w, t) whose roots in w give the fiber over t;
// f itself for degree-3 maps, F(w, v(t)) for degree-1 maps.
BiPoly fiber_family(const DegreeThreeMap& m);

HyperellipticModel discriminant_curve(const DegreeThreeMap& m);

// K(t) with raw_discriminant(t) = K(t) * printed(t + shift); K is checked
// to be a square in Q[t]. Throws InvalidMap if there is no such identity.
QPoly printed_square_factor(const DegreeThreeMap& m);

// The resolvent in the published coordinate s = t + shift (squarefree).
HyperellipticModel printed_model(const DegreeThreeMap& m);

int genus(const HyperellipticModel& h);
int count_infinite_points(const HyperellipticModel& h);

// All points with t = a/b, |a|, b <= height_bound, plus rational points
// at infinity; sorted.
std::vector<CurvePoint> rational_point_search(const HyperellipticModel& h,
                                              long height_bound);

// The model under t -> 1/t, y -> y / t^(g+1).
HyperellipticModel inverted_model(const HyperellipticModel& h);

// Whether `square` is c^2 * u^2 for a rational c and polynomial u.
bool is_square_polynomial(const QPoly& square);

// Corpus files: INI-like [map ID] records with key = value fields
// parent_label, plane_model, g_numerator, g_denominator, f, curve_variable
// and optionally curve_id, printed_curve, printed_shift, cusps (comma
// separated t-values). Lines starting with '#' are comments.
std::vector<DegreeThreeMap> parse_corpus(const std::string& text);
std::vector<DegreeThreeMap> load_corpus(const std::string& path);
std::string default_corpus_path();

// Looks a map up by record id ("X1(16)/f2") or curve id ("C2(16)").
const DegreeThreeMap& find_map(const std::vector<DegreeThreeMap>& corpus,
                               const std::string& id);

}  // namespace tors3

#endif  // TORS3_CURVES_HPP_
