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

#include <random>

#include <benchmark/benchmark.h>

#include "tors3/curves.hpp"
#include "tors3/jacobian.hpp"
#include "tors3/padic.hpp"
#include "tors3/sieve.hpp"
#include "tors3/verdicts.hpp"

namespace tors3 {
namespace {

const std::vector<DegreeThreeMap>& corpus() {
  static const auto c = load_corpus(default_corpus_path());
  return c;
}

HyperellipticModel curve(const char* id) { return printed_model(find_map(corpus(), id)); }

void BM_CantorAdd(benchmark::State& state) {
  JacobianFp J(make_chart(curve("C2(20)")), 37);
  std::mt19937_64 rng(1);
  FpDivisor a = J.random_element(rng), b = J.random_element(rng);
  for (auto _ : state) {
    a = J.group().add(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_CantorAdd);

void BM_LPolynomial(benchmark::State& state) {
  const auto h = curve("C2(20)");
  const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(l_polynomial(h, p));
}
BENCHMARK(BM_LPolynomial)->Arg(3)->Arg(11)->Arg(37)->Unit(benchmark::kMillisecond);

void BM_GroupStructure(benchmark::State& state) {
  const auto h = curve("C2(16)");
  for (auto _ : state) benchmark::DoNotOptimize(group_structure(h, 11));
}
BENCHMARK(BM_GroupStructure)->Unit(benchmark::kMillisecond);

void BM_ColemanIntegrals(benchmark::State& state) {
  const Chart chart = make_chart(curve("C2(16)"));
  const long k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_between(chart, CurvePoint::affine(0, 0), CurvePoint::infinity(1), 5, k));
  }
}
BENCHMARK(BM_ColemanIntegrals)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SieveC2_16(benchmark::State& state) {
  SieveInstance inst;
  inst.curve = curve("C2(16)");
  inst.S = {5, 11};
  inst.N = 22;
  inst.gamma = {{RationalClass::difference(CurvePoint::affine(0, 0), CurvePoint::infinity(1)), 0}};
  inst.known_points = {CurvePoint::affine(0, 0), CurvePoint::infinity(1), CurvePoint::infinity(-1)};
  for (auto _ : state) benchmark::DoNotOptimize(run_sieve(inst));
}
BENCHMARK(BM_SieveC2_16)->Unit(benchmark::kMillisecond);

void BM_ScanFamily(benchmark::State& state) {
  const auto& m = find_map(corpus(), "X1(16)/f4");
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_family(m, 20, threads));
}
BENCHMARK(BM_ScanFamily)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExceptionalTorsionOrder(benchmark::State& state) {
  const TateCurve E = exceptional_tate_curve();
  for (auto _ : state) benchmark::DoNotOptimize(torsion_order_at_origin(E, 16));
}
BENCHMARK(BM_ExceptionalTorsionOrder)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tors3

// libbenchmark_main ships as LTO bytecode from a different compiler
// release, so the entry point is defined here.
BENCHMARK_MAIN();
