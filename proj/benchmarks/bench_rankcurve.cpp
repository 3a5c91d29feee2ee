/*
 * Copyright 2026 The rankcurve Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <random>

#include <benchmark/benchmark.h>

#include "rankcurve/codes.hpp"
#include "rankcurve/curves.hpp"
#include "rankcurve/theorem.hpp"

using namespace rankcurve;

namespace {

void BM_FieldMul(benchmark::State& state) {
  auto f = FieldCtx::create(2, 1, static_cast<uint32_t>(state.range(0)));
  std::mt19937_64 rng(1);
  std::vector<Felt> v;
  for (int i = 0; i < 1024; ++i) v.push_back(f->element(rng() % f->size()));
  Felt acc = f->one();
  for (auto _ : state) {
    for (const Felt& x : v) acc = acc * x + x;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_FieldMul)->Arg(8)->Arg(16)->Arg(20);

void BM_LinPolyRank(benchmark::State& state) {
  auto f = FieldCtx::create(3, 1, static_cast<uint32_t>(state.range(0)));
  std::mt19937_64 rng(2);
  std::vector<Felt> c;
  for (uint32_t i = 0; i < f->N(); ++i) c.push_back(f->element(rng() % f->size()));
  LinPoly L(f, c);
  for (auto _ : state) benchmark::DoNotOptimize(L.rank());
}
BENCHMARK(BM_LinPolyRank)->Arg(4)->Arg(8)->Arg(12);

void BM_SpectrumGabidulin(benchmark::State& state) {
  auto f = FieldCtx::create(2, 1, static_cast<uint32_t>(state.range(0)));
  auto code = make_gabidulin(f, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(code).d);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(projective_count(code)));
}
BENCHMARK(BM_SpectrumGabidulin)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_MooreScan(benchmark::State& state) {
  auto f = FieldCtx::create(2, 1, 4);
  auto code = make_gabidulin(f, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(is_moore_set(code).is_moore);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(moore_tuple_count(code)));
}
BENCHMARK(BM_MooreScan)->Unit(benchmark::kMillisecond);

InstanceSpec instance(uint32_t p) {
  InstanceSpec s;
  s.p = p;
  s.n = 6;
  s.t = 1;
  s.k = 4;
  s.delta = "g";
  s.G_coeffs = {{2, "1"}, {4, "1"}};
  return s;
}

void BM_CurveC(benchmark::State& state) {
  auto inst = CurveInstance::create(instance(static_cast<uint32_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(curve_C(inst).size());
}
BENCHMARK(BM_CurveC)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_InfinityBranches(benchmark::State& state) {
  auto inst = CurveInstance::create(instance(static_cast<uint32_t>(state.range(0))));
  MPoly H = curve_C_homogeneous(inst, curve_C(inst));
  for (auto _ : state) benchmark::DoNotOptimize(infinity_singularities(inst, H).size());
}
BENCHMARK(BM_InfinityBranches)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CriterionTable(benchmark::State& state) {
  auto qs = prime_powers_in(3, 13);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_table(GCase::TwoT, qs, 6, 30).rows.size());
}
BENCHMARK(BM_CriterionTable)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
