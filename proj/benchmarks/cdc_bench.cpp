// Copyright 2026 The cdc-pda Authors
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

#include <benchmark/benchmark.h>

#include "cdc/analysis.hpp"
#include "cdc/builders.hpp"
#include "cdc/compile.hpp"
#include "cdc/sim.hpp"

namespace {

void BM_LStar(benchmark::State& state) {
  const auto K = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdc::l_star(K, K / 2, K / 3));
}
BENCHMARK(BM_LStar)->Arg(16)->Arg(60)->Arg(250)->Arg(1000);

void BM_ScanScheme1(benchmark::State& state) {
  const auto k_max = static_cast<std::uint64_t>(state.range(0));
  cdc::ScanOptions options;
  options.fast = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(cdc::scan_h(k_max, cdc::SchemeId::k1, cdc::Rational(2), options));
}
BENCHMARK(BM_ScanScheme1)->Args({30, 0})->Args({60, 0})->Args({60, 1})->Unit(benchmark::kMillisecond);

void BM_ValidateSubset(benchmark::State& state) {
  const cdc::Pda p = cdc::build_subset(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(0) / 2));
  for (auto _ : state) benchmark::DoNotOptimize(cdc::validate(p));
  state.counters["cells"] = static_cast<double>(p.num_files() * p.num_nodes());
}
BENCHMARK(BM_ValidateSubset)->Arg(8)->Arg(12)->Arg(16);

void BM_Compile(benchmark::State& state) {
  const cdc::Pda p = cdc::build_subset(12, 4);
  const auto assignment = cdc::window_assignment(12, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cdc::compile(p, assignment));
}
BENCHMARK(BM_Compile)->Arg(1)->Arg(4)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  const auto scheme = cdc::compile(cdc::build_subset(10, 3), cdc::window_assignment(10, static_cast<std::size_t>(state.range(0))));
  const auto data = cdc::gen_dataset(scheme.num_files(), 256, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cdc::simulate(scheme, data));
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
