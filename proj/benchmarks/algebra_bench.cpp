// Copyright 2026 The tempograph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bench_inputs.hpp"
#include "tempograph/algebra.hpp"

namespace tempograph {
namespace {

void BM_BuildTable(benchmark::State& state) {
  const Scheme scheme = state.range(0) ? Scheme::six() : Scheme::four();
  for (auto _ : state) benchmark::DoNotOptimize(build_table(scheme));
}
BENCHMARK(BM_BuildTable)->Arg(0)->Arg(1);

void BM_TransitiveClosure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TemporalGraph g = bench::argmax_graph(bench::noisy_votes(n, Scheme::four(), 0.0, 3));
  const CompositionTable t = build_table(Scheme::four());
  for (auto _ : state) benchmark::DoNotOptimize(transitive_closure(g, t));
}
BENCHMARK(BM_TransitiveClosure)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

void BM_CountInconsistencies(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TemporalGraph g = bench::argmax_graph(bench::noisy_votes(n, Scheme::four(), 0.5, 5));
  const CompositionTable t = build_table(Scheme::four());
  for (auto _ : state) benchmark::DoNotOptimize(count_transitive_inconsistencies(g, t));
  state.SetComplexityN(n);
}
BENCHMARK(BM_CountInconsistencies)
    ->RangeMultiplier(2)
    ->Range(8, 64)
    ->Complexity(benchmark::oNCubed)
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace tempograph
