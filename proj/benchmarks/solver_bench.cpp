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
#include "tempograph/solver.hpp"

namespace tempograph {
namespace {

SolveProblem problem(int n, Scheme scheme, double noise) {
  const auto pairs = all_pairs(bench::events(n));
  return {pairs, bench::noisy_votes(n, scheme, noise, 7 + n), build_table(scheme), std::nullopt};
}

// Args: event count, noise in percent.
void BM_SolveFour(benchmark::State& state) {
  const SolveProblem p = problem(static_cast<int>(state.range(0)), Scheme::four(),
                                 static_cast<double>(state.range(1)) / 100.0);
  std::int64_t nodes = 0;
  for (auto _ : state) {
    SolveResult r = solve(p);
    nodes = r.nodes_explored;
    benchmark::DoNotOptimize(r);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.counters["pairs"] = static_cast<double>(p.pairs.size());
}
BENCHMARK(BM_SolveFour)
    ->ArgsProduct({{6, 12, 18}, {20, 50}})
    ->Unit(benchmark::kMillisecond);

void BM_SolveSix(benchmark::State& state) {
  const SolveProblem p = problem(static_cast<int>(state.range(0)), Scheme::six(),
                                 static_cast<double>(state.range(1)) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p));
}
BENCHMARK(BM_SolveSix)->ArgsProduct({{6, 12, 18}, {20, 50}})->Unit(benchmark::kMillisecond);

void BM_GreedyRepair(benchmark::State& state) {
  const SolveProblem p = problem(static_cast<int>(state.range(0)), Scheme::four(), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_repair(p));
}
BENCHMARK(BM_GreedyRepair)->Arg(18)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tempograph
