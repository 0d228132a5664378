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

#include <string>

#include "bench_inputs.hpp"
#include "tempograph/graph_parser.hpp"

namespace tempograph {
namespace {

void BM_ParseGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::string dot = to_dot(bench::argmax_graph(bench::noisy_votes(n, Scheme::six(), 0.3, 9)));
  for (auto _ : state) benchmark::DoNotOptimize(parse_graph(dot, Scheme::six()));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * dot.size()));
}
BENCHMARK(BM_ParseGraph)->Arg(10)->Arg(18)->Arg(45);

// A chatty reply: reasoning text, then a fenced block.
void BM_ExtractAndParse(benchmark::State& state) {
  const std::string dot = to_dot(bench::argmax_graph(bench::noisy_votes(18, Scheme::four(), 0.3, 11)));
  std::string raw = "Timeline:\n";
  for (int i = 0; i < 40; ++i) raw += "The talks began before the vote and after the strike.\n";
  raw += "```dot\n" + dot + "```\nDone.\n";
  for (auto _ : state) {
    const std::string block = extract_dot_block(raw);
    benchmark::DoNotOptimize(parse_edges(block, [](EventId) { return true; }, Scheme::four()));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * raw.size()));
}
BENCHMARK(BM_ExtractAndParse);

}  // namespace
}  // namespace tempograph
