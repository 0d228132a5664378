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

#ifndef TEMPOGRAPH_BENCHMARKS_BENCH_INPUTS_HPP_
#define TEMPOGRAPH_BENCHMARKS_BENCH_INPUTS_HPP_

#include <random>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/core.hpp"

namespace tempograph::bench {

inline std::vector<Event> events(int n) {
  std::vector<Event> out;
  for (int i = 1; i <= n; ++i) out.push_back({i, "e", (i - 1) / 2, 0, 1});
  return out;
}

// Votes of five generations around hidden start times. A vote is the true
// label with probability 1 - noise, else uniform over the scheme.
inline DistributionSet noisy_votes(int n, Scheme scheme, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> start(static_cast<std::size_t>(n) + 1);
  for (int& s : start) s = static_cast<int>(rng() % 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DistributionSet set;
  set.scheme = scheme;
  set.generation_count = 5;
  for (PairKey p : all_pairs(events(n))) {
    const int a = start[p.first], b = start[p.second];
    const Relation truth = a < b ? Relation::kBefore : a > b ? Relation::kAfter : Relation::kEqual;
    std::vector<double> probs(scheme.size(), 0.0);
    for (int g = 0; g < 5; ++g) {
      const Relation vote = unit(rng) < noise ? scheme.labels()[rng() % scheme.size()] : truth;
      probs[index_of(vote)] += 0.2;
    }
    set.dists.emplace(p, LabelDistribution(scheme, probs));
  }
  return set;
}

inline TemporalGraph argmax_graph(const DistributionSet& set) {
  TemporalGraph g(set.scheme);
  for (const auto& [pair, d] : set.dists) g.set(pair.first, pair.second, d.argmax());
  return g;
}

}  // namespace tempograph::bench

#endif  // TEMPOGRAPH_BENCHMARKS_BENCH_INPUTS_HPP_
