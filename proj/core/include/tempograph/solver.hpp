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

#ifndef TEMPOGRAPH_SOLVER_HPP_
#define TEMPOGRAPH_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/algebra.hpp"
#include "tempograph/core.hpp"

namespace tempograph {

using Seconds = std::chrono::duration<double>;

inline constexpr Seconds kDefaultTimeLimit{30.0};

struct SolveProblem {
  std::vector<PairKey> pairs;
  DistributionSet dist;
  CompositionTable table = build_table(Scheme::four());
  // Unset means no limit.
  std::optional<Seconds> time_limit = kDefaultTimeLimit;
};

struct SolveResult {
  TemporalGraph graph{Scheme::four()};
  double objective = 0.0;
  bool optimal = false;
  std::int64_t nodes_explored = 0;
};

// Selects one label per pair maximizing the summed probability of the chosen
// labels, subject to every triangle obeying the composition table.
class GraphSolver {
 public:
  virtual ~GraphSolver() = default;
  virtual SolveResult solve(const SolveProblem& problem) const = 0;
  virtual std::string_view name() const = 0;
};

// Exact depth-first branch-and-bound. Pairs are branched in descending
// confidence margin; the bound adds, for each pair, the best probability left
// in its domain, less the unavoidable loss on a packing of pair-disjoint
// triangles; generalized arc consistency runs over every triangle touching a
// changed pair. Seeds the incumbent with greedy_repair and falls back to it
// (optimal=false) when the time limit expires.
class BranchAndBoundSolver final : public GraphSolver {
 public:
  SolveResult solve(const SolveProblem& problem) const override;
  std::string_view name() const override { return "branch-and-bound"; }
};

// Confidence-ordered greedy with triangle propagation. A dead end forces the
// most recent conflicting non-vague choice to vague and restarts, so the loop
// ends after at most one restart per pair. Always consistent, never optimal.
class GreedyRepairSolver final : public GraphSolver {
 public:
  SolveResult solve(const SolveProblem& problem) const override;
  std::string_view name() const override { return "greedy-repair"; }
};

SolveResult solve(const SolveProblem& problem);
SolveResult greedy_repair(const SolveProblem& problem);

// Sum of the distribution mass on the graph's labels.
double objective_of(const TemporalGraph& graph, const DistributionSet& dist);

}  // namespace tempograph

#endif  // TEMPOGRAPH_SOLVER_HPP_
