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

#include <random>

#include "doctest.h"
#include "tempograph/solver.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

SolveProblem problem_for(std::mt19937_64& rng, Scheme scheme, int n, bool counts) {
  const auto pairs = all_pairs(testing::make_events(n));
  return {pairs, testing::random_distributions(rng, scheme, pairs, counts), build_table(scheme),
          std::nullopt};
}

TEST_SUITE("solver") {

TEST_CASE("a consistent argmax is returned unchanged") {
  const auto pairs = all_pairs(testing::make_events(4));
  DistributionSet d;
  d.scheme = Scheme::four();
  for (PairKey p : pairs) {
    d.dists.emplace(p, LabelDistribution(Scheme::four(), {0.7, 0.1, 0.1, 0.1}));
  }
  const SolveResult r = solve({pairs, d, build_table(Scheme::four()), std::nullopt});
  CHECK(r.optimal);
  CHECK(r.objective == doctest::Approx(0.7 * 6));
  for (PairKey p : pairs) CHECK(r.graph.get(p.first, p.second) == Relation::kBefore);
}

TEST_CASE("a cycle is broken at its weakest edge") {
  const std::vector<PairKey> pairs = {{1, 2}, {1, 3}, {2, 3}};
  DistributionSet d;
  d.scheme = Scheme::four();
  d.dists.emplace(PairKey{1, 2}, LabelDistribution(Scheme::four(), {0.9, 0.0, 0.0, 0.1}));
  d.dists.emplace(PairKey{2, 3}, LabelDistribution(Scheme::four(), {0.8, 0.0, 0.0, 0.2}));
  d.dists.emplace(PairKey{1, 3}, LabelDistribution(Scheme::four(), {0.3, 0.6, 0.0, 0.1}));
  const SolveResult r = solve({pairs, d, build_table(Scheme::four()), std::nullopt});
  CHECK(r.graph.get(1, 3) == Relation::kBefore);
  CHECK(r.objective == doctest::Approx(2.0));
}

TEST_CASE("optimal and consistent on random small instances") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const Scheme scheme = i % 2 ? Scheme::six() : Scheme::four();
    const SolveProblem p = problem_for(rng, scheme, 3 + i % 3, i % 3 == 0);
    const SolveResult r = solve(p);
    CHECK(r.optimal);
    CHECK(testing::fully_consistent(r.graph, p.table));
    CHECK(r.objective == doctest::Approx(objective_of(r.graph, p.dist)).epsilon(1e-12));
    CHECK(r.objective == doctest::Approx(testing::brute_force_best(p.pairs, p.dist, p.table)).epsilon(1e-9));
  }
}

TEST_CASE("greedy repair is consistent and never beats the optimum") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const Scheme scheme = i % 2 ? Scheme::six() : Scheme::four();
    const SolveProblem p = problem_for(rng, scheme, 4 + i % 10, i % 2 == 0);
    const SolveResult g = greedy_repair(p);
    CHECK_FALSE(g.optimal);
    CHECK(count_transitive_inconsistencies(g.graph, p.table) == 0);
    CHECK(g.graph.size() == p.pairs.size());
    SolveProblem bounded = p;
    bounded.time_limit = Seconds(0.5);
    const SolveResult exact = solve(bounded);
    if (exact.optimal) CHECK(g.objective <= exact.objective + 1e-9);
  }
}

TEST_CASE("soft vague tables accept any vague edge") {
  std::mt19937_64 rng(9);
  SolveProblem p = problem_for(rng, Scheme::four(), 6, true);
  p.table = build_table(Scheme::four(), {true});
  const SolveResult r = solve(p);
  CHECK(count_transitive_inconsistencies(r.graph, p.table) == 0);
}

TEST_CASE("problem validation") {
  std::mt19937_64 rng(1);
  SolveProblem p = problem_for(rng, Scheme::four(), 4, true);
  SUBCASE("scheme mismatch") {
    p.table = build_table(Scheme::six());
    CHECK_THROWS_AS(solve(p), ValidationError);
  }
  SUBCASE("missing distribution") {
    p.dist.dists.erase(p.pairs.front());
    CHECK_THROWS_AS(solve(p), ValidationError);
  }
  SUBCASE("empty problem") {
    p.pairs.clear();
    p.dist.dists.clear();
    const SolveResult r = solve(p);
    CHECK(r.graph.size() == 0);
    CHECK(r.optimal);
  }
}

TEST_CASE("time limit falls back to a consistent incumbent") {
  std::mt19937_64 rng(21);
  SolveProblem p = problem_for(rng, Scheme::six(), 24, false);
  p.time_limit = Seconds(0.001);
  const SolveResult r = BranchAndBoundSolver().solve(p);
  CHECK(count_transitive_inconsistencies(r.graph, p.table) == 0);
  CHECK(r.graph.size() == p.pairs.size());
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph
