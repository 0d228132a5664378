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
#include <sstream>

#include "allen_oracle_tables.hpp"
#include "doctest.h"
#include "tempograph/algebra.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

LabelSet labels_from(const char* words) {
  LabelSet out;
  std::istringstream in(words);
  std::string w;
  while (in >> w) out.insert(*parse_relation(w));
  return out;
}

allen::BasicSet basics_from(const char* words) {
  allen::BasicSet out = 0;
  std::istringstream in(words);
  std::string w;
  while (in >> w) {
    for (int i = 0; i < allen::kBasicCount; ++i) {
      const auto b = static_cast<allen::Basic>(i);
      if (allen::symbol(b) == w) out |= allen::bit(b);
    }
  }
  return out;
}

TEST_SUITE("algebra") {

TEST_CASE("basic composition matches the endpoint enumeration oracle") {
  for (int r = 0; r < allen::kBasicCount; ++r) {
    for (int s = 0; s < allen::kBasicCount; ++s) {
      CAPTURE(r);
      CAPTURE(s);
      CHECK(allen::compose(static_cast<allen::Basic>(r), static_cast<allen::Basic>(s)) ==
            basics_from(kAllenOracle[r][s]));
    }
  }
}

TEST_CASE("reduced tables match the oracle projection") {
  const CompositionTable four = build_table(Scheme::four());
  const CompositionTable six = build_table(Scheme::six());
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t s = 0; s < 4; ++s) {
      CHECK(four.compose(Scheme::four().labels()[r], Scheme::four().labels()[s]) ==
            labels_from(kOracleFour[r][s]));
    }
  }
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t s = 0; s < 6; ++s) {
      CHECK(six.compose(Scheme::six().labels()[r], Scheme::six().labels()[s]) ==
            labels_from(kOracleSix[r][s]));
    }
  }
}

TEST_CASE("identity and inverse coherence") {
  for (Scheme scheme : {Scheme::four(), Scheme::six()}) {
    for (bool soft : {false, true}) {
      const CompositionTable t = build_table(scheme, {soft});
      for (Relation r : scheme.labels()) {
        if (r != Relation::kVague) {
          LabelSet expect{r};
          if (soft) expect.insert(Relation::kVague);
          CHECK(t.compose(Relation::kEqual, r) == expect);
          CHECK(t.compose(r, Relation::kEqual) == expect);
        }
        CHECK(t.compose(Relation::kVague, r) == scheme.all());
        for (Relation s : scheme.labels()) {
          CHECK(inverse(t.compose(r, s)) == t.compose(inverse(s), inverse(r)));
          CHECK_FALSE(t.compose(r, s).empty());
        }
      }
    }
  }
}

TEST_CASE("spot values") {
  const CompositionTable four = build_table(Scheme::four());
  CHECK(four.compose(Relation::kBefore, Relation::kBefore) == LabelSet{Relation::kBefore});
  CHECK(four.compose(Relation::kBefore, Relation::kAfter) == Scheme::four().all());
  const CompositionTable soft = build_table(Scheme::four(), {true});
  CHECK(soft.compose(Relation::kBefore, Relation::kBefore) ==
        LabelSet{Relation::kBefore, Relation::kVague});
  CHECK(four.version() == "allen-projection-v1/four/strict");
  CHECK(soft.version() == "allen-projection-v1/four/soft");
  CHECK_THROWS_AS(build_table(Scheme::narrative()), ValidationError);
}

TEST_CASE("scheme members partition the definite relations") {
  for (Scheme scheme : {Scheme::four(), Scheme::six()}) {
    allen::BasicSet seen = 0;
    for (Relation r : scheme.labels()) {
      if (r == Relation::kVague) {
        CHECK(allen::members(scheme, r) == allen::kAllBasic);
        continue;
      }
      CHECK((seen & allen::members(scheme, r)) == 0);
      seen |= allen::members(scheme, r);
    }
    if (scheme == Scheme::four()) CHECK(seen == allen::kAllBasic);
  }
}

TEST_CASE("closure recovers a chain and leaves vague gaps open") {
  const CompositionTable t = build_table(Scheme::four());
  TemporalGraph g(Scheme::four());
  for (int i = 1; i < 6; ++i) g.set(i, i + 1, Relation::kBefore);
  const auto inferred = transitive_closure(g, t);
  CHECK(inferred.size() == 10);
  for (const InferredEdge& e : inferred) {
    CHECK(e.constraint == LabelSet{Relation::kBefore});
    CHECK(e.path_length == e.pair.second - e.pair.first);
  }

  TemporalGraph broken(Scheme::four());
  broken.set(1, 2, Relation::kBefore);
  broken.set(2, 3, Relation::kVague);
  broken.set(3, 4, Relation::kBefore);
  for (const InferredEdge& e : transitive_closure(broken, t)) {
    CHECK(e.constraint == Scheme::four().all());
  }

  TemporalGraph contradictory(Scheme::four());
  contradictory.set(1, 2, Relation::kBefore);
  contradictory.set(2, 3, Relation::kBefore);
  contradictory.set(3, 4, Relation::kBefore);
  contradictory.set(1, 4, Relation::kAfter);
  contradictory.set(2, 5, Relation::kEqual);
  const auto c = transitive_closure(contradictory, t);
  CHECK(std::any_of(c.begin(), c.end(), [](const InferredEdge& e) {
    return e.pair == PairKey{1, 3} && e.constraint.empty();
  }));
}

TEST_CASE("inconsistency counts") {
  const CompositionTable t = build_table(Scheme::four());
  TemporalGraph g(Scheme::four());
  g.set(1, 2, Relation::kBefore);
  g.set(2, 3, Relation::kBefore);
  g.set(1, 3, Relation::kAfter);
  CHECK(count_transitive_inconsistencies(g, t) == 3);
  CHECK(count_inconsistent_triangles(g, t) == 1);
  g.set(1, 3, Relation::kBefore);
  CHECK(count_transitive_inconsistencies(g, t) == 0);
  g.set(1, 3, Relation::kVague);
  CHECK(count_transitive_inconsistencies(g, t) == 1);
  CHECK(count_transitive_inconsistencies(g, build_table(Scheme::four(), {true})) == 0);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Scheme scheme = i % 2 ? Scheme::six() : Scheme::four();
    const CompositionTable table = build_table(scheme);
    const TemporalGraph r = testing::random_graph(rng, scheme, 3 + i % 5, 0.2);
    CHECK(count_transitive_inconsistencies(r, table) == testing::naive_inconsistent_edges(r, table));
  }
}

TEST_CASE("ti per document averages") {
  const std::vector<int> counts = {0, 2, 4};
  CHECK(ti_per_document(counts) == doctest::Approx(2.0));
  CHECK_THROWS_AS(ti_per_document(std::span<const int>{}), ValidationError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph
