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
#include "tempograph/aggregate.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

GenerationRecord record(int index, std::map<PairKey, Relation> labels) {
  GenerationRecord r;
  r.generation_index = index;
  r.parsed = std::move(labels);
  return r;
}

TEST_SUITE("aggregate") {

TEST_CASE("distributions count labels per generation") {
  const PairKey p{1, 2}, q{1, 3};
  const std::vector<PairKey> pairs = {p, q};
  std::vector<GenerationRecord> records;
  const Relation labels[5] = {Relation::kBefore, Relation::kBefore, Relation::kAfter,
                              Relation::kBefore, Relation::kVague};
  for (int g = 0; g < 5; ++g) records.push_back(record(g, {{p, labels[g]}, {q, Relation::kEqual}}));
  const DistributionSet d = aggregate(records, pairs, Scheme::four(), "doc");
  CHECK(d.generation_count == 5);
  CHECK(d.at(p)[Relation::kBefore] == doctest::Approx(0.6));
  CHECK(d.at(p)[Relation::kAfter] == doctest::Approx(0.2));
  CHECK(d.at(q)[Relation::kEqual] == doctest::Approx(1.0));
  CHECK(majority_vote(d).get(1, 2) == Relation::kBefore);
}

TEST_CASE("a gap names pair and generation") {
  const std::vector<PairKey> pairs = {{1, 2}, {2, 3}};
  std::vector<GenerationRecord> records = {record(0, {{{1, 2}, Relation::kBefore}, {{2, 3}, Relation::kBefore}}),
                                           record(1, {{{1, 2}, Relation::kBefore}})};
  try {
    aggregate(records, pairs, Scheme::four(), "doc");
    FAIL("expected IncompleteGenerationError");
  } catch (const IncompleteGenerationError& e) {
    const std::string what = e.what();
    CHECK(what.find("(2, 3)") != std::string::npos);
    CHECK(what.find("generation 1") != std::string::npos);
  }
}

TEST_CASE("labels outside the scheme are rejected") {
  const std::vector<PairKey> pairs = {{1, 2}};
  std::vector<GenerationRecord> records = {record(0, {{{1, 2}, Relation::kIncludes}})};
  CHECK_THROWS_AS(aggregate(records, pairs, Scheme::four()), ValidationError);
  CHECK_NOTHROW(aggregate(records, pairs, Scheme::six()));
}

TEST_CASE("majority ties become vague") {
  const PairKey p{1, 2};
  std::vector<GenerationRecord> records = {record(0, {{p, Relation::kBefore}}),
                                           record(1, {{p, Relation::kAfter}})};
  const std::vector<PairKey> pairs = {p};
  CHECK(majority_vote(aggregate(records, pairs, Scheme::four())).get(1, 2) == Relation::kVague);
  records.push_back(record(2, {{p, Relation::kAfter}}));
  CHECK(majority_vote(aggregate(records, pairs, Scheme::four())).get(1, 2) == Relation::kAfter);
}

TEST_CASE("splits merge by generation index") {
  std::vector<GenerationRecord> splits = {record(3, {{{1, 2}, Relation::kBefore}}),
                                          record(3, {{{3, 4}, Relation::kAfter}})};
  const GenerationRecord merged = merge_splits(splits);
  CHECK(merged.generation_index == 3);
  CHECK(merged.parsed.size() == 2);
  splits[1].generation_index = 4;
  CHECK_THROWS_AS(merge_splits(splits), ValidationError);
}

TEST_CASE("text form round-trips exactly") {
  std::mt19937_64 rng(3);
  for (Scheme scheme : {Scheme::four(), Scheme::six()}) {
    for (bool counts : {true, false}) {
      const auto pairs = all_pairs(testing::make_events(6));
      DistributionSet d = testing::random_distributions(rng, scheme, pairs, counts);
      d.doc_id = "doc-7";
      const DistributionSet back = parse_distributions(serialize(d));
      CHECK(back.doc_id == d.doc_id);
      CHECK(back.scheme == d.scheme);
      CHECK(back.generation_count == d.generation_count);
      CHECK(back.dists == d.dists);
      CHECK(serialize(back) == serialize(d));
    }
  }
  CHECK_THROWS_AS(parse_distributions("1 2 0.5 0.5 0 0\n"), ParseError);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph
