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

#ifndef TEMPOGRAPH_AGGREGATE_HPP_
#define TEMPOGRAPH_AGGREGATE_HPP_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/core.hpp"

namespace tempograph {

// One parsed model generation for a document (or one split of it).
struct GenerationRecord {
  int generation_index = 0;
  std::string raw_output;
  std::map<PairKey, Relation> parsed;
  // Requested pairs the output did not label.
  std::vector<PairKey> missing;
  // Non-fatal parser notes: dropped self-edges, unrequested pairs, duplicates.
  std::vector<std::string> warnings;

  bool complete() const { return missing.empty(); }
};

// Merges per-split records of the same generation index into one record.
GenerationRecord merge_splits(std::span<const GenerationRecord> splits);

struct DistributionSet {
  std::string doc_id;
  Scheme scheme = Scheme::four();
  int generation_count = 0;
  std::map<PairKey, LabelDistribution> dists;

  const LabelDistribution& at(PairKey p) const;
  std::vector<PairKey> pairs() const;
};

// d[pair][r] = (#generations labeling pair with r) / M. Every record must cover
// every requested pair; throws IncompleteGenerationError naming the first gap.
DistributionSet aggregate(std::span<const GenerationRecord> records,
                          std::span<const PairKey> pairs, Scheme scheme,
                          std::string doc_id = {});

// Per-pair label with the strictly highest count; exact ties become vague.
TemporalGraph majority_vote(const DistributionSet& dist);

// Line-oriented text form: a small header, then "<a> <b> <p...>" per pair.
std::string serialize(const DistributionSet& dist);
DistributionSet parse_distributions(std::string_view text);

}  // namespace tempograph

#endif  // TEMPOGRAPH_AGGREGATE_HPP_
