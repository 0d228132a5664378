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

#ifndef TEMPOGRAPH_ALGEBRA_HPP_
#define TEMPOGRAPH_ALGEBRA_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/core.hpp"

namespace tempograph {

namespace allen {

// Allen's thirteen basic interval relations.
enum class Basic : std::uint8_t {
  kPrecedes, kMeets, kOverlaps, kStarts, kDuring, kFinishes, kEquals,
  kFinishedBy, kContains, kStartedBy, kOverlappedBy, kMetBy, kPrecededBy,
};
inline constexpr int kBasicCount = 13;

using BasicSet = std::uint16_t;
inline constexpr BasicSet kAllBasic = (1U << kBasicCount) - 1U;

constexpr BasicSet bit(Basic r) { return static_cast<BasicSet>(1U << static_cast<int>(r)); }

// Short symbol: b m o s d f eq fi di si oi mi bi.
std::string_view symbol(Basic r);
Basic converse(Basic r);

// Composition of two basic relations: every relation (A,C) compatible with
// r on (A,B) and s on (B,C).
BasicSet compose(Basic r, Basic s);

// Allen relations a reduced label stands for under the scheme's semantics.
// Four: start points only. Six: start, end and duration, with overlap-type
// relations falling to vague. Vague stands for all thirteen.
BasicSet members(Scheme scheme, Relation label);

}  // namespace allen

struct TableOptions {
  // Adds vague to every composition set.
  bool soft_vague = false;
};

// C(r, s): labels allowed on (i,k) given r on (i,j) and s on (j,k).
class CompositionTable {
 public:
  const Scheme& scheme() const { return scheme_; }
  bool soft_vague() const { return soft_vague_; }
  LabelSet compose(Relation r, Relation s) const { return table_[index_of(r)][index_of(s)]; }
  // Stable identifier recorded in run manifests.
  std::string version() const;
  // Plain-text matrix, one row per left operand.
  std::string dump() const;

 private:
  friend CompositionTable build_table(Scheme scheme, TableOptions options);
  CompositionTable(Scheme scheme, bool soft_vague) : scheme_(scheme), soft_vague_(soft_vague) {}

  Scheme scheme_;
  bool soft_vague_;
  std::array<std::array<LabelSet, kMaxLabels>, kMaxLabels> table_{};
};

// Projects Allen composition onto the reduced scheme: a definite label is
// allowed when its Allen members meet the composite; vague is allowed unless
// the composite fits inside a single definite label. Throws ValidationError for
// the narrative scheme, whose overlap label has no converse.
CompositionTable build_table(Scheme scheme, TableOptions options = {});

LabelSet inverse(LabelSet set);

struct InferredEdge {
  PairKey pair;
  // Constraint oriented first -> second. Empty means contradictory chains.
  LabelSet constraint;
  int path_length = 0;
};

// Warshall-style relaxation over chains of non-vague labels, iterated to a
// fixpoint. Returns constraints for pairs absent from the graph, sorted.
std::vector<InferredEdge> transitive_closure(const TemporalGraph& graph,
                                             const CompositionTable& table);

// Edges (i,k) whose label t falls outside C(r,s) for some witness j with
// non-vague r = (i,j) and s = (j,k). Each offending edge counts once.
int count_transitive_inconsistencies(const TemporalGraph& graph, const CompositionTable& table);

// Unordered triples containing at least one violated composition.
int count_inconsistent_triangles(const TemporalGraph& graph, const CompositionTable& table);

// Mean per-graph inconsistency count. Throws ValidationError on empty input.
double ti_per_document(std::span<const TemporalGraph> graphs, const CompositionTable& table);
double ti_per_document(std::span<const int> counts);

}  // namespace tempograph

#endif  // TEMPOGRAPH_ALGEBRA_HPP_
