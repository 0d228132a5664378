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

#ifndef TEMPOGRAPH_GRAPH_PARSER_HPP_
#define TEMPOGRAPH_GRAPH_PARSER_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/core.hpp"

namespace tempograph {

// An edge as written by the model, already oriented so pair.first < pair.second.
struct ParsedEdge {
  EventId source_id = 0;  // as written
  EventId target_id = 0;
  PairKey pair;
  Relation label = Relation::kVague;  // oriented to pair
};

struct ParseOutcome {
  std::vector<ParsedEdge> edges;
  std::vector<std::string> warnings;
};

// The last complete "digraph"/"graph" block of a model response, from the
// keyword through its balanced closing brace. Prose and code fences around it
// are ignored. Throws ParseError when no balanced block exists.
std::string extract_dot_block(std::string_view raw);

// Parses "a -> b [label=REL]" and "a -- b [label=REL]" statements. The trailing
// integer of a node token is the event id: name_7, name(7), "attack(7)", e7 and
// 7 all name event 7. Later duplicates replace earlier ones. Self-edges and
// unsupported statements are skipped with a warning. Unknown ids or relation
// strings throw ParseError.
ParseOutcome parse_edges(std::string_view dot, const Document& doc, Scheme scheme);
ParseOutcome parse_edges(std::string_view dot, const std::function<bool(EventId)>& known,
                         Scheme scheme);

// Keeps edges on requested pairs; everything else becomes a warning. Missing
// requested pairs are listed on the record rather than thrown.
GenerationRecord to_record(const ParseOutcome& outcome, std::span<const PairKey> requested,
                           int generation_index, std::string raw);

// extract_dot_block + parse_edges + to_record.
GenerationRecord parse_generation(std::string_view raw, const Document& doc, Scheme scheme,
                                  std::span<const PairKey> requested, int generation_index);

// DOT serialization understood by parse_edges: one "eA -> eB" edge per pair.
std::string to_dot(const TemporalGraph& graph, std::string_view name = "G");

// Reads a graph file written by to_dot; any id is accepted.
TemporalGraph parse_graph(std::string_view dot, Scheme scheme);

}  // namespace tempograph

#endif  // TEMPOGRAPH_GRAPH_PARSER_HPP_
