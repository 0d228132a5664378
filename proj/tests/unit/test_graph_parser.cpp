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
#include "tempograph/graph_parser.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

const auto kAny = [](EventId) { return true; };

ParseOutcome parse(std::string_view raw, Scheme scheme = Scheme::four()) {
  return parse_edges(extract_dot_block(raw), kAny, scheme);
}

TEST_SUITE("graph_parser") {

TEST_CASE("the last balanced block is taken from surrounding prose") {
  const std::string raw =
      "Timeline:\n1. attack\n\nDraft: digraph A { e1 -> e2 [label=AFTER]; }\n"
      "Final answer:\n```dot\ndigraph Final {\n  e1 -> e2 [label=\"BEFORE\"];\n}\n```\nDone.";
  const std::string block = extract_dot_block(raw);
  CHECK(block.starts_with("digraph Final"));
  CHECK(block.ends_with("}"));
  CHECK(parse(raw).edges.at(0).label == Relation::kBefore);
}

TEST_CASE("braces inside quoted attributes do not end the block") {
  const std::string raw = "digraph { e1 -> e2 [label=\"BEFORE\", note=\"}\"]; }";
  CHECK(extract_dot_block(raw) == raw);
}

TEST_CASE("text without a balanced block is a parse error") {
  CHECK_THROWS_AS(extract_dot_block("no graph"), ParseError);
  CHECK_THROWS_AS(extract_dot_block("digraph G { e1 -> e2 [label=BEFORE];"), ParseError);
  CHECK_THROWS_AS(extract_dot_block("the subgraphing of digraphs"), ParseError);
  try {
    extract_dot_block("nothing");
  } catch (const ParseError& e) {
    CHECK(e.raw() == "nothing");
  }
}

TEST_CASE("node naming styles resolve to the trailing integer") {
  const auto out = parse(
      "digraph G {\n"
      "  e1 -> e2 [label=BEFORE];\n"
      "  \"attack(3)\" -> \"troops(4)\" [label=\"after\"];\n"
      "  war_5 -> 6 [label=Equal]\n"
      "  e7 -> \"e8\" [ label = \"VAGUE\" ];\n"
      "}");
  REQUIRE(out.edges.size() == 4);
  CHECK(out.edges[1].pair == PairKey{3, 4});
  CHECK(out.edges[1].label == Relation::kAfter);
  CHECK(out.edges[2].pair == PairKey{5, 6});
  CHECK(out.edges[2].label == Relation::kEqual);
  CHECK(out.edges[3].label == Relation::kVague);
}

TEST_CASE("reversed edges are oriented") {
  const auto out = parse("digraph { e9 -> e2 [label=BEFORE]; e4 -- e3 [label=INCLUDES]; }",
                         Scheme::six());
  CHECK(out.edges[0].pair == PairKey{2, 9});
  CHECK(out.edges[0].label == Relation::kAfter);
  CHECK(out.edges[0].source_id == 9);
  CHECK(out.edges[1].label == Relation::kIsIncluded);
}

TEST_CASE("comments, node statements and graph attributes are ignored") {
  const auto out = parse(
      "digraph G {\n"
      "  // comment e1 -> e2\n"
      "  rankdir=LR;\n"
      "  node [shape=box];\n"
      "  e1 [label=\"attack\"];\n"
      "  /* e3 -> e4 [label=AFTER] */\n"
      "  # e5 -> e6\n"
      "  e1 -> e2 [label=BEFORE];\n"
      "}");
  REQUIRE(out.edges.size() == 1);
}

TEST_CASE("self edges, chains and duplicates warn") {
  const auto out = parse(
      "digraph { e1 -> e1 [label=BEFORE]; e1 -> e2 -> e3 [label=BEFORE];"
      " e1 -> e2 [label=BEFORE]; e2 -> e1 [label=BEFORE]; }");
  REQUIRE(out.edges.size() == 1);
  CHECK(out.edges[0].label == Relation::kAfter);
  CHECK(out.warnings.size() == 3);
}

TEST_CASE("hard errors") {
  CHECK_THROWS_AS(parse("digraph { e1 -> e2; }"), ParseError);
  CHECK_THROWS_AS(parse("digraph { e1 -> e2 [label=DURING]; }"), ParseError);
  CHECK_THROWS_AS(parse("digraph { e1 -> e2 [label=INCLUDES]; }"), ParseError);
  CHECK_THROWS_AS(parse("digraph { a -> e2 [label=BEFORE]; }"), ParseError);
  CHECK_THROWS_AS(parse_edges("digraph { e1 -> e9 [label=BEFORE]; }",
                              [](EventId id) { return id < 5; }, Scheme::four()),
                  ParseError);
}

TEST_CASE("records list missing and unrequested pairs") {
  const std::vector<PairKey> requested = {{1, 2}, {1, 3}};
  const auto outcome = parse("digraph { e1 -> e2 [label=BEFORE]; e2 -> e3 [label=AFTER]; }");
  const GenerationRecord r = to_record(outcome, requested, 4, "raw");
  CHECK(r.generation_index == 4);
  CHECK(r.parsed.size() == 1);
  CHECK(r.missing == std::vector<PairKey>{{1, 3}});
  CHECK(r.warnings.size() == 1);
  CHECK_FALSE(r.complete());
}

TEST_CASE("ids are checked against the document") {
  const Document doc("d", "a b", {{1, "a", 0, 0, 1}, {2, "b", 0, 2, 3}});
  const std::vector<PairKey> pairs = {{1, 2}};
  const auto r = parse_generation("digraph { e2 -> e1 [label=AFTER]; }", doc, Scheme::four(), pairs, 0);
  CHECK(r.parsed.at(PairKey{1, 2}) == Relation::kBefore);
  CHECK_THROWS_AS(parse_generation("digraph { e2 -> e7 [label=AFTER]; }", doc, Scheme::four(), pairs, 0),
                  ParseError);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    const Scheme scheme = i % 2 ? Scheme::six() : Scheme::four();
    const TemporalGraph g = testing::random_graph(rng, scheme, 2 + i % 9, 0.2);
    CHECK(parse_graph(to_dot(g), scheme) == g);
  }
}

TEST_CASE("random bytes never crash the parser") {
  std::mt19937_64 rng(23);
  const std::string alphabet = "digraph{}[]-><>\"=;,e0123456789 \n\t/*#labelBEFORE";
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const std::size_t len = rng() % 120;
    for (std::size_t k = 0; k < len; ++k) {
      s += (rng() % 2) ? alphabet[rng() % alphabet.size()] : static_cast<char>(rng() % 256);
    }
    if (i % 3 == 0) s = "digraph G {" + s + "}";
    try {
      parse(s);
    } catch (const ParseError&) {
    }
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph
