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

#ifndef TEMPOGRAPH_CORPUS_HPP_
#define TEMPOGRAPH_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/core.hpp"

namespace tempograph {

enum class AnnotationDensity {
  kComplete,         // every pair of a document's events is labeled
  kConsecutiveOnly,  // labels only for sentence distance <= 1
  kPartial,          // anything else, e.g. after dropping a label
};

enum class DatasetSplit { kTrain, kDev, kTest, kAll };

// Source conventions: label scheme, density, and how splits are defined.
enum class FormatProfile {
  kOmniTemp,   // four labels, complete, first 10 documents are the test split
  kMatres,     // four labels, consecutive sentences only
  kTbDense,    // six labels, consecutive sentences only
  kNarrative,  // six labels plus overlap, complete
  kCanonical,  // everything read from dataset.json
};

AnnotationDensity parse_density(std::string_view name);
std::string_view to_string(AnnotationDensity d);
DatasetSplit parse_split(std::string_view name);
std::string_view to_string(DatasetSplit s);
FormatProfile parse_profile(std::string_view name);
std::string_view to_string(FormatProfile p);

struct DatasetManifest {
  std::string name;
  Scheme scheme = Scheme::four();
  DatasetSplit split = DatasetSplit::kAll;
  AnnotationDensity density = AnnotationDensity::kComplete;
  std::vector<Document> documents;
  // Maintenance flags raised by transformations (density downgrades etc).
  std::vector<std::string> notes;

  bool operator==(const DatasetManifest& other) const;
};

// Published totals of the complete four-label news corpus.
struct PublishedTotals {
  std::size_t documents;
  std::size_t events;
  std::size_t relations;
  std::array<std::size_t, 4> per_label;  // before, after, equal, vague
};
inline constexpr PublishedTotals kOmniTempAll{30, 470, 3483, {1538, 1347, 150, 448}};
inline constexpr PublishedTotals kOmniTempTest{10, 151, 1082, {419, 431, 60, 172}};

// One document per JSON file:
//   {"doc_id", "text", "events": [{"id", "mention", "sentence_index",
//    "char_span": [begin, end]}], "relations": [[a, b, "label"], ...]}
Document parse_document(std::string_view json_text, Scheme scheme);
std::string serialize_document(const Document& doc);

// Loads a dataset directory: document files plus an optional dataset.json
//   {"name", "scheme", "annotation_density", "documents": [file...],
//    "splits": {"train": [file...], "test": [...]}}
// Without dataset.json every *.json file is a document, in filename order.
// The complete news profile checks the published totals when all 30
// documents are present.
DatasetManifest load(const std::filesystem::path& dir, FormatProfile profile,
                     DatasetSplit split = DatasetSplit::kAll);

// Writes documents and dataset.json so load(dir, kCanonical) round-trips.
void save(const DatasetManifest& manifest, const std::filesystem::path& dir);

// Throws ValidationError if the density claim or scheme does not hold.
void validate(const DatasetManifest& manifest);

// Seeded uniform choice of k events, keeping gold labels among them verbatim.
Document subsample_events(const Document& doc, std::size_t k, std::uint64_t seed);

// Removes pairs carrying `label`. Dropping overlap from a narrative manifest
// turns it into a six-label manifest; removing pairs from a complete manifest
// downgrades it to partial and records a note.
DatasetManifest drop_label(DatasetManifest manifest, Relation label);

// Keeps gold pairs at sentence distance <= 1.
Document restrict_to_consecutive(const Document& doc);

// Relation files in the two common sparse-annotation layouts, merged into
// documents that already carry text and events.
enum class RelationFormat {
  kMatresTsv,   // doc \t verb1 \t verb2 \t eiidA \t eiidB \t BEFORE|AFTER|EQUAL|VAGUE
  kTbDenseTsv,  // doc \t eA \t eB \t b|a|i|ii|s|v
};
RelationFormat parse_relation_format(std::string_view name);

struct ImportReport {
  std::size_t imported = 0;
  std::size_t skipped_unknown_doc = 0;
  std::size_t skipped_unknown_event = 0;
  std::size_t skipped_duplicate = 0;
};

DatasetManifest import_relations(const DatasetManifest& documents,
                                 const std::filesystem::path& relations_file,
                                 RelationFormat format, ImportReport* report = nullptr);

struct CorpusStats {
  std::size_t documents = 0;
  std::size_t events = 0;
  std::size_t relations = 0;
  std::map<Relation, std::size_t> per_label;
};

CorpusStats stats(const DatasetManifest& manifest);
// Plain-text table, one column per split plus "All".
std::string format_stats(const std::vector<std::pair<std::string, CorpusStats>>& columns,
                         Scheme scheme);

}  // namespace tempograph

#endif  // TEMPOGRAPH_CORPUS_HPP_
