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

#include "tempograph/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <optional>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace tempograph {

namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(fmt::format("cannot read {}", path.string()));
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LoadError(fmt::format("cannot write {}", path.string()));
  out << content;
}

// Unbiased draw in [0, bound) by rejection, so selections depend only on the
// (standardized) engine output.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = 0;
  do {
    draw = engine();
  } while (draw >= limit);
  return draw % bound;
}

struct ProfileDefaults {
  std::string name;
  Scheme scheme;
  AnnotationDensity density;
};

ProfileDefaults defaults_for(FormatProfile profile) {
  switch (profile) {
    case FormatProfile::kOmniTemp:
      return {"omnitemp", Scheme::four(), AnnotationDensity::kComplete};
    case FormatProfile::kMatres:
      return {"matres", Scheme::four(), AnnotationDensity::kConsecutiveOnly};
    case FormatProfile::kTbDense:
      return {"tbdense", Scheme::six(), AnnotationDensity::kConsecutiveOnly};
    case FormatProfile::kNarrative:
      return {"narrative", Scheme::narrative(), AnnotationDensity::kComplete};
    case FormatProfile::kCanonical:
      return {"dataset", Scheme::four(), AnnotationDensity::kComplete};
  }
  return {"dataset", Scheme::four(), AnnotationDensity::kComplete};
}

std::size_t expected_pairs(std::size_t n) { return n * (n > 0 ? n - 1 : 0) / 2; }

void check_totals(const DatasetManifest& m, const PublishedTotals& totals, std::string_view what) {
  const CorpusStats s = stats(m);
  std::vector<std::string> problems;
  if (s.documents != totals.documents) {
    problems.push_back(fmt::format("documents {} != {}", s.documents, totals.documents));
  }
  if (s.events != totals.events) {
    problems.push_back(fmt::format("events {} != {}", s.events, totals.events));
  }
  if (s.relations != totals.relations) {
    problems.push_back(fmt::format("relations {} != {}", s.relations, totals.relations));
  }
  const std::array<Relation, 4> labels = {Relation::kBefore, Relation::kAfter, Relation::kEqual,
                                          Relation::kVague};
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = s.per_label.find(labels[i]);
    const std::size_t got = it == s.per_label.end() ? 0 : it->second;
    if (got != totals.per_label[i]) {
      problems.push_back(fmt::format("{} {} != {}", to_string(labels[i]), got, totals.per_label[i]));
    }
  }
  if (!problems.empty()) {
    std::string joined;
    for (const auto& p : problems) joined += (joined.empty() ? "" : "; ") + p;
    throw ValidationError(fmt::format("{} does not match published totals: {}", what, joined));
  }
}

}  // namespace

AnnotationDensity parse_density(std::string_view name) {
  if (name == "complete") return AnnotationDensity::kComplete;
  if (name == "consecutive-only") return AnnotationDensity::kConsecutiveOnly;
  if (name == "partial") return AnnotationDensity::kPartial;
  throw ValidationError(fmt::format("unknown annotation density '{}'", name));
}

std::string_view to_string(AnnotationDensity d) {
  switch (d) {
    case AnnotationDensity::kComplete: return "complete";
    case AnnotationDensity::kConsecutiveOnly: return "consecutive-only";
    case AnnotationDensity::kPartial: return "partial";
  }
  return "?";
}

DatasetSplit parse_split(std::string_view name) {
  if (name == "train") return DatasetSplit::kTrain;
  if (name == "dev") return DatasetSplit::kDev;
  if (name == "test") return DatasetSplit::kTest;
  if (name == "all") return DatasetSplit::kAll;
  throw ValidationError(fmt::format("unknown split '{}' (expected train|dev|test|all)", name));
}

std::string_view to_string(DatasetSplit s) {
  switch (s) {
    case DatasetSplit::kTrain: return "train";
    case DatasetSplit::kDev: return "dev";
    case DatasetSplit::kTest: return "test";
    case DatasetSplit::kAll: return "all";
  }
  return "?";
}

FormatProfile parse_profile(std::string_view name) {
  if (name == "omnitemp") return FormatProfile::kOmniTemp;
  if (name == "matres") return FormatProfile::kMatres;
  if (name == "tbdense") return FormatProfile::kTbDense;
  if (name == "narrative") return FormatProfile::kNarrative;
  if (name == "canonical") return FormatProfile::kCanonical;
  throw ValidationError(fmt::format(
      "unknown dataset profile '{}' (expected omnitemp|matres|tbdense|narrative|canonical)", name));
}

std::string_view to_string(FormatProfile p) {
  switch (p) {
    case FormatProfile::kOmniTemp: return "omnitemp";
    case FormatProfile::kMatres: return "matres";
    case FormatProfile::kTbDense: return "tbdense";
    case FormatProfile::kNarrative: return "narrative";
    case FormatProfile::kCanonical: return "canonical";
  }
  return "?";
}

bool DatasetManifest::operator==(const DatasetManifest& other) const {
  return name == other.name && scheme == other.scheme && split == other.split &&
         density == other.density && documents == other.documents;
}

Document parse_document(std::string_view json_text, Scheme scheme) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("document is not valid JSON: {}", e.what()));
  }
  try {
    const std::string doc_id = j.at("doc_id").get<std::string>();
    std::vector<Event> events;
    for (const json& e : j.at("events")) {
      Event ev;
      ev.id = e.at("id").get<EventId>();
      ev.mention = e.at("mention").get<std::string>();
      ev.sentence_index = e.at("sentence_index").get<int>();
      const json& span = e.at("char_span");
      if (!span.is_array() || span.size() != 2) {
        throw ValidationError(fmt::format("{}: event {} char_span must be [begin, end]", doc_id, ev.id));
      }
      ev.begin = span[0].get<std::size_t>();
      ev.end = span[1].get<std::size_t>();
      events.push_back(std::move(ev));
    }
    std::vector<std::tuple<EventId, EventId, Relation>> triples;
    if (j.contains("relations")) {
      for (const json& r : j.at("relations")) {
        if (!r.is_array() || r.size() != 3) {
          throw ValidationError(fmt::format("{}: relation must be [a, b, label]", doc_id));
        }
        const std::string text = r[2].get<std::string>();
        const auto label = parse_relation(text);
        if (!label || !scheme.contains(*label)) {
          throw ValidationError(fmt::format("{}: label '{}' not in scheme '{}'", doc_id, text,
                                            scheme.name()));
        }
        triples.emplace_back(r[0].get<EventId>(), r[1].get<EventId>(), *label);
      }
    }
    GoldMap gold;
    try {
      gold = Document::make_gold(triples);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}: {}", doc_id, e.what()));
    }
    return Document(doc_id, j.at("text").get<std::string>(), std::move(events), std::move(gold));
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("document schema violation: {}", e.what()));
  }
}

std::string serialize_document(const Document& doc) {
  json events = json::array();
  for (const Event& e : doc.events()) {
    events.push_back({{"id", e.id},
                      {"mention", e.mention},
                      {"sentence_index", e.sentence_index},
                      {"char_span", {e.begin, e.end}}});
  }
  json relations = json::array();
  for (const auto& [pair, label] : doc.gold()) {
    relations.push_back({pair.first, pair.second, std::string(to_string(label))});
  }
  json j = {{"doc_id", doc.doc_id()}, {"text", doc.text()}, {"events", events},
            {"relations", relations}};
  return j.dump(2) + "\n";
}

void validate(const DatasetManifest& manifest) {
  std::set<std::string> ids;
  for (const Document& doc : manifest.documents) {
    if (!ids.insert(doc.doc_id()).second) {
      throw ValidationError(fmt::format("duplicate document id '{}'", doc.doc_id()));
    }
    for (const auto& [pair, label] : doc.gold()) {
      if (!manifest.scheme.contains(label)) {
        throw ValidationError(fmt::format("{}: label '{}' outside scheme '{}'", doc.doc_id(),
                                          to_string(label), manifest.scheme.name()));
      }
      if (manifest.density == AnnotationDensity::kConsecutiveOnly &&
          doc.sentence_distance(pair) > 1) {
        throw ValidationError(fmt::format(
            "{}: pair ({}, {}) at sentence distance {} in a consecutive-only dataset",
            doc.doc_id(), pair.first, pair.second, doc.sentence_distance(pair)));
      }
    }
    if (manifest.density == AnnotationDensity::kComplete &&
        doc.gold().size() != expected_pairs(doc.event_count())) {
      throw ValidationError(fmt::format("{}: complete annotation needs {} pairs, found {}",
                                        doc.doc_id(), expected_pairs(doc.event_count()),
                                        doc.gold().size()));
    }
  }
}

DatasetManifest load(const std::filesystem::path& dir, FormatProfile profile,
                     DatasetSplit split) {
  if (!std::filesystem::is_directory(dir)) {
    throw LoadError(fmt::format("dataset directory {} does not exist", dir.string()));
  }
  const ProfileDefaults defaults = defaults_for(profile);
  DatasetManifest manifest;
  manifest.name = defaults.name;
  manifest.scheme = defaults.scheme;
  manifest.density = defaults.density;
  manifest.split = split;

  std::vector<std::string> files;
  std::map<std::string, std::vector<std::string>> splits;
  const auto meta_path = dir / "dataset.json";
  if (std::filesystem::exists(meta_path)) {
    json meta;
    try {
      meta = json::parse(read_file(meta_path));
      if (meta.contains("name")) manifest.name = meta.at("name").get<std::string>();
      if (meta.contains("scheme")) manifest.scheme = Scheme::parse(meta.at("scheme").get<std::string>());
      if (meta.contains("annotation_density")) {
        manifest.density = parse_density(meta.at("annotation_density").get<std::string>());
      }
      if (meta.contains("documents")) files = meta.at("documents").get<std::vector<std::string>>();
      if (meta.contains("splits")) {
        splits = meta.at("splits").get<std::map<std::string, std::vector<std::string>>>();
      }
    } catch (const json::exception& e) {
      throw LoadError(fmt::format("{}: {}", meta_path.string(), e.what()));
    }
  }
  if (files.empty()) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && entry.path().extension() == ".json" && name != "dataset.json") {
        files.push_back(name);
      }
    }
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw LoadError(fmt::format("no documents in {}", dir.string()));

  std::vector<std::string> selected;
  if (split == DatasetSplit::kAll) {
    selected = files;
  } else if (auto it = splits.find(std::string(to_string(split))); it != splits.end()) {
    selected = it->second;
  } else if (profile == FormatProfile::kOmniTemp && split != DatasetSplit::kDev) {
    // First ten documents test, the rest train.
    const auto cut = static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, files.size()));
    if (split == DatasetSplit::kTest) {
      selected.assign(files.begin(), files.begin() + cut);
    } else {
      selected.assign(files.begin() + cut, files.end());
    }
  } else {
    throw LoadError(fmt::format("{}: no '{}' split defined", dir.string(), to_string(split)));
  }

  for (const std::string& file : selected) {
    try {
      manifest.documents.push_back(parse_document(read_file(dir / file), manifest.scheme));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}: {}", file, e.what()));
    }
  }
  validate(manifest);

  if (profile == FormatProfile::kOmniTemp && files.size() == kOmniTempAll.documents) {
    if (split == DatasetSplit::kAll) check_totals(manifest, kOmniTempAll, "full corpus");
    if (split == DatasetSplit::kTest) check_totals(manifest, kOmniTempTest, "test split");
  }
  return manifest;
}

void save(const DatasetManifest& manifest, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  for (const Document& doc : manifest.documents) {
    const std::string file = doc.doc_id() + ".json";
    write_file(dir / file, serialize_document(doc));
    files.push_back(file);
  }
  json meta = {{"name", manifest.name},
               {"scheme", std::string(manifest.scheme.name())},
               {"annotation_density", std::string(to_string(manifest.density))},
               {"documents", files}};
  write_file(dir / "dataset.json", meta.dump(2) + "\n");
}

Document subsample_events(const Document& doc, std::size_t k, std::uint64_t seed) {
  const std::size_t n = doc.event_count();
  if (k > n) {
    throw ValidationError(fmt::format("{}: cannot sample {} of {} events", doc.doc_id(), k, n));
  }
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(engine, n - i));
    std::swap(positions[i], positions[j]);
  }
  positions.resize(k);
  std::sort(positions.begin(), positions.end());

  std::vector<Event> events;
  std::set<EventId> kept;
  for (std::size_t p : positions) {
    events.push_back(doc.events()[p]);
    kept.insert(doc.events()[p].id);
  }
  GoldMap gold;
  for (const auto& [pair, label] : doc.gold()) {
    if (kept.contains(pair.first) && kept.contains(pair.second)) gold.emplace(pair, label);
  }
  return Document(doc.doc_id(), doc.text(), std::move(events), std::move(gold));
}

DatasetManifest drop_label(DatasetManifest manifest, Relation label) {
  std::size_t removed = 0;
  for (Document& doc : manifest.documents) {
    GoldMap gold;
    for (const auto& [pair, l] : doc.gold()) {
      if (l == label) {
        ++removed;
      } else {
        gold.emplace(pair, l);
      }
    }
    if (gold.size() != doc.gold().size()) doc = doc.with_gold(std::move(gold));
  }
  if (manifest.scheme.variant() == Scheme::Variant::kNarrative && label == Relation::kOverlap) {
    manifest.scheme = Scheme::six();
    manifest.notes.push_back("scheme narrowed to six labels after dropping overlap");
  }
  if (removed > 0 && manifest.density == AnnotationDensity::kComplete) {
    manifest.density = AnnotationDensity::kPartial;
    manifest.notes.push_back(fmt::format(
        "density downgraded from complete to partial: {} '{}' pairs removed", removed,
        to_string(label)));
  }
  return manifest;
}

Document restrict_to_consecutive(const Document& doc) {
  GoldMap gold;
  for (const auto& [pair, label] : doc.gold()) {
    if (doc.sentence_distance(pair) <= 1) gold.emplace(pair, label);
  }
  return doc.with_gold(std::move(gold));
}

RelationFormat parse_relation_format(std::string_view name) {
  if (name == "matres") return RelationFormat::kMatresTsv;
  if (name == "tbdense") return RelationFormat::kTbDenseTsv;
  throw ValidationError(fmt::format("unknown relation format '{}' (expected matres|tbdense)", name));
}

DatasetManifest import_relations(const DatasetManifest& documents,
                                 const std::filesystem::path& relations_file,
                                 RelationFormat format, ImportReport* report) {
  ImportReport local;
  ImportReport& rep = report ? *report : local;
  rep = ImportReport{};

  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < documents.documents.size(); ++i) {
    by_id.emplace(documents.documents[i].doc_id(), i);
  }
  std::vector<GoldMap> gold(documents.documents.size());

  auto trailing_int = [](std::string_view s) -> std::optional<EventId> {
    std::size_t end = s.size();
    std::size_t begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(s[begin - 1]))) --begin;
    if (begin == end) return std::nullopt;
    return std::stoi(std::string(s.substr(begin, end - begin)));
  };

  std::istringstream in(read_file(relations_file));
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::istringstream fields(line);
    std::string col;
    while (std::getline(fields, col, '\t')) cols.push_back(col);
    std::string doc, a, b, rel;
    if (format == RelationFormat::kMatresTsv && cols.size() >= 6) {
      doc = cols[0], a = cols[3], b = cols[4], rel = cols[5];
    } else if (format == RelationFormat::kTbDenseTsv && cols.size() >= 4) {
      doc = cols[0], a = cols[1], b = cols[2], rel = cols[3];
    } else {
      throw LoadError(fmt::format("{}:{}: wrong column count", relations_file.string(), line_no));
    }
    std::optional<Relation> label;
    if (format == RelationFormat::kTbDenseTsv) {
      static const std::map<std::string, Relation> kCodes = {
          {"b", Relation::kBefore},   {"a", Relation::kAfter},
          {"s", Relation::kEqual},    {"v", Relation::kVague},
          {"i", Relation::kIncludes}, {"ii", Relation::kIsIncluded}};
      auto it = kCodes.find(rel);
      if (it != kCodes.end()) label = it->second;
    } else {
      label = parse_relation(rel);
    }
    if (!label || !documents.scheme.contains(*label)) {
      throw LoadError(fmt::format("{}:{}: unknown relation '{}'", relations_file.string(),
                                  line_no, rel));
    }
    const auto doc_it = by_id.find(doc);
    if (doc_it == by_id.end()) {
      ++rep.skipped_unknown_doc;
      continue;
    }
    const Document& d = documents.documents[doc_it->second];
    const auto ia = trailing_int(a), ib = trailing_int(b);
    if (!ia || !ib || *ia == *ib || !d.has_event(*ia) || !d.has_event(*ib)) {
      ++rep.skipped_unknown_event;
      continue;
    }
    const OrientedLabel o = orient(*ia, *ib, *label);
    if (!gold[doc_it->second].emplace(o.pair, o.label).second) {
      ++rep.skipped_duplicate;
      continue;
    }
    ++rep.imported;
  }

  DatasetManifest out = documents;
  for (std::size_t i = 0; i < out.documents.size(); ++i) {
    out.documents[i] = out.documents[i].with_gold(std::move(gold[i]));
  }
  out.density = AnnotationDensity::kConsecutiveOnly;
  validate(out);
  return out;
}

CorpusStats stats(const DatasetManifest& manifest) {
  CorpusStats s;
  s.documents = manifest.documents.size();
  for (const Document& doc : manifest.documents) {
    s.events += doc.event_count();
    s.relations += doc.gold().size();
    for (const auto& [pair, label] : doc.gold()) ++s.per_label[label];
  }
  return s;
}

std::string format_stats(const std::vector<std::pair<std::string, CorpusStats>>& columns,
                         Scheme scheme) {
  std::string out = fmt::format("{:<18}", "");
  for (const auto& [name, s] : columns) out += fmt::format(" {:>10}", name);
  out += "\n";
  auto row = [&](std::string_view label, auto value_of) {
    out += fmt::format("{:<18}", label);
    for (const auto& [name, s] : columns) out += fmt::format(" {:>10}", value_of(s));
    out += "\n";
  };
  row("Documents", [](const CorpusStats& s) { return s.documents; });
  row("Events", [](const CorpusStats& s) { return s.events; });
  for (Relation r : scheme.labels()) {
    row(to_string(r), [r](const CorpusStats& s) {
      auto it = s.per_label.find(r);
      return it == s.per_label.end() ? std::size_t{0} : it->second;
    });
  }
  row("Total Relations", [](const CorpusStats& s) { return s.relations; });
  return out;
}

}  // namespace tempograph
