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

// Writes the fixture corpus and a synthetic response cache for it.
//
// Every document's gold labels follow from event start times, with untimed
// events vague against everything, so the gold graphs are consistent.
// Generation 0 of every prompt is heavily corrupted; generations 1-4 each
// corrupt a disjoint eighth of the pairs, so majorities recover the gold.
// Rerun after any prompt template change: cache keys cover the prompt text.

#include <filesystem>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tempograph/corpus.hpp"
#include "tempograph/graph_parser.hpp"
#include "tempograph/io.hpp"
#include "tempograph/llm_gateway.hpp"
#include "tempograph/pipeline.hpp"
#include "tempograph/prompt.hpp"

namespace {

using namespace tempograph;
namespace fs = std::filesystem;

constexpr int kGenerations = 5;
constexpr int kUntimed = -1;
constexpr const char* kModel = "fixture-synthetic";

// Sentences with events written as [mention|start]; start -1 means untimed.
struct SourceDoc {
  std::string id;
  std::vector<std::string> sentences;
};

const std::vector<SourceDoc>& sources() {
  static const std::vector<SourceDoc> docs = {
      {"fx-harbor",
       {"Dock workers [walked|2] off the job on Monday after talks [collapsed|1] overnight.",
        "The port authority [warned|3] that shipments would back up.",
        "Two freighters [anchored|4] outside the breakwater by evening.",
        "Union leaders later [agreed|5] to resume negotiations, and the mayor [praised|5] the move.",
        "Analysts [expect|-1] further delays."}},
      {"fx-election",
       {"Polls [closed|3] at eight after a day of long queues.",
        "Officials had [extended|2] voting hours when machines [failed|1] in two districts.",
        "The challenger [conceded|6] shortly before midnight.",
        "Her campaign had [predicted|-1] a close race.",
        "Results [showed|5] the incumbent ahead once counting [finished|4].",
        "The governor [congratulated|7] the winner the next morning."}},
      {"fx-storm",
       {"The storm [struck|2] the coast early Tuesday.",
        "Forecasters had [issued|1] warnings a day earlier.",
        "Power [failed|2] across the county as trees [fell|3] on lines.",
        "Crews [restored|5] service by Thursday.",
        "Residents [say|-1] the response was slow."}},
      {"fx-merger",
       {"Northwind Corp. [announced|8] a merger with Halcyon Freight on Friday.",
        "The boards had [approved|7] the deal a week earlier.",
        "Talks [began|1] last spring after a chance meeting at a trade fair.",
        "Halcyon [hired|2] advisers in June.",
        "Northwind [raised|3] its offer twice during the summer.",
        "A rival bidder [withdrew|4] in August.",
        "Regulators [requested|5] documents in September and [opened|6] a review.",
        "Shares of Halcyon [jumped|9] when markets opened Monday.",
        "Northwind [fell|9] slightly the same morning.",
        "Employees [received|10] letters describing the plan.",
        "The companies [expect|-1] savings from shared routes.",
        "Unions [demanded|11] job guarantees within days.",
        "Management [scheduled|12] meetings with union leaders.",
        "A shareholder [sued|13] to block the deal.",
        "The judge [dismissed|14] the suit in November.",
        "Regulators [cleared|15] the merger in December.",
        "The deal [closed|16] on the last day of the year.",
        "Executives [celebrated|16] at a dinner that night.",
        "Analysts [remain|-1] divided on the price.",
        "Integration [started|17] in January.",
        "Northwind [renamed|18] the combined carrier in spring."}},
  };
  return docs;
}

struct BuiltDoc {
  Document doc;
  std::map<EventId, int> start;
};

BuiltDoc build(const SourceDoc& src) {
  std::string text;
  std::vector<Event> events;
  std::map<EventId, int> start;
  EventId next_id = 1;
  for (std::size_t s = 0; s < src.sentences.size(); ++s) {
    if (!text.empty()) text += ' ';
    const std::string& sentence = src.sentences[s];
    std::size_t i = 0;
    while (i < sentence.size()) {
      if (sentence[i] != '[') {
        text += sentence[i++];
        continue;
      }
      const std::size_t bar = sentence.find('|', i);
      const std::size_t close = sentence.find(']', i);
      const std::string mention = sentence.substr(i + 1, bar - i - 1);
      const int t = std::stoi(sentence.substr(bar + 1, close - bar - 1));
      Event e;
      e.id = next_id++;
      e.mention = mention;
      e.sentence_index = static_cast<int>(s);
      e.begin = text.size();
      text += mention;
      e.end = text.size();
      start[e.id] = t;
      events.push_back(e);
      i = close + 1;
    }
  }
  GoldMap gold;
  for (PairKey p : all_pairs(events)) {
    const int a = start[p.first], b = start[p.second];
    Relation r = Relation::kVague;
    if (a != kUntimed && b != kUntimed) {
      r = a < b ? Relation::kBefore : a > b ? Relation::kAfter : Relation::kEqual;
    }
    gold.emplace(p, r);
  }
  return {Document(src.id, text, std::move(events), std::move(gold)), start};
}

// FNV-1a, so the fixtures do not depend on the standard library's hash.
std::uint64_t stable_hash(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Relation corrupt(Relation r) {
  switch (r) {
    case Relation::kBefore: return Relation::kAfter;
    case Relation::kAfter: return Relation::kBefore;
    case Relation::kEqual: return Relation::kBefore;
    default: return Relation::kAfter;
  }
}

std::string upper(Relation r) {
  std::string s(to_string(r));
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// A plausible model response labeling `pairs`, written in one of several
// surface styles so replay exercises the tolerant parser.
std::string respond(const Document& doc, const PromptBundle& bundle, PromptVariant variant,
                    int generation, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PairKey> all = all_pairs(doc.events());
  std::string body;
  const int style = static_cast<int>(seed % 3);
  for (PairKey p : bundle.pairs) {
    const auto k = static_cast<std::size_t>(
        std::lower_bound(all.begin(), all.end(), p) - all.begin());
    Relation r = doc.gold().at(p);
    const bool noisy = generation == 0 ? (rng() % 100) < 35
                                       : k % 8 == static_cast<std::size_t>(2 * (generation - 1));
    if (noisy) r = corrupt(r);
    EventId a = p.first, b = p.second;
    if (rng() % 4 == 0) {
      std::swap(a, b);
      r = inverse(r);
    }
    auto node = [&](EventId id) {
      switch (style) {
        case 0: return fmt::format("e{}", id);
        case 1: return fmt::format("\"{}({})\"", doc.event(id).mention, id);
        default: return fmt::format("{}_{}", doc.event(id).mention, id);
      }
    };
    if (style == 2) {
      body += fmt::format("  {} -> {} [label={}]\n", node(a), node(b), upper(r));
    } else {
      body += fmt::format("  {} -> {} [label=\"{}\"];\n", node(a), node(b), upper(r));
    }
  }
  std::string out;
  if (variant == PromptVariant::kTimeline) {
    out += "Timeline:\n";
    std::vector<const Event*> ordered;
    for (const Event& e : doc.events()) ordered.push_back(&e);
    for (const Event* e : ordered) out += fmt::format("- {}({})\n", e->mention, e->id);
    out += "\n";
  }
  out += "Here is the temporal graph for the requested pairs.\n\n```dot\ndigraph G {\n";
  out += body;
  out += "}\n```\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate the fixture corpus and synthetic response cache."};
  std::string out = "fixtures";
  app.add_option("--out", out, "Fixture root")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const fs::path root = out;
  fs::remove_all(root / "corpus");
  fs::remove_all(root / "cache");

  DatasetManifest manifest;
  manifest.name = "fixture";
  manifest.scheme = Scheme::four();
  manifest.density = AnnotationDensity::kComplete;
  for (const SourceDoc& src : sources()) manifest.documents.push_back(build(src).doc);
  validate(manifest);
  save(manifest, root / "corpus");

  ModelConfig model;
  model.model_name = kModel;
  ResponseCache cache(root / "cache");
  const PromptTemplates templates = PromptTemplates::defaults();
  std::size_t entries = 0;
  for (const Document& doc : manifest.documents) {
    for (PromptVariant variant : {PromptVariant::kGlobal, PromptVariant::kTimeline}) {
      for (const PromptBundle& bundle :
           build_prompts(doc, variant, manifest.scheme, SplitProfile::kStandard, templates)) {
        for (int g = 0; g < kGenerations; ++g) {
          const std::uint64_t seed =
              stable_hash(fmt::format("{}/{}/{}/{}", doc.doc_id(), to_string(variant),
                                                   bundle.split_index, g));
          const std::string response = respond(doc, bundle, variant, g, seed);
          nlohmann::json meta = {{"model", kModel},
                                 {"doc_id", doc.doc_id()},
                                 {"variant", std::string(to_string(variant))},
                                 {"split", bundle.split_index},
                                 {"generation", g},
                                 {"template_version", bundle.template_version},
                                 {"synthetic", true}};
          cache.put(cache_key(model, bundle, g), meta.dump(), response);
          ++entries;
        }
      }
    }
  }

  RunConfig config;
  config.dataset = "corpus";
  config.model = model;
  config.gateway.cache_dir = "cache";
  config.gateway.mode = CacheMode::kReplayOnly;
  config.generations = kGenerations;
  config.output_dir = "out";
  write_text_file_atomic(root / "run.json", run_config_json(config) + "\n");

  std::cout << fmt::format("{} documents, {} cache entries under {}\n", manifest.documents.size(),
                           entries, root.string());
  return 0;
}
