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

#include "commands.hpp"

#include <charconv>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "tempograph/aggregate.hpp"
#include "tempograph/algebra.hpp"
#include "tempograph/corpus.hpp"
#include "tempograph/errors.hpp"
#include "tempograph/graph_parser.hpp"
#include "tempograph/io.hpp"
#include "tempograph/llm_gateway.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/pipeline.hpp"
#include "tempograph/prompt.hpp"
#include "tempograph/solver.hpp"

namespace tempograph::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Dataset selection shared by several subcommands.
struct DatasetArgs {
  std::string dir;
  std::string profile = "canonical";
  std::string split = "all";

  void add_to(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--dataset", dir, "Dataset directory")->check(CLI::ExistingDirectory);
    if (required) opt->required();
    cmd->add_option("--profile", profile, "omnitemp|matres|tbdense|narrative|canonical")
        ->capture_default_str();
    cmd->add_option("--split", split, "train|dev|test|all")->capture_default_str();
  }

  DatasetManifest load_manifest() const {
    return load(dir, parse_profile(profile), parse_split(split));
  }
};

// Run options: an optional JSON config file overridden by explicit flags.
// Flag names are the config keys.
struct RunArgs {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::vector<std::string> documents;
  bool replay_only = false;
  bool no_cache = false;

  inline static const std::set<std::string> kStringKeys = {
      "dataset", "profile", "split", "scheme", "variant", "split-profile", "model",
      "base-url", "api-key-env", "cache-dir", "cache-mode", "aggregation", "output-dir",
      "templates-dir"};
  inline static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"dataset", "Dataset directory"},
      {"profile", "Dataset profile"},
      {"split", "Dataset split"},
      {"scheme", "four|six"},
      {"variant", "global|timeline"},
      {"split-profile", "standard|dense"},
      {"model", "Model name"},
      {"base-url", "OpenAI-compatible endpoint"},
      {"temperature", "Sampling temperature"},
      {"max-output-tokens", "Output token cap"},
      {"api-key-env", "Environment variable holding the API key"},
      {"cache-dir", "Response cache directory"},
      {"cache-mode", "read-write|replay-only|no-cache"},
      {"max-attempts", "Network attempts per call"},
      {"backoff-ms", "Initial retry backoff"},
      {"max-in-flight", "Concurrent requests"},
      {"max-regen", "Regenerations for malformed outputs"},
      {"generations", "Generations per prompt (M)"},
      {"seed", "Recorded seed"},
      {"time-limit", "Solver time limit in seconds"},
      {"aggregation", "solve|vote|first"},
      {"output-dir", "Output directory"},
      {"templates-dir", "Prompt template directory"},
      {"workers", "Documents processed concurrently"},
  };

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON run config")->check(CLI::ExistingFile);
    for (const auto& [key, help] : kFlags) cmd->add_option("--" + key, values[key], help);
    cmd->add_flag("--soft-vague", "Add vague to every composition set");
    cmd->add_option("--documents", documents, "Restrict to these document ids");
    cmd->add_flag("--replay-only", replay_only, "Serve from cache only");
    cmd->add_flag("--no-cache", no_cache, "Bypass the cache");
  }

  RunConfig build(CLI::App* cmd) const {
    RunConfig config;
    if (!config_file.empty()) config = load_run_config(config_file);
    json overrides = json::object();
    for (const auto& [key, help] : kFlags) {
      if (cmd->count("--" + key) == 0) continue;
      const std::string& v = values.at(key);
      if (kStringKeys.contains(key)) {
        overrides[key] = v;
      } else {
        try {
          overrides[key] = json::parse(v);
        } catch (const json::exception&) {
          throw ValidationError(fmt::format("--{} expects a number, got '{}'", key, v));
        }
      }
    }
    if (cmd->count("--soft-vague") > 0) overrides["soft-vague"] = true;
    if (cmd->count("--documents") > 0) {
      overrides["documents"] = documents;
    }
    if (replay_only && no_cache) throw ValidationError("--replay-only and --no-cache conflict");
    if (replay_only) overrides["cache-mode"] = "replay-only";
    if (no_cache) overrides["cache-mode"] = "no-cache";
    apply_config_json(config, overrides.dump());
    return config;
  }
};

std::unique_ptr<LlmGateway> make_gateway(const RunConfig& config) {
  return std::make_unique<LlmGateway>(config.model, config.gateway, make_http_transport());
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string part = text.substr(start, comma - start);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw ValidationError(fmt::format("'{}' is not a comma-separated list of integers", text));
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

// Reads <dir>/<doc>.dot for every document; missing files are reported.
std::vector<DocumentPrediction> load_graphs(const DatasetManifest& dataset, const fs::path& dir,
                                            std::vector<Document>* matched) {
  std::vector<DocumentPrediction> preds;
  for (const Document& doc : dataset.documents) {
    const fs::path file = dir / (doc.doc_id() + ".dot");
    if (!fs::exists(file)) {
      std::cerr << fmt::format("warning: no graph for {}; excluded\n", doc.doc_id());
      continue;
    }
    preds.push_back({doc.doc_id(), parse_graph(read_text_file(file), dataset.scheme)});
    matched->push_back(doc);
  }
  if (preds.empty()) throw LoadError(fmt::format("no graphs found in {}", dir.string()));
  return preds;
}

void print_subsets(const std::vector<SubsetReport>& subsets) {
  std::vector<std::pair<std::string, EvalReport>> rows;
  for (const SubsetReport& s : subsets) {
    rows.emplace_back(s.empty ? s.name + " (empty)" : s.name, s.report);
  }
  std::cout << format_report_table(rows);
}

void print_histograms(const ClosureGapStudy& study) {
  std::cout << fmt::format("{:>8}  {:>9}  {:>10}  {:>7}\n", "distance", "original", "restricted",
                           "closed");
  for (const auto& [d, n] : study.original) {
    std::cout << fmt::format("{:>8}  {:>9}  {:>10}  {:>7}\n", d, n, study.restricted.at(d),
                             study.closed.at(d));
  }
}

void add_corpus(CLI::App& app, std::function<int()>& action) {
  auto* corpus = app.add_subcommand("corpus", "Dataset loading, validation and conversion");
  corpus->require_subcommand(1);

  auto args = std::make_shared<DatasetArgs>();
  auto* validate_cmd = corpus->add_subcommand("validate", "Load and validate a dataset");
  args->add_to(validate_cmd);
  validate_cmd->callback([&action, args] {
    action = [args] {
      const DatasetManifest m = args->load_manifest();
      const CorpusStats s = stats(m);
      std::cout << fmt::format("ok: {} ({}, {}) {} documents, {} events, {} relations\n", m.name,
                               m.scheme.name(), to_string(m.density), s.documents, s.events,
                               s.relations);
      return 0;
    };
  });

  auto stats_args = std::make_shared<DatasetArgs>();
  auto* stats_cmd = corpus->add_subcommand("stats", "Label counts per split");
  stats_args->add_to(stats_cmd);
  stats_cmd->callback([&action, stats_args] {
    action = [stats_args] {
      std::vector<std::pair<std::string, CorpusStats>> columns;
      std::optional<Scheme> scheme;
      for (DatasetSplit split : {DatasetSplit::kTrain, DatasetSplit::kTest, DatasetSplit::kAll}) {
        try {
          const DatasetManifest m =
              load(stats_args->dir, parse_profile(stats_args->profile), split);
          scheme = m.scheme;
          std::string name(to_string(split));
          name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
          columns.emplace_back(name, stats(m));
        } catch (const LoadError&) {
          if (split == DatasetSplit::kAll) throw;
        }
      }
      std::cout << format_stats(columns, *scheme);
      return 0;
    };
  });

  struct ConvertArgs {
    DatasetArgs in;
    std::string out;
    std::string drop;
    bool consecutive = false;
    std::string relations;
    std::string relation_format = "matres";
    std::size_t subsample = 0;
    std::uint64_t seed = 0;
  };
  auto conv = std::make_shared<ConvertArgs>();
  auto* convert_cmd = corpus->add_subcommand("convert", "Transform and save in canonical form");
  conv->in.add_to(convert_cmd);
  convert_cmd->add_option("--out", conv->out, "Output directory")->required();
  convert_cmd->add_option("--drop-label", conv->drop, "Remove pairs with this label");
  convert_cmd->add_flag("--consecutive-only", conv->consecutive, "Keep sentence distance <= 1");
  convert_cmd->add_option("--relations", conv->relations, "Sparse relation file to import")
      ->check(CLI::ExistingFile);
  convert_cmd->add_option("--relation-format", conv->relation_format, "matres|tbdense")
      ->capture_default_str();
  convert_cmd->add_option("--subsample", conv->subsample, "Keep k uniformly chosen events per document");
  convert_cmd->add_option("--seed", conv->seed, "Subsampling seed")->capture_default_str();
  convert_cmd->callback([&action, conv] {
    action = [conv] {
      DatasetManifest m = conv->in.load_manifest();
      if (!conv->relations.empty()) {
        ImportReport report;
        m = import_relations(m, conv->relations, parse_relation_format(conv->relation_format),
                             &report);
        std::cerr << fmt::format(
            "imported {} relations; skipped {} unknown document, {} unknown event, {} duplicate\n",
            report.imported, report.skipped_unknown_doc, report.skipped_unknown_event,
            report.skipped_duplicate);
      }
      if (!conv->drop.empty()) {
        const auto label = parse_relation(conv->drop);
        if (!label) throw ValidationError(fmt::format("unknown label '{}'", conv->drop));
        m = drop_label(std::move(m), *label);
      }
      if (conv->consecutive) {
        for (Document& d : m.documents) d = restrict_to_consecutive(d);
        if (m.density == AnnotationDensity::kComplete) m.density = AnnotationDensity::kConsecutiveOnly;
      }
      if (conv->subsample > 0) {
        for (Document& d : m.documents) {
          if (d.event_count() > conv->subsample) d = subsample_events(d, conv->subsample, conv->seed);
        }
      }
      validate(m);
      save(m, conv->out);
      for (const std::string& note : m.notes) std::cerr << "note: " << note << "\n";
      std::cout << fmt::format("wrote {} documents to {}\n", m.documents.size(), conv->out);
      return 0;
    };
  });
}

void add_prompt(CLI::App& app, std::function<int()>& action) {
  struct Args {
    DatasetArgs data;
    std::string doc;
    std::string variant = "timeline";
    std::string split_profile = "standard";
    std::string templates;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("prompt", "Print the prompts for one document");
  a->data.add_to(cmd);
  cmd->add_option("--doc", a->doc, "Document id")->required();
  cmd->add_option("--variant", a->variant, "global|timeline")->capture_default_str();
  cmd->add_option("--split-profile", a->split_profile, "standard|dense")->capture_default_str();
  cmd->add_option("--templates-dir", a->templates, "Template directory")->check(CLI::ExistingDirectory);
  cmd->callback([&action, a] {
    action = [a] {
      const DatasetManifest m = a->data.load_manifest();
      auto it = std::find_if(m.documents.begin(), m.documents.end(),
                             [&](const Document& d) { return d.doc_id() == a->doc; });
      if (it == m.documents.end()) throw ValidationError(fmt::format("no document '{}'", a->doc));
      const PromptTemplates templates =
          a->templates.empty() ? PromptTemplates::defaults() : PromptTemplates::load(a->templates);
      const auto bundles = build_prompts(*it, parse_variant(a->variant), m.scheme,
                                         parse_split_profile(a->split_profile), templates);
      for (const PromptBundle& b : bundles) {
        std::cout << fmt::format("=== split {}/{} ({} pairs, {}) ===\n--- system ---\n{}\n--- user ---\n{}\n",
                                 b.split_index + 1, b.total_splits, b.pairs.size(),
                                 b.template_version, b.system_text, b.user_text);
      }
      return 0;
    };
  });
}

void add_extract(CLI::App& app, std::function<int()>& action) {
  auto a = std::make_shared<RunArgs>();
  auto* cmd = app.add_subcommand("extract", "Generate and cache validated outputs; write records");
  a->add_to(cmd);
  cmd->callback([&action, a, cmd] {
    action = [a, cmd] {
      const RunConfig config = a->build(cmd);
      config.validate();
      const DatasetManifest m = load(config.dataset, config.profile, config.split);
      auto gateway = make_gateway(config);
      const PromptTemplates templates = config.templates_dir.empty()
                                            ? PromptTemplates::defaults()
                                            : PromptTemplates::load(config.templates_dir);
      const auto gens = collect_generations(config, m, *gateway, templates);
      json failures = json::array();
      for (const DocumentGenerations& g : gens) {
        if (!g.error.empty()) {
          failures.push_back({{"doc_id", g.doc_id}, {"error", g.error}});
          continue;
        }
        write_text_file_atomic(config.output_dir / "records" / (g.doc_id + ".json"),
                               serialize_records({g.doc_id, config.scheme.value_or(m.scheme), g.records}));
      }
      const GatewayStats s = gateway->stats();
      std::cout << fmt::format("records for {} documents; cache hits {}, misses {}, calls {}\n",
                               gens.size() - failures.size(), s.cache_hits, s.cache_misses,
                               s.network_calls);
      if (!failures.empty()) {
        std::cerr << json({{"status", "partial"}, {"failed", failures}}).dump() << "\n";
        return 2;
      }
      return 0;
    };
  });
}

void add_aggregate(CLI::App& app, std::function<int()>& action) {
  struct Args {
    std::string records;
    std::string out;
    std::string vote_out;
    int limit = 0;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("aggregate", "Turn a record file into label distributions");
  cmd->add_option("--records", a->records, "Record file from extract")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "Distribution file (default stdout)");
  cmd->add_option("--vote", a->vote_out, "Also write the majority-vote graph here");
  cmd->add_option("--generations", a->limit, "Use only the first m generations");
  cmd->callback([&action, a] {
    action = [a] {
      RecordFile file = parse_records(read_text_file(a->records));
      if (a->limit > 0) {
        if (static_cast<std::size_t>(a->limit) > file.generations.size()) {
          throw ValidationError(fmt::format("{} generations requested, {} recorded", a->limit,
                                            file.generations.size()));
        }
        file.generations.resize(static_cast<std::size_t>(a->limit));
      }
      if (file.generations.empty()) throw ValidationError("record file has no generations");
      std::set<PairKey> pairs;
      for (const GenerationRecord& g : file.generations) {
        for (const auto& [p, l] : g.parsed) pairs.insert(p);
        for (PairKey p : g.missing) pairs.insert(p);
      }
      const std::vector<PairKey> list(pairs.begin(), pairs.end());
      const DistributionSet dist = aggregate(file.generations, list, file.scheme, file.doc_id);
      const std::string text = serialize(dist);
      if (a->out.empty()) {
        std::cout << text;
      } else {
        write_text_file_atomic(a->out, text);
      }
      if (!a->vote_out.empty()) write_text_file_atomic(a->vote_out, to_dot(majority_vote(dist)));
      return 0;
    };
  });
}

void add_solve(CLI::App& app, std::function<int()>& action) {
  struct Args {
    std::string in;
    std::string out;
    std::string scheme;
    double time_limit = kDefaultTimeLimit.count();
    bool soft_vague = false;
    bool greedy = false;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("solve", "Most probable consistent graph for a distribution file");
  cmd->add_option("--in", a->in, "Distribution file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", a->out, "DOT output (default stdout)");
  cmd->add_option("--scheme", a->scheme, "Expected scheme; must match the file");
  cmd->add_option("--time-limit", a->time_limit, "Seconds; 0 disables")->capture_default_str();
  cmd->add_flag("--soft-vague", a->soft_vague, "Add vague to every composition set");
  cmd->add_flag("--greedy", a->greedy, "Greedy repair only");
  cmd->callback([&action, a] {
    action = [a] {
      const DistributionSet dist = parse_distributions(read_text_file(a->in));
      if (!a->scheme.empty() && Scheme::parse(a->scheme) != dist.scheme) {
        throw ValidationError(fmt::format("file holds scheme '{}', not '{}'", dist.scheme.name(),
                                          a->scheme));
      }
      SolveProblem problem{dist.pairs(), dist, build_table(dist.scheme, {a->soft_vague}),
                           kDefaultTimeLimit};
      if (a->time_limit > 0) {
        problem.time_limit = Seconds(a->time_limit);
      } else {
        problem.time_limit.reset();
      }
      const SolveResult r = a->greedy ? greedy_repair(problem) : solve(problem);
      const std::string dot = to_dot(r.graph);
      if (a->out.empty()) {
        std::cout << dot;
      } else {
        write_text_file_atomic(a->out, dot);
      }
      std::cerr << fmt::format("objective {:.6f} optimal {} nodes {}\n", r.objective, r.optimal,
                               r.nodes_explored);
      return 0;
    };
  });
}

void add_eval(CLI::App& app, std::function<int()>& action) {
  struct Args {
    DatasetArgs data;
    std::string graphs;
    bool soft_vague = false;
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("eval", "Score predicted graphs against gold");
  a->data.add_to(cmd);
  cmd->add_option("--graphs", a->graphs, "Directory of <doc>.dot files")->required()->check(CLI::ExistingDirectory);
  cmd->add_flag("--soft-vague", a->soft_vague, "Soft vague table for TI");
  cmd->callback([&action, a] {
    action = [a] {
      const DatasetManifest m = a->data.load_manifest();
      std::vector<Document> docs;
      const auto preds = load_graphs(m, a->graphs, &docs);
      const EvalReport r = evaluate(docs, preds, build_table(m.scheme, {a->soft_vague}));
      std::cout << format_report(r, m.scheme) << "\n" << format_report_table({{"all", r}});
      return 0;
    };
  });
}

void add_analyze(CLI::App& app, std::function<int()>& action) {
  auto* analyze = app.add_subcommand("analyze", "Bucketed and corpus-level analyses");
  analyze->require_subcommand(1);

  struct GraphArgs {
    DatasetArgs data;
    std::string graphs;
    std::string edges = "10,20";
  };
  auto dist_args = std::make_shared<GraphArgs>();
  auto* distance = analyze->add_subcommand("distance", "F1 by sentence distance");
  dist_args->data.add_to(distance);
  distance->add_option("--graphs", dist_args->graphs, "Directory of <doc>.dot files")->required();
  distance->callback([&action, dist_args] {
    action = [dist_args] {
      const DatasetManifest m = dist_args->data.load_manifest();
      std::vector<Document> docs;
      const auto preds = load_graphs(m, dist_args->graphs, &docs);
      print_subsets(distance_buckets(docs, preds, build_table(m.scheme)));
      return 0;
    };
  });

  auto ev_args = std::make_shared<GraphArgs>();
  auto* events = analyze->add_subcommand("events", "F1 by cumulative event count");
  ev_args->data.add_to(events);
  events->add_option("--graphs", ev_args->graphs, "Directory of <doc>.dot files")->required();
  events->add_option("--edges", ev_args->edges, "Ascending bucket edges")->capture_default_str();
  events->callback([&action, ev_args] {
    action = [ev_args] {
      const DatasetManifest m = ev_args->data.load_manifest();
      std::vector<Document> docs;
      const auto preds = load_graphs(m, ev_args->graphs, &docs);
      std::vector<std::string> notes;
      const auto edges = parse_size_list(ev_args->edges);
      print_subsets(event_count_buckets(docs, preds, edges, build_table(m.scheme), &notes));
      for (const auto& n : notes) std::cerr << "note: " << n << "\n";
      return 0;
    };
  });

  auto closure_args = std::make_shared<DatasetArgs>();
  auto* closure = analyze->add_subcommand("closure", "Gold relations recoverable by closure");
  closure_args->add_to(closure);
  closure->callback([&action, closure_args] {
    action = [closure_args] {
      const DatasetManifest m = closure_args->load_manifest();
      print_histograms(closure_gap_study(m, build_table(m.scheme)));
      return 0;
    };
  });

  struct SweepArgs {
    DatasetArgs data;
    std::string records;
    std::string m_values = "1,2,3,4,5";
    double time_limit = kDefaultTimeLimit.count();
  };
  auto sweep_args = std::make_shared<SweepArgs>();
  auto* sweep = analyze->add_subcommand("sweep", "F1 against the number of generations");
  sweep_args->data.add_to(sweep);
  sweep->add_option("--records", sweep_args->records, "Directory of <doc>.json record files")
      ->required()
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--m", sweep_args->m_values, "Generation counts")->capture_default_str();
  sweep->add_option("--time-limit", sweep_args->time_limit, "Solver seconds per document")
      ->capture_default_str();
  sweep->callback([&action, sweep_args] {
    action = [sweep_args] {
      const DatasetManifest m = sweep_args->data.load_manifest();
      std::vector<Document> docs;
      std::vector<std::vector<GenerationRecord>> records;
      for (const Document& d : m.documents) {
        const fs::path file = fs::path(sweep_args->records) / (d.doc_id() + ".json");
        if (!fs::exists(file)) continue;
        docs.push_back(d);
        records.push_back(parse_records(read_text_file(file)).generations);
      }
      if (docs.empty()) throw LoadError("no record files match the dataset");
      std::vector<int> ms;
      for (std::size_t v : parse_size_list(sweep_args->m_values)) ms.push_back(static_cast<int>(v));
      SweepOptions options;
      options.time_limit = Seconds(sweep_args->time_limit);
      std::vector<std::pair<std::string, EvalReport>> rows;
      for (const SweepPoint& p : generation_sweep(docs, records, ms, build_table(m.scheme), options)) {
        rows.emplace_back(fmt::format("m={}", p.generations), p.report);
      }
      std::cout << format_report_table(rows);
      return 0;
    };
  });

  struct AuditArgs {
    DatasetArgs a;
    std::string b_dir;
    std::string b_profile = "canonical";
    std::optional<std::size_t> expect_shared;
  };
  auto audit_args = std::make_shared<AuditArgs>();
  auto* audit = analyze->add_subcommand("audit", "Directional label agreement between two datasets");
  audit_args->a.add_to(audit);
  audit->add_option("--other", audit_args->b_dir, "Second dataset directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  audit->add_option("--other-profile", audit_args->b_profile, "Profile of the second dataset")
      ->capture_default_str();
  audit->add_option("--expect-shared", audit_args->expect_shared, "Assert the shared pair count");
  audit->callback([&action, audit_args] {
    action = [audit_args] {
      const DatasetManifest a = audit_args->a.load_manifest();
      const DatasetManifest b = load(audit_args->b_dir, parse_profile(audit_args->b_profile));
      const AuditReport r = label_consistency_audit(a, b);
      std::cout << fmt::format("shared pairs {}\nunalignable {}\n", r.shared_pairs, r.unalignable);
      std::cout << fmt::format("{:<8}  {:>10}  {:>12}\n", "relation", "consistent", "inconsistent");
      for (const auto& [rel, c] : r.per_relation) {
        std::cout << fmt::format("{:<8}  {:>10}  {:>12}\n", to_string(rel), c.consistent, c.inconsistent);
      }
      if (audit_args->expect_shared && *audit_args->expect_shared != r.shared_pairs) {
        throw ValidationError(fmt::format("expected {} shared pairs, found {}",
                                          *audit_args->expect_shared, r.shared_pairs));
      }
      return 0;
    };
  });
}

void add_ablate(CLI::App& app, std::function<int()>& action) {
  auto a = std::make_shared<RunArgs>();
  auto which = std::make_shared<std::vector<std::string>>(std::vector<std::string>{
      "zsl-global", "zsl-timeline", "self-consistency", "global-consistency"});
  auto* cmd = app.add_subcommand("ablate", "Compare prompting and aggregation variants");
  a->add_to(cmd);
  cmd->add_option("--which", *which, "Variants to run")->capture_default_str();
  cmd->callback([&action, a, which, cmd] {
    action = [a, which, cmd] {
      const RunConfig config = a->build(cmd);
      auto gateway = make_gateway(config);
      std::vector<AblationResult> rows;
      for (const std::string& w : *which) rows.push_back(ablate(config, parse_ablation(w), *gateway));
      std::cout << format_ablation_table(rows);
      return 0;
    };
  });
}

void add_parse(CLI::App& app, std::function<int()>& action) {
  struct Args {
    std::string raw;
    std::string scheme = "four";
  };
  auto a = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("parse", "Normalize a raw model response to DOT");
  cmd->add_option("--raw", a->raw, "Response file, - for stdin")->required();
  cmd->add_option("--scheme", a->scheme, "four|six")->capture_default_str();
  cmd->callback([&action, a] {
    action = [a] {
      std::string text;
      if (a->raw == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
      } else {
        text = read_text_file(a->raw);
      }
      const Scheme scheme = Scheme::parse(a->scheme);
      const ParseOutcome outcome =
          parse_edges(extract_dot_block(text), [](EventId) { return true; }, scheme);
      TemporalGraph g(scheme);
      for (const ParsedEdge& e : outcome.edges) g.set(e.pair.first, e.pair.second, e.label);
      for (const std::string& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << to_dot(g);
      return 0;
    };
  });
}

void add_algebra(CLI::App& app, std::function<int()>& action) {
  auto* algebra = app.add_subcommand("algebra", "Composition tables");
  algebra->require_subcommand(1);
  struct Args {
    std::string scheme = "four";
    bool soft_vague = false;
  };
  auto a = std::make_shared<Args>();
  auto* dump = algebra->add_subcommand("dump", "Print the composition table");
  dump->add_option("--scheme", a->scheme, "four|six")->capture_default_str();
  dump->add_flag("--soft-vague", a->soft_vague, "Add vague to every composition set");
  dump->callback([&action, a] {
    action = [a] {
      const CompositionTable t = build_table(Scheme::parse(a->scheme), {a->soft_vague});
      std::cout << t.dump();
      return 0;
    };
  });
}

void add_cache(CLI::App& app, std::function<int()>& action) {
  auto* cache = app.add_subcommand("cache", "Inspect the response cache");
  cache->require_subcommand(1);
  auto dir = std::make_shared<std::string>("cache");
  auto* stats_cmd = cache->add_subcommand("stats", "Count cached responses");
  stats_cmd->add_option("--cache-dir", *dir, "Cache directory")->capture_default_str();
  stats_cmd->callback([&action, dir] {
    action = [dir] {
      std::cout << fmt::format("{} entries in {}\n", ResponseCache(*dir).entry_count(), *dir);
      return 0;
    };
  });
  auto key = std::make_shared<std::string>();
  auto* inv = cache->add_subcommand("invalidate", "Move one entry aside");
  inv->add_option("--cache-dir", *dir, "Cache directory")->capture_default_str();
  inv->add_option("key", *key, "Entry key")->required();
  inv->callback([&action, dir, key] {
    action = [dir, key] {
      ResponseCache(*dir).invalidate(*key);
      return 0;
    };
  });
}

void add_run(CLI::App& app, std::function<int()>& action) {
  auto a = std::make_shared<RunArgs>();
  auto* cmd = app.add_subcommand("run", "End-to-end pipeline");
  a->add_to(cmd);
  cmd->callback([&action, a, cmd] {
    action = [a, cmd] {
      const RunConfig config = a->build(cmd);
      auto gateway = make_gateway(config);
      const RunResult r = run_pipeline(config, *gateway);
      const RunManifest& m = r.manifest;
      std::cout << fmt::format("{} documents, {} failed; cache hits {}, misses {}, calls {}\n",
                               m.documents.size(), m.failed(), m.gateway.cache_hits,
                               m.gateway.cache_misses, m.gateway.network_calls);
      if (m.report) std::cout << format_report_table({{"run", *m.report}});
      if (m.failed() > 0) {
        json failed = json::array();
        for (const DocumentStatus& s : m.documents) {
          if (!s.ok) failed.push_back({{"doc_id", s.doc_id}, {"error", s.error}});
        }
        std::cerr << json({{"status", "partial"}, {"failed", failed}}).dump() << "\n";
        return 2;
      }
      return 0;
    };
  });
}

}  // namespace

void register_commands(CLI::App& app, std::function<int()>& action) {
  add_corpus(app, action);
  add_prompt(app, action);
  add_extract(app, action);
  add_aggregate(app, action);
  add_solve(app, action);
  add_eval(app, action);
  add_analyze(app, action);
  add_ablate(app, action);
  add_parse(app, action);
  add_algebra(app, action);
  add_cache(app, action);
  add_run(app, action);
}

}  // namespace tempograph::cli
