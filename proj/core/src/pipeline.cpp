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

#include "tempograph/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "tempograph/errors.hpp"
#include "tempograph/graph_parser.hpp"
#include "tempograph/io.hpp"

namespace tempograph {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json report_json(const EvalReport& r) {
  json labels = json::object();
  for (const auto& [label, s] : r.per_label) {
    labels[std::string(to_string(label))] = {
        {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"support", s.support}};
  }
  return {{"micro_f1", r.micro_f1},   {"precision", r.precision},
          {"recall", r.recall},       {"ti_mean", r.ti_mean},
          {"pair_count", r.pair_count}, {"missing_predictions", r.missing_predictions},
          {"per_label", labels}};
}

std::string safe_name(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  if (out.empty() || out[0] == '.') out.insert(out.begin(), '_');
  return out;
}

DatasetManifest load_dataset(const RunConfig& config, Scheme* scheme) {
  DatasetManifest dataset = load(config.dataset, config.profile, config.split);
  *scheme = config.scheme.value_or(dataset.scheme);
  if (*scheme != dataset.scheme) {
    throw ValidationError(fmt::format(
        "run scheme '{}' differs from dataset scheme '{}'; convert the dataset first",
        scheme->name(), dataset.scheme.name()));
  }
  if (!config.documents.empty()) {
    std::vector<Document> keep;
    for (const std::string& id : config.documents) {
      auto it = std::find_if(dataset.documents.begin(), dataset.documents.end(),
                             [&](const Document& d) { return d.doc_id() == id; });
      if (it == dataset.documents.end()) {
        throw ValidationError(fmt::format("document '{}' not in dataset", id));
      }
      keep.push_back(*it);
    }
    dataset.documents = std::move(keep);
  }
  return dataset;
}

PromptTemplates templates_for(const RunConfig& config) {
  return config.templates_dir.empty() ? PromptTemplates::defaults()
                                      : PromptTemplates::load(config.templates_dir);
}

TemporalGraph graph_from_record(const GenerationRecord& record, Scheme scheme) {
  TemporalGraph g(scheme);
  for (const auto& [pair, label] : record.parsed) g.set(pair.first, pair.second, label);
  return g;
}

bool has_gold(const DatasetManifest& dataset) {
  return std::any_of(dataset.documents.begin(), dataset.documents.end(),
                     [](const Document& d) { return !d.gold().empty(); });
}

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn fn) {
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Sample standard deviation; zero for fewer than two values.
double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

Aggregation parse_aggregation(std::string_view name) {
  if (name == "solve") return Aggregation::kSolve;
  if (name == "vote") return Aggregation::kVote;
  if (name == "first") return Aggregation::kFirst;
  throw ValidationError(fmt::format("unknown aggregation '{}' (expected solve|vote|first)", name));
}

std::string_view to_string(Aggregation a) {
  switch (a) {
    case Aggregation::kSolve: return "solve";
    case Aggregation::kVote: return "vote";
    case Aggregation::kFirst: return "first";
  }
  return "?";
}

void RunConfig::validate() const {
  if (dataset.empty() || !std::filesystem::is_directory(dataset)) {
    throw ValidationError(fmt::format("dataset directory '{}' does not exist", dataset.string()));
  }
  if (!templates_dir.empty() && !std::filesystem::is_directory(templates_dir)) {
    throw ValidationError(
        fmt::format("templates directory '{}' does not exist", templates_dir.string()));
  }
  if (generations < 1) throw ValidationError("generations must be >= 1");
  if (workers < 1) throw ValidationError("workers must be >= 1");
  if (gateway.max_regen < 0) throw ValidationError("max-regen must be >= 0");
  if (gateway.max_in_flight < 1) throw ValidationError("max-in-flight must be >= 1");
  if (time_limit && time_limit->count() <= 0.0) throw ValidationError("time limit must be positive");
  if (scheme && scheme->variant() == Scheme::Variant::kNarrative) {
    throw ValidationError("runs use the four or six label scheme");
  }
  if (output_dir.empty()) throw ValidationError("output directory must be set");
}

void apply_config_json(RunConfig& c, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "dataset") c.dataset = v.get<std::string>();
      else if (key == "profile") c.profile = parse_profile(v.get<std::string>());
      else if (key == "split") c.split = parse_split(v.get<std::string>());
      else if (key == "scheme") {
        if (v.is_null()) c.scheme.reset();
        else c.scheme = Scheme::parse(v.get<std::string>());
      }
      else if (key == "variant") c.variant = parse_variant(v.get<std::string>());
      else if (key == "split-profile") c.split_profile = parse_split_profile(v.get<std::string>());
      else if (key == "model") c.model.model_name = v.get<std::string>();
      else if (key == "base-url") c.model.base_url = v.get<std::string>();
      else if (key == "temperature") c.model.temperature = v.get<double>();
      else if (key == "max-output-tokens") c.model.max_output_tokens = v.get<int>();
      else if (key == "api-key-env") c.model.api_key_env = v.get<std::string>();
      else if (key == "cache-dir") c.gateway.cache_dir = v.get<std::string>();
      else if (key == "cache-mode") c.gateway.mode = parse_cache_mode(v.get<std::string>());
      else if (key == "max-attempts") c.gateway.max_attempts = v.get<int>();
      else if (key == "backoff-ms") c.gateway.backoff_base = std::chrono::milliseconds(v.get<int>());
      else if (key == "max-in-flight") c.gateway.max_in_flight = v.get<int>();
      else if (key == "max-regen") c.gateway.max_regen = v.get<int>();
      else if (key == "generations") c.generations = v.get<int>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "time-limit") {
        if (v.is_null()) c.time_limit.reset();
        else c.time_limit = Seconds(v.get<double>());
      }
      else if (key == "aggregation") c.aggregation = parse_aggregation(v.get<std::string>());
      else if (key == "soft-vague") c.soft_vague = v.get<bool>();
      else if (key == "output-dir") c.output_dir = v.get<std::string>();
      else if (key == "templates-dir") c.templates_dir = v.get<std::string>();
      else if (key == "workers") c.workers = v.get<int>();
      else if (key == "documents") c.documents = v.get<std::vector<std::string>>();
      else throw ValidationError(fmt::format("unknown config key '{}'", key));
    }
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("config value has the wrong type: {}", e.what()));
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig c;
  apply_config_json(c, read_text_file(path));
  return c;
}

std::string run_config_json(const RunConfig& c) {
  json j = {
      {"dataset", c.dataset.string()},
      {"profile", std::string(to_string(c.profile))},
      {"split", std::string(to_string(c.split))},
      {"scheme", c.scheme ? json(std::string(c.scheme->name())) : json(nullptr)},
      {"variant", std::string(to_string(c.variant))},
      {"split-profile", c.split_profile == SplitProfile::kDense ? "dense" : "standard"},
      {"model", c.model.model_name},
      {"base-url", c.model.base_url},
      {"temperature", c.model.temperature},
      {"max-output-tokens", c.model.max_output_tokens},
      {"api-key-env", c.model.api_key_env},
      {"cache-dir", c.gateway.cache_dir.string()},
      {"cache-mode", std::string(to_string(c.gateway.mode))},
      {"max-attempts", c.gateway.max_attempts},
      {"backoff-ms", c.gateway.backoff_base.count()},
      {"max-in-flight", c.gateway.max_in_flight},
      {"max-regen", c.gateway.max_regen},
      {"generations", c.generations},
      {"seed", c.seed},
      {"time-limit", c.time_limit ? json(c.time_limit->count()) : json(nullptr)},
      {"aggregation", std::string(to_string(c.aggregation))},
      {"soft-vague", c.soft_vague},
      {"output-dir", c.output_dir.string()},
      {"templates-dir", c.templates_dir.string()},
      {"workers", c.workers},
      {"documents", c.documents},
  };
  return j.dump(2);
}

std::size_t RunManifest::failed() const {
  return static_cast<std::size_t>(std::count_if(documents.begin(), documents.end(),
                                                [](const DocumentStatus& d) { return !d.ok; }));
}

std::string RunManifest::to_json() const {
  json docs = json::array();
  for (const DocumentStatus& d : documents) {
    docs.push_back({{"doc_id", d.doc_id},
                    {"status", d.ok ? "ok" : "failed"},
                    {"error", d.error},
                    {"events", d.events},
                    {"pairs", d.pairs},
                    {"splits", d.splits},
                    {"optimal", d.optimal},
                    {"objective", d.objective},
                    {"nodes", d.nodes},
                    {"seconds", d.seconds}});
  }
  json j = {{"tool_version", TEMPOGRAPH_VERSION_STRING},
            {"config", json::parse(config_json)},
            {"template_version", template_version},
            {"composition_table", table_version},
            {"documents", docs},
            {"failed_documents", failed()},
            {"gateway",
             {{"cache_hits", gateway.cache_hits},
              {"cache_misses", gateway.cache_misses},
              {"network_calls", gateway.network_calls},
              {"regenerations", gateway.regenerations}}},
            {"total_seconds", total_seconds},
            {"report", report ? report_json(*report) : json(nullptr)}};
  return j.dump(2) + "\n";
}

std::vector<DocumentGenerations> collect_generations(const RunConfig& config,
                                                     const DatasetManifest& dataset,
                                                     LlmGateway& gateway,
                                                     const PromptTemplates& templates) {
  const Scheme scheme = config.scheme.value_or(dataset.scheme);
  std::vector<DocumentGenerations> out(dataset.documents.size());
  parallel_for(dataset.documents.size(), config.workers, [&](std::size_t d) {
    const Document& doc = dataset.documents[d];
    DocumentGenerations& result = out[d];
    result.doc_id = doc.doc_id();
    result.pairs = all_pairs(doc.events());
    try {
      const std::vector<PromptBundle> bundles =
          build_prompts(doc, config.variant, scheme, config.split_profile, templates);
      result.splits = static_cast<int>(bundles.size());
      for (int g = 0; g < config.generations; ++g) {
        std::vector<GenerationRecord> per_split;
        for (const PromptBundle& bundle : bundles) {
          per_split.push_back(gateway.generate_validated(
              bundle, g, [&](const std::string& raw, int index) {
                return parse_generation(raw, doc, scheme, bundle.pairs, index);
              }));
        }
        result.records.push_back(merge_splits(per_split));
      }
    } catch (const Error& e) {
      result.error = e.what();
      result.records.clear();
    }
  });
  return out;
}

RunResult run_pipeline(const RunConfig& config, LlmGateway& gateway) {
  const auto start = Clock::now();
  config.validate();
  Scheme scheme = Scheme::four();
  const DatasetManifest dataset = load_dataset(config, &scheme);
  const PromptTemplates templates = templates_for(config);
  const CompositionTable table = build_table(scheme, {config.soft_vague});

  RunResult result;
  RunManifest& manifest = result.manifest;
  manifest.config_json = run_config_json(config);
  manifest.template_version = templates.version;
  manifest.table_version = table.version();

  const std::vector<DocumentGenerations> gens =
      collect_generations(config, dataset, gateway, templates);

  std::vector<Document> evaluated;
  for (std::size_t d = 0; d < dataset.documents.size(); ++d) {
    const Document& doc = dataset.documents[d];
    const DocumentGenerations& g = gens[d];
    DocumentStatus status;
    status.doc_id = doc.doc_id();
    status.events = doc.event_count();
    status.pairs = g.pairs.size();
    status.splits = g.splits;
    const auto doc_start = Clock::now();
    try {
      if (!g.error.empty()) throw Error(g.error);
      DistributionSet dist = aggregate(g.records, g.pairs, scheme, doc.doc_id());
      TemporalGraph graph(scheme);
      switch (config.aggregation) {
        case Aggregation::kSolve: {
          const SolveResult solved = solve({g.pairs, dist, table, config.time_limit});
          graph = solved.graph;
          status.optimal = solved.optimal;
          status.objective = solved.objective;
          status.nodes = solved.nodes_explored;
          break;
        }
        case Aggregation::kVote:
          graph = majority_vote(dist);
          status.objective = objective_of(graph, dist);
          break;
        case Aggregation::kFirst:
          graph = graph_from_record(g.records.front(), scheme);
          status.objective = objective_of(graph, dist);
          break;
      }
      status.ok = true;
      result.predictions.push_back({doc.doc_id(), std::move(graph)});
      result.distributions.push_back(std::move(dist));
      if (!doc.gold().empty()) evaluated.push_back(doc);
    } catch (const Error& e) {
      status.error = e.what();
    }
    status.seconds = seconds_since(doc_start);
    manifest.documents.push_back(std::move(status));
  }

  std::string report_text;
  for (const DocumentStatus& s : manifest.documents) {
    if (!s.ok) report_text += fmt::format("EXCLUDED {}: {}\n", s.doc_id, s.error);
  }
  if (!evaluated.empty()) {
    std::vector<DocumentPrediction> scored;
    for (const DocumentPrediction& p : result.predictions) {
      if (std::any_of(evaluated.begin(), evaluated.end(),
                      [&](const Document& d) { return d.doc_id() == p.doc_id; })) {
        scored.push_back(p);
      }
    }
    manifest.report = evaluate(evaluated, scored, table);
    report_text += format_report(*manifest.report, scheme);
    std::vector<std::pair<std::string, EvalReport>> rows;
    for (const SubsetReport& s : distance_buckets(evaluated, scored, table)) {
      rows.emplace_back(s.empty ? s.name + " (empty)" : s.name, s.report);
    }
    report_text += "\n" + format_report_table(rows);
  }

  const std::filesystem::path& out = config.output_dir;
  for (std::size_t i = 0; i < result.predictions.size(); ++i) {
    const std::string name = safe_name(result.predictions[i].doc_id);
    write_text_file_atomic(out / "graphs" / (name + ".dot"), to_dot(result.predictions[i].graph));
    write_text_file_atomic(out / "distributions" / (name + ".dist"),
                           serialize(result.distributions[i]));
  }
  for (const DocumentGenerations& g : gens) {
    if (g.records.empty()) continue;
    write_text_file_atomic(out / "records" / (safe_name(g.doc_id) + ".json"),
                           serialize_records({g.doc_id, scheme, g.records}));
  }
  write_text_file_atomic(out / "report.txt", report_text);

  manifest.gateway = gateway.stats();
  manifest.total_seconds = seconds_since(start);
  write_text_file_atomic(out / "manifest.json", manifest.to_json());
  return result;
}

Ablation parse_ablation(std::string_view name) {
  if (name == "zsl-global") return Ablation::kZslGlobal;
  if (name == "zsl-timeline") return Ablation::kZslTimeline;
  if (name == "self-consistency") return Ablation::kSelfConsistency;
  if (name == "global-consistency") return Ablation::kGlobalConsistency;
  throw ValidationError(fmt::format(
      "unknown ablation '{}' (expected zsl-global|zsl-timeline|self-consistency|global-consistency)",
      name));
}

std::string_view to_string(Ablation a) {
  switch (a) {
    case Ablation::kZslGlobal: return "zsl-global";
    case Ablation::kZslTimeline: return "zsl-timeline";
    case Ablation::kSelfConsistency: return "self-consistency";
    case Ablation::kGlobalConsistency: return "global-consistency";
  }
  return "?";
}

AblationResult ablate(const RunConfig& base, Ablation which, LlmGateway& gateway) {
  RunConfig config = base;
  config.variant = which == Ablation::kZslGlobal ? PromptVariant::kGlobal : PromptVariant::kTimeline;
  config.validate();
  Scheme scheme = Scheme::four();
  const DatasetManifest dataset = load_dataset(config, &scheme);
  if (!has_gold(dataset)) throw ValidationError("ablation needs gold labels");
  const CompositionTable table = build_table(scheme, {config.soft_vague});
  const std::vector<DocumentGenerations> gens =
      collect_generations(config, dataset, gateway, templates_for(config));

  std::vector<Document> docs;
  std::vector<const DocumentGenerations*> usable;
  for (std::size_t d = 0; d < gens.size(); ++d) {
    if (!gens[d].error.empty() || dataset.documents[d].gold().empty()) continue;
    docs.push_back(dataset.documents[d]);
    usable.push_back(&gens[d]);
  }
  if (docs.empty()) throw ValidationError("no document produced usable generations");

  AblationResult result;
  result.which = which;
  if (which == Ablation::kZslGlobal || which == Ablation::kZslTimeline) {
    std::vector<EvalReport> runs;
    for (int g = 0; g < config.generations; ++g) {
      std::vector<DocumentPrediction> preds;
      for (const DocumentGenerations* dg : usable) {
        preds.push_back({dg->doc_id, graph_from_record(dg->records[static_cast<std::size_t>(g)], scheme)});
      }
      runs.push_back(evaluate(docs, preds, table));
    }
    std::vector<double> f1, ti, p, r;
    for (const EvalReport& e : runs) {
      f1.push_back(e.micro_f1);
      ti.push_back(e.ti_mean);
      p.push_back(e.precision);
      r.push_back(e.recall);
    }
    result.report = runs.front();
    result.report.micro_f1 = mean(f1);
    result.report.ti_mean = mean(ti);
    result.report.precision = mean(p);
    result.report.recall = mean(r);
    for (auto& [label, scores] : result.report.per_label) {
      std::vector<double> lp, lr, lf;
      for (const EvalReport& e : runs) {
        const LabelScores& s = e.per_label.at(label);
        lp.push_back(s.precision);
        lr.push_back(s.recall);
        lf.push_back(s.f1);
      }
      scores.precision = mean(lp);
      scores.recall = mean(lr);
      scores.f1 = mean(lf);
    }
    result.f1_std = stddev(f1);
    result.ti_std = stddev(ti);
    result.runs = static_cast<int>(runs.size());
    return result;
  }

  std::vector<DocumentPrediction> preds;
  for (const DocumentGenerations* dg : usable) {
    const DistributionSet dist = aggregate(dg->records, dg->pairs, scheme, dg->doc_id);
    if (which == Ablation::kSelfConsistency) {
      preds.push_back({dg->doc_id, majority_vote(dist)});
    } else {
      preds.push_back({dg->doc_id, solve({dg->pairs, dist, table, config.time_limit}).graph});
    }
  }
  result.report = evaluate(docs, preds, table);
  return result;
}

std::string format_ablation_table(const std::vector<AblationResult>& rows) {
  std::string out = fmt::format("{:<20}  {:>15}  {:>13}  {:>5}\n", "Method", "F1", "TI", "Runs");
  for (const AblationResult& r : rows) {
    out += fmt::format("{:<20}  {:>7.1f} ± {:<5.1f}  {:>5.2f} ± {:<5.2f}  {:>5}\n", to_string(r.which),
                       100.0 * r.report.micro_f1, 100.0 * r.f1_std, r.report.ti_mean, r.ti_std,
                       r.runs);
  }
  return out;
}

}  // namespace tempograph
