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

#ifndef TEMPOGRAPH_PIPELINE_HPP_
#define TEMPOGRAPH_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/corpus.hpp"
#include "tempograph/llm_gateway.hpp"
#include "tempograph/metrics.hpp"
#include "tempograph/prompt.hpp"
#include "tempograph/solver.hpp"

namespace tempograph {

// Step that turns M generations into one graph.
enum class Aggregation {
  kSolve,  // distributions + constrained optimum
  kVote,   // per-pair majority
  kFirst,  // generation 0 as written
};

Aggregation parse_aggregation(std::string_view name);
std::string_view to_string(Aggregation a);

struct RunConfig {
  std::filesystem::path dataset;
  FormatProfile profile = FormatProfile::kCanonical;
  DatasetSplit split = DatasetSplit::kAll;
  std::optional<Scheme> scheme;  // unset: the dataset's scheme
  PromptVariant variant = PromptVariant::kTimeline;
  SplitProfile split_profile = SplitProfile::kStandard;
  ModelConfig model;
  GatewayOptions gateway;
  int generations = 5;
  std::uint64_t seed = 0;
  std::optional<Seconds> time_limit = kDefaultTimeLimit;
  Aggregation aggregation = Aggregation::kSolve;
  bool soft_vague = false;
  std::filesystem::path output_dir = "out";
  std::filesystem::path templates_dir;  // empty: compiled-in templates
  int workers = 1;
  std::vector<std::string> documents;  // empty: every document

  // Throws ValidationError for out-of-range values or missing paths.
  void validate() const;
};

// Reads a JSON config file. Keys match the long command-line flags.
RunConfig load_run_config(const std::filesystem::path& path);
std::string run_config_json(const RunConfig& config);
// Applies "key": value pairs in the config file format over `config`.
void apply_config_json(RunConfig& config, std::string_view json_text);

struct DocumentStatus {
  std::string doc_id;
  bool ok = false;
  std::string error;
  std::size_t events = 0;
  std::size_t pairs = 0;
  int splits = 0;
  bool optimal = false;
  double objective = 0.0;
  std::int64_t nodes = 0;
  double seconds = 0.0;
};

struct RunManifest {
  std::string config_json;
  std::string template_version;
  std::string table_version;
  std::vector<DocumentStatus> documents;
  GatewayStats gateway;
  double total_seconds = 0.0;
  std::optional<EvalReport> report;

  std::size_t failed() const;
  std::string to_json() const;
};

// Merged generations of one document, ready for aggregation.
struct DocumentGenerations {
  std::string doc_id;
  std::vector<PairKey> pairs;
  std::vector<GenerationRecord> records;
  int splits = 0;
  std::string error;  // non-empty when the document failed
};

// Marks, splits, prompts and generates M validated outputs per split, then
// merges splits per generation index. Documents run on `config.workers`
// threads; results keep dataset order.
std::vector<DocumentGenerations> collect_generations(const RunConfig& config,
                                                     const DatasetManifest& dataset,
                                                     LlmGateway& gateway,
                                                     const PromptTemplates& templates);

struct RunResult {
  RunManifest manifest;
  std::vector<DocumentPrediction> predictions;
  std::vector<DistributionSet> distributions;
};

// End-to-end run. Writes graphs/<doc>.dot, distributions/<doc>.dist,
// records/<doc>.json, report.txt and manifest.json under config.output_dir.
RunResult run_pipeline(const RunConfig& config, LlmGateway& gateway);

enum class Ablation { kZslGlobal, kZslTimeline, kSelfConsistency, kGlobalConsistency };

Ablation parse_ablation(std::string_view name);
std::string_view to_string(Ablation a);

struct AblationResult {
  Ablation which = Ablation::kGlobalConsistency;
  // Single-generation variants: mean over generations.
  EvalReport report;
  double f1_std = 0.0;
  double ti_std = 0.0;
  int runs = 1;
};

AblationResult ablate(const RunConfig& config, Ablation which, LlmGateway& gateway);

// "label: mean ± std" style table for ablation rows, scores in percent.
std::string format_ablation_table(const std::vector<AblationResult>& rows);

}  // namespace tempograph

#endif  // TEMPOGRAPH_PIPELINE_HPP_
