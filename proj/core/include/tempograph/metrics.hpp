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

#ifndef TEMPOGRAPH_METRICS_HPP_
#define TEMPOGRAPH_METRICS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempograph/aggregate.hpp"
#include "tempograph/algebra.hpp"
#include "tempograph/core.hpp"
#include "tempograph/corpus.hpp"
#include "tempograph/solver.hpp"

namespace tempograph {

using Labeling = std::map<PairKey, Relation>;

struct Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct LabelScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  double micro_f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::map<Relation, LabelScores> per_label;
  double ti_mean = 0.0;
  std::size_t pair_count = 0;
  // Gold pairs without a prediction, scored as vague.
  std::size_t missing_predictions = 0;
};

// Counts pooled over any number of documents.
class ScoreAccumulator {
 public:
  explicit ScoreAccumulator(Scheme scheme) : scheme_(scheme) {}

  // Throws ValidationError when pred labels a pair absent from gold.
  void add(const Labeling& gold, const Labeling& pred);
  void add_pair(Relation gold, Relation pred);

  Scores micro() const;
  EvalReport report() const;
  std::size_t pair_count() const { return pairs_; }
  std::size_t missing() const { return missing_; }

 private:
  Scheme scheme_;
  std::size_t pairs_ = 0;
  std::size_t missing_ = 0;
  std::size_t true_positive_ = 0;
  std::size_t predicted_definite_ = 0;
  std::size_t gold_definite_ = 0;
  std::array<std::size_t, kMaxLabels> label_tp_{};
  std::array<std::size_t, kMaxLabels> label_pred_{};
  std::array<std::size_t, kMaxLabels> label_gold_{};
};

// Micro scores with vague excluded from true positives. Missing predictions
// count as vague.
Scores f1_vague_excluded(const Labeling& gold, const Labeling& pred);

EvalReport per_label_report(const Labeling& gold, const Labeling& pred, Scheme scheme);

// A predicted graph for one document.
struct DocumentPrediction {
  std::string doc_id;
  TemporalGraph graph;
};

// Scores pooled over documents; ti_mean averages the inconsistency count of
// every prediction.
EvalReport evaluate(std::span<const Document> docs, std::span<const DocumentPrediction> preds,
                    const CompositionTable& table);

struct SubsetReport {
  std::string name;
  EvalReport report;
  // Set when the subset has no gold pairs.
  bool empty = false;
  std::size_t documents = 0;
};

// Subsets by sentence distance: "consecutive" (<= 1), "non-consecutive" (> 1),
// "all".
std::vector<SubsetReport> distance_buckets(std::span<const Document> docs,
                                           std::span<const DocumentPrediction> preds,
                                           const CompositionTable& table);

// Cumulative buckets "<=e" for each edge plus "all". Empty buckets are omitted
// and named in `notes`.
std::vector<SubsetReport> event_count_buckets(std::span<const Document> docs,
                                              std::span<const DocumentPrediction> preds,
                                              std::span<const std::size_t> edges,
                                              const CompositionTable& table,
                                              std::vector<std::string>* notes = nullptr);

struct ClosureGapStudy {
  // Sentence distance -> relation count.
  std::map<int, std::size_t> original;
  std::map<int, std::size_t> restricted;
  std::map<int, std::size_t> closed;
};

// Compares full gold with its distance <= 1 restriction and with the
// restriction plus single-label closure inferences. Complete manifests only.
ClosureGapStudy closure_gap_study(const DatasetManifest& manifest, const CompositionTable& table);

struct SweepPoint {
  int generations = 0;
  EvalReport report;
};

struct SweepOptions {
  std::optional<Seconds> time_limit = kDefaultTimeLimit;
};

// records[d] holds the merged generations of docs[d] in generation order.
// Throws ValidationError listing every document with too few generations.
std::vector<SweepPoint> generation_sweep(std::span<const Document> docs,
                                         std::span<const std::vector<GenerationRecord>> records,
                                         std::span<const int> m_values,
                                         const CompositionTable& table,
                                         const SweepOptions& options = {});

struct ConsistencyCounts {
  std::size_t consistent = 0;
  std::size_t inconsistent = 0;
};

struct AuditReport {
  // vague: rule a=vague => b=vague. before/after/equal: rule b=r => a=r.
  std::map<Relation, ConsistencyCounts> per_relation;
  std::size_t shared_pairs = 0;
  std::size_t unalignable = 0;
  std::vector<std::string> unalignable_examples;
};

// Audits aligned label pairs (label in a, label in b).
AuditReport label_consistency_audit(std::span<const std::pair<Relation, Relation>> aligned);

// Aligns documents by id and events by character span, then audits the pairs
// labeled in both. Pairs of `a` that cannot be aligned are counted.
AuditReport label_consistency_audit(const DatasetManifest& a, const DatasetManifest& b);

// Plain-text table with F1 and TI columns, scores in percent.
std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows);
// Line-oriented key/value form of a report.
std::string format_report(const EvalReport& report, Scheme scheme);

}  // namespace tempograph

#endif  // TEMPOGRAPH_METRICS_HPP_
