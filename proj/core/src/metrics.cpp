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

#include "tempograph/metrics.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "tempograph/errors.hpp"

namespace tempograph {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

std::map<std::string, const Document*> index_docs(std::span<const Document> docs) {
  std::map<std::string, const Document*> out;
  for (const Document& d : docs) out.emplace(d.doc_id(), &d);
  return out;
}

const Document& find_doc(const std::map<std::string, const Document*>& index,
                         const std::string& id) {
  auto it = index.find(id);
  if (it == index.end()) throw ValidationError(fmt::format("prediction for unknown document '{}'", id));
  return *it->second;
}

template <typename Keep>
Labeling filter(const Labeling& labels, Keep keep) {
  Labeling out;
  for (const auto& [pair, label] : labels) {
    if (keep(pair)) out.emplace(pair, label);
  }
  return out;
}

// Scores predictions of the documents and gold pairs passing the filters.
using DocFilter = std::function<bool(const Document&)>;
using PairFilter = std::function<bool(const Document&, PairKey)>;

bool any_doc(const Document&) { return true; }
bool any_pair(const Document&, PairKey) { return true; }

SubsetReport subset(std::string name, std::span<const Document> docs,
                    std::span<const DocumentPrediction> preds, const CompositionTable& table,
                    const DocFilter& keep_doc, const PairFilter& keep_pair) {
  const auto index = index_docs(docs);
  ScoreAccumulator acc(table.scheme());
  std::vector<TemporalGraph> graphs;
  SubsetReport out;
  out.name = std::move(name);
  for (const DocumentPrediction& p : preds) {
    const Document& doc = find_doc(index, p.doc_id);
    if (!keep_doc(doc)) continue;
    ++out.documents;
    const Labeling gold = filter(doc.gold(), [&](PairKey k) { return keep_pair(doc, k); });
    const Labeling pred =
        filter(p.graph.labels(), [&](PairKey k) { return gold.contains(k); });
    acc.add(gold, pred);
    graphs.push_back(p.graph);
  }
  out.report = acc.report();
  out.report.ti_mean = graphs.empty() ? 0.0 : ti_per_document(graphs, table);
  out.empty = out.report.pair_count == 0;
  return out;
}

}  // namespace

void ScoreAccumulator::add_pair(Relation gold, Relation pred) {
  if (!scheme_.contains(gold) || !scheme_.contains(pred)) {
    throw ValidationError(fmt::format("label outside scheme '{}'", scheme_.name()));
  }
  ++pairs_;
  ++label_gold_[index_of(gold)];
  ++label_pred_[index_of(pred)];
  if (gold == pred) ++label_tp_[index_of(gold)];
  if (gold != Relation::kVague) ++gold_definite_;
  if (pred != Relation::kVague) {
    ++predicted_definite_;
    if (pred == gold) ++true_positive_;
  }
}

void ScoreAccumulator::add(const Labeling& gold, const Labeling& pred) {
  for (const auto& [pair, label] : pred) {
    if (!gold.contains(pair)) {
      throw ValidationError(
          fmt::format("prediction for pair ({}, {}) which has no gold label", pair.first, pair.second));
    }
  }
  for (const auto& [pair, label] : gold) {
    auto it = pred.find(pair);
    if (it == pred.end()) {
      ++missing_;
      add_pair(label, Relation::kVague);
    } else {
      add_pair(label, it->second);
    }
  }
}

Scores ScoreAccumulator::micro() const {
  Scores s;
  s.precision = ratio(true_positive_, predicted_definite_);
  s.recall = ratio(true_positive_, gold_definite_);
  s.f1 = harmonic(s.precision, s.recall);
  return s;
}

EvalReport ScoreAccumulator::report() const {
  EvalReport r;
  const Scores s = micro();
  r.micro_f1 = s.f1;
  r.precision = s.precision;
  r.recall = s.recall;
  r.pair_count = pairs_;
  r.missing_predictions = missing_;
  for (Relation label : scheme_.labels()) {
    const std::size_t i = index_of(label);
    LabelScores ls;
    ls.precision = ratio(label_tp_[i], label_pred_[i]);
    ls.recall = ratio(label_tp_[i], label_gold_[i]);
    ls.f1 = harmonic(ls.precision, ls.recall);
    ls.support = label_gold_[i];
    r.per_label.emplace(label, ls);
  }
  return r;
}

Scores f1_vague_excluded(const Labeling& gold, const Labeling& pred) {
  ScoreAccumulator acc(Scheme::narrative());
  acc.add(gold, pred);
  return acc.micro();
}

EvalReport per_label_report(const Labeling& gold, const Labeling& pred, Scheme scheme) {
  ScoreAccumulator acc(scheme);
  acc.add(gold, pred);
  return acc.report();
}

EvalReport evaluate(std::span<const Document> docs, std::span<const DocumentPrediction> preds,
                    const CompositionTable& table) {
  return subset("all", docs, preds, table, any_doc, any_pair).report;
}

std::vector<SubsetReport> distance_buckets(std::span<const Document> docs,
                                           std::span<const DocumentPrediction> preds,
                                           const CompositionTable& table) {
  std::vector<SubsetReport> out;
  out.push_back(subset("consecutive", docs, preds, table, any_doc,
                       [](const Document& d, PairKey k) { return d.sentence_distance(k) <= 1; }));
  out.push_back(subset("non-consecutive", docs, preds, table, any_doc,
                       [](const Document& d, PairKey k) { return d.sentence_distance(k) > 1; }));
  out.push_back(subset("all", docs, preds, table, any_doc, any_pair));
  return out;
}

std::vector<SubsetReport> event_count_buckets(std::span<const Document> docs,
                                              std::span<const DocumentPrediction> preds,
                                              std::span<const std::size_t> edges,
                                              const CompositionTable& table,
                                              std::vector<std::string>* notes) {
  if (!std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ValidationError("bucket edges must be strictly ascending");
  }
  std::vector<SubsetReport> out;
  for (std::size_t edge : edges) {
    SubsetReport r =
        subset(fmt::format("<={}", edge), docs, preds, table,
               [edge](const Document& d) { return d.event_count() <= edge; }, any_pair);
    if (r.documents == 0) {
      if (notes) notes->push_back(fmt::format("bucket <={} has no documents; omitted", edge));
      continue;
    }
    out.push_back(std::move(r));
  }
  out.push_back(subset("all", docs, preds, table, any_doc, any_pair));
  return out;
}

ClosureGapStudy closure_gap_study(const DatasetManifest& manifest, const CompositionTable& table) {
  if (manifest.density != AnnotationDensity::kComplete) {
    throw ValidationError(fmt::format("closure study needs a complete manifest; '{}' is {}",
                                      manifest.name, to_string(manifest.density)));
  }
  if (manifest.scheme != table.scheme()) {
    throw ValidationError("composition table scheme differs from the manifest scheme");
  }
  ClosureGapStudy study;
  for (const Document& doc : manifest.documents) {
    TemporalGraph restricted(manifest.scheme);
    for (const auto& [pair, label] : doc.gold()) {
      const int d = doc.sentence_distance(pair);
      ++study.original[d];
      if (d <= 1) {
        ++study.restricted[d];
        ++study.closed[d];
        restricted.set(pair.first, pair.second, label);
      } else {
        study.restricted.try_emplace(d, 0);
        study.closed.try_emplace(d, 0);
      }
    }
    for (const InferredEdge& e : transitive_closure(restricted, table)) {
      if (e.constraint.size() != 1 || e.constraint.contains(Relation::kVague)) continue;
      if (!doc.has_event(e.pair.first) || !doc.has_event(e.pair.second)) continue;
      ++study.closed[doc.sentence_distance(e.pair)];
    }
  }
  return study;
}

std::vector<SweepPoint> generation_sweep(std::span<const Document> docs,
                                         std::span<const std::vector<GenerationRecord>> records,
                                         std::span<const int> m_values,
                                         const CompositionTable& table,
                                         const SweepOptions& options) {
  if (docs.size() != records.size()) {
    throw ValidationError(fmt::format("sweep needs records for each of {} documents, got {}",
                                      docs.size(), records.size()));
  }
  if (m_values.empty()) return {};
  const int max_m = *std::max_element(m_values.begin(), m_values.end());
  if (*std::min_element(m_values.begin(), m_values.end()) < 1) {
    throw ValidationError("generation counts must be >= 1");
  }
  std::string shortfall;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (static_cast<int>(records[d].size()) < max_m) {
      shortfall += fmt::format("{}{} has {} of {}", shortfall.empty() ? "" : "; ",
                               docs[d].doc_id(), records[d].size(), max_m);
    }
  }
  if (!shortfall.empty()) {
    throw ValidationError("not enough cached generations: " + shortfall);
  }

  std::vector<SweepPoint> out;
  for (int m : m_values) {
    std::vector<DocumentPrediction> preds;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const std::vector<PairKey> pairs = all_pairs(docs[d].events());
      std::span<const GenerationRecord> first(records[d].data(), static_cast<std::size_t>(m));
      SolveProblem problem{pairs, aggregate(first, pairs, table.scheme(), docs[d].doc_id()), table,
                           options.time_limit};
      preds.push_back({docs[d].doc_id(), solve(problem).graph});
    }
    out.push_back({m, evaluate(docs, preds, table)});
  }
  return out;
}

AuditReport label_consistency_audit(std::span<const std::pair<Relation, Relation>> aligned) {
  AuditReport report;
  for (Relation r : {Relation::kBefore, Relation::kAfter, Relation::kEqual, Relation::kVague}) {
    report.per_relation[r] = {};
  }
  for (const auto& [a, b] : aligned) {
    ++report.shared_pairs;
    if (a == Relation::kVague) {
      auto& c = report.per_relation[Relation::kVague];
      ++(b == Relation::kVague ? c.consistent : c.inconsistent);
    }
    if (b == Relation::kBefore || b == Relation::kAfter || b == Relation::kEqual) {
      auto& c = report.per_relation[b];
      ++(a == b ? c.consistent : c.inconsistent);
    }
  }
  return report;
}

AuditReport label_consistency_audit(const DatasetManifest& a, const DatasetManifest& b) {
  const auto b_docs = index_docs(b.documents);
  std::vector<std::pair<Relation, Relation>> aligned;
  std::size_t unalignable = 0;
  std::vector<std::string> examples;
  auto note = [&](std::string what) {
    ++unalignable;
    if (examples.size() < 20) examples.push_back(std::move(what));
  };
  for (const Document& doc : a.documents) {
    auto it = b_docs.find(doc.doc_id());
    if (it == b_docs.end()) {
      for (std::size_t i = 0; i < doc.gold().size(); ++i) {
        note(fmt::format("{}: document absent", doc.doc_id()));
      }
      continue;
    }
    const Document& other = *it->second;
    std::map<std::pair<std::size_t, std::size_t>, EventId> by_span;
    for (const Event& e : other.events()) by_span.emplace(std::make_pair(e.begin, e.end), e.id);
    auto map_id = [&](EventId id) -> std::optional<EventId> {
      const Event& e = doc.event(id);
      auto found = by_span.find({e.begin, e.end});
      if (found == by_span.end()) return std::nullopt;
      return found->second;
    };
    for (const auto& [pair, label] : doc.gold()) {
      const auto x = map_id(pair.first);
      const auto y = map_id(pair.second);
      if (!x || !y) {
        note(fmt::format("{}: ({}, {}) has no span match", doc.doc_id(), pair.first, pair.second));
        continue;
      }
      const OrientedLabel o = orient(*x, *y, label);
      auto g = other.gold().find(o.pair);
      if (g == other.gold().end()) continue;
      aligned.emplace_back(o.label, g->second);
    }
  }
  AuditReport report = label_consistency_audit(aligned);
  report.unalignable = unalignable;
  report.unalignable_examples = std::move(examples);
  return report;
}

std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::size_t width = 6;
  for (const auto& [name, r] : rows) width = std::max(width, name.size());
  std::string out = fmt::format("{:<{}}  {:>7}  {:>7}  {:>7}  {:>6}  {:>6}\n", "Method", width, "P",
                                "R", "F1", "TI", "Pairs");
  for (const auto& [name, r] : rows) {
    out += fmt::format("{:<{}}  {:>7.1f}  {:>7.1f}  {:>7.1f}  {:>6.2f}  {:>6}\n", name, width,
                       100.0 * r.precision, 100.0 * r.recall, 100.0 * r.micro_f1, r.ti_mean,
                       r.pair_count);
  }
  return out;
}

std::string format_report(const EvalReport& report, Scheme scheme) {
  std::string out;
  out += fmt::format("micro_f1 {:.6f}\nprecision {:.6f}\nrecall {:.6f}\nti_mean {:.6f}\n",
                     report.micro_f1, report.precision, report.recall, report.ti_mean);
  out += fmt::format("pairs {}\nmissing_predictions {}\n", report.pair_count,
                     report.missing_predictions);
  for (Relation r : scheme.labels()) {
    auto it = report.per_label.find(r);
    if (it == report.per_label.end()) continue;
    const LabelScores& s = it->second;
    out += fmt::format("label {} p={:.6f} r={:.6f} f1={:.6f} support={}\n", to_string(r),
                       s.precision, s.recall, s.f1, s.support);
  }
  return out;
}

}  // namespace tempograph
