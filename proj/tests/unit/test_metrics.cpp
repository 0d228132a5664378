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

#include <fmt/format.h>

#include "doctest.h"
#include "tempograph/metrics.hpp"
#include "test_support.hpp"

namespace tempograph {
namespace {

Labeling labeling(std::initializer_list<Relation> labels) {
  Labeling out;
  EventId a = 1;
  for (Relation r : labels) {
    out.emplace(PairKey{a, a + 1}, r);
    ++a;
  }
  return out;
}

GenerationRecord record_of(int g, const GoldMap& labels) {
  GenerationRecord r;
  r.generation_index = g;
  r.parsed = labels;
  return r;
}

TEST_SUITE("metrics") {

TEST_CASE("hand example") {
  const auto gold = labeling({Relation::kBefore, Relation::kAfter, Relation::kVague});
  const auto pred = labeling({Relation::kBefore, Relation::kBefore, Relation::kBefore});
  const Scores s = f1_vague_excluded(gold, pred);
  CHECK(s.precision == doctest::Approx(1.0 / 3.0));
  CHECK(s.recall == doctest::Approx(0.5));
  CHECK(s.f1 == doctest::Approx(0.4));
}

TEST_CASE("conventions") {
  const auto gold = labeling({Relation::kBefore, Relation::kVague, Relation::kEqual});
  CHECK(f1_vague_excluded(gold, gold).f1 == doctest::Approx(1.0));
  const auto vague = labeling({Relation::kVague, Relation::kVague, Relation::kVague});
  const Scores none = f1_vague_excluded(gold, vague);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);
  CHECK(f1_vague_excluded(gold, {}).f1 == 0.0);
  Labeling stray = gold;
  stray.emplace(PairKey{7, 9}, Relation::kBefore);
  CHECK_THROWS_AS(f1_vague_excluded(gold, stray), ValidationError);
}

TEST_CASE("missing predictions count as vague") {
  const auto gold = labeling({Relation::kBefore, Relation::kAfter});
  Labeling pred = {{PairKey{1, 2}, Relation::kBefore}};
  const EvalReport r = per_label_report(gold, pred, Scheme::four());
  CHECK(r.missing_predictions == 1);
  CHECK(r.precision == doctest::Approx(1.0));
  CHECK(r.recall == doctest::Approx(0.5));
}

TEST_CASE("per-label scores") {
  const auto gold = labeling({Relation::kBefore, Relation::kAfter, Relation::kAfter, Relation::kVague});
  const auto all_before = labeling({Relation::kBefore, Relation::kBefore, Relation::kBefore, Relation::kBefore});
  const EvalReport r = per_label_report(gold, all_before, Scheme::four());
  CHECK(r.per_label.at(Relation::kBefore).recall == doctest::Approx(1.0));
  CHECK(r.per_label.at(Relation::kBefore).precision == doctest::Approx(0.25));
  CHECK(r.per_label.at(Relation::kEqual).support == 0);
  CHECK(r.per_label.at(Relation::kEqual).f1 == 0.0);
  std::size_t support = 0;
  for (const auto& [l, s] : r.per_label) support += s.support;
  CHECK(support == r.pair_count);
  const EvalReport perfect = per_label_report(gold, gold, Scheme::four());
  for (const auto& [l, s] : perfect.per_label) {
    if (s.support > 0) CHECK(s.f1 == doctest::Approx(1.0));
  }
}

TEST_CASE("scores ignore event naming") {
  std::mt19937_64 rng(2);
  const Scheme scheme = Scheme::four();
  const TemporalGraph gold = testing::random_graph(rng, scheme, 7, 0.3);
  const TemporalGraph pred = testing::random_graph(rng, scheme, 7, 0.3);
  Labeling g2, p2;
  auto rename = [](EventId id) { return 100 - id * 3; };
  for (const auto& [p, l] : gold.labels()) {
    const OrientedLabel o = orient(rename(p.first), rename(p.second), l);
    g2.emplace(o.pair, o.label);
  }
  for (const auto& [p, l] : pred.labels()) {
    const OrientedLabel o = orient(rename(p.first), rename(p.second), l);
    p2.emplace(o.pair, o.label);
  }
  const Scores a = f1_vague_excluded(gold.labels(), pred.labels());
  const Scores b = f1_vague_excluded(g2, p2);
  CHECK(a.f1 == doctest::Approx(b.f1));
  CHECK(a.precision == doctest::Approx(b.precision));
}

TEST_CASE("distance subsets partition the pairs") {
  std::mt19937_64 rng(4);
  std::vector<Document> docs;
  std::vector<DocumentPrediction> preds;
  for (int d = 0; d < 3; ++d) {
    Document doc = testing::make_document(fmt::format("d{}", d), 6 + d);
    const TemporalGraph g = testing::random_graph(rng, Scheme::four(), 6 + d, 0.2);
    docs.push_back(doc.with_gold(g.labels()));
    preds.push_back({doc.doc_id(), testing::random_graph(rng, Scheme::four(), 6 + d, 0.2)});
  }
  const CompositionTable t = build_table(Scheme::four());
  const auto buckets = distance_buckets(docs, preds, t);
  REQUIRE(buckets.size() == 3);
  CHECK(buckets[0].report.pair_count + buckets[1].report.pair_count == buckets[2].report.pair_count);

  // Independent recount of the consecutive subset.
  std::size_t tp = 0, pred_def = 0, gold_def = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& [p, g] : docs[d].gold()) {
      if (docs[d].sentence_distance(p) > 1) continue;
      const Relation y = *preds[d].graph.get(p.first, p.second);
      pred_def += y != Relation::kVague;
      gold_def += g != Relation::kVague;
      tp += (y == g && y != Relation::kVague);
    }
  }
  const double p = pred_def ? double(tp) / pred_def : 0.0;
  const double r = gold_def ? double(tp) / gold_def : 0.0;
  CHECK(buckets[0].report.micro_f1 == doctest::Approx(p + r > 0 ? 2 * p * r / (p + r) : 0.0));
}

TEST_CASE("single-sentence pairs leave the far subset empty") {
  Document doc = testing::make_document("d", 4, 1000);
  GoldMap gold;
  for (PairKey p : all_pairs(doc.events())) gold.emplace(p, Relation::kBefore);
  doc = doc.with_gold(gold);
  TemporalGraph pred(Scheme::four());
  for (PairKey p : all_pairs(doc.events())) pred.set(p.first, p.second, Relation::kBefore);
  const std::vector<Document> docs = {doc};
  const std::vector<DocumentPrediction> preds = {{"d", pred}};
  const auto b = distance_buckets(docs, preds, build_table(Scheme::four()));
  CHECK(b[1].empty);
  CHECK(b[0].report.micro_f1 == doctest::Approx(1.0));
}

TEST_CASE("event count buckets are cumulative") {
  std::vector<Document> docs;
  std::vector<DocumentPrediction> preds;
  for (int n : {5, 12, 25}) {
    Document doc = testing::make_document(fmt::format("n{}", n), n);
    GoldMap gold;
    TemporalGraph g(Scheme::four());
    for (PairKey p : all_pairs(doc.events())) {
      gold.emplace(p, Relation::kBefore);
      g.set(p.first, p.second, Relation::kBefore);
    }
    docs.push_back(doc.with_gold(gold));
    preds.push_back({doc.doc_id(), g});
  }
  std::vector<std::string> notes;
  const std::vector<std::size_t> edges = {3, 10, 20};
  const auto b = event_count_buckets(docs, preds, edges, build_table(Scheme::four()), &notes);
  REQUIRE(b.size() == 3);
  CHECK(b[0].name == "<=10");
  CHECK(b[0].documents == 1);
  CHECK(b[1].documents == 2);
  CHECK(b[2].documents == 3);
  for (const auto& s : b) CHECK(s.report.micro_f1 == doctest::Approx(1.0));
  CHECK(notes.size() == 1);
  const std::vector<std::size_t> bad = {10, 5};
  CHECK_THROWS_AS(event_count_buckets(docs, preds, bad, build_table(Scheme::four())), ValidationError);
}

TEST_CASE("closure study on a chain") {
  Document doc = testing::make_document("chain", 8, 1);
  GoldMap gold;
  for (PairKey p : all_pairs(doc.events())) gold.emplace(p, Relation::kBefore);
  DatasetManifest m;
  m.documents.push_back(doc.with_gold(gold));
  const ClosureGapStudy s = closure_gap_study(m, build_table(Scheme::four()));
  for (const auto& [d, n] : s.original) {
    CHECK(s.closed.at(d) == n);
    CHECK(s.restricted.at(d) == (d <= 1 ? n : 0));
  }
  m.density = AnnotationDensity::kPartial;
  CHECK_THROWS_AS(closure_gap_study(m, build_table(Scheme::four())), ValidationError);
}

TEST_CASE("closure study bounds on consistent gold") {
  const DatasetManifest m = load(testing::fixture_dir() / "corpus", FormatProfile::kCanonical);
  const ClosureGapStudy s = closure_gap_study(m, build_table(m.scheme));
  for (const auto& [d, n] : s.original) {
    CHECK(s.restricted.at(d) <= s.closed.at(d));
    CHECK(s.closed.at(d) <= n);
  }
}

TEST_CASE("generation sweep") {
  Document doc = testing::make_document("sw", 5);
  GoldMap gold;
  for (PairKey p : all_pairs(doc.events())) gold.emplace(p, Relation::kBefore);
  doc = doc.with_gold(gold);
  GoldMap wrong = gold;
  for (auto& [p, l] : wrong) l = Relation::kAfter;
  const std::vector<Document> docs = {doc};
  const std::vector<std::vector<GenerationRecord>> records = {
      {record_of(0, wrong), record_of(1, gold), record_of(2, gold)}};
  const std::vector<int> ms = {1, 3};
  const auto points = generation_sweep(docs, records, ms, build_table(Scheme::four()));
  REQUIRE(points.size() == 2);
  CHECK(points[0].report.micro_f1 == doctest::Approx(0.0));
  CHECK(points[1].report.micro_f1 == doctest::Approx(1.0));
  const std::vector<int> too_many = {4};
  CHECK_THROWS_WITH_AS(generation_sweep(docs, records, too_many, build_table(Scheme::four())),
                       doctest::Contains("sw has 3 of 4"), ValidationError);
}

TEST_CASE("directional audit rules") {
  using P = std::pair<Relation, Relation>;
  const std::vector<P> same = {{Relation::kBefore, Relation::kBefore}, {Relation::kVague, Relation::kVague}};
  const AuditReport ok = label_consistency_audit(same);
  for (const auto& [r, c] : ok.per_relation) CHECK(c.inconsistent == 0);
  const std::vector<P> one = {{Relation::kVague, Relation::kBefore}};
  const AuditReport v = label_consistency_audit(one);
  CHECK(v.per_relation.at(Relation::kVague).inconsistent == 1);
  CHECK(v.per_relation.at(Relation::kBefore).inconsistent == 1);
  const std::vector<P> eq = {{Relation::kAfter, Relation::kEqual}};
  CHECK(label_consistency_audit(eq).per_relation.at(Relation::kEqual).inconsistent == 1);
  const std::vector<P> loose = {{Relation::kBefore, Relation::kVague}};
  const AuditReport l = label_consistency_audit(loose);
  for (const auto& [r, c] : l.per_relation) CHECK(c.inconsistent == 0);
}

TEST_CASE("audit aligns events by span") {
  const Document a("d", "x y z", {{1, "x", 0, 0, 1}, {2, "y", 0, 2, 3}, {3, "z", 0, 4, 5}},
                   {{PairKey{1, 2}, Relation::kVague}, {PairKey{1, 3}, Relation::kBefore}});
  const Document b("d", "x y z", {{10, "x", 0, 0, 1}, {5, "y", 0, 2, 3}},
                   {{PairKey{5, 10}, Relation::kAfter}});
  DatasetManifest ma, mb;
  ma.documents.push_back(a);
  mb.documents.push_back(b);
  const AuditReport r = label_consistency_audit(ma, mb);
  CHECK(r.shared_pairs == 1);
  CHECK(r.unalignable == 1);
  CHECK(r.per_relation.at(Relation::kVague).inconsistent == 1);
  CHECK(r.per_relation.at(Relation::kAfter).inconsistent == 1);
}

TEST_CASE("report formatting is stable") {
  const auto gold = labeling({Relation::kBefore, Relation::kAfter});
  const EvalReport r = per_label_report(gold, gold, Scheme::four());
  const std::string text = format_report(r, Scheme::four());
  CHECK(text.find("micro_f1 1.000000") != std::string::npos);
  CHECK(format_report_table({{"x", r}}).find("100.0") != std::string::npos);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tempograph
