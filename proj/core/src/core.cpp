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

#include "tempograph/core.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace tempograph {

namespace {

constexpr std::array<Relation, 7> kAllLabels = {
    Relation::kBefore,   Relation::kAfter,      Relation::kEqual,  Relation::kVague,
    Relation::kIncludes, Relation::kIsIncluded, Relation::kOverlap};

}  // namespace

Relation inverse(Relation r) {
  switch (r) {
    case Relation::kBefore: return Relation::kAfter;
    case Relation::kAfter: return Relation::kBefore;
    case Relation::kIncludes: return Relation::kIsIncluded;
    case Relation::kIsIncluded: return Relation::kIncludes;
    case Relation::kEqual:
    case Relation::kVague:
    case Relation::kOverlap:
      return r;
  }
  return r;
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::kBefore: return "before";
    case Relation::kAfter: return "after";
    case Relation::kEqual: return "equal";
    case Relation::kVague: return "vague";
    case Relation::kIncludes: return "includes";
    case Relation::kIsIncluded: return "is_included";
    case Relation::kOverlap: return "overlap";
  }
  return "?";
}

std::optional<Relation> parse_relation(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "before") return Relation::kBefore;
  if (key == "after") return Relation::kAfter;
  if (key == "equal" || key == "simultaneous") return Relation::kEqual;
  if (key == "vague") return Relation::kVague;
  if (key == "includes") return Relation::kIncludes;
  if (key == "isincluded") return Relation::kIsIncluded;
  if (key == "overlap") return Relation::kOverlap;
  return std::nullopt;
}

std::vector<Relation> LabelSet::to_vector() const {
  std::vector<Relation> out;
  for (Relation r : kAllLabels) {
    if (contains(r)) out.push_back(r);
  }
  return out;
}

std::string LabelSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Relation r : to_vector()) {
    if (!first) out += ",";
    out += tempograph::to_string(r);
    first = false;
  }
  return out + "}";
}

Scheme Scheme::parse(std::string_view name) {
  if (name == "four") return four();
  if (name == "six") return six();
  if (name == "narrative") return narrative();
  throw ValidationError(fmt::format("unknown scheme '{}' (expected four|six|narrative)", name));
}

std::span<const Relation> Scheme::labels() const {
  switch (variant_) {
    case Variant::kFour: return {kAllLabels.data(), 4};
    case Variant::kSix: return {kAllLabels.data(), 6};
    case Variant::kNarrative: return {kAllLabels.data(), 7};
  }
  return {};
}

LabelSet Scheme::all() const {
  return LabelSet(static_cast<std::uint8_t>((1U << size()) - 1U));
}

std::string_view Scheme::name() const {
  switch (variant_) {
    case Variant::kFour: return "four";
    case Variant::kSix: return "six";
    case Variant::kNarrative: return "narrative";
  }
  return "?";
}

PairKey PairKey::of(EventId a, EventId b) {
  if (a == b) throw ValidationError(fmt::format("self-relation on event {}", a));
  return a < b ? PairKey{a, b} : PairKey{b, a};
}

OrientedLabel orient(EventId a, EventId b, Relation label) {
  if (a == b) throw ValidationError(fmt::format("self-relation on event {}", a));
  if (a < b) return {PairKey{a, b}, label};
  return {PairKey{b, a}, inverse(label)};
}

std::vector<PairKey> all_pairs(std::span<const Event> events) {
  std::vector<EventId> ids;
  ids.reserve(events.size());
  for (const Event& e : events) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ValidationError("duplicate event ids");
  }
  std::vector<PairKey> pairs;
  pairs.reserve(ids.size() * (ids.size() > 0 ? ids.size() - 1 : 0) / 2);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) pairs.push_back({ids[i], ids[j]});
  }
  return pairs;
}

Document::Document(std::string doc_id, std::string text, std::vector<Event> events,
                   GoldMap gold)
    : doc_id_(std::move(doc_id)),
      text_(std::move(text)),
      events_(std::move(events)),
      gold_(std::move(gold)) {
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const Event& e = events_[i];
    if (!index_.emplace(e.id, i).second) {
      throw ValidationError(fmt::format("{}: duplicate event id {}", doc_id_, e.id));
    }
    if (e.begin > e.end || e.end > text_.size()) {
      throw ValidationError(fmt::format("{}: event {} span [{}, {}) outside text of length {}",
                                        doc_id_, e.id, e.begin, e.end, text_.size()));
    }
    if (text_.compare(e.begin, e.end - e.begin, e.mention) != 0) {
      throw ValidationError(fmt::format("{}: event {} span text '{}' does not match mention '{}'",
                                        doc_id_, e.id, text_.substr(e.begin, e.end - e.begin),
                                        e.mention));
    }
    if (e.sentence_index < 0) {
      throw ValidationError(fmt::format("{}: event {} has negative sentence index", doc_id_, e.id));
    }
  }
  for (const auto& [pair, label] : gold_) {
    if (pair.first >= pair.second) {
      throw ValidationError(fmt::format("{}: gold pair ({}, {}) not canonical", doc_id_,
                                        pair.first, pair.second));
    }
    if (!has_event(pair.first) || !has_event(pair.second)) {
      throw ValidationError(fmt::format("{}: gold pair ({}, {}) references unknown event",
                                        doc_id_, pair.first, pair.second));
    }
  }
}

GoldMap Document::make_gold(std::span<const std::tuple<EventId, EventId, Relation>> triples) {
  GoldMap gold;
  for (const auto& [a, b, label] : triples) {
    OrientedLabel o = orient(a, b, label);
    auto [it, inserted] = gold.emplace(o.pair, o.label);
    if (!inserted && it->second != o.label) {
      throw ValidationError(fmt::format("conflicting gold labels for pair ({}, {})", o.pair.first,
                                        o.pair.second));
    }
  }
  return gold;
}

std::size_t Document::index_of(EventId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError(fmt::format("{}: unknown event id {}", doc_id_, id));
  }
  return it->second;
}

int Document::sentence_distance(PairKey p) const {
  return std::abs(event(p.first).sentence_index - event(p.second).sentence_index);
}

Document Document::with_gold(GoldMap gold) const {
  return Document(doc_id_, text_, events_, std::move(gold));
}

LabelDistribution::LabelDistribution(Scheme scheme, std::vector<double> probs)
    : scheme_(scheme), probs_(std::move(probs)) {
  if (probs_.size() != scheme_.size()) {
    throw ValidationError(fmt::format("distribution has {} entries, scheme '{}' has {}",
                                      probs_.size(), scheme_.name(), scheme_.size()));
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError(fmt::format("distribution entry {} is not a non-negative number", p));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError(fmt::format("distribution sums to {}, expected 1", sum));
  }
}

LabelDistribution LabelDistribution::one_hot(Scheme scheme, Relation r) {
  std::vector<double> probs(scheme.size(), 0.0);
  if (!scheme.contains(r)) {
    throw ValidationError(fmt::format("label '{}' not in scheme '{}'", to_string(r), scheme.name()));
  }
  probs[index_of(r)] = 1.0;
  return LabelDistribution(scheme, std::move(probs));
}

Relation LabelDistribution::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs_.size(); ++i) {
    if (probs_[i] > probs_[best]) best = i;
  }
  return scheme_.labels()[best];
}

double LabelDistribution::margin() const {
  double first = 0.0, second = 0.0;
  for (double p : probs_) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return first - second;
}

void TemporalGraph::set(EventId a, EventId b, Relation label) {
  if (!scheme_.contains(label)) {
    throw ValidationError(fmt::format("label '{}' not in scheme '{}'", to_string(label),
                                      scheme_.name()));
  }
  OrientedLabel o = orient(a, b, label);
  labels_[o.pair] = o.label;
}

std::optional<Relation> TemporalGraph::get(EventId a, EventId b) const {
  if (a == b) return std::nullopt;
  auto it = labels_.find(PairKey::of(a, b));
  if (it == labels_.end()) return std::nullopt;
  return a < b ? it->second : inverse(it->second);
}

std::vector<EventId> TemporalGraph::events() const {
  std::vector<EventId> ids;
  for (const auto& [pair, label] : labels_) {
    ids.push_back(pair.first);
    ids.push_back(pair.second);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace tempograph
