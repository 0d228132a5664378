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

#ifndef TEMPOGRAPH_CORE_HPP_
#define TEMPOGRAPH_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <initializer_list>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tempograph/errors.hpp"

namespace tempograph {

// Temporal relation labels. The numeric value doubles as the position in
// every scheme's label order, so distribution vectors index by it directly.
enum class Relation : std::uint8_t {
  kBefore = 0,
  kAfter = 1,
  kEqual = 2,
  kVague = 3,
  kIncludes = 4,
  kIsIncluded = 5,
  // Source-only label of narrative-style corpora; never reaches the solver.
  kOverlap = 6,
};

inline constexpr std::size_t kMaxLabels = 7;

constexpr std::size_t index_of(Relation r) { return static_cast<std::size_t>(r); }

Relation inverse(Relation r);

// Canonical lowercase name ("before", ..., "is_included").
std::string_view to_string(Relation r);

// Accepts any casing and separator style: "IS_INCLUDED", "is-included",
// "Is Included" all resolve to kIsIncluded.
std::optional<Relation> parse_relation(std::string_view text);

// Small bitset over relation labels.
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr explicit LabelSet(std::uint8_t bits) : bits_(bits) {}
  constexpr LabelSet(std::initializer_list<Relation> labels) {
    for (Relation r : labels) insert(r);
  }

  constexpr bool contains(Relation r) const { return (bits_ >> index_of(r)) & 1U; }
  constexpr void insert(Relation r) { bits_ |= static_cast<std::uint8_t>(1U << index_of(r)); }
  constexpr void erase(Relation r) { bits_ &= static_cast<std::uint8_t>(~(1U << index_of(r))); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return __builtin_popcount(bits_); }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr LabelSet operator|(LabelSet o) const { return LabelSet(bits_ | o.bits_); }
  constexpr LabelSet operator&(LabelSet o) const { return LabelSet(bits_ & o.bits_); }
  constexpr LabelSet& operator|=(LabelSet o) { bits_ |= o.bits_; return *this; }
  constexpr LabelSet& operator&=(LabelSet o) { bits_ &= o.bits_; return *this; }
  constexpr bool operator==(const LabelSet&) const = default;

  // Labels in scheme order.
  std::vector<Relation> to_vector() const;
  std::string to_string() const;

 private:
  std::uint8_t bits_ = 0;
};

// Active label vocabulary.
class Scheme {
 public:
  enum class Variant { kFour, kSix, kNarrative };

  static Scheme four() { return Scheme(Variant::kFour); }
  static Scheme six() { return Scheme(Variant::kSix); }
  // Six labels plus overlap; only used while importing narrative corpora.
  static Scheme narrative() { return Scheme(Variant::kNarrative); }
  // "four" | "six" | "narrative"
  static Scheme parse(std::string_view name);

  Variant variant() const { return variant_; }
  std::span<const Relation> labels() const;
  std::size_t size() const { return labels().size(); }
  bool contains(Relation r) const { return index_of(r) < size(); }
  LabelSet all() const;
  std::string_view name() const;

  bool operator==(const Scheme&) const = default;

 private:
  explicit Scheme(Variant v) : variant_(v) {}
  Variant variant_;
};

using EventId = int;

// Unordered event pair stored with first < second.
struct PairKey {
  EventId first = 0;
  EventId second = 0;

  // Normalizes orientation; throws ValidationError when a == b.
  static PairKey of(EventId a, EventId b);

  auto operator<=>(const PairKey&) const = default;
};

struct OrientedLabel {
  PairKey pair;
  Relation label;
};

// Stores a label given for (a, b) under canonical orientation.
// ((7,3), before) becomes ((3,7), after).
OrientedLabel orient(EventId a, EventId b, Relation label);

struct Event {
  EventId id = 0;
  std::string mention;
  int sentence_index = 0;
  std::size_t begin = 0;  // [begin, end) into Document::text()
  std::size_t end = 0;

  bool operator==(const Event&) const = default;
};

// All n(n-1)/2 canonical pairs, lexicographically sorted.
std::vector<PairKey> all_pairs(std::span<const Event> events);

using GoldMap = std::map<PairKey, Relation>;

// A text with marked event mentions and optional gold relations. Validated on
// construction and immutable afterwards. Events keep their original ids;
// index_of() gives the dense position used for vector indexing.
class Document {
 public:
  Document(std::string doc_id, std::string text, std::vector<Event> events,
           GoldMap gold = {});

  // Builds the gold map from possibly reversed triples; rejects conflicting
  // duplicates.
  static GoldMap make_gold(std::span<const std::tuple<EventId, EventId, Relation>> triples);

  const std::string& doc_id() const { return doc_id_; }
  const std::string& text() const { return text_; }
  const std::vector<Event>& events() const { return events_; }
  const GoldMap& gold() const { return gold_; }
  std::size_t event_count() const { return events_.size(); }

  bool has_event(EventId id) const { return index_.contains(id); }
  std::size_t index_of(EventId id) const;
  const Event& event(EventId id) const { return events_[index_of(id)]; }

  // Absolute sentence distance between the two events of a pair.
  int sentence_distance(PairKey p) const;

  Document with_gold(GoldMap gold) const;

  bool operator==(const Document& other) const {
    return doc_id_ == other.doc_id_ && text_ == other.text_ && events_ == other.events_ &&
           gold_ == other.gold_;
  }

 private:
  std::string doc_id_;
  std::string text_;
  std::vector<Event> events_;
  GoldMap gold_;
  std::unordered_map<EventId, std::size_t> index_;
};

// Probability vector over a scheme's labels.
class LabelDistribution {
 public:
  // Rejects negatives and sums outside [1-1e-6, 1+1e-6]. Values are kept as given.
  LabelDistribution(Scheme scheme, std::vector<double> probs);
  static LabelDistribution one_hot(Scheme scheme, Relation r);

  const Scheme& scheme() const { return scheme_; }
  double operator[](Relation r) const { return probs_[index_of(r)]; }
  std::span<const double> probs() const { return probs_; }

  // Highest-probability label; ties resolve to the earliest in scheme order.
  Relation argmax() const;
  // max - second max
  double margin() const;

  bool operator==(const LabelDistribution&) const = default;

 private:
  Scheme scheme_;
  std::vector<double> probs_;
};

// One label per unordered event pair.
class TemporalGraph {
 public:
  explicit TemporalGraph(Scheme scheme) : scheme_(scheme) {}

  const Scheme& scheme() const { return scheme_; }
  // Orients (a, b) and stores; replaces any previous label for the pair.
  void set(EventId a, EventId b, Relation label);
  // Label oriented from a to b, if the pair is present.
  std::optional<Relation> get(EventId a, EventId b) const;
  const std::map<PairKey, Relation>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  // Sorted ids of every event touched by a stored pair.
  std::vector<EventId> events() const;

  bool operator==(const TemporalGraph&) const = default;

 private:
  Scheme scheme_;
  std::map<PairKey, Relation> labels_;
};

}  // namespace tempograph

#endif  // TEMPOGRAPH_CORE_HPP_
