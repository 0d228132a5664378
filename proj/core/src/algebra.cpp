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

#include "tempograph/algebra.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include <fmt/format.h>

namespace tempograph {

namespace allen {

namespace {

// Point-algebra relation sets over {<, =, >}.
using Point = std::uint8_t;
constexpr Point kLt = 1, kEq = 2, kGt = 4, kAny = 7;

Point point_converse(Point p) {
  Point out = p & kEq;
  if (p & kLt) out |= kGt;
  if (p & kGt) out |= kLt;
  return out;
}

Point point_compose(Point a, Point b) {
  Point out = 0;
  for (Point x : {kLt, kEq, kGt}) {
    if (!(a & x)) continue;
    for (Point y : {kLt, kEq, kGt}) {
      if (!(b & y)) continue;
      if (x == kEq) out |= y;
      else if (y == kEq || x == y) out |= x;
      else out |= kAny;
    }
  }
  return out;
}

// Endpoint relations of (A, B): A-B-, A-B+, A+B-, A+B+.
struct EndpointSignature {
  Point ss, se, es, ee;
};

constexpr std::array<EndpointSignature, kBasicCount> kSignatures = {{
    {kLt, kLt, kLt, kLt},  // b
    {kLt, kLt, kEq, kLt},  // m
    {kLt, kLt, kGt, kLt},  // o
    {kEq, kLt, kGt, kLt},  // s
    {kGt, kLt, kGt, kLt},  // d
    {kGt, kLt, kGt, kEq},  // f
    {kEq, kLt, kGt, kEq},  // eq
    {kLt, kLt, kGt, kEq},  // fi
    {kLt, kLt, kGt, kGt},  // di
    {kEq, kLt, kGt, kGt},  // si
    {kGt, kLt, kGt, kGt},  // oi
    {kGt, kEq, kGt, kGt},  // mi
    {kGt, kGt, kGt, kGt},  // bi
}};

// Network over endpoints A-, A+, B-, B+, C-, C+.
using Network = std::array<std::array<Point, 6>, 6>;

void constrain(Network& net, int x, int y, Point p) {
  net[x][y] &= p;
  net[y][x] &= point_converse(p);
}

void constrain_pair(Network& net, int left, int right, Basic r) {
  const EndpointSignature& sig = kSignatures[static_cast<int>(r)];
  const int ls = 2 * left, le = 2 * left + 1, rs = 2 * right, re = 2 * right + 1;
  constrain(net, ls, rs, sig.ss);
  constrain(net, ls, re, sig.se);
  constrain(net, le, rs, sig.es);
  constrain(net, le, re, sig.ee);
}

// Path consistency decides satisfiability for networks whose relations are
// singletons or universal.
bool satisfiable(Network net) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < 6; ++k) {
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
          Point narrowed = net[i][j] & point_compose(net[i][k], net[k][j]);
          if (narrowed != net[i][j]) {
            if (narrowed == 0) return false;
            net[i][j] = narrowed;
            changed = true;
          }
        }
      }
    }
  }
  return true;
}

using Table13 = std::array<std::array<BasicSet, kBasicCount>, kBasicCount>;

Table13 derive_table() {
  Table13 table{};
  for (int r = 0; r < kBasicCount; ++r) {
    for (int s = 0; s < kBasicCount; ++s) {
      for (int t = 0; t < kBasicCount; ++t) {
        Network net;
        for (auto& row : net) row.fill(kAny);
        for (int i = 0; i < 6; ++i) net[i][i] = kEq;
        for (int iv = 0; iv < 3; ++iv) constrain(net, 2 * iv, 2 * iv + 1, kLt);
        constrain_pair(net, 0, 1, static_cast<Basic>(r));
        constrain_pair(net, 1, 2, static_cast<Basic>(s));
        constrain_pair(net, 0, 2, static_cast<Basic>(t));
        if (satisfiable(net)) table[r][s] |= bit(static_cast<Basic>(t));
      }
    }
  }
  return table;
}

const Table13& table13() {
  static const Table13 table = derive_table();
  return table;
}

}  // namespace

std::string_view symbol(Basic r) {
  static constexpr std::array<std::string_view, kBasicCount> kSymbols = {
      "b", "m", "o", "s", "d", "f", "eq", "fi", "di", "si", "oi", "mi", "bi"};
  return kSymbols[static_cast<int>(r)];
}

Basic converse(Basic r) {
  return static_cast<Basic>(kBasicCount - 1 - static_cast<int>(r));
}

BasicSet compose(Basic r, Basic s) {
  return table13()[static_cast<int>(r)][static_cast<int>(s)];
}

BasicSet members(Scheme scheme, Relation label) {
  using B = Basic;
  if (label == Relation::kVague) return kAllBasic;
  if (scheme.variant() == Scheme::Variant::kFour) {
    switch (label) {
      case Relation::kBefore:
        return bit(B::kPrecedes) | bit(B::kMeets) | bit(B::kOverlaps) | bit(B::kContains) |
               bit(B::kFinishedBy);
      case Relation::kAfter:
        return bit(B::kPrecededBy) | bit(B::kMetBy) | bit(B::kOverlappedBy) | bit(B::kDuring) |
               bit(B::kFinishes);
      case Relation::kEqual:
        return bit(B::kStarts) | bit(B::kStartedBy) | bit(B::kEquals);
      default:
        break;
    }
  } else if (scheme.variant() == Scheme::Variant::kSix) {
    switch (label) {
      case Relation::kBefore: return bit(B::kPrecedes) | bit(B::kMeets);
      case Relation::kAfter: return bit(B::kPrecededBy) | bit(B::kMetBy);
      case Relation::kEqual: return bit(B::kEquals);
      case Relation::kIncludes:
        return bit(B::kContains) | bit(B::kStartedBy) | bit(B::kFinishedBy);
      case Relation::kIsIncluded:
        return bit(B::kDuring) | bit(B::kStarts) | bit(B::kFinishes);
      default:
        break;
    }
  }
  throw ValidationError(fmt::format("label '{}' has no interval semantics in scheme '{}'",
                                    to_string(label), scheme.name()));
}

}  // namespace allen

LabelSet inverse(LabelSet set) {
  LabelSet out;
  for (Relation r : set.to_vector()) out.insert(tempograph::inverse(r));
  return out;
}

CompositionTable build_table(Scheme scheme, TableOptions options) {
  if (scheme.variant() == Scheme::Variant::kNarrative) {
    throw ValidationError("no composition table for the narrative scheme; drop overlap first");
  }
  CompositionTable table(scheme, options.soft_vague);
  std::vector<Relation> definite;
  for (Relation r : scheme.labels()) {
    if (r != Relation::kVague) definite.push_back(r);
  }
  for (Relation r : scheme.labels()) {
    for (Relation s : scheme.labels()) {
      allen::BasicSet composite = 0;
      const allen::BasicSet left = allen::members(scheme, r);
      const allen::BasicSet right = allen::members(scheme, s);
      for (int x = 0; x < allen::kBasicCount; ++x) {
        if (!((left >> x) & 1U)) continue;
        for (int y = 0; y < allen::kBasicCount; ++y) {
          if (!((right >> y) & 1U)) continue;
          composite |= allen::compose(static_cast<allen::Basic>(x), static_cast<allen::Basic>(y));
        }
      }
      LabelSet allowed;
      bool pinned = false;
      for (Relation t : definite) {
        const allen::BasicSet m = allen::members(scheme, t);
        if (m & composite) allowed.insert(t);
        if ((composite & ~m) == 0) pinned = true;
      }
      if (!pinned || options.soft_vague) allowed.insert(Relation::kVague);
      table.table_[index_of(r)][index_of(s)] = allowed;
    }
  }
  return table;
}

std::string CompositionTable::version() const {
  return fmt::format("allen-projection-v1/{}/{}", scheme_.name(), soft_vague_ ? "soft" : "strict");
}

std::string CompositionTable::dump() const {
  std::size_t width = 0;
  for (Relation r : scheme_.labels()) {
    for (Relation s : scheme_.labels()) width = std::max(width, compose(r, s).to_string().size());
  }
  width = std::max<std::size_t>(width, 12);
  std::string out = fmt::format("# composition table {}\n", version());
  out += fmt::format("{:<12}", "r \\ s");
  for (Relation s : scheme_.labels()) out += fmt::format(" {:<{}}", to_string(s), width);
  out += "\n";
  for (Relation r : scheme_.labels()) {
    out += fmt::format("{:<12}", to_string(r));
    for (Relation s : scheme_.labels()) {
      out += fmt::format(" {:<{}}", compose(r, s).to_string(), width);
    }
    out += "\n";
  }
  return out;
}

namespace {

// Dense view of a graph: oriented labels by event index.
struct DenseGraph {
  std::vector<EventId> ids;
  std::vector<std::vector<std::optional<Relation>>> label;

  explicit DenseGraph(const TemporalGraph& graph) : ids(graph.events()) {
    const std::size_t n = ids.size();
    label.assign(n, std::vector<std::optional<Relation>>(n));
    for (const auto& [pair, r] : graph.labels()) {
      const std::size_t a = position(pair.first), b = position(pair.second);
      label[a][b] = r;
      label[b][a] = tempograph::inverse(r);
    }
  }

  std::size_t position(EventId id) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  }
};

bool definite(const std::optional<Relation>& r) { return r && *r != Relation::kVague; }

}  // namespace

std::vector<InferredEdge> transitive_closure(const TemporalGraph& graph,
                                             const CompositionTable& table) {
  const DenseGraph dense(graph);
  const std::size_t n = dense.ids.size();
  const LabelSet unknown = table.scheme().all();

  std::vector<std::vector<LabelSet>> constraint(n, std::vector<LabelSet>(n, unknown));
  std::vector<std::vector<int>> length(n, std::vector<int>(n, 0));
  std::vector<std::vector<bool>> fixed(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!dense.label[i][j]) continue;
      fixed[i][j] = true;
      length[i][j] = 1;
      // Vague asserts nothing; it neither chains nor gets overwritten.
      if (*dense.label[i][j] != Relation::kVague) constraint[i][j] = LabelSet{*dense.label[i][j]};
    }
  }

  auto chainable = [&](LabelSet s) {
    return !s.empty() && s != unknown && !s.contains(Relation::kVague);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k || !chainable(constraint[i][k])) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || j == k || fixed[i][j] || !chainable(constraint[k][j])) continue;
          LabelSet composite;
          for (Relation r : constraint[i][k].to_vector()) {
            for (Relation s : constraint[k][j].to_vector()) composite |= table.compose(r, s);
          }
          const LabelSet narrowed = constraint[i][j] & composite;
          if (narrowed != constraint[i][j]) {
            constraint[i][j] = narrowed;
            constraint[j][i] = inverse(narrowed);
            length[i][j] = length[j][i] = length[i][k] + length[k][j];
            changed = true;
          }
        }
      }
    }
  }

  std::vector<InferredEdge> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (fixed[i][j] || constraint[i][j] == unknown) continue;
      out.push_back({PairKey{dense.ids[i], dense.ids[j]}, constraint[i][j], length[i][j]});
    }
  }
  return out;
}

int count_transitive_inconsistencies(const TemporalGraph& graph, const CompositionTable& table) {
  const DenseGraph dense(graph);
  const std::size_t n = dense.ids.size();
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      if (!dense.label[i][k]) continue;
      const Relation t = *dense.label[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const auto& r = dense.label[i][j];
        const auto& s = dense.label[j][k];
        if (definite(r) && definite(s) && !table.compose(*r, *s).contains(t)) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

int count_inconsistent_triangles(const TemporalGraph& graph, const CompositionTable& table) {
  const DenseGraph dense(graph);
  const std::size_t n = dense.ids.size();
  auto violated = [&](std::size_t a, std::size_t b, std::size_t c) {
    const auto& r = dense.label[a][b];
    const auto& s = dense.label[b][c];
    const auto& t = dense.label[a][c];
    return t && definite(r) && definite(s) && !table.compose(*r, *s).contains(*t);
  };
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        // One orientation per edge suffices because the table is
        // inverse-coherent.
        if (violated(i, j, k) || violated(j, i, k) || violated(i, k, j)) ++count;
      }
    }
  }
  return count;
}

double ti_per_document(std::span<const int> counts) {
  if (counts.empty()) throw ValidationError("ti_per_document: no documents");
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  return total / static_cast<double>(counts.size());
}

double ti_per_document(std::span<const TemporalGraph> graphs, const CompositionTable& table) {
  std::vector<int> counts;
  counts.reserve(graphs.size());
  for (const TemporalGraph& g : graphs) counts.push_back(count_transitive_inconsistencies(g, table));
  return ti_per_document(counts);
}

}  // namespace tempograph
