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

#include "tempograph/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace tempograph {

GenerationRecord merge_splits(std::span<const GenerationRecord> splits) {
  GenerationRecord merged;
  if (splits.empty()) return merged;
  merged.generation_index = splits.front().generation_index;
  for (const GenerationRecord& split : splits) {
    if (split.generation_index != merged.generation_index) {
      throw ValidationError(fmt::format("cannot merge generation {} with generation {}",
                                        split.generation_index, merged.generation_index));
    }
    if (!merged.raw_output.empty()) merged.raw_output += "\n";
    merged.raw_output += split.raw_output;
    for (const auto& [pair, label] : split.parsed) merged.parsed[pair] = label;
    merged.missing.insert(merged.missing.end(), split.missing.begin(), split.missing.end());
    merged.warnings.insert(merged.warnings.end(), split.warnings.begin(), split.warnings.end());
  }
  std::sort(merged.missing.begin(), merged.missing.end());
  return merged;
}

const LabelDistribution& DistributionSet::at(PairKey p) const {
  auto it = dists.find(p);
  if (it == dists.end()) {
    throw ValidationError(fmt::format("{}: no distribution for pair ({}, {})", doc_id, p.first,
                                      p.second));
  }
  return it->second;
}

std::vector<PairKey> DistributionSet::pairs() const {
  std::vector<PairKey> out;
  out.reserve(dists.size());
  for (const auto& [pair, d] : dists) out.push_back(pair);
  return out;
}

DistributionSet aggregate(std::span<const GenerationRecord> records,
                          std::span<const PairKey> pairs, Scheme scheme, std::string doc_id) {
  if (records.empty()) throw ValidationError("aggregate: need at least one generation");
  DistributionSet out;
  out.doc_id = std::move(doc_id);
  out.scheme = scheme;
  out.generation_count = static_cast<int>(records.size());
  const double m = static_cast<double>(records.size());
  for (PairKey pair : pairs) {
    std::vector<double> counts(scheme.size(), 0.0);
    for (const GenerationRecord& rec : records) {
      auto it = rec.parsed.find(pair);
      if (it == rec.parsed.end()) {
        throw IncompleteGenerationError(
            fmt::format("{}generation {} is missing pair ({}, {})",
                        out.doc_id.empty() ? "" : out.doc_id + ": ", rec.generation_index,
                        pair.first, pair.second));
      }
      if (!scheme.contains(it->second)) {
        throw ValidationError(fmt::format("generation {} labels pair ({}, {}) with '{}' outside "
                                          "scheme '{}'",
                                          rec.generation_index, pair.first, pair.second,
                                          to_string(it->second), scheme.name()));
      }
      counts[index_of(it->second)] += 1.0;
    }
    for (double& c : counts) c /= m;
    out.dists.emplace(pair, LabelDistribution(scheme, std::move(counts)));
  }
  return out;
}

TemporalGraph majority_vote(const DistributionSet& dist) {
  TemporalGraph graph(dist.scheme);
  // Compare vote counts, not probabilities, so ties are exact.
  const double m = std::max(dist.generation_count, 1);
  for (const auto& [pair, d] : dist.dists) {
    long best_count = -1;
    Relation best = Relation::kVague;
    bool tied = false;
    for (Relation r : dist.scheme.labels()) {
      const long count = std::lround(d[r] * m);
      if (count > best_count) {
        best_count = count;
        best = r;
        tied = false;
      } else if (count == best_count) {
        tied = true;
      }
    }
    graph.set(pair.first, pair.second, tied ? Relation::kVague : best);
  }
  return graph;
}

std::string serialize(const DistributionSet& dist) {
  std::string out = "# tempograph distributions v1\n";
  out += fmt::format("doc {}\n", dist.doc_id.empty() ? "-" : dist.doc_id);
  out += fmt::format("scheme {}\n", dist.scheme.name());
  out += fmt::format("generations {}\n", dist.generation_count);
  out += "labels";
  for (Relation r : dist.scheme.labels()) out += fmt::format(" {}", to_string(r));
  out += "\n";
  for (const auto& [pair, d] : dist.dists) {
    out += fmt::format("{} {}", pair.first, pair.second);
    for (double p : d.probs()) out += fmt::format(" {}", p);
    out += "\n";
  }
  return out;
}

DistributionSet parse_distributions(std::string_view text) {
  DistributionSet out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_scheme = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "doc") {
      fields >> out.doc_id;
      if (out.doc_id == "-") out.doc_id.clear();
    } else if (head == "scheme") {
      std::string name;
      fields >> name;
      out.scheme = Scheme::parse(name);
      have_scheme = true;
    } else if (head == "generations") {
      fields >> out.generation_count;
    } else if (head == "labels") {
      std::string label;
      std::size_t i = 0;
      while (fields >> label) {
        if (i >= out.scheme.size() || parse_relation(label) != out.scheme.labels()[i]) {
          throw ParseError(fmt::format("line {}: label header does not match scheme '{}'",
                                       line_no, out.scheme.name()));
        }
        ++i;
      }
    } else {
      if (!have_scheme) throw ParseError(fmt::format("line {}: pair before scheme header", line_no));
      EventId a = 0, b = 0;
      try {
        a = std::stoi(head);
      } catch (const std::exception&) {
        throw ParseError(fmt::format("line {}: unexpected '{}'", line_no, head));
      }
      if (!(fields >> b)) throw ParseError(fmt::format("line {}: missing second event", line_no));
      std::vector<double> probs;
      double p = 0.0;
      while (fields >> p) probs.push_back(p);
      if (a >= b) throw ParseError(fmt::format("line {}: pair ({}, {}) not canonical", line_no, a, b));
      auto [it, inserted] =
          out.dists.emplace(PairKey{a, b}, LabelDistribution(out.scheme, std::move(probs)));
      if (!inserted) throw ParseError(fmt::format("line {}: duplicate pair ({}, {})", line_no, a, b));
    }
  }
  if (!have_scheme) throw ParseError("distribution file has no scheme header");
  return out;
}

}  // namespace tempograph
