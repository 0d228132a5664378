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

#ifndef TEMPOGRAPH_SRC_CONSTRAINT_NETWORK_HPP_
#define TEMPOGRAPH_SRC_CONSTRAINT_NETWORK_HPP_

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tempograph/solver.hpp"

namespace tempograph::detail {

// Label domains for every pair of a closed event set, kept arc consistent over
// all triangles. Changes are trailed so search can undo to a mark.
class ConstraintNetwork {
 public:
  explicit ConstraintNetwork(const SolveProblem& problem);

  int pair_count() const { return static_cast<int>(pairs_.size()); }
  const PairKey& pair(int p) const { return pairs_[p]; }
  LabelSet domain(int p) const { return LabelSet(domain_[p]); }
  double weight(int p, Relation r) const { return weight_[p][index_of(r)]; }
  const Scheme& scheme() const { return scheme_; }

  // Sum over pairs of the best weight still in the domain.
  double upper_bound() const { return upper_; }

  // upper_bound() minus the weight each packed triangle must give up: no
  // consistent labeling of a triangle can reach the sum of its three maxima,
  // and the packed triangles share no pair, so the losses add.
  double tightened_bound() const;

  // Narrows a domain and propagates. False on a wipeout; the caller must undo.
  bool restrict(int p, LabelSet allowed);
  bool assign(int p, Relation r) { return restrict(p, LabelSet{r}); }

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  // Labels of the domain ordered by weight descending, scheme order on ties.
  std::vector<Relation> ordered_values(int p) const;

  TemporalGraph to_graph() const;

 private:
  int pair_index(int a, int b) const { return index_[static_cast<std::size_t>(a) * n_ + b]; }
  bool set_domain(int p, std::uint8_t bits);
  bool revise(int a, int b, int c);
  bool propagate();
  double best_weight(int p, std::uint8_t bits) const;
  // Weight lost by the best consistent labeling of a triangle (x,y,z) =
  // ((i,j), (j,k), (i,k)) under the current domains.
  double triangle_loss(const std::array<int, 3>& t) const;
  void pack_triangles();

  Scheme scheme_;
  int n_ = 0;
  std::vector<EventId> ids_;
  std::vector<PairKey> pairs_;
  std::vector<std::pair<int, int>> ends_;
  std::vector<int> index_;
  std::vector<std::array<double, kMaxLabels>> weight_;
  std::vector<std::uint8_t> domain_;
  double upper_ = 0.0;
  struct TrailEntry {
    int pair;
    std::uint8_t bits;
    double upper;
  };
  std::vector<TrailEntry> trail_;
  std::vector<int> queue_;
  std::vector<char> queued_;
  // Allowed (i,k) labels for each (i,j), (j,k) label pair with i<j<k,
  // already intersected with the two other orientations of the triangle.
  std::array<std::array<std::uint8_t, kMaxLabels>, kMaxLabels> closing_{};
  // Pair-disjoint triangles, largest loss at the root first.
  std::vector<std::array<int, 3>> packing_;
};

}  // namespace tempograph::detail

#endif  // TEMPOGRAPH_SRC_CONSTRAINT_NETWORK_HPP_
