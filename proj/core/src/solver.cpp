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

#include "tempograph/solver.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "constraint_network.hpp"

namespace tempograph {

namespace detail {

namespace {

void validate(const SolveProblem& problem) {
  const DistributionSet& dist = problem.dist;
  if (!(problem.table.scheme() == dist.scheme)) {
    throw ValidationError(fmt::format("table scheme '{}' does not match distribution scheme '{}'",
                                      problem.table.scheme().name(), dist.scheme.name()));
  }
  if (dist.dists.size() != problem.pairs.size()) {
    throw ValidationError(fmt::format("{} pairs requested but {} distributions supplied",
                                      problem.pairs.size(), dist.dists.size()));
  }
  std::vector<EventId> ids;
  for (PairKey p : problem.pairs) {
    if (!dist.dists.contains(p)) {
      throw ValidationError(fmt::format("no distribution for pair ({}, {})", p.first, p.second));
    }
    ids.push_back(p.first);
    ids.push_back(p.second);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const std::size_t expected = ids.size() * (ids.size() > 0 ? ids.size() - 1 : 0) / 2;
  std::vector<PairKey> sorted = problem.pairs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate pair in solve problem");
  }
  if (sorted.size() != expected) {
    throw ValidationError(fmt::format(
        "pair set is not closed: {} events need {} pairs, got {}", ids.size(), expected,
        sorted.size()));
  }
}

}  // namespace

ConstraintNetwork::ConstraintNetwork(const SolveProblem& problem)
    : scheme_(problem.dist.scheme) {
  validate(problem);
  pairs_ = problem.pairs;
  std::sort(pairs_.begin(), pairs_.end());
  for (PairKey p : pairs_) {
    ids_.push_back(p.first);
    ids_.push_back(p.second);
  }
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  n_ = static_cast<int>(ids_.size());

  auto position = [&](EventId id) {
    return static_cast<int>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
  };
  index_.assign(static_cast<std::size_t>(n_) * n_, -1);
  weight_.resize(pairs_.size());
  domain_.assign(pairs_.size(), scheme_.all().bits());
  queued_.assign(pairs_.size(), 0);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const int a = position(pairs_[p].first), b = position(pairs_[p].second);
    ends_.emplace_back(a, b);
    index_[static_cast<std::size_t>(a) * n_ + b] = static_cast<int>(p);
    index_[static_cast<std::size_t>(b) * n_ + a] = static_cast<int>(p);
    weight_[p].fill(0.0);
    const LabelDistribution& d = problem.dist.at(pairs_[p]);
    for (Relation r : scheme_.labels()) weight_[p][index_of(r)] = d[r];
    upper_ += best_weight(static_cast<int>(p), domain_[p]);
  }

  const CompositionTable& table = problem.table;
  for (Relation x : scheme_.labels()) {
    for (Relation y : scheme_.labels()) {
      std::uint8_t zs = 0;
      for (Relation z : scheme_.labels()) {
        const bool ok = table.compose(x, y).contains(z) &&
                        table.compose(inverse(x), z).contains(y) &&
                        table.compose(z, inverse(y)).contains(x);
        if (ok) zs |= static_cast<std::uint8_t>(1U << index_of(z));
      }
      closing_[index_of(x)][index_of(y)] = zs;
    }
  }
  pack_triangles();
}

double ConstraintNetwork::triangle_loss(const std::array<int, 3>& t) const {
  const auto [x, y, z] = t;
  const std::uint8_t dx = domain_[x], dy = domain_[y], dz = domain_[z];
  double best = -1.0;
  for (std::size_t lx = 0; lx < kMaxLabels; ++lx) {
    if (!((dx >> lx) & 1U)) continue;
    for (std::size_t ly = 0; ly < kMaxLabels; ++ly) {
      if (!((dy >> ly) & 1U)) continue;
      const std::uint8_t zs = closing_[lx][ly] & dz;
      if (zs) best = std::max(best, weight_[x][lx] + weight_[y][ly] + best_weight(z, zs));
    }
  }
  if (best < 0.0) return 0.0;
  const double loss = best_weight(x, dx) + best_weight(y, dy) + best_weight(z, dz) - best;
  return loss > 0.0 ? loss : 0.0;
}

void ConstraintNetwork::pack_triangles() {
  std::vector<std::pair<double, std::array<int, 3>>> candidates;
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      for (int c = b + 1; c < n_; ++c) {
        const std::array<int, 3> t = {pair_index(a, b), pair_index(b, c), pair_index(a, c)};
        candidates.emplace_back(triangle_loss(t), t);
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  std::vector<char> used(pairs_.size(), 0);
  for (const auto& [loss, t] : candidates) {
    if (used[t[0]] || used[t[1]] || used[t[2]]) continue;
    for (int p : t) used[p] = 1;
    packing_.push_back(t);
  }
}

double ConstraintNetwork::tightened_bound() const {
  double slack = 0.0;
  for (const auto& t : packing_) slack += triangle_loss(t);
  return upper_ - slack;
}

double ConstraintNetwork::best_weight(int p, std::uint8_t bits) const {
  double best = 0.0;
  for (std::size_t r = 0; r < kMaxLabels; ++r) {
    if ((bits >> r) & 1U) best = std::max(best, weight_[p][r]);
  }
  return best;
}

bool ConstraintNetwork::set_domain(int p, std::uint8_t bits) {
  if (bits == domain_[p]) return true;
  trail_.push_back({p, domain_[p], upper_});
  upper_ += best_weight(p, bits) - best_weight(p, domain_[p]);
  domain_[p] = bits;
  if (bits == 0) return false;
  if (!queued_[p]) {
    queued_[p] = 1;
    queue_.push_back(p);
  }
  return true;
}

bool ConstraintNetwork::revise(int a, int b, int c) {
  const int x = pair_index(a, b), y = pair_index(b, c), z = pair_index(a, c);
  const std::uint8_t dx = domain_[x], dy = domain_[y], dz = domain_[z];
  std::uint8_t nx = 0, ny = 0, nz = 0;
  for (std::size_t lx = 0; lx < kMaxLabels; ++lx) {
    if (!((dx >> lx) & 1U)) continue;
    for (std::size_t ly = 0; ly < kMaxLabels; ++ly) {
      if (!((dy >> ly) & 1U)) continue;
      const std::uint8_t zs = closing_[lx][ly] & dz;
      if (zs) {
        nx |= static_cast<std::uint8_t>(1U << lx);
        ny |= static_cast<std::uint8_t>(1U << ly);
        nz |= zs;
      }
    }
  }
  return set_domain(x, nx) && set_domain(y, ny) && set_domain(z, nz);
}

bool ConstraintNetwork::propagate() {
  bool ok = true;
  while (ok && !queue_.empty()) {
    const int p = queue_.back();
    queue_.pop_back();
    queued_[p] = 0;
    const auto [a, b] = ends_[p];
    for (int k = 0; k < n_ && ok; ++k) {
      if (k == a || k == b) continue;
      if (k < a) ok = revise(k, a, b);
      else if (k < b) ok = revise(a, k, b);
      else ok = revise(a, b, k);
    }
  }
  for (int p : queue_) queued_[p] = 0;
  queue_.clear();
  return ok;
}

bool ConstraintNetwork::restrict(int p, LabelSet allowed) {
  const std::uint8_t bits = domain_[p] & allowed.bits();
  if (!set_domain(p, bits)) {
    for (int q : queue_) queued_[q] = 0;
    queue_.clear();
    return false;
  }
  return propagate();
}

void ConstraintNetwork::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    const TrailEntry& e = trail_.back();
    domain_[e.pair] = e.bits;
    upper_ = e.upper;
    trail_.pop_back();
  }
}

std::vector<Relation> ConstraintNetwork::ordered_values(int p) const {
  std::vector<Relation> values = LabelSet(domain_[p]).to_vector();
  std::stable_sort(values.begin(), values.end(), [&](Relation l, Relation r) {
    return weight(p, l) > weight(p, r);
  });
  return values;
}

TemporalGraph ConstraintNetwork::to_graph() const {
  TemporalGraph graph(scheme_);
  for (int p = 0; p < pair_count(); ++p) {
    const std::vector<Relation> values = LabelSet(domain_[p]).to_vector();
    if (values.size() != 1) throw Error("constraint network is not fully assigned");
    graph.set(pairs_[p].first, pairs_[p].second, values.front());
  }
  return graph;
}

}  // namespace detail

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kImprovementEps = 1e-9;

// Descending max probability, then descending margin, then pair order.
std::vector<int> confidence_order(const detail::ConstraintNetwork& net,
                                  const DistributionSet& dist) {
  std::vector<int> order(static_cast<std::size_t>(net.pair_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    const LabelDistribution& dl = dist.at(net.pair(l));
    const LabelDistribution& dr = dist.at(net.pair(r));
    const double ml = dl[dl.argmax()], mr = dr[dr.argmax()];
    if (ml != mr) return ml > mr;
    return dl.margin() > dr.margin();
  });
  return order;
}

std::vector<int> margin_order(const detail::ConstraintNetwork& net, const DistributionSet& dist) {
  std::vector<int> order(static_cast<std::size_t>(net.pair_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return dist.at(net.pair(l)).margin() > dist.at(net.pair(r)).margin();
  });
  return order;
}

SolveResult empty_result(const SolveProblem& problem) {
  SolveResult result;
  result.graph = TemporalGraph(problem.dist.scheme);
  result.optimal = true;
  return result;
}

class BranchAndBound {
 public:
  BranchAndBound(detail::ConstraintNetwork& net, std::vector<int> order,
                 std::optional<Clock::time_point> deadline, double incumbent)
      : net_(net), order_(std::move(order)), deadline_(deadline), best_(incumbent) {}

  // True when the search completed without hitting the deadline.
  bool run() {
    try {
      search(0);
    } catch (const TimedOut&) {
      return false;
    }
    return true;
  }

  std::int64_t nodes() const { return nodes_; }
  const std::optional<TemporalGraph>& improved() const { return improved_; }

 private:
  struct TimedOut {};

  void search(std::size_t pos) {
    ++nodes_;
    if (deadline_ && (nodes_ & 255) == 0 && Clock::now() > *deadline_) throw TimedOut{};
    if (net_.tightened_bound() <= best_ + kImprovementEps) return;
    while (pos < order_.size() && net_.domain(order_[pos]).size() == 1) ++pos;
    if (pos == order_.size()) {
      best_ = net_.upper_bound();
      improved_ = net_.to_graph();
      return;
    }
    const int p = order_[pos];
    for (Relation r : net_.ordered_values(p)) {
      const std::size_t mark = net_.mark();
      if (net_.assign(p, r) && net_.upper_bound() > best_ + kImprovementEps) search(pos + 1);
      net_.undo(mark);
    }
  }

  detail::ConstraintNetwork& net_;
  std::vector<int> order_;
  std::optional<Clock::time_point> deadline_;
  double best_;
  std::int64_t nodes_ = 0;
  std::optional<TemporalGraph> improved_;
};

}  // namespace

double objective_of(const TemporalGraph& graph, const DistributionSet& dist) {
  double total = 0.0;
  for (const auto& [pair, label] : graph.labels()) total += dist.at(pair)[label];
  return total;
}

SolveResult greedy_repair(const SolveProblem& problem) {
  detail::ConstraintNetwork net(problem);
  if (net.pair_count() == 0) {
    SolveResult result = empty_result(problem);
    result.optimal = false;
    return result;
  }
  const std::vector<int> order = confidence_order(net, problem.dist);
  std::vector<char> forced_vague(static_cast<std::size_t>(net.pair_count()), 0);
  std::int64_t steps = 0;

  for (;;) {
    net.undo(0);
    bool root_ok = true;
    for (int p = 0; p < net.pair_count() && root_ok; ++p) {
      if (forced_vague[p]) root_ok = net.assign(p, Relation::kVague);
    }
    if (!root_ok) throw InfeasibleError("all-vague labeling rejected by the composition table");

    std::vector<int> committed;  // chronological choices
    int dead_end = -1;
    for (int p : order) {
      ++steps;
      const bool free_choice = net.domain(p).size() > 1;
      bool placed = false;
      for (Relation r : net.ordered_values(p)) {
        const std::size_t mark = net.mark();
        if (net.assign(p, r)) {
          placed = true;
          break;
        }
        net.undo(mark);
      }
      if (!placed) {
        dead_end = p;
        break;
      }
      if (free_choice) committed.push_back(p);
    }
    if (dead_end < 0) break;

    // Force the latest conflicting non-vague choice to vague, preferring one
    // that shares an event with the dead-end pair.
    const PairKey stuck = net.pair(dead_end);
    auto is_candidate = [&](int q, bool adjacent_only) {
      if (forced_vague[q]) return false;
      const PairKey key = net.pair(q);
      const auto current = net.domain(q).to_vector();
      if (current.size() == 1 && current.front() == Relation::kVague) return false;
      if (!adjacent_only) return true;
      return key.first == stuck.first || key.first == stuck.second ||
             key.second == stuck.first || key.second == stuck.second;
    };
    int victim = -1;
    for (bool adjacent_only : {true, false}) {
      for (auto it = committed.rbegin(); it != committed.rend() && victim < 0; ++it) {
        if (is_candidate(*it, adjacent_only)) victim = *it;
      }
      if (victim >= 0) break;
    }
    if (victim < 0) throw InfeasibleError("greedy repair found no choice to relax");
    forced_vague[victim] = 1;
  }

  SolveResult result;
  result.graph = net.to_graph();
  result.objective = objective_of(result.graph, problem.dist);
  result.optimal = false;
  result.nodes_explored = steps;
  return result;
}

SolveResult BranchAndBoundSolver::solve(const SolveProblem& problem) const {
  const auto start = Clock::now();
  SolveResult incumbent = greedy_repair(problem);
  if (problem.pairs.empty()) return empty_result(problem);

  detail::ConstraintNetwork net(problem);
  std::optional<Clock::time_point> deadline;
  if (problem.time_limit) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(*problem.time_limit);
  }
  BranchAndBound search(net, margin_order(net, problem.dist), deadline, incumbent.objective);
  const bool finished = search.run();

  SolveResult result = std::move(incumbent);
  if (search.improved()) {
    result.graph = *search.improved();
    result.objective = objective_of(result.graph, problem.dist);
  }
  result.optimal = finished;
  result.nodes_explored = search.nodes();
  return result;
}

SolveResult GreedyRepairSolver::solve(const SolveProblem& problem) const {
  return greedy_repair(problem);
}

SolveResult solve(const SolveProblem& problem) { return BranchAndBoundSolver{}.solve(problem); }

}  // namespace tempograph
