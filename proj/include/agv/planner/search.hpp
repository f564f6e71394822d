// Copyright 2026 The agvplan Authors
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

#ifndef AGV_PLANNER_SEARCH_HPP_
#define AGV_PLANNER_SEARCH_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "agv/planner/flow_model.hpp"
#include "agv/planner/probe.hpp"

namespace agv::planner {

inline constexpr int64_t kNoBound = std::numeric_limits<int64_t>::max();

struct Incumbent {
  int64_t dist_mm = 0;
  int64_t penalty = 0;
};

struct Plan {
  SolverMode mode = SolverMode::kPco;
  std::vector<NodeIndex> walk;  // start ... dest
  std::vector<ArcIndex> arcs;   // selected arcs, ascending
  int64_t d_end_mm = 0;
  int64_t p_end = 0;  // thousandths
  bool optimal = false;
  int64_t nodes_explored = 0;
  // Penalty of the probe that seeded the search (P0 for pcmco).
  int64_t probe_penalty = 0;
  // Every accepted incumbent, in acceptance order (probe incumbent first).
  std::vector<Incumbent> incumbents;

  double d_end_m() const { return static_cast<double>(d_end_mm) / 1000.0; }
  double p_end_real() const {
    return static_cast<double>(p_end) / static_cast<double>(kPenaltyScale);
  }
};

// Root lower bounds on the final plan cost: the best visiting order over
// the shortest-path closure (skipped, i.e. 0, for very many waypoints).
class CompletionBounds {
 public:
  explicit CompletionBounds(const FlowModel& model);

  int64_t root_distance() const { return root_distance_; }
  int64_t root_penalty() const { return root_penalty_; }
  // Shortest-path distance in mm, [from][to].
  int64_t distance(NodeIndex from, NodeIndex to) const { return dist_[from][to]; }

 private:
  std::vector<std::vector<int64_t>> dist_;
  int64_t root_distance_ = 0;
  int64_t root_penalty_ = 0;
};

// Partial assignment of the arc variables with incremental degree counters
// and an undo trail. Exposed for testing the propagation rules directly.
class SearchState {
 public:
  enum Value : int8_t { kUnset = -1, kZero = 0, kOne = 1 };

  SearchState(const FlowModel& model, SolverMode mode, const CompletionBounds* bounds = nullptr);

  void set_bounds(int64_t best_dist_mm, int64_t best_penalty);
  int64_t best_dist() const { return best_dist_; }
  int64_t best_penalty() const { return best_penalty_; }

  Value value(ArcIndex a) const { return static_cast<Value>(value_[a]); }
  int64_t committed_dist() const { return dist_; }
  int64_t committed_penalty() const { return penalty_; }
  int selected_out(NodeIndex v) const { return out_one_[v]; }
  int selected_in(NodeIndex v) const { return in_one_[v]; }
  int undecided_out(NodeIndex v) const { return out_open_[v]; }
  int undecided_in(NodeIndex v) const { return in_open_[v]; }

  // Fixes an unset arc. Call propagate() afterwards.
  void assign(ArcIndex a, bool selected);
  size_t mark() const { return trail_.size(); }
  void undo(size_t mark);

  // Runs the degree, coverage and bound rules to a fixpoint. Returns false
  // on conflict (the state is then left partially propagated; undo it).
  bool propagate();

  // True when no vertex still needs arcs, i.e. fixing every open arc to 0
  // satisfies all degree rules.
  bool zero_completion_balanced() const;
  // Whether the selected arcs form one weakly connected piece with the start.
  bool selected_connected() const;
  std::vector<ArcIndex> selected_arcs() const;

  // Next branching arc: first open arc of `priority` (probe order), else
  // first-fail over vertices that still need arcs. kNoIndex if none.
  ArcIndex choose_arc(const std::vector<ArcIndex>& priority) const;

 private:
  bool needs_arcs(NodeIndex v) const;
  // Fills component_ from the selected arcs.
  void label_components();
  // Lower bound on the cost still to be added under one metric, or
  // kNoBound when the remaining arcs cannot complete the plan. The rest of
  // the walk must reach every selected component and untouched terminal and
  // end at dest, using only undecided arcs; components are contracted.
  int64_t remaining_bound(bool penalty_metric);
  // Sharper bound for the usual shape: one loose end that must run on to a
  // single sink, plus closed detours hanging off the start's component.
  // Returns -1 when the state does not have that shape.
  int64_t walk_bound(bool penalty_metric);
  // Shortest routes over undecided arcs from the given sources into sp_,
  // moving freely inside components other than the start's.
  void residual_paths(std::span<const NodeIndex> sources, bool penalty_metric);
  bool check_remaining();
  bool check_vertex(NodeIndex v);
  bool check_bounds();
  void enqueue(NodeIndex v);

  const FlowModel& model_;
  SolverMode mode_;
  const CompletionBounds* bounds_;
  std::vector<int8_t> value_;
  std::vector<int> out_one_, in_one_, out_open_, in_open_;
  std::vector<int32_t> component_;
  std::vector<NodeIndex> uf_parent_;
  std::vector<NodeIndex> terminals_;
  std::vector<std::vector<NodeIndex>> members_;
  std::vector<NodeIndex> objects_;
  std::vector<int64_t> sp_;
  std::vector<int64_t> gap_;
  std::vector<int64_t> dp_;
  std::vector<int64_t> path_cost_, loop_cost_, loops_cost_;
  std::vector<std::pair<int64_t, NodeIndex>> heap_;
  int64_t dist_ = 0;
  int64_t penalty_ = 0;
  int64_t best_dist_ = kNoBound;
  int64_t best_penalty_ = kNoBound;
  std::vector<ArcIndex> trail_;
  std::vector<NodeIndex> queue_;
  std::vector<char> queued_;
};

// Depth-first branch and bound over the arc variables, seeded by a probe.
//   pco:   distance probe; accepts complete admissible assignments with
//          D < bestD.
//   pcmco: preference probe fixes P0; accepts D < bestD and P <= bestP, then
//          tightens both bounds.
// Value 1 is tried before 0. nullopt when no admissible plan exists (or none
// was found before the node budget ran out).
std::optional<Plan> search(const FlowModel& model, const SolverConfig& cfg);

}  // namespace agv::planner

#endif  // AGV_PLANNER_SEARCH_HPP_
