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

#include "agv/planner/search.hpp"

#include <algorithm>

#include "agv/planner/walk.hpp"
#include "agv/terrain/shortest_path.hpp"

namespace agv::planner {
namespace {

constexpr size_t kMaxTourTerminals = 12;
// Largest number of intermediate objects for the exact per-node tour bound.
constexpr size_t kMaxNodeTour = 8;

int64_t sat_add(int64_t a, int64_t b) {
  if (a == kNoBound || b == kNoBound) return kNoBound;
  return a + b;
}

// Shortest visiting order start -> all waypoints -> dest over a metric
// closure given by per-terminal distance tables (dynamic programming over
// subsets). `table[i]` holds distances from waypoint i, `to_dest[v]` the
// distance from v to the destination.
int64_t best_tour(const std::vector<std::vector<int64_t>>& table,
                  const std::vector<NodeIndex>& waypoints, const std::vector<int64_t>& to_dest,
                  NodeIndex start) {
  const size_t k = waypoints.size();
  if (k == 0) return to_dest[start];
  const size_t full = (size_t{1} << k) - 1;
  std::vector<int64_t> dp((full + 1) * k, kNoBound);
  for (size_t j = 0; j < k; ++j) dp[(size_t{1} << j) * k + j] = table[j][start];
  for (size_t mask = 1; mask <= full; ++mask) {
    for (size_t j = 0; j < k; ++j) {
      const int64_t here = dp[mask * k + j];
      if (here == kNoBound || !(mask & (size_t{1} << j))) continue;
      for (size_t next = 0; next < k; ++next) {
        if (mask & (size_t{1} << next)) continue;
        const size_t m2 = mask | (size_t{1} << next);
        const int64_t cand = sat_add(here, table[next][waypoints[j]]);
        if (cand < dp[m2 * k + next]) dp[m2 * k + next] = cand;
      }
    }
  }
  int64_t best = kNoBound;
  for (size_t j = 0; j < k; ++j) {
    best = std::min(best, sat_add(dp[full * k + j], to_dest[waypoints[j]]));
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// CompletionBounds

CompletionBounds::CompletionBounds(const FlowModel& model) {
  const auto& graph = model.graph();
  std::vector<int64_t> dist_w(model.arc_count()), pen_w(model.arc_count());
  for (ArcIndex a = 0; a < model.arc_count(); ++a) {
    dist_w[a] = model.arc(a).dist_mm;
    pen_w[a] = model.arc(a).penalty;
  }
  // Arc weights are symmetric, so trees from a node double as distances to it.
  for (NodeIndex v = 0; v < model.node_count(); ++v) {
    dist_.push_back(terrain::dijkstra(graph, dist_w, v).dist);
  }
  const auto& waypoints = model.waypoints();
  if (waypoints.size() > kMaxTourTerminals) return;
  std::vector<std::vector<int64_t>> dist_rows, pen_rows;
  for (NodeIndex w : waypoints) {
    dist_rows.push_back(dist_[w]);
    pen_rows.push_back(terrain::dijkstra(graph, pen_w, w).dist);
  }
  root_distance_ = best_tour(dist_rows, waypoints, dist_[model.dest()], model.start());
  root_penalty_ = best_tour(pen_rows, waypoints,
                            terrain::dijkstra(graph, pen_w, model.dest()).dist, model.start());
}

// ---------------------------------------------------------------------------
// SearchState

SearchState::SearchState(const FlowModel& model, SolverMode mode, const CompletionBounds* bounds)
    : model_(model), mode_(mode), bounds_(bounds) {
  const int32_t n = model.node_count();
  value_.assign(model.arc_count(), kUnset);
  out_one_.assign(n, 0);
  in_one_.assign(n, 0);
  out_open_.assign(n, 0);
  in_open_.assign(n, 0);
  component_.assign(n, -1);
  uf_parent_.assign(n, 0);
  members_.resize(n);
  sp_.assign(n, kNoBound);
  terminals_ = model.waypoints();
  if (!model.closed_tour()) terminals_.push_back(model.dest());
  queued_.assign(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    out_open_[v] = static_cast<int>(model.out_arcs(v).size());
    in_open_[v] = static_cast<int>(model.in_arcs(v).size());
    enqueue(v);
  }
}

void SearchState::set_bounds(int64_t best_dist_mm, int64_t best_penalty) {
  best_dist_ = best_dist_mm;
  best_penalty_ = best_penalty;
}

void SearchState::enqueue(NodeIndex v) {
  if (!queued_[v]) {
    queued_[v] = 1;
    queue_.push_back(v);
  }
}

void SearchState::assign(ArcIndex a, bool selected) {
  const ModelArc& arc = model_.arc(a);
  value_[a] = selected ? kOne : kZero;
  --out_open_[arc.from];
  --in_open_[arc.to];
  if (selected) {
    ++out_one_[arc.from];
    ++in_one_[arc.to];
    dist_ += arc.dist_mm;
    penalty_ += arc.penalty;
  }
  trail_.push_back(a);
  enqueue(arc.from);
  enqueue(arc.to);
}

void SearchState::undo(size_t mark) {
  while (trail_.size() > mark) {
    const ArcIndex a = trail_.back();
    trail_.pop_back();
    const ModelArc& arc = model_.arc(a);
    if (value_[a] == kOne) {
      --out_one_[arc.from];
      --in_one_[arc.to];
      dist_ -= arc.dist_mm;
      penalty_ -= arc.penalty;
    }
    ++out_open_[arc.from];
    ++in_open_[arc.to];
    value_[a] = kUnset;
  }
  for (NodeIndex v : queue_) queued_[v] = 0;
  queue_.clear();
}

bool SearchState::check_vertex(NodeIndex v) {
  const VertexRule& r = model_.rule(v);
  const int out_lo = out_one_[v];
  const int out_hi = out_one_[v] + out_open_[v];
  const int in_lo = in_one_[v];
  const int in_hi = in_one_[v] + in_open_[v];
  // Feasible range for the final out-degree.
  const int lo = std::max({out_lo, in_lo + r.balance, r.min_out});
  const int hi = std::min({out_hi, in_hi + r.balance, r.cap_out, r.cap_in + r.balance});
  if (lo > hi) return false;

  auto fix_all = [&](std::span<const ArcIndex> arcs, bool selected) {
    for (ArcIndex a : arcs) {
      if (value_[a] == kUnset) assign(a, selected);
    }
  };
  if (out_open_[v] > 0) {
    if (out_lo == hi) {
      fix_all(model_.out_arcs(v), false);
    } else if (out_hi == lo) {
      fix_all(model_.out_arcs(v), true);
    }
  }
  if (in_open_[v] > 0) {
    if (in_lo == hi - r.balance) {
      fix_all(model_.in_arcs(v), false);
    } else if (in_hi == lo - r.balance) {
      fix_all(model_.in_arcs(v), true);
    }
  }
  return true;
}

bool SearchState::check_bounds() {
  const bool by_dist = best_dist_ != kNoBound;
  const bool by_pen = mode_ == SolverMode::kPcmco && best_penalty_ != kNoBound;
  if (by_dist && dist_ >= best_dist_) return false;
  if (by_pen && penalty_ > best_penalty_) return false;
  if (by_dist || by_pen) {
    for (ArcIndex a = 0; a < model_.arc_count(); ++a) {
      if (value_[a] != kUnset) continue;
      const ModelArc& arc = model_.arc(a);
      if ((by_dist && dist_ + arc.dist_mm >= best_dist_) ||
          (by_pen && penalty_ + arc.penalty > best_penalty_)) {
        assign(a, false);
      }
    }
  }
  return true;
}

void SearchState::label_components() {
  const int32_t n = model_.node_count();
  for (NodeIndex v = 0; v < n; ++v) uf_parent_[v] = v;
  auto find = [&](NodeIndex v) {
    while (uf_parent_[v] != v) {
      uf_parent_[v] = uf_parent_[uf_parent_[v]];
      v = uf_parent_[v];
    }
    return v;
  };
  for (ArcIndex a : trail_) {
    if (value_[a] != kOne) continue;
    const NodeIndex x = find(model_.arc(a).from);
    const NodeIndex y = find(model_.arc(a).to);
    if (x != y) uf_parent_[std::max(x, y)] = std::min(x, y);
  }
  for (NodeIndex v = 0; v < n; ++v) {
    const bool touched = out_one_[v] + in_one_[v] > 0 || v == model_.start();
    component_[v] = touched ? find(v) : -1;
  }
}

int64_t SearchState::remaining_bound(bool penalty_metric) {
  const int32_t n = model_.node_count();
  auto rep = [&](NodeIndex v) { return component_[v] >= 0 ? component_[v] : v; };
  for (auto& m : members_) m.clear();
  for (NodeIndex v = 0; v < n; ++v) {
    if (component_[v] >= 0) members_[component_[v]].push_back(v);
  }
  objects_.clear();
  objects_.push_back(rep(model_.start()));
  for (NodeIndex v = 0; v < n; ++v) {
    if (component_[v] == v && v != objects_[0]) objects_.push_back(v);
  }
  for (NodeIndex t : terminals_) {
    if (component_[t] < 0) objects_.push_back(t);
  }
  const size_t k = objects_.size();
  const NodeIndex dest_rep = rep(model_.dest());
  size_t dest_obj = 0;
  while (objects_[dest_obj] != dest_rep) ++dest_obj;

  // gap_[i * k + j]: cheapest directed route from object i to object j over
  // undecided arcs, moving freely inside selected components.
  gap_.assign(k * k, kNoBound);
  using Entry = std::pair<int64_t, NodeIndex>;
  std::vector<Entry> heap;
  for (size_t i = 0; i < k; ++i) {
    std::fill(sp_.begin(), sp_.end(), kNoBound);
    heap.clear();
    auto reach = [&](NodeIndex v, int64_t d) {
      if (component_[v] >= 0) {
        if (d >= sp_[v]) return;
        for (NodeIndex m : members_[component_[v]]) {
          sp_[m] = d;
          heap.emplace_back(d, m);
          std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
      } else if (d < sp_[v]) {
        sp_[v] = d;
        heap.emplace_back(d, v);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
      }
    };
    reach(objects_[i], 0);
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), std::greater<>());
      const auto [d, u] = heap.back();
      heap.pop_back();
      if (d > sp_[u]) continue;
      for (ArcIndex a : model_.out_arcs(u)) {
        if (value_[a] != kUnset) continue;
        const ModelArc& arc = model_.arc(a);
        reach(arc.to, d + (penalty_metric ? arc.penalty : arc.dist_mm));
      }
    }
    for (size_t j = 0; j < k; ++j) gap_[i * k + j] = sp_[objects_[j]];
  }

  // Objects other than the two ends.
  std::vector<size_t> mid;
  for (size_t j = 1; j < k; ++j) {
    if (j != dest_obj) mid.push_back(j);
  }
  const size_t m = mid.size();
  if (m == 0) return dest_obj == 0 ? 0 : gap_[dest_obj];
  for (size_t j : mid) {
    if (gap_[j] == kNoBound) return kNoBound;  // not reachable from the start
  }

  if (m <= kMaxNodeTour) {
    const size_t full = (size_t{1} << m) - 1;
    dp_.assign((full + 1) * m, kNoBound);
    for (size_t j = 0; j < m; ++j) dp_[(size_t{1} << j) * m + j] = gap_[mid[j]];
    for (size_t mask = 1; mask <= full; ++mask) {
      for (size_t j = 0; j < m; ++j) {
        const int64_t here = dp_[mask * m + j];
        if (here == kNoBound) continue;
        for (size_t x = 0; x < m; ++x) {
          if (mask & (size_t{1} << x)) continue;
          const int64_t step = gap_[mid[j] * k + mid[x]];
          if (step == kNoBound) continue;
          int64_t& slot = dp_[(mask | (size_t{1} << x)) * m + x];
          slot = std::min(slot, here + step);
        }
      }
    }
    int64_t best = kNoBound;
    for (size_t j = 0; j < m; ++j) {
      best = std::min(best, sat_add(dp_[full * m + j], gap_[mid[j] * k + dest_obj]));
    }
    return best;
  }

  // Too many objects for the exact order: a spanning tree over the
  // symmetrised gaps is still below any visiting path.
  std::vector<int64_t> key(k, kNoBound);
  std::vector<char> done(k, 0);
  done[0] = 1;
  auto sym = [&](size_t a, size_t b) { return std::min(gap_[a * k + b], gap_[b * k + a]); };
  for (size_t o = 1; o < k; ++o) key[o] = sym(0, o);
  int64_t total = 0;
  for (size_t step = 1; step < k; ++step) {
    size_t pick = k;
    for (size_t o = 0; o < k; ++o) {
      if (!done[o] && (pick == k || key[o] < key[pick])) pick = o;
    }
    if (key[pick] == kNoBound) return kNoBound;
    total += key[pick];
    done[pick] = 1;
    for (size_t o = 0; o < k; ++o) {
      if (!done[o]) key[o] = std::min(key[o], sym(pick, o));
    }
  }
  return total;
}

void SearchState::residual_paths(std::span<const NodeIndex> sources, bool penalty_metric) {
  const NodeIndex home = component_[model_.start()];
  std::fill(sp_.begin(), sp_.end(), kNoBound);
  heap_.clear();
  auto push = [&](NodeIndex v, int64_t d) {
    sp_[v] = d;
    heap_.emplace_back(d, v);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  };
  auto reach = [&](NodeIndex v, int64_t d) {
    const int32_t c = component_[v];
    if (c >= 0 && c != home) {
      if (d >= sp_[v]) return;
      for (NodeIndex m : members_[c]) push(m, d);
    } else if (d < sp_[v]) {
      push(v, d);
    }
  };
  for (NodeIndex v : sources) reach(v, 0);
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
    const auto [d, u] = heap_.back();
    heap_.pop_back();
    if (d > sp_[u]) continue;
    for (ArcIndex a : model_.out_arcs(u)) {
      if (value_[a] != kUnset) continue;
      const ModelArc& arc = model_.arc(a);
      reach(arc.to, d + (penalty_metric ? arc.penalty : arc.dist_mm));
    }
  }
}

int64_t SearchState::walk_bound(bool penalty_metric) {
  const int32_t n = model_.node_count();
  const NodeIndex home = component_[model_.start()];
  for (auto& m : members_) m.clear();
  for (NodeIndex v = 0; v < n; ++v) {
    if (component_[v] >= 0) members_[component_[v]].push_back(v);
  }

  // Surplus per vertex of the home component, net surplus per other object.
  // Objects are represented by one member vertex.
  NodeIndex source = terrain::kNoIndex, sink = terrain::kNoIndex;
  int sources = 0, sinks = 0;
  auto tally = [&](NodeIndex rep, int excess) {
    if (excess < 0) {
      sources -= excess;
      source = rep;
    } else if (excess > 0) {
      sinks += excess;
      sink = rep;
    }
  };
  auto excess_of = [&](NodeIndex v) {
    return out_one_[v] - in_one_[v] - model_.rule(v).balance;
  };
  for (NodeIndex v : members_[home]) tally(v, excess_of(v));
  std::vector<NodeIndex> targets;  // objects that still have to be reached
  for (NodeIndex v = 0; v < n; ++v) {
    if (component_[v] != v || v == home) continue;
    int net = 0;
    for (NodeIndex m : members_[v]) net += excess_of(m);
    tally(v, net);
    targets.push_back(v);
  }
  if (component_[model_.dest()] < 0) tally(model_.dest(), excess_of(model_.dest()));
  for (NodeIndex w : model_.waypoints()) {
    if (component_[w] < 0) targets.push_back(w);
  }
  if (!((sources == 0 && sinks == 0) || (sources == 1 && sinks == 1))) return -1;
  const bool open = sources == 1;
  if (open) {
    // The sink object is the path's end, not an intermediate target.
    const NodeIndex sink_rep = component_[sink] >= 0 ? component_[sink] : sink;
    targets.erase(std::remove(targets.begin(), targets.end(), sink_rep), targets.end());
  }
  if (targets.size() > kMaxNodeTour) {
    // Dropping targets only relaxes the bound; keep the farthest ones.
    const NodeIndex anchor = open ? source : model_.start();
    std::stable_sort(targets.begin(), targets.end(), [&](NodeIndex a, NodeIndex b) {
      return bounds_->distance(anchor, a) > bounds_->distance(anchor, b);
    });
    targets.resize(kMaxNodeTour);
  }
  const size_t m = targets.size();
  const size_t full = (size_t{1} << m) - 1;

  // gap_ rows: one per target, then the source; columns: targets, sink, home.
  const size_t cols = m + 2;
  gap_.assign((m + 1) * cols, kNoBound);
  std::vector<int64_t> from_home(m, kNoBound);
  auto fill_row = [&](size_t row) {
    for (size_t j = 0; j < m; ++j) gap_[row * cols + j] = sp_[targets[j]];
    if (open) gap_[row * cols + m] = sp_[sink];
    int64_t back = kNoBound;
    for (NodeIndex c : members_[home]) back = std::min(back, sp_[c]);
    gap_[row * cols + m + 1] = back;
  };
  for (size_t i = 0; i < m; ++i) {
    const NodeIndex t = targets[i];
    residual_paths(std::span<const NodeIndex>(&t, 1), penalty_metric);
    fill_row(i);
  }
  if (open) {
    residual_paths(std::span<const NodeIndex>(&source, 1), penalty_metric);
    fill_row(m);
  }
  if (m > 0) {
    residual_paths(members_[home], penalty_metric);
    for (size_t j = 0; j < m; ++j) from_home[j] = sp_[targets[j]];
  }
  auto gap = [&](size_t row, size_t col) { return gap_[row * cols + col]; };

  // chain[mask * m + j]: cheapest route from `first(j)` through mask ending at j.
  auto chain = [&](auto first, std::vector<int64_t>& out, auto last) {
    dp_.assign((full + 1) * std::max<size_t>(m, 1), kNoBound);
    for (size_t j = 0; j < m; ++j) dp_[(size_t{1} << j) * m + j] = first(j);
    for (size_t mask = 1; mask <= full; ++mask) {
      for (size_t j = 0; j < m; ++j) {
        const int64_t here = dp_[mask * m + j];
        if (here == kNoBound) continue;
        for (size_t x = 0; x < m; ++x) {
          if (mask & (size_t{1} << x)) continue;
          const int64_t step = gap(j, x);
          if (step == kNoBound) continue;
          int64_t& slot = dp_[(mask | (size_t{1} << x)) * m + x];
          slot = std::min(slot, here + step);
        }
      }
    }
    out.assign(full + 1, kNoBound);
    for (size_t mask = 1; mask <= full; ++mask) {
      for (size_t j = 0; j < m; ++j) {
        if (mask & (size_t{1} << j)) {
          out[mask] = std::min(out[mask], sat_add(dp_[mask * m + j], last(j)));
        }
      }
    }
  };

  // Closed detours from the home component, possibly several.
  loops_cost_.assign(full + 1, kNoBound);
  loops_cost_[0] = 0;
  if (m > 0) {
    chain([&](size_t j) { return from_home[j]; }, loop_cost_,
          [&](size_t j) { return gap(j, m + 1); });
    for (size_t mask = 1; mask <= full; ++mask) {
      const size_t low = mask & (~mask + 1);
      for (size_t sub = mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        loops_cost_[mask] =
            std::min(loops_cost_[mask], sat_add(loop_cost_[sub], loops_cost_[mask ^ sub]));
      }
    }
  }
  if (!open) return loops_cost_[full];

  path_cost_.assign(full + 1, kNoBound);
  path_cost_[0] = gap(m, m);
  if (m > 0) {
    std::vector<int64_t> tmp;
    chain([&](size_t j) { return gap(m, j); }, tmp, [&](size_t j) { return gap(j, m); });
    for (size_t mask = 1; mask <= full; ++mask) path_cost_[mask] = tmp[mask];
  }
  int64_t best = kNoBound;
  for (size_t mask = 0; mask <= full; ++mask) {
    best = std::min(best, sat_add(path_cost_[mask], loops_cost_[full ^ mask]));
  }
  return best;
}

bool SearchState::check_remaining() {
  if (bounds_ == nullptr) return true;
  label_components();
  auto rest_of = [&](bool penalty_metric) {
    const int64_t sharp = walk_bound(penalty_metric);
    return sharp >= 0 ? sharp : remaining_bound(penalty_metric);
  };
  const bool by_pen = mode_ == SolverMode::kPcmco && best_penalty_ != kNoBound;
  // Without any bound to beat the distance pass still detects dead ends.
  if (best_dist_ != kNoBound || !by_pen) {
    const int64_t rest = rest_of(false);
    if (rest == kNoBound) return false;
    if (best_dist_ != kNoBound &&
        std::max(dist_ + rest, bounds_->root_distance()) >= best_dist_) {
      return false;
    }
  }
  if (by_pen) {
    const int64_t rest = rest_of(true);
    if (rest == kNoBound) return false;
    if (std::max(penalty_ + rest, bounds_->root_penalty()) > best_penalty_) return false;
  }
  return true;
}

bool SearchState::propagate() {
  auto fail = [&] {
    for (NodeIndex w : queue_) queued_[w] = 0;
    queue_.clear();
    return false;
  };
  for (;;) {
    while (!queue_.empty()) {
      const NodeIndex v = queue_.back();
      queue_.pop_back();
      queued_[v] = 0;
      if (!check_vertex(v)) return fail();
    }
    if (!check_bounds()) return fail();
    if (queue_.empty()) return check_remaining() ? true : fail();
  }
}

bool SearchState::needs_arcs(NodeIndex v) const {
  const VertexRule& r = model_.rule(v);
  return out_one_[v] - in_one_[v] != r.balance || out_one_[v] < r.min_out;
}

bool SearchState::zero_completion_balanced() const {
  for (NodeIndex v = 0; v < model_.node_count(); ++v) {
    if (needs_arcs(v)) return false;
  }
  return true;
}

bool SearchState::selected_connected() const {
  const int32_t n = model_.node_count();
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{model_.start()};
  seen[model_.start()] = 1;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    for (ArcIndex a : model_.out_arcs(v)) {
      const NodeIndex w = model_.arc(a).to;
      if (value_[a] == kOne && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
    for (ArcIndex a : model_.in_arcs(v)) {
      const NodeIndex w = model_.arc(a).from;
      if (value_[a] == kOne && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if (out_one_[v] + in_one_[v] > 0 && !seen[v]) return false;
  }
  return true;
}

std::vector<ArcIndex> SearchState::selected_arcs() const {
  std::vector<ArcIndex> arcs;
  for (ArcIndex a = 0; a < model_.arc_count(); ++a) {
    if (value_[a] == kOne) arcs.push_back(a);
  }
  return arcs;
}

ArcIndex SearchState::choose_arc(const std::vector<ArcIndex>& priority) const {
  for (ArcIndex a : priority) {
    if (value_[a] == kUnset) return a;
  }
  auto first_open = [&](std::span<const ArcIndex> arcs) {
    for (ArcIndex a : arcs) {
      if (value_[a] == kUnset) return a;
    }
    return static_cast<ArcIndex>(terrain::kNoIndex);
  };
  auto touched = [&](NodeIndex v) {
    return out_one_[v] + in_one_[v] > 0 || v == model_.start();
  };

  // First fail among vertices that still need arcs, preferring those that
  // already touch the selection so the walk grows from its loose ends.
  NodeIndex pick = terrain::kNoIndex;
  bool pick_touched = false;
  int fewest = 0;
  for (NodeIndex v = 0; v < model_.node_count(); ++v) {
    const int open = out_open_[v] + in_open_[v];
    if (open == 0 || !needs_arcs(v)) continue;
    const bool t = touched(v);
    if (pick == terrain::kNoIndex || (t && !pick_touched) ||
        (t == pick_touched && open < fewest)) {
      pick = v;
      pick_touched = t;
      fewest = open;
    }
  }
  if (pick != terrain::kNoIndex) {
    const VertexRule& r = model_.rule(pick);
    const bool wants_out =
        out_one_[pick] - in_one_[pick] < r.balance || out_one_[pick] < r.min_out;
    if (wants_out && bounds_ != nullptr) {
      // Cheapest first: arc length plus distance on to the nearest target.
      ArcIndex best = terrain::kNoIndex;
      int64_t best_score = kNoBound;
      for (ArcIndex a : model_.out_arcs(pick)) {
        if (value_[a] != kUnset) continue;
        const NodeIndex to = model_.arc(a).to;
        int64_t h = kNoBound;
        for (NodeIndex w : model_.waypoints()) {
          if (!touched(w)) h = std::min(h, bounds_->distance(to, w));
        }
        if (h == kNoBound) h = bounds_->distance(to, model_.dest());
        const int64_t score = sat_add(model_.arc(a).dist_mm, h);
        if (best == terrain::kNoIndex || score < best_score) {
          best = a;
          best_score = score;
        }
      }
      if (best != terrain::kNoIndex) return best;
    }
    const ArcIndex preferred = first_open(wants_out ? model_.out_arcs(pick) : model_.in_arcs(pick));
    if (preferred != terrain::kNoIndex) return preferred;
    return first_open(wants_out ? model_.in_arcs(pick) : model_.out_arcs(pick));
  }

  // Balanced but not yet connected: any open arc at the most constrained vertex.
  for (NodeIndex v = 0; v < model_.node_count(); ++v) {
    const int open = out_open_[v] + in_open_[v];
    if (open == 0) continue;
    if (pick == terrain::kNoIndex || open < fewest) {
      pick = v;
      fewest = open;
    }
  }
  if (pick == terrain::kNoIndex) return terrain::kNoIndex;
  const ArcIndex a = first_open(model_.out_arcs(pick));
  const ArcIndex b = first_open(model_.in_arcs(pick));
  if (a == terrain::kNoIndex) return b;
  if (b == terrain::kNoIndex) return a;
  return std::min(a, b);
}

// ---------------------------------------------------------------------------
// search

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const FlowModel& model, const SolverConfig& cfg, const CompletionBounds& bounds)
      : model_(model), cfg_(cfg), state_(model, cfg.mode, &bounds) {}

  void seed(const ProbeResult& probe) {
    std::vector<char> seen(model_.arc_count(), 0);
    for (ArcIndex a : probe.arcs) {
      if (!seen[a]) {
        seen[a] = 1;
        priority_.push_back(a);
      }
    }
    if (cfg_.mode == SolverMode::kPcmco) best_pen_ = probe.penalty;
    if (probe.admissible) {
      best_dist_ = probe.dist_mm;
      best_arcs_ = probe.arcs;
      std::sort(best_arcs_.begin(), best_arcs_.end());
      incumbents_.push_back({probe.dist_mm, probe.penalty});
      best_plan_pen_ = probe.penalty;
    }
    state_.set_bounds(best_dist_, best_pen_);
  }

  // A further heuristic incumbent, taken under the usual acceptance rule.
  void offer(const ProbeResult& candidate) {
    if (!candidate.admissible) return;
    const bool better =
        candidate.dist_mm < best_dist_ &&
        (cfg_.mode == SolverMode::kPco || candidate.penalty <= best_pen_);
    if (!better) return;
    best_dist_ = candidate.dist_mm;
    if (cfg_.mode == SolverMode::kPcmco) best_pen_ = candidate.penalty;
    best_plan_pen_ = candidate.penalty;
    best_arcs_ = candidate.arcs;
    std::sort(best_arcs_.begin(), best_arcs_.end());
    incumbents_.push_back({candidate.dist_mm, candidate.penalty});
    state_.set_bounds(best_dist_, best_pen_);
  }

  void run() {
    if (state_.propagate()) dfs();
  }

  bool has_incumbent() const { return !best_arcs_.empty() || !incumbents_.empty(); }
  bool aborted() const { return aborted_; }
  int64_t nodes() const { return nodes_; }
  const std::vector<ArcIndex>& best_arcs() const { return best_arcs_; }
  int64_t best_dist() const { return best_dist_; }
  int64_t best_plan_penalty() const { return best_plan_pen_; }
  const std::vector<Incumbent>& incumbents() const { return incumbents_; }

 private:
  void dfs() {
    if (state_.zero_completion_balanced() && state_.selected_connected()) {
      // Any further selected arc only adds distance and penalty, so the
      // all-zero completion dominates the rest of this subtree.
      accept();
      return;
    }
    const ArcIndex a = state_.choose_arc(priority_);
    if (a == terrain::kNoIndex) return;
    for (bool selected : {true, false}) {
      if (cfg_.node_budget && nodes_ >= *cfg_.node_budget) {
        aborted_ = true;
        return;
      }
      ++nodes_;
      const size_t mark = state_.mark();
      state_.assign(a, selected);
      if (state_.propagate()) dfs();
      state_.undo(mark);
      if (aborted_) return;
    }
  }

  void accept() {
    const int64_t d = state_.committed_dist();
    const int64_t p = state_.committed_penalty();
    const bool better = d < best_dist_ && (cfg_.mode == SolverMode::kPco || p <= best_pen_);
    if (!better) return;
    best_dist_ = d;
    if (cfg_.mode == SolverMode::kPcmco) best_pen_ = p;
    best_plan_pen_ = p;
    best_arcs_ = state_.selected_arcs();
    incumbents_.push_back({d, p});
    state_.set_bounds(best_dist_, best_pen_);
  }

  const FlowModel& model_;
  const SolverConfig& cfg_;
  SearchState state_;
  std::vector<ArcIndex> priority_;
  int64_t best_dist_ = kNoBound;
  int64_t best_pen_ = kNoBound;
  int64_t best_plan_pen_ = 0;
  std::vector<ArcIndex> best_arcs_;
  std::vector<Incumbent> incumbents_;
  int64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

std::optional<Plan> search(const FlowModel& model, const SolverConfig& cfg) {
  cfg.validate();
  const auto metric =
      cfg.mode == SolverMode::kPco ? ProbeMetric::kDistance : ProbeMetric::kPreference;
  const auto seed = probe(model, metric);
  if (!seed) return std::nullopt;

  const CompletionBounds bounds(model);
  BranchAndBound bnb(model, cfg, bounds);
  bnb.seed(*seed);
  // Tours under both weightings; either may fit the other solver's graph better.
  const auto other =
      metric == ProbeMetric::kDistance ? ProbeMetric::kPreference : ProbeMetric::kDistance;
  for (const ProbeMetric m : {metric, other}) {
    if (const auto tour = tour_probe(model, m)) bnb.offer(*tour);
  }
  bnb.run();
  if (bnb.incumbents().empty()) return std::nullopt;

  Plan plan;
  plan.mode = cfg.mode;
  plan.arcs = bnb.best_arcs();
  plan.walk = extract_walk(model.graph(), plan.arcs, model.start(), model.dest());
  plan.d_end_mm = bnb.best_dist();
  plan.p_end = bnb.best_plan_penalty();
  plan.optimal = !bnb.aborted();
  plan.nodes_explored = bnb.nodes();
  plan.probe_penalty = seed->penalty;
  plan.incumbents = bnb.incumbents();
  return plan;
}

}  // namespace agv::planner
