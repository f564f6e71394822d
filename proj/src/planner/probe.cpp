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

#include "agv/planner/probe.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "agv/terrain/shortest_path.hpp"

namespace agv::planner {
namespace {

constexpr size_t kMaxExactOrder = 12;
constexpr int64_t kInf = std::numeric_limits<int64_t>::max();

std::vector<int64_t> arc_weights(const FlowModel& model, ProbeMetric metric) {
  std::vector<int64_t> weight(model.arc_count());
  for (ArcIndex a = 0; a < model.arc_count(); ++a) {
    const ModelArc& arc = model.arc(a);
    weight[a] = metric == ProbeMetric::kDistance ? arc.dist_mm
                                                 : arc.penalty * kPreferenceFactor + arc.dist_mm;
  }
  return weight;
}

// Visiting order of the waypoints minimising the closure cost start -> ... -> dest.
std::vector<NodeIndex> best_order(const FlowModel& model, const std::vector<int64_t>& weight) {
  const auto& wp = model.waypoints();
  const size_t k = wp.size();
  if (k == 0) return {};
  std::vector<std::vector<int64_t>> from;  // from[i][v], i over waypoints
  for (NodeIndex w : wp) from.push_back(terrain::dijkstra(model.graph(), weight, w).dist);
  const auto from_start = terrain::dijkstra(model.graph(), weight, model.start()).dist;
  const auto to_dest = terrain::dijkstra(model.graph(), weight, model.dest()).dist;
  auto add = [](int64_t a, int64_t b) { return a == kInf || b == kInf ? kInf : a + b; };

  if (k > kMaxExactOrder) {
    std::vector<NodeIndex> order;
    std::vector<char> used(k, 0);
    const std::vector<int64_t>* here = &from_start;
    for (size_t step = 0; step < k; ++step) {
      size_t pick = k;
      for (size_t j = 0; j < k; ++j) {
        if (!used[j] && (pick == k || (*here)[wp[j]] < (*here)[wp[pick]])) pick = j;
      }
      used[pick] = 1;
      order.push_back(wp[pick]);
      here = &from[pick];
    }
    return order;
  }

  const size_t full = (size_t{1} << k) - 1;
  std::vector<int64_t> dp((full + 1) * k, kInf);
  std::vector<int8_t> parent((full + 1) * k, -1);
  for (size_t j = 0; j < k; ++j) dp[(size_t{1} << j) * k + j] = from_start[wp[j]];
  for (size_t mask = 1; mask <= full; ++mask) {
    for (size_t j = 0; j < k; ++j) {
      const int64_t here = dp[mask * k + j];
      if (here == kInf) continue;
      for (size_t x = 0; x < k; ++x) {
        if (mask & (size_t{1} << x)) continue;
        const size_t m2 = mask | (size_t{1} << x);
        const int64_t cand = add(here, from[j][wp[x]]);
        if (cand < dp[m2 * k + x]) {
          dp[m2 * k + x] = cand;
          parent[m2 * k + x] = static_cast<int8_t>(j);
        }
      }
    }
  }
  size_t last = 0;
  int64_t best = kInf;
  for (size_t j = 0; j < k; ++j) {
    const int64_t total = add(dp[full * k + j], to_dest[wp[j]]);
    if (total < best) {
      best = total;
      last = j;
    }
  }
  std::vector<NodeIndex> order;
  size_t mask = full;
  for (int j = static_cast<int>(last); j >= 0;) {
    order.push_back(wp[j]);
    const int prev = parent[mask * k + j];
    mask ^= size_t{1} << j;
    j = prev;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

// Cheapest route over arcs that are unused and keep every vertex within its
// pass limits. Returns the arcs in travel order.
std::optional<std::vector<ArcIndex>> residual_route(const FlowModel& model,
                                                    const std::vector<int64_t>& weight,
                                                    const std::vector<char>& used,
                                                    const std::vector<int>& outs,
                                                    const std::vector<int>& ins, NodeIndex from,
                                                    NodeIndex to) {
  if (from == to) return std::vector<ArcIndex>{};
  const int32_t n = model.node_count();
  std::vector<int64_t> dist(n, kInf);
  std::vector<ArcIndex> via(n, terrain::kNoIndex);
  using Entry = std::pair<int64_t, NodeIndex>;
  std::vector<Entry> heap{{0, from}};
  dist[from] = 0;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    const auto [d, u] = heap.back();
    heap.pop_back();
    if (d > dist[u]) continue;
    if (u == to) break;
    if (outs[u] >= model.rule(u).cap_out) continue;
    for (ArcIndex a : model.out_arcs(u)) {
      const NodeIndex v = model.arc(a).to;
      if (used[a] || ins[v] >= model.rule(v).cap_in) continue;
      if (d + weight[a] < dist[v]) {
        dist[v] = d + weight[a];
        via[v] = a;
        heap.emplace_back(dist[v], v);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
      }
    }
  }
  if (dist[to] == kInf) return std::nullopt;
  std::vector<ArcIndex> path;
  for (NodeIndex v = to; v != from; v = model.arc(via[v]).from) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<ProbeResult> probe(const FlowModel& model, ProbeMetric metric) {
  const auto weight = arc_weights(model, metric);
  auto chain = terrain::greedy_chain(model.graph(), weight, model.start(), model.waypoints(),
                                     model.dest());
  if (!chain) return std::nullopt;

  ProbeResult r;
  r.arcs = std::move(*chain);
  r.walk = terrain::arcs_to_walk(model.graph(), model.start(), r.arcs);
  for (ArcIndex a : r.arcs) {
    r.dist_mm += model.arc(a).dist_mm;
    r.penalty += model.arc(a).penalty;
  }
  r.admissible = !check_arc_set(model, r.arcs).has_value();
  return r;
}

std::optional<ProbeResult> tour_probe(const FlowModel& model, ProbeMetric metric) {
  const auto weight = arc_weights(model, metric);
  auto stops = best_order(model, weight);
  stops.push_back(model.dest());

  std::vector<char> used(model.arc_count(), 0);
  std::vector<int> outs(model.node_count(), 0), ins(model.node_count(), 0);
  ProbeResult r;
  NodeIndex here = model.start();
  for (NodeIndex stop : stops) {
    auto leg = residual_route(model, weight, used, outs, ins, here, stop);
    if (!leg) return std::nullopt;
    for (ArcIndex a : *leg) {
      used[a] = 1;
      ++outs[model.arc(a).from];
      ++ins[model.arc(a).to];
      r.arcs.push_back(a);
    }
    here = stop;
  }
  r.walk = terrain::arcs_to_walk(model.graph(), model.start(), r.arcs);
  for (ArcIndex a : r.arcs) {
    r.dist_mm += model.arc(a).dist_mm;
    r.penalty += model.arc(a).penalty;
  }
  r.admissible = !check_arc_set(model, r.arcs).has_value();
  return r;
}

}  // namespace agv::planner
