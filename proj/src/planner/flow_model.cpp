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

#include "agv/planner/flow_model.hpp"

#include <algorithm>
#include <cmath>

namespace agv::planner {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

std::string_view solver_name(SolverMode mode) {
  return mode == SolverMode::kPco ? "pco" : "pcmco";
}

void SolverConfig::validate() const {
  if (capacity < 1) throw std::invalid_argument("capacity N must be >= 1");
  if (node_budget && *node_budget < 1) throw std::invalid_argument("node budget must be >= 1");
}

int64_t scale_penalty(double p) {
  if (!std::isfinite(p)) throw std::invalid_argument("penalty must be finite");
  // The epsilon keeps decimal halves such as 0.4995 from rounding down.
  const auto scaled = static_cast<int64_t>(std::floor(p * kPenaltyScale + 0.5 + 1e-9));
  return std::clamp<int64_t>(scaled, 0, kPenaltyScale);
}

InvalidInstance::InvalidInstance(std::vector<std::string> violations)
    : std::runtime_error("invalid instance: " + join(violations)),
      violations_(std::move(violations)) {}

FlowModel build_model(const terrain::TerrainGraph& graph, const terrain::Instance& inst,
                      std::span<const double> edge_penalty, const SolverConfig& cfg) {
  cfg.validate();
  if (auto violations = terrain::validate_instance(graph, inst); !violations.empty()) {
    throw InvalidInstance(std::move(violations));
  }
  if (!edge_penalty.empty() && edge_penalty.size() != static_cast<size_t>(graph.edge_count())) {
    throw std::invalid_argument("penalty vector size does not match edge count");
  }

  FlowModel m;
  m.graph_ = &graph;
  m.capacity_ = cfg.capacity;
  m.start_ = graph.node_index(inst.start);
  m.dest_ = graph.node_index(inst.dest);

  m.arcs_.reserve(graph.arc_count());
  for (ArcIndex a = 0; a < graph.arc_count(); ++a) {
    const terrain::Arc& ga = graph.arc(a);
    const int64_t pen = edge_penalty.empty() ? 0 : scale_penalty(edge_penalty[ga.edge]);
    m.arcs_.push_back({ga.from, ga.to, ga.edge, graph.arc_dist_mm(a), pen});
  }

  m.waypoint_flag_.assign(graph.node_count(), 0);
  for (const std::string& id : inst.mandatory) {
    const NodeIndex v = graph.node_index(id);
    if (v == m.start_ || v == m.dest_) continue;
    m.waypoint_flag_[v] = 1;
  }
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (m.waypoint_flag_[v]) m.waypoints_.push_back(v);
  }

  const int n = cfg.capacity;
  m.rules_.assign(graph.node_count(), VertexRule{0, n, n, 0});
  for (NodeIndex v : m.waypoints_) m.rules_[v].min_out = 1;
  if (m.closed_tour()) {
    m.rules_[m.start_] = {0, n, n, 1};
  } else {
    m.rules_[m.start_] = {+1, n, n - 1, 1};
    m.rules_[m.dest_] = {-1, n - 1, n, 0};
  }
  return m;
}

std::optional<std::string> check_arc_set(const FlowModel& model, std::span<const ArcIndex> arcs) {
  const int32_t n = model.node_count();
  std::vector<int> out(n, 0), in(n, 0);
  std::vector<int> used(model.arc_count(), 0);
  for (ArcIndex a : arcs) {
    if (a < 0 || a >= model.arc_count()) return "arc id out of range";
    if (++used[a] > 1) return "arc " + std::to_string(a) + " selected more than once";
    ++out[model.arc(a).from];
    ++in[model.arc(a).to];
  }
  const auto& g = model.graph();
  for (NodeIndex v = 0; v < n; ++v) {
    const VertexRule& r = model.rule(v);
    if (out[v] - in[v] != r.balance) return "flow balance violated at '" + g.node(v).id + "'";
    if (out[v] > r.cap_out || in[v] > r.cap_in) return "capacity exceeded at '" + g.node(v).id + "'";
    if (out[v] < r.min_out) return "node '" + g.node(v).id + "' is not visited";
  }
  // Weak connectivity of the selected arcs, rooted at the start.
  std::vector<char> seen(n, 0);
  std::vector<NodeIndex> stack{model.start()};
  seen[model.start()] = 1;
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    stack.pop_back();
    auto visit = [&](ArcIndex a, NodeIndex w) {
      if (used[a] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    };
    for (ArcIndex a : model.out_arcs(v)) visit(a, model.arc(a).to);
    for (ArcIndex a : model.in_arcs(v)) visit(a, model.arc(a).from);
  }
  for (NodeIndex v = 0; v < n; ++v) {
    if ((out[v] + in[v] > 0) && !seen[v]) return "selected arcs are disconnected at '" + g.node(v).id + "'";
  }
  return std::nullopt;
}

}  // namespace agv::planner
