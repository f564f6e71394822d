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

#include "agv/evalstats/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <stdexcept>
#include <thread>

#include "agv/common/rng.hpp"
#include "agv/envsim/missions.hpp"
#include "agv/planner/flow_model.hpp"

namespace agv::evalstats {

using terrain::NodeIndex;

int64_t count_interventions(std::span<const NodeIndex> walk, const terrain::TerrainGraph& graph,
                            const envsim::Weather& w) {
  int64_t count = 0;
  for (size_t i = 1; i < walk.size(); ++i) {
    const auto e = graph.edge_between(walk[i - 1], walk[i]);
    if (!e) throw std::invalid_argument("count_interventions: non-adjacent step");
    if (envsim::feasibility_label(graph.edge(*e), w) == 0) ++count;
  }
  return count;
}

void BenchmarkConfig::validate() const {
  if (per_class < 2) throw std::invalid_argument("per_class must be >= 2");
  if (classes.empty()) throw std::invalid_argument("no weather classes selected");
  if (node_budget && *node_budget < 1) throw std::invalid_argument("node budget must be >= 1");
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
}

namespace {

SolverRecord to_record(const planner::Plan& plan, const terrain::TerrainGraph& graph,
                       const envsim::Weather& w, double wall_ms) {
  SolverRecord r;
  r.d_end_mm = plan.d_end_mm;
  r.p_end = plan.p_end;
  r.probe_penalty = plan.probe_penalty;
  r.interventions = count_interventions(plan.walk, graph, w);
  r.walk_edges = plan.walk.empty() ? 0 : static_cast<int64_t>(plan.walk.size()) - 1;
  r.optimal = plan.optimal;
  r.nodes = plan.nodes_explored;
  r.wall_ms = wall_ms;
  r.walk = plan.walk;
  return r;
}

std::optional<planner::Plan> timed_search(const planner::FlowModel& model,
                                          const planner::SolverConfig& cfg, double* wall_ms) {
  const auto t0 = std::chrono::steady_clock::now();
  auto plan = planner::search(model, cfg);
  *wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
  return plan;
}

struct Job {
  InstanceRecord record;
  std::vector<std::string> log;
  std::exception_ptr error;
};

void solve_job(const terrain::TerrainGraph& graph, const nn::MlpParams& params,
               const BenchmarkConfig& cfg, Job& job) {
  InstanceRecord& rec = job.record;
  const auto cls = static_cast<uint64_t>(rec.weather_class);
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    Rng rng(derive_seed(cfg.seed, {0xBE4C, cls, static_cast<uint64_t>(rec.index),
                                   static_cast<uint64_t>(attempt)}));
    rec.weather = envsim::sample_weather(rec.weather_class, rng);
    rec.instance = envsim::random_mission(graph, rng);
    rec.retries = attempt;

    planner::SolverConfig scfg;
    scfg.capacity = cfg.capacity;
    scfg.node_budget = cfg.node_budget;
    const auto penalties = nn::edge_preferences(params, graph, rec.weather);
    std::optional<planner::FlowModel> model;
    try {
      model.emplace(planner::build_model(graph, rec.instance, penalties, scfg));
    } catch (const planner::InvalidInstance& e) {
      job.log.push_back(std::string("resampling invalid instance: ") + e.what());
      continue;
    }
    double pco_ms = 0.0, pcmco_ms = 0.0;
    scfg.mode = planner::SolverMode::kPco;
    const auto pco = timed_search(*model, scfg, &pco_ms);
    scfg.mode = planner::SolverMode::kPcmco;
    const auto pcmco = pco ? timed_search(*model, scfg, &pcmco_ms) : std::nullopt;
    if (!pco || !pcmco) {
      job.log.push_back(std::string("resampling infeasible instance (") +
                        (pco ? "pcmco" : "pco") + ")");
      continue;
    }
    rec.pco = to_record(*pco, graph, rec.weather, pco_ms);
    rec.pcmco = to_record(*pcmco, graph, rec.weather, pcmco_ms);
    return;
  }
  throw std::runtime_error("no feasible instance after " + std::to_string(cfg.max_retries) +
                           " retries");
}

}  // namespace

std::vector<ClassSummary> summarize(const std::vector<InstanceRecord>& records,
                                    const std::vector<envsim::WeatherClass>& classes) {
  std::vector<ClassSummary> out;
  for (auto cls : classes) {
    std::vector<double> dp, dm, ip, im;
    std::vector<int64_t> cp, cm;
    for (const auto& r : records) {
      if (r.weather_class != cls) continue;
      dp.push_back(r.pco.d_end_m());
      dm.push_back(r.pcmco.d_end_m());
      ip.push_back(static_cast<double>(r.pco.interventions));
      im.push_back(static_cast<double>(r.pcmco.interventions));
      cp.push_back(r.pco.interventions);
      cm.push_back(r.pcmco.interventions);
    }
    if (dp.empty()) continue;
    ClassSummary s;
    s.weather_class = cls;
    s.pco_distance = aggregate(dp);
    s.pcmco_distance = aggregate(dm);
    s.pco_interventions = aggregate(ip);
    s.pcmco_interventions = aggregate(im);
    s.distance_overhead =
        s.pco_distance.mean > 0.0 ? s.pcmco_distance.mean / s.pco_distance.mean - 1.0 : 0.0;
    if (dp.size() >= 2) s.t_test = paired_t_test(dm, dp);
    s.chi_square = chi_square_test(cp, cm);
    out.push_back(s);
  }
  return out;
}

Report run_benchmark(const terrain::TerrainGraph& graph, const nn::MlpParams& params,
                     const BenchmarkConfig& cfg, const LogFn& log) {
  cfg.validate();
  params.validate();
  std::vector<Job> jobs;
  for (auto cls : cfg.classes) {
    for (int i = 0; i < cfg.per_class; ++i) {
      Job job;
      job.record.weather_class = cls;
      job.record.index = i;
      jobs.push_back(std::move(job));
    }
  }

  int threads = cfg.threads > 0 ? cfg.threads
                                : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(jobs.size()));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      try {
        solve_job(graph, params, cfg, jobs[i]);
      } catch (...) {
        jobs[i].error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Report report;
  report.config = cfg;
  for (auto& job : jobs) {
    if (log) {
      for (const auto& line : job.log) {
        log(std::string(envsim::weather_class_name(job.record.weather_class)) + "#" +
            std::to_string(job.record.index) + ": " + line);
      }
    }
    if (job.error) std::rethrow_exception(job.error);
    report.records.push_back(std::move(job.record));
  }
  report.classes = summarize(report.records, cfg.classes);
  return report;
}

}  // namespace agv::evalstats
