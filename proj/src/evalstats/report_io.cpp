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

#include "agv/evalstats/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace agv::evalstats {
namespace {

using Json = nlohmann::ordered_json;

Json summary_json(const Summary& s) {
  return Json{{"mean", s.mean}, {"median", s.median}, {"std", s.std}};
}

Json solver_json(const SolverRecord& r, const terrain::TerrainGraph& graph, bool with_probe) {
  Json j;
  j["d_end_m"] = r.d_end_m();
  j["p_end"] = static_cast<double>(r.p_end) / static_cast<double>(planner::kPenaltyScale);
  if (with_probe) {
    j["probe_p0"] =
        static_cast<double>(r.probe_penalty) / static_cast<double>(planner::kPenaltyScale);
  }
  j["interventions"] = r.interventions;
  j["walk_edges"] = r.walk_edges;
  j["optimal"] = r.optimal;
  j["nodes"] = r.nodes;
  Json walk = Json::array();
  for (auto v : r.walk) walk.push_back(graph.node(v).id);
  j["walk"] = std::move(walk);
  return j;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string report_to_json(const Report& report, const terrain::TerrainGraph& graph) {
  const auto& cfg = report.config;
  Json doc;
  Json classes = Json::array();
  for (auto c : cfg.classes) classes.push_back(std::string(envsim::weather_class_name(c)));
  doc["config"] = {{"per_class", cfg.per_class},
                   {"classes", classes},
                   {"seed", cfg.seed},
                   {"node_budget", cfg.node_budget ? Json(*cfg.node_budget) : Json(nullptr)},
                   {"capacity", cfg.capacity},
                   {"max_retries", cfg.max_retries}};

  Json records = Json::array();
  for (const auto& r : report.records) {
    Json j;
    j["class"] = std::string(envsim::weather_class_name(r.weather_class));
    j["instance"] = r.index;
    j["weather"] = {r.weather.rain, r.weather.fog, r.weather.wind};
    j["start"] = r.instance.start;
    j["dest"] = r.instance.dest;
    j["mandatory"] = r.instance.mandatory;
    j["retries"] = r.retries;
    j["pco"] = solver_json(r.pco, graph, false);
    j["pcmco"] = solver_json(r.pcmco, graph, true);
    records.push_back(std::move(j));
  }
  doc["records"] = std::move(records);

  Json summary = Json::array();
  for (const auto& s : report.classes) {
    Json j;
    j["class"] = std::string(envsim::weather_class_name(s.weather_class));
    j["pco"] = {{"distance", summary_json(s.pco_distance)},
                {"interventions", summary_json(s.pco_interventions)}};
    j["pcmco"] = {{"distance", summary_json(s.pcmco_distance)},
                  {"interventions", summary_json(s.pcmco_interventions)}};
    j["distance_overhead"] = s.distance_overhead;
    j["t_test"] = {{"t", s.t_test.t},
                   {"p", s.t_test.p},
                   {"df", s.t_test.df},
                   {"degenerate", s.t_test.degenerate}};
    j["chi_square"] = {{"chi2", s.chi_square.chi2},
                       {"p", s.chi_square.p},
                       {"df", s.chi_square.df},
                       {"degenerate", s.chi_square.degenerate}};
    summary.push_back(std::move(j));
  }
  doc["summary"] = std::move(summary);
  return doc.dump(1) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out << "class,instance,solver,d_end_m,interventions,optimal,nodes,wall_ms\n";
  for (const auto& r : report.records) {
    const std::string cls(envsim::weather_class_name(r.weather_class));
    for (const auto* s : {&r.pco, &r.pcmco}) {
      out << cls << ',' << r.index << ',' << (s == &r.pco ? "pco" : "pcmco") << ','
          << fmt("%.3f", s->d_end_m()) << ',' << s->interventions << ','
          << (s->optimal ? "true" : "false") << ',' << s->nodes << ','
          << fmt("%.3f", s->wall_ms) << '\n';
    }
  }
  return out.str();
}

std::string format_table(const Report& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-7s | %10s %10s %10s | %6s %6s %6s\n", "weather",
                "solver", "D mean", "D med", "D std", "I mean", "I med", "I std");
  out << line;
  out << std::string(80, '-') << '\n';
  for (const auto& s : report.classes) {
    const std::string cls(envsim::weather_class_name(s.weather_class));
    auto row = [&](const char* name, const Summary& d, const Summary& i) {
      std::snprintf(line, sizeof line, "%-10s %-7s | %10.1f %10.1f %10.1f | %6.2f %6.1f %6.2f\n",
                    cls.c_str(), name, d.mean, d.median, d.std, i.mean, i.median, i.std);
      out << line;
    };
    row("PCO", s.pco_distance, s.pco_interventions);
    row("PCMCO", s.pcmco_distance, s.pcmco_interventions);
  }
  out << '\n';
  for (const auto& s : report.classes) {
    std::snprintf(line, sizeof line,
                  "%-10s overhead %+.1f%%  t=%.4f p=%.3g%s  chi2=%.4f p=%.3g%s\n",
                  std::string(envsim::weather_class_name(s.weather_class)).c_str(),
                  100.0 * s.distance_overhead, s.t_test.t, s.t_test.p,
                  s.t_test.degenerate ? " (degenerate)" : "", s.chi_square.chi2, s.chi_square.p,
                  s.chi_square.degenerate ? " (degenerate)" : "");
    out << line;
  }
  return out.str();
}

}  // namespace agv::evalstats
