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

#ifndef AGV_EVALSTATS_REPORT_IO_HPP_
#define AGV_EVALSTATS_REPORT_IO_HPP_

#include <string>

#include "agv/evalstats/benchmark.hpp"

namespace agv::evalstats {

// Full report. Wall times are left out so the output depends on the
// configuration alone.
std::string report_to_json(const Report& report, const terrain::TerrainGraph& graph);

// One row per (record, solver):
// class,instance,solver,d_end_m,interventions,optimal,nodes,wall_ms
std::string report_to_csv(const Report& report);

// Aggregates in a Table-1 style layout followed by the per-class tests.
std::string format_table(const Report& report);

}  // namespace agv::evalstats

#endif  // AGV_EVALSTATS_REPORT_IO_HPP_
