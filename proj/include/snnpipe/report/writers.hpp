/* Copyright 2026 The snnpipe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SNNPIPE_REPORT_WRITERS_HPP_
#define SNNPIPE_REPORT_WRITERS_HPP_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "snnpipe/cost/cost_model.hpp"
#include "snnpipe/sched/schedule.hpp"
#include "snnpipe/sim/memory.hpp"
#include "snnpipe/sim/pipeline_sim.hpp"
#include "snnpipe/sim/sweep.hpp"

namespace snnpipe::report {

using Json = nlohmann::ordered_json;

// RFC 4180: fields with a comma, quote, CR or LF are quoted, quotes doubled,
// records end in CRLF.
std::string CsvField(const std::string& s);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

std::string FormatFixed(double v, int digits);

// One row per costed layer (FP, WG, IG, sum) and a closing N_total row.
void WriteCostCsv(std::ostream& out, const cost::CostMatrix& costs);
Json CostJson(const cost::CostMatrix& costs, const cost::ArrayConfig& array, int batch);

Json BoundsJson(const sched::SpeedupBounds& b);
// Processor -> ordered allocations with cycles and split fractions.
Json ScheduleJson(const sched::Schedule& s, const cost::CostMatrix& costs);
Json ScheduleMapJson(const sim::ScheduleMap& m);
Json CommJson(const sim::CommReport& r);
Json MemoryJson(const sim::MemoryReport& r);

void WriteSweepRowsCsv(std::ostream& out, const sim::SweepReport& rep);
void WriteSweepAggregateCsv(std::ostream& out, const sim::SweepReport& rep);
// Mean speedup per P with one column per scheme, PipeDream improvement and
// overhead, one row per processor count.
void WriteTableCsv(std::ostream& out, const sim::SweepReport& rep);
Json SweepJson(const sim::SweepReport& rep);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};
std::string LineChartSvg(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<Series>& series);
// Mean speedup against processor count, one line per scheme.
std::string SpeedupChartSvg(const sim::SweepReport& rep);

}  // namespace snnpipe::report

#endif  // SNNPIPE_REPORT_WRITERS_HPP_
