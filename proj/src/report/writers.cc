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
#include "snnpipe/report/writers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace snnpipe::report {

using cost::TaskKind;

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << CsvField(fields[i]);
  }
  out << "\r\n";
}

std::string FormatFixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

namespace {

std::string Str(int64_t v) { return std::to_string(v); }

std::string JoinInts(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void WriteCostCsv(std::ostream& out, const cost::CostMatrix& costs) {
  WriteCsvRow(out, {"layer", "FP", "WG", "IG", "total"});
  int64_t sums[3] = {0, 0, 0};
  for (int l = 0; l < costs.num_layers(); ++l) {
    int64_t row = 0;
    std::vector<std::string> f{costs.layer_names[l]};
    for (TaskKind k : cost::kAllTasks) {
      f.push_back(Str(costs.at(l, k)));
      sums[static_cast<int>(k)] += costs.at(l, k);
      row += costs.at(l, k);
    }
    f.push_back(Str(row));
    WriteCsvRow(out, f);
  }
  WriteCsvRow(out, {"N_total", Str(sums[0]), Str(sums[1]), Str(sums[2]), Str(costs.n_total)});
}

Json CostJson(const cost::CostMatrix& costs, const cost::ArrayConfig& array, int batch) {
  Json j;
  j["array"] = array.ToString();
  j["batch"] = batch;
  j["first_ig_excluded"] = costs.first_ig_excluded;
  Json layers = Json::array();
  for (int l = 0; l < costs.num_layers(); ++l) {
    Json e;
    e["layer"] = costs.layer_names[l];
    for (TaskKind k : cost::kAllTasks) {
      e[cost::TaskKindName(k)] = {{"cycles", costs.at(l, k)}, {"tile_cycles", costs.quantum(l, k)}};
    }
    layers.push_back(e);
  }
  j["layers"] = layers;
  j["n_total"] = costs.n_total;
  return j;
}

Json BoundsJson(const sched::SpeedupBounds& b) {
  return Json{{"layerwise", b.layerwise}, {"pipedream", b.pipedream}, {"split", b.split}, {"finegrained", b.finegrained}};
}

Json ScheduleJson(const sched::Schedule& s, const cost::CostMatrix& costs) {
  Json j;
  j["scheme"] = sched::SchemeName(s.scheme);
  if (!s.variant.empty()) j["variant"] = s.variant;
  j["requested_procs"] = s.requested_procs;
  j["procs"] = s.num_procs();
  j["makespan"] = s.makespan;
  j["n_total"] = s.n_total;
  j["speedup"] = s.speedup();
  Json delays = Json::object();
  for (int l = 0; l < costs.num_layers(); ++l) delays[costs.layer_names[l]] = s.delays.at(l);
  j["delays"] = delays;
  Json procs = Json::array();
  const auto loads = s.loads();
  for (int p = 0; p < s.num_procs(); ++p) {
    Json tasks = Json::array();
    for (const auto& a : s.processors[p]) {
      tasks.push_back(Json{{"layer", costs.layer_names.at(a.layer)},
                           {"task", cost::TaskKindName(a.kind)},
                           {"cycles", a.cycles},
                           {"task_cycles", a.task_cycles},
                           {"fraction", a.fraction()}});
    }
    procs.push_back(Json{{"processor", p}, {"load", loads[p]}, {"tasks", tasks}});
  }
  j["processors"] = procs;
  return j;
}

Json ScheduleMapJson(const sim::ScheduleMap& m) {
  Json j;
  j["procs"] = m.num_procs;
  j["batches"] = m.n_batches;
  j["slots"] = m.num_slots();
  j["fill_depth"] = m.fill_depth;
  j["slot_cycles"] = m.slot_cycles;
  j["steady_state_cycles"] = m.steady_state_cycles;
  j["utilization"] = m.utilization;
  return j;
}

Json CommJson(const sim::CommReport& r) {
  return Json{{"total_bytes", r.total_bytes},
              {"overhead_bytes", r.overhead_bytes},
              {"weight_overhead_bytes", r.weight_overhead_bytes},
              {"halo_overhead_bytes", r.halo_overhead_bytes},
              {"overhead_pct", r.overhead_pct}};
}

Json MemoryJson(const sim::MemoryReport& r) {
  return Json{{"per_processor_bytes", r.per_processor_bytes},
              {"peak_bytes", r.peak_bytes},
              {"total_bytes", r.total_bytes},
              {"assumptions", r.assumptions}};
}

void WriteSweepRowsCsv(std::ostream& out, const sim::SweepReport& rep) {
  WriteCsvRow(out, {"network", "scheme", "procs", "used_procs", "batch", "array", "n_total", "makespan",
                    "steady_state_cycles", "speedup", "delays", "comm_total_bytes", "comm_overhead_bytes",
                    "overhead_pct", "memory_peak_bytes"});
  for (const auto& r : rep.rows) {
    WriteCsvRow(out, {rep.network, sched::SchemeName(r.scheme), std::to_string(r.procs),
                      std::to_string(r.used_procs), std::to_string(r.batch), r.array.ToString(), Str(r.n_total),
                      Str(r.makespan), Str(r.steady_state_cycles), FormatFixed(r.speedup, 4),
                      JoinInts(r.delays, ' '), FormatFixed(r.comm.total_bytes, 1),
                      FormatFixed(r.comm.overhead_bytes, 1), FormatFixed(r.comm.overhead_pct, 5),
                      FormatFixed(r.memory_peak_bytes, 1)});
  }
}

void WriteSweepAggregateCsv(std::ostream& out, const sim::SweepReport& rep) {
  WriteCsvRow(out, {"network", "scheme", "procs", "runs", "mean_speedup", "min_speedup", "max_speedup",
                    "mean_total_bytes", "mean_overhead_bytes", "max_overhead_bytes", "overhead_pct"});
  for (const auto& a : rep.aggregates) {
    WriteCsvRow(out, {rep.network, sched::SchemeName(a.scheme), std::to_string(a.procs), std::to_string(a.runs),
                      FormatFixed(a.mean_speedup, 4), FormatFixed(a.min_speedup, 4), FormatFixed(a.max_speedup, 4),
                      FormatFixed(a.mean_total_bytes, 1), FormatFixed(a.mean_overhead_bytes, 1),
                      FormatFixed(a.max_overhead_bytes, 1), FormatFixed(a.overhead_pct, 5)});
  }
}

void WriteTableCsv(std::ostream& out, const sim::SweepReport& rep) {
  std::vector<sched::Scheme> schemes;
  std::vector<int> procs;
  for (const auto& a : rep.aggregates) {
    if (std::find(schemes.begin(), schemes.end(), a.scheme) == schemes.end()) schemes.push_back(a.scheme);
    if (std::find(procs.begin(), procs.end(), a.procs) == procs.end()) procs.push_back(a.procs);
  }
  const bool both = std::count(schemes.begin(), schemes.end(), sched::Scheme::kPipeDream) &&
                    std::count(schemes.begin(), schemes.end(), sched::Scheme::kFineGrained);
  std::vector<std::string> head{"network", "procs"};
  for (auto s : schemes) head.push_back(sched::SchemeName(s));
  if (both) head.push_back("improvement_pct");
  head.push_back("overhead_kb");
  head.push_back("overhead_pct");
  WriteCsvRow(out, head);
  for (int p : procs) {
    std::vector<std::string> row{rep.network, std::to_string(p)};
    for (auto s : schemes) row.push_back(FormatFixed(rep.Find(s, p)->mean_speedup, 2));
    if (both) row.push_back(FormatFixed(rep.Improvement(p), 2));
    const auto* ov = rep.Find(sched::Scheme::kFineGrained, p);
    row.push_back(ov ? FormatFixed(ov->mean_overhead_bytes / 1000.0, 2) : "");
    row.push_back(ov ? FormatFixed(ov->overhead_pct, 4) : "");
    WriteCsvRow(out, row);
  }
}

Json SweepJson(const sim::SweepReport& rep) {
  Json j;
  j["network"] = rep.network;
  Json aggs = Json::array();
  for (const auto& a : rep.aggregates) {
    aggs.push_back(Json{{"scheme", sched::SchemeName(a.scheme)},
                        {"procs", a.procs},
                        {"runs", a.runs},
                        {"mean_speedup", a.mean_speedup},
                        {"min_speedup", a.min_speedup},
                        {"max_speedup", a.max_speedup},
                        {"mean_total_bytes", a.mean_total_bytes},
                        {"mean_overhead_bytes", a.mean_overhead_bytes},
                        {"max_overhead_bytes", a.max_overhead_bytes},
                        {"overhead_pct", a.overhead_pct}});
  }
  j["aggregates"] = aggs;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back(Json{{"scheme", sched::SchemeName(r.scheme)},
                        {"procs", r.procs},
                        {"used_procs", r.used_procs},
                        {"batch", r.batch},
                        {"array", r.array.ToString()},
                        {"n_total", r.n_total},
                        {"makespan", r.makespan},
                        {"speedup", r.speedup},
                        {"delays", r.delays},
                        {"comm", CommJson(r.comm)},
                        {"memory_peak_bytes", r.memory_peak_bytes}});
  }
  j["rows"] = rows;
  return j;
}

std::string LineChartSvg(const std::string& title, const std::string& x_label, const std::string& y_label,
                         const std::vector<Series>& series) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const double width = 640, height = 420, left = 60, right = 150, top = 40, bottom = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x0 = x1 = x;
        y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y1 = std::max(y1, y);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  y1 = std::ceil(y1);
  if (y1 <= y0) y1 = y0 + 1;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + ph - (y - y0) / (y1 - y0) * ph; };
  auto num = [](double v) { return FormatFixed(v, 1); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << Escape(title)
    << "</text>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
    << "\" stroke=\"black\"/>\n";
  const int yticks = static_cast<int>(y1 - y0);
  const int ystep = std::max(1, yticks / 10);
  for (int i = 0; i <= yticks; i += ystep) {
    const double y = y0 + i;
    o << "<line x1=\"" << left << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << left + pw << "\" y2=\"" << num(sy(y))
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << left - 6 << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">" << y << "</text>\n";
  }
  std::vector<double> xs;
  for (const auto& s : series) {
    for (const auto& pt : s.points) xs.push_back(pt.first);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    o << "<text x=\"" << num(sx(x)) << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">" << x
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">" << Escape(x_label)
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << top + ph / 2 << ")\">" << Escape(y_label) << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    std::string pts;
    for (const auto& [x, y] : series[i].points) pts += num(sx(x)) + "," + num(sy(y)) + " ";
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
    for (const auto& [x, y] : series[i].points) {
      o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = top + 16 + 18.0 * i;
    o << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 32 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly + 4 << "\">" << Escape(series[i].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string SpeedupChartSvg(const sim::SweepReport& rep) {
  std::map<int, Series> by_scheme;
  std::vector<int> order;
  for (const auto& a : rep.aggregates) {
    const int key = static_cast<int>(a.scheme);
    if (!by_scheme.count(key)) {
      by_scheme[key].name = sched::SchemeName(a.scheme);
      order.push_back(key);
    }
    by_scheme[key].points.emplace_back(a.procs, a.mean_speedup);
  }
  std::vector<Series> series;
  for (int k : order) series.push_back(by_scheme[k]);
  return LineChartSvg(rep.network + ": mean speedup", "processors", "speedup", series);
}

}  // namespace snnpipe::report
