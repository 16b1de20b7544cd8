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
// Command-line front end: cost, schedule, simulate, sweep and train-toy.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snnpipe/cost/cost_model.hpp"
#include "snnpipe/errors.hpp"
#include "snnpipe/network.hpp"
#include "snnpipe/report/writers.hpp"
#include "snnpipe/sched/schedule.hpp"
#include "snnpipe/sim/comm.hpp"
#include "snnpipe/sim/memory.hpp"
#include "snnpipe/sim/pipeline_sim.hpp"
#include "snnpipe/sim/sweep.hpp"
#include "snnpipe/snn/dataset.hpp"
#include "snnpipe/snn/train.hpp"

namespace fs = std::filesystem;
using namespace snnpipe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct Options {
  std::string net;
  std::vector<std::string> arrays;
  std::string procs;
  std::vector<int> batches;
  std::vector<std::string> schemes;
  int precision_bytes = 4;
  int spike_bits = 1;
  std::string out;
  uint64_t seed = 1;
  bool svg = false;
  int sim_batches = 0;
  int threads = 1;
  // train-toy
  int epochs = 50;
  int train_batch = 32;
  std::string delays = "0,0";
  std::string optimizer = "adam";
  double lr = 1e-3;
  int samples = 200;
  std::string data;
  std::string save_data;
};

// Stage label for diagnostics.
std::string g_stage = "setup";

NetworkSpec LoadNet(const std::string& arg) {
  g_stage = "parse network";
  if (arg.empty()) throw ParseError("--net is required");
  if (fs::exists(arg)) return ParseNetworkFile(arg);
  std::string stem = fs::path(arg).filename().string();
  if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".net") stem.resize(stem.size() - 4);
  const std::string bundled = BundledNetworkPath(stem);
  if (fs::exists(bundled)) return ParseNetworkFile(bundled);
  throw ParseError("network file not found: " + arg);
}

std::vector<int> ParseProcs(const std::string& text, std::vector<int> fallback) {
  g_stage = "parse options";
  if (text.empty()) return fallback;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1) throw ParseError("--procs expects N or A..B with A, B >= 1, got '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  std::vector<int> out;
  if (dots == std::string::npos) {
    out.push_back(num(text));
    return out;
  }
  const int a = num(text.substr(0, dots)), b = num(text.substr(dots + 2));
  if (b < a) throw ParseError("--procs range " + text + " is empty");
  for (int p = a; p <= b; ++p) out.push_back(p);
  return out;
}

std::vector<cost::ArrayConfig> Arrays(const Options& o, std::vector<cost::ArrayConfig> fallback) {
  if (o.arrays.empty()) return fallback;
  std::vector<cost::ArrayConfig> out;
  for (const auto& a : o.arrays) out.push_back(cost::ParseArray(a));
  return out;
}

std::vector<sched::Scheme> Schemes(const Options& o, std::vector<sched::Scheme> fallback) {
  if (o.schemes.empty()) return fallback;
  std::vector<sched::Scheme> out;
  for (const auto& s : o.schemes) out.push_back(sched::ParseScheme(s));
  return out;
}

std::vector<int> Batches(const Options& o, const NetworkSpec& net) {
  if (o.batches.empty()) return {net.batch};
  for (int b : o.batches) {
    if (b < 1) throw ParseError("--batch must be >= 1");
  }
  return o.batches;
}

sim::DataWidths Widths(const Options& o) {
  sim::DataWidths w{o.precision_bytes, o.spike_bits};
  if (w.precision_bytes < 1 || w.spike_bits < 1) throw ParseError("--precision-bytes and --spike-bits must be >= 1");
  return w;
}

void WriteFile(const Options& o, const std::string& name, const std::string& content) {
  if (o.out.empty()) return;
  g_stage = "write " + name;
  fs::create_directories(o.out);
  std::ofstream f(fs::path(o.out) / name, std::ios::binary);
  if (!f) throw ParseError("cannot write " + (fs::path(o.out) / name).string());
  f << content;
}

std::string Tag(const cost::ArrayConfig& a, int batch) { return a.ToString() + "_b" + std::to_string(batch); }

int CmdCost(const Options& o) {
  const NetworkSpec net = LoadNet(o.net);
  g_stage = "cost model";
  for (const auto& array : Arrays(o, {{32, 32}})) {
    for (int batch : Batches(o, net)) {
      const auto costs = cost::NetworkCost(net, array, batch);
      std::ostringstream csv;
      report::WriteCostCsv(csv, costs);
      std::cout << "# " << net.name << " " << array.ToString() << " batch " << batch << "\n" << csv.str();
      WriteFile(o, "cost_" + net.name + "_" + Tag(array, batch) + ".csv", csv.str());
      WriteFile(o, "cost_" + net.name + "_" + Tag(array, batch) + ".json",
                report::CostJson(costs, array, batch).dump(2) + "\n");
    }
  }
  return kExitOk;
}

// Shared by schedule and simulate.
int CmdSchedule(const Options& o, bool simulate) {
  const NetworkSpec net = LoadNet(o.net);
  const auto widths = Widths(o);
  const auto procs = ParseProcs(o.procs, {4});
  const auto schemes = Schemes(o, {sched::Scheme::kFineGrained});
  for (const auto& array : Arrays(o, {{32, 32}})) {
    for (int batch : Batches(o, net)) {
      g_stage = "cost model";
      const auto costs = cost::NetworkCost(net, array, batch);
      const auto b = sched::Bounds(costs);
      std::printf("%s %s batch %d: N_total %lld, bounds layerwise %.2f pipedream %.2f split %.2f finegrained %.2f\n",
                  net.name.c_str(), array.ToString().c_str(), batch, static_cast<long long>(costs.n_total),
                  b.layerwise, b.pipedream, b.split, b.finegrained);
      for (auto scheme : schemes) {
        for (int p : procs) {
          g_stage = "schedule";
          const auto s = sched::MakeSchedule(scheme, costs, p);
          std::string delays;
          for (std::size_t l = 0; l < s.delays.size(); ++l) delays += (l ? "," : "") + std::to_string(s.delays[l]);
          std::printf("  %-11s P=%-2d used %-2d makespan %-9lld speedup %.3f delays (%s)\n", sched::SchemeName(scheme),
                      p, s.num_procs(), static_cast<long long>(s.makespan), s.speedup(), delays.c_str());
          const std::string stem = std::string(simulate ? "simulate_" : "schedule_") + net.name + "_" +
                                   sched::SchemeName(scheme) + "_p" + std::to_string(p) + "_" + Tag(array, batch);
          report::Json j = report::ScheduleJson(s, costs);
          j["bounds"] = report::BoundsJson(b);
          j["array"] = array.ToString();
          j["batch"] = batch;
          g_stage = "simulate";
          const auto map = sim::Simulate(s, costs, simulate ? o.sim_batches : 0);
          if (simulate) {
            const auto comm = sim::CommVolume(net, s, array, batch, widths);
            const auto mem = sim::MemoryEstimate(net, p, batch, widths);
            std::printf("  steady state %lld cycles/update after %d fill slots; comm %.1f B, overhead %.1f B (%.4f%%); "
                        "memory peak %.1f B\n",
                        static_cast<long long>(map.steady_state_cycles), map.fill_depth, comm.total_bytes,
                        comm.overhead_bytes, comm.overhead_pct, mem.peak_bytes);
            std::cout << map.ToText();
            j["simulation"] = report::ScheduleMapJson(map);
            j["comm"] = report::CommJson(comm);
            j["memory"] = report::MemoryJson(mem);
          }
          WriteFile(o, stem + ".json", j.dump(2) + "\n");
          WriteFile(o, stem + ".txt", map.ToText());
        }
      }
    }
  }
  return kExitOk;
}

int CmdSweep(const Options& o) {
  const NetworkSpec net = LoadNet(o.net);
  sim::SweepConfig cfg = sim::SweepConfig::Standard(12);
  cfg.procs = ParseProcs(o.procs, cfg.procs);
  if (!o.batches.empty()) cfg.batches = Batches(o, net);
  cfg.arrays = Arrays(o, cfg.arrays);
  cfg.schemes = Schemes(o, cfg.schemes);
  cfg.widths = Widths(o);
  cfg.threads = o.threads;
  g_stage = "sweep";
  const auto rep = sim::RunSweep(net, cfg);
  std::ostringstream rows, aggs, table;
  report::WriteSweepRowsCsv(rows, rep);
  report::WriteSweepAggregateCsv(aggs, rep);
  report::WriteTableCsv(table, rep);
  std::cout << table.str();
  WriteFile(o, "sweep_" + net.name + "_rows.csv", rows.str());
  WriteFile(o, "sweep_" + net.name + "_aggregates.csv", aggs.str());
  WriteFile(o, "sweep_" + net.name + "_table.csv", table.str());
  WriteFile(o, "sweep_" + net.name + ".json", report::SweepJson(rep).dump(2) + "\n");
  if (o.svg) WriteFile(o, "sweep_" + net.name + "_speedup.svg", report::SpeedupChartSvg(rep));
  return kExitOk;
}

std::vector<int> ParseDelays(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size() || cell.empty()) throw ParseError("--delays expects comma-separated integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

int CmdTrainToy(const Options& o) {
  const NetworkSpec net = LoadNet(o.net.empty() ? std::string("toy") : o.net);
  g_stage = "dataset";
  snn::Dataset data;
  if (!o.data.empty()) {
    data = snn::LoadDatasetCsv(o.data);
  } else {
    snn::ToyTaskConfig t;
    t.samples = o.samples;
    t.timesteps = net.timesteps;
    t.features = static_cast<int>(net.input.size());
    data = snn::MakeToySpikeTask(t, o.seed);
  }
  if (!o.save_data.empty()) {
    const auto parent = fs::path(o.save_data).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    snn::SaveDatasetCsv(o.save_data, data);
  }
  snn::TrainConfig cfg;
  cfg.optimizer.kind = snn::ParseOptimizer(o.optimizer);
  cfg.optimizer.eta = o.lr;
  cfg.delays = ParseDelays(o.delays);
  cfg.epochs = o.epochs;
  cfg.batch = o.train_batch;
  cfg.seed = o.seed;
  g_stage = "train";
  const auto h = snn::Train(net, data, cfg);
  std::ostringstream csv;
  snn::WriteHistoryCsv(csv, h);
  std::cout << csv.str();
  WriteFile(o, "train_" + net.name + "_history.csv", csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle cost, pipelined schedules and delayed-gradient training for spiking networks"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--net", o.net, "network file or bundled name (mnist, nmnist, dvs128, toy)");
    c->add_option("--array", o.arrays, "systolic array RxC (repeatable)");
    c->add_option("--batch", o.batches, "batch size (repeatable)");
    c->add_option("--out", o.out, "output directory");
  };
  auto add_sched = [&](CLI::App* c) {
    c->add_option("--procs", o.procs, "processor count N or range A..B");
    c->add_option("--scheme", o.schemes, "layerwise|pipedream|split|finegrained (repeatable)");
    c->add_option("--precision-bytes", o.precision_bytes, "bytes per potential, gradient or weight");
    c->add_option("--spike-bits", o.spike_bits, "bits per spike");
  };

  auto* cost_cmd = app.add_subcommand("cost", "per-layer FP/WG/IG cycle table");
  add_common(cost_cmd);
  auto* sched_cmd = app.add_subcommand("schedule", "build schedules and write them as JSON and text maps");
  add_common(sched_cmd);
  add_sched(sched_cmd);
  auto* sim_cmd = app.add_subcommand("simulate", "validate schedules and report communication and memory");
  add_common(sim_cmd);
  add_sched(sim_cmd);
  sim_cmd->add_option("--batches", o.sim_batches, "batches to run through the pipeline (default 2P + 2)");
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep processors, batches, arrays and schemes");
  add_common(sweep_cmd);
  add_sched(sweep_cmd);
  sweep_cmd->add_flag("--svg", o.svg, "also write a speedup chart");
  sweep_cmd->add_option("--threads", o.threads, "worker threads");
  auto* train_cmd = app.add_subcommand("train-toy", "delayed-gradient training on the synthetic spike task");
  train_cmd->add_option("--net", o.net, "network file or bundled name (default toy)");
  train_cmd->add_option("--out", o.out, "output directory");
  train_cmd->add_option("--seed", o.seed, "random seed");
  train_cmd->add_option("--epochs", o.epochs, "epochs");
  train_cmd->add_option("--batch", o.train_batch, "mini-batch size");
  train_cmd->add_option("--delays", o.delays, "per-layer gradient delays, e.g. 2,0");
  train_cmd->add_option("--optimizer", o.optimizer, "adam or sgd");
  train_cmd->add_option("--lr", o.lr, "learning rate");
  train_cmd->add_option("--samples", o.samples, "synthetic samples");
  train_cmd->add_option("--data", o.data, "dataset file instead of the synthetic task");
  train_cmd->add_option("--save-data", o.save_data, "write the dataset used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "cost") return CmdCost(o);
    if (name == "schedule") return CmdSchedule(o, false);
    if (name == "simulate") return CmdSchedule(o, true);
    if (name == "sweep") return CmdSweep(o);
    return CmdTrainToy(o);
  } catch (const ParseError& e) {
    std::cerr << "snnpipe " << name << ": " << g_stage << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const StructuralError& e) {
    std::cerr << "snnpipe " << name << ": " << g_stage << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const NumericDomainError& e) {
    std::cerr << "snnpipe " << name << ": " << g_stage << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "snnpipe " << name << ": " << g_stage << ": " << e.what() << "\n";
    return kExitInvariant;
  }
}
