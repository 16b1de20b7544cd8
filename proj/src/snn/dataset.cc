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
#include "snnpipe/snn/dataset.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

void Dataset::Validate() const {
  if (samples.empty()) throw StructuralError("dataset is empty");
  if (timesteps < 1 || features < 1 || n_classes < 2) {
    throw StructuralError("dataset needs timesteps >= 1, features >= 1, classes >= 2");
  }
  if (labels.size() != samples.size()) throw StructuralError("dataset label count != sample count");
  const std::size_t width = static_cast<std::size_t>(timesteps) * features;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (samples[s].size() != width) {
      throw StructuralError("sample " + std::to_string(s) + " has " + std::to_string(samples[s].size()) +
                            " values, expected " + std::to_string(width));
    }
    if (labels[s] < 0 || labels[s] >= n_classes) {
      throw StructuralError("sample " + std::to_string(s) + " label out of range");
    }
  }
}

SeqTensor Dataset::Batch(std::span<const std::size_t> indices) const {
  SeqTensor x(timesteps, static_cast<int>(indices.size()), features);
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const auto& s = samples.at(indices[b]);
    for (int t = 0; t < timesteps; ++t) {
      for (int f = 0; f < features; ++f) x.at(t, static_cast<int>(b), f) = s[static_cast<std::size_t>(t) * features + f];
    }
  }
  return x;
}

namespace {

std::vector<std::string> SplitCommas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseNumber(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(where + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw ParseError(where + ": '" + s + "' is not a number");
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite value");
  return v;
}

int ParseInt(const std::string& s, const std::string& where) {
  const double v = ParseNumber(s, where);
  if (v != std::floor(v)) throw ParseError(where + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

}  // namespace

Dataset ReadDatasetCsv(std::istream& in, const std::string& source) {
  Dataset d;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto cells = SplitCommas(line);
    if (!have_header) {
      bool t = false, f = false, k = false;
      for (const auto& c : cells) {
        const auto eq = c.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": expected key=value header, got '" + c + "'");
        const std::string key = c.substr(0, eq), val = c.substr(eq + 1);
        if (key == "timesteps") {
          d.timesteps = ParseInt(val, where);
          t = true;
        } else if (key == "features") {
          d.features = ParseInt(val, where);
          f = true;
        } else if (key == "classes") {
          d.n_classes = ParseInt(val, where);
          k = true;
        } else {
          throw ParseError(where + ": unknown header field '" + key + "'");
        }
      }
      if (!(t && f && k)) throw ParseError(where + ": header needs timesteps, features and classes");
      if (d.timesteps < 1 || d.features < 1 || d.n_classes < 2) throw ParseError(where + ": header values out of range");
      have_header = true;
      continue;
    }
    const std::size_t width = static_cast<std::size_t>(d.timesteps) * d.features;
    if (cells.size() != width + 1) {
      throw ParseError(where + ": expected " + std::to_string(width + 1) + " fields, got " +
                       std::to_string(cells.size()));
    }
    const int label = ParseInt(cells[0], where);
    if (label < 0 || label >= d.n_classes) throw ParseError(where + ": label " + cells[0] + " out of range");
    std::vector<double> x(width);
    for (std::size_t i = 0; i < width; ++i) x[i] = ParseNumber(cells[i + 1], where);
    d.labels.push_back(label);
    d.samples.push_back(std::move(x));
  }
  if (!have_header) throw ParseError(source + ": missing header line");
  d.Validate();
  return d;
}

Dataset LoadDatasetCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file " + path);
  return ReadDatasetCsv(in, path);
}

void WriteDatasetCsv(std::ostream& out, const Dataset& d) {
  d.Validate();
  out << "timesteps=" << d.timesteps << ",features=" << d.features << ",classes=" << d.n_classes << "\n";
  out << std::setprecision(17);
  for (std::size_t s = 0; s < d.size(); ++s) {
    out << d.labels[s];
    for (double v : d.samples[s]) out << ',' << v;
    out << '\n';
  }
}

void SaveDatasetCsv(const std::string& path, const Dataset& d) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write dataset file " + path);
  WriteDatasetCsv(out, d);
}

Dataset MakeToySpikeTask(const ToyTaskConfig& cfg, uint64_t seed) {
  if (cfg.samples < 2 || cfg.timesteps < 1 || cfg.features < 2) {
    throw StructuralError("toy task needs >= 2 samples, >= 1 timestep, >= 2 features");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Dataset d;
  d.timesteps = cfg.timesteps;
  d.features = cfg.features;
  d.n_classes = 2;
  const int half = cfg.features / 2;
  for (int s = 0; s < cfg.samples; ++s) {
    const int label = s % 2;
    std::vector<double> x(static_cast<std::size_t>(cfg.timesteps) * cfg.features);
    for (int t = 0; t < cfg.timesteps; ++t) {
      for (int f = 0; f < cfg.features; ++f) {
        const bool own = (f < half) == (label == 0);
        x[static_cast<std::size_t>(t) * cfg.features + f] = u(rng) < (own ? cfg.high_rate : cfg.low_rate) ? 1.0 : 0.0;
      }
    }
    d.samples.push_back(std::move(x));
    d.labels.push_back(label);
  }
  return d;
}

}  // namespace snnpipe::snn
