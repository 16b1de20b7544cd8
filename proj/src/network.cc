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
#include "snnpipe/network.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "snnpipe/errors.hpp"

namespace snnpipe {
namespace {

std::string ShapeToString(const Shape3& s, bool flat) {
  if (flat) return std::to_string(s.size());
  return std::to_string(s.h) + "x" + std::to_string(s.w) + "x" + std::to_string(s.c);
}

class LineParser {
 public:
  LineParser(std::string source, int line) : source_(std::move(source)), line_(line) {}

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(source_ + ":" + std::to_string(line_) + ": " + msg);
  }

  int Int(const std::string& field, const std::string& text) const {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail("field '" + field + "': expected an integer, got '" + text + "'");
    }
    return value;
  }

  double Double(const std::string& field, const std::string& text) const {
    try {
      size_t used = 0;
      double v = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      Fail("field '" + field + "': expected a number, got '" + text + "'");
    }
  }

  // Accepts "HxWxC" or a bare flat size N (read as 1x1xN).
  Shape3 Shape(const std::string& field, const std::string& text) const {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, 'x')) parts.push_back(part);
    if (parts.size() == 1) return Shape3{1, 1, Int(field, parts[0])};
    if (parts.size() != 3) Fail("field '" + field + "': expected HxWxC or N, got '" + text + "'");
    return Shape3{Int(field, parts[0]), Int(field, parts[1]), Int(field, parts[2])};
  }

 private:
  std::string source_;
  int line_;
};

LayerKind KindFromName(const LineParser& p, const std::string& name) {
  if (name == "conv") return LayerKind::kConv;
  if (name == "fc") return LayerKind::kFc;
  if (name == "maxpool") return LayerKind::kMaxPool;
  if (name == "output") return LayerKind::kOutput;
  p.Fail("unknown layer kind '" + name + "'");
}

}  // namespace

const char* LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv:
      return "conv";
    case LayerKind::kFc:
      return "fc";
    case LayerKind::kMaxPool:
      return "maxpool";
    case LayerKind::kOutput:
      return "output";
  }
  return "?";
}

int64_t LayerSpec::param_count() const {
  switch (kind) {
    case LayerKind::kConv:
      return int64_t{kernel} * kernel * in.c * out.c + out.c;
    case LayerKind::kFc:
    case LayerKind::kOutput:
      return in.size() * out.size() + out.size();
    case LayerKind::kMaxPool:
      return 0;
  }
  return 0;
}

void NetworkSpec::Validate() const {
  auto fail = [&](const std::string& layer, const std::string& msg) {
    throw StructuralError("network '" + name + "', layer '" + layer + "': " + msg);
  };
  if (layers.empty()) throw StructuralError("network '" + name + "' has no layers");
  if (timesteps < 1) throw StructuralError("network '" + name + "': timesteps must be >= 1");
  if (batch < 1) throw StructuralError("network '" + name + "': batch must be >= 1");
  if (input.h < 1 || input.w < 1 || input.c < 1) {
    throw StructuralError("network '" + name + "': input dims must be >= 1");
  }
  const NeuronConstants& n = neuron;
  if (!(n.c > 0) || !(n.lambda >= 0) || !(n.alpha > 0)) {
    throw StructuralError("network '" + name + "': neuron constants need c > 0, lambda >= 0, alpha > 0");
  }

  Shape3 prev = input;
  for (size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& l = layers[i];
    const bool last = i + 1 == layers.size();
    if (l.kind == LayerKind::kOutput && !last) fail(l.name, "output layer must be last");
    if (last && l.kind != LayerKind::kOutput) fail(l.name, "last layer must be an output layer");
    switch (l.kind) {
      case LayerKind::kConv: {
        if (!(l.in == prev)) fail(l.name, "input shape does not match previous output");
        if (l.kernel < 1 || l.padding < 0) fail(l.name, "kernel must be >= 1 and padding >= 0");
        const int h = l.in.h + 2 * l.padding - l.kernel + 1;
        const int w = l.in.w + 2 * l.padding - l.kernel + 1;
        if (h < 1 || w < 1) fail(l.name, "kernel does not fit padded input");
        if (l.out.h != h || l.out.w != w || l.out.c < 1) {
          fail(l.name, "declared output " + ShapeToString(l.out, false) + " but kernel gives " +
                           std::to_string(h) + "x" + std::to_string(w) + "xF");
        }
        break;
      }
      case LayerKind::kMaxPool: {
        if (!(l.in == prev)) fail(l.name, "input shape does not match previous output");
        if (l.window < 1 || l.in.h % l.window != 0 || l.in.w % l.window != 0) {
          fail(l.name, "spatial dims not divisible by the pooling window");
        }
        if (!(l.out == Shape3{l.in.h / l.window, l.in.w / l.window, l.in.c})) {
          fail(l.name, "declared output does not match pooling");
        }
        break;
      }
      case LayerKind::kFc:
      case LayerKind::kOutput:
        if (l.in.size() != prev.size()) fail(l.name, "input width does not match previous output");
        if (l.out.h != 1 || l.out.w != 1 || l.out.c < 1) fail(l.name, "output must be a flat width");
        break;
    }
    prev = l.out;
  }
}

int64_t NetworkSpec::total_params() const {
  int64_t total = 0;
  for (const auto& l : layers) total += l.param_count();
  return total;
}

std::vector<int> NetworkSpec::costed_layers() const {
  std::vector<int> idx;
  for (size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].costed()) idx.push_back(static_cast<int>(i));
  }
  return idx;
}

NetworkSpec ParseNetwork(std::istream& in, const std::string& source) {
  NetworkSpec net;
  bool have_input = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    LineParser p(source, line_no);
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::stringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& key = tok[0];
    auto need = [&](size_t n) {
      if (tok.size() != n) p.Fail("'" + key + "' expects " + std::to_string(n - 1) + " value(s)");
    };
    if (key == "name") {
      need(2);
      net.name = tok[1];
    } else if (key == "timesteps") {
      need(2);
      net.timesteps = p.Int(key, tok[1]);
    } else if (key == "batch") {
      need(2);
      net.batch = p.Int(key, tok[1]);
    } else if (key == "input") {
      need(2);
      net.input = p.Shape(key, tok[1]);
      have_input = true;
    } else if (key == "neuron") {
      for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) p.Fail("expected key=value, got '" + tok[i] + "'");
        std::string k = tok[i].substr(0, eq), v = tok[i].substr(eq + 1);
        if (k == "c") {
          net.neuron.c = p.Double(k, v);
        } else if (k == "lambda") {
          net.neuron.lambda = p.Double(k, v);
        } else if (k == "vth") {
          net.neuron.v_th = p.Double(k, v);
        } else if (k == "alpha") {
          net.neuron.alpha = p.Double(k, v);
        } else {
          p.Fail("unknown neuron field '" + k + "'");
        }
      }
    } else if (key == "layer") {
      if (tok.size() < 3) p.Fail("'layer' expects a name and a kind");
      LayerSpec l;
      l.name = tok[1];
      l.kind = KindFromName(p, tok[2]);
      std::map<std::string, std::string> kv;
      for (size_t i = 3; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) p.Fail("expected key=value, got '" + tok[i] + "'");
        if (!kv.emplace(tok[i].substr(0, eq), tok[i].substr(eq + 1)).second) {
          p.Fail("duplicate field '" + tok[i].substr(0, eq) + "'");
        }
      }
      auto take = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) p.Fail("layer '" + l.name + "' is missing field '" + k + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
      };
      l.in = p.Shape("in", take("in"));
      l.out = p.Shape("out", take("out"));
      if (l.kind == LayerKind::kConv) {
        l.kernel = p.Int("k", take("k"));
        l.padding = p.Int("pad", take("pad"));
      } else if (l.kind == LayerKind::kMaxPool) {
        l.window = p.Int("window", take("window"));
      }
      if (l.kind == LayerKind::kFc || l.kind == LayerKind::kOutput) {
        l.in = Shape3{1, 1, static_cast<int>(l.in.size())};
      }
      if (!kv.empty()) p.Fail("layer '" + l.name + "' has unknown field '" + kv.begin()->first + "'");
      net.layers.push_back(std::move(l));
    } else {
      p.Fail("unknown key '" + key + "'");
    }
  }
  if (net.name.empty()) throw ParseError(source + ": missing 'name'");
  if (!have_input) throw ParseError(source + ": missing 'input'");
  net.Validate();
  return net;
}

NetworkSpec ParseNetworkFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open network file '" + path + "'");
  return ParseNetwork(in, path);
}

NetworkSpec ParseNetworkString(const std::string& text) {
  std::istringstream in(text);
  return ParseNetwork(in);
}

std::string SerializeNetwork(const NetworkSpec& net) {
  std::ostringstream out;
  out.precision(17);
  out << "name " << net.name << "\n";
  out << "timesteps " << net.timesteps << "\n";
  out << "batch " << net.batch << "\n";
  out << "input " << ShapeToString(net.input, false) << "\n";
  out << "neuron c=" << net.neuron.c << " lambda=" << net.neuron.lambda
      << " vth=" << net.neuron.v_th << " alpha=" << net.neuron.alpha << "\n";
  for (const auto& l : net.layers) {
    const bool flat = l.kind == LayerKind::kFc || l.kind == LayerKind::kOutput;
    out << "layer " << l.name << " " << LayerKindName(l.kind) << " in=" << ShapeToString(l.in, flat);
    if (l.kind == LayerKind::kConv) out << " k=" << l.kernel << " pad=" << l.padding;
    if (l.kind == LayerKind::kMaxPool) out << " window=" << l.window;
    out << " out=" << ShapeToString(l.out, flat) << "\n";
  }
  return out.str();
}

std::string BundledNetworkPath(const std::string& stem) {
  return std::string(SNNPIPE_DATA_DIR) + "/networks/" + stem + ".net";
}

}  // namespace snnpipe
