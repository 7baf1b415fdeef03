// Copyright 2026 The mcmcb Authors
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


#include "mcmcb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcmcb::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

json instrument_to_json(const UniformStochasticInstrument& instrument, const std::string& kind) {
  json rates = json::object();
  const auto& r = instrument.rates();
  for (std::size_t f = 0; f < r.size(); ++f) {
    if (r[f] != 0.0) rates[rate_key(instrument.shape(), f)] = r[f];
  }
  return {{"n", instrument.n()}, {"m", instrument.m()}, {"kind", kind}, {"rates", rates}};
}

UniformStochasticInstrument instrument_from_json(const json& j) {
  try {
    InstrumentShape shape{j.at("n").get<std::size_t>(), j.at("m").get<std::size_t>()};
    shape.validate();
    std::vector<double> rates(shape.table_size(), 0.0);
    for (const auto& [key, v] : j.at("rates").items()) rates[parse_rate_key(shape, key)] = v.get<double>();
    return UniformStochasticInstrument(shape.n, shape.m, std::move(rates));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("instrument file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("instrument file: ") + e.what());
  }
}

json tableau_to_json(const CliffordTableau& t) {
  json xs = json::array(), zs = json::array();
  for (std::size_t q = 0; q < t.n_qubits(); ++q) {
    xs.push_back(t.x_image(q).to_string());
    zs.push_back(t.z_image(q).to_string());
  }
  return {{"n_qubits", t.n_qubits()}, {"x_images", xs}, {"z_images", zs}};
}

CliffordTableau tableau_from_json(const json& j) {
  try {
    const auto n = j.at("n_qubits").get<std::size_t>();
    std::vector<SignedPauli> xs, zs;
    for (const auto& s : j.at("x_images")) xs.push_back(SignedPauli::parse(s.get<std::string>()));
    for (const auto& s : j.at("z_images")) zs.push_back(SignedPauli::parse(s.get<std::string>()));
    if (xs.size() != n || zs.size() != n) throw ConfigError("tableau needs n_qubits images of each kind");
    for (const auto& p : xs) {
      if (p.op.n_qubits() != n) throw ConfigError("tableau image has wrong size");
    }
    for (const auto& p : zs) {
      if (p.op.n_qubits() != n) throw ConfigError("tableau image has wrong size");
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("tableau file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("tableau file: ") + e.what());
  }
}

json chain_to_json(const PatternTransferGraph& g, const OneChain& chain) {
  json j = json::object();
  for (const auto& [id, c] : chain) j[g.edge_key(id)] = c;
  return j;
}

OneChain chain_from_json(const PatternTransferGraph& g, const json& j) {
  OneChain c;
  try {
    for (const auto& [key, v] : j.items()) {
      const double x = v.get<double>();
      if (x != 0.0) c[g.parse_edge_key(key)] += x;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("chain: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("chain: ") + e.what());
  }
  return c;
}

json graph_to_json(const PatternTransferGraph& g, const std::vector<OneChain>& basis) {
  json edges = json::array();
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    edges.push_back({{"id", id},
                     {"key", g.edge_key(id)},
                     {"src", g.vertex_label(e.src)},
                     {"dst", g.vertex_label(e.dst)},
                     {"start", e.start.to_string()},
                     {"end", e.end.to_string()}});
  }
  json vertices = json::array();
  for (uint32_t v = 0; v < g.num_vertices(); ++v) vertices.push_back(g.vertex_label(v));
  json cycles = json::array();
  for (const auto& c : basis) cycles.push_back(chain_to_json(g, c));
  return {{"n", g.n()},
          {"m", g.m()},
          {"gate", tableau_to_json(g.gate())},
          {"vertices", vertices},
          {"edges", edges},
          {"cycle_space_dimension", basis.size()},
          {"cycle_basis", cycles}};
}

std::string graph_to_dot(const PatternTransferGraph& g) {
  std::ostringstream os;
  os << "digraph ptg {\n";
  for (uint32_t v = 0; v < g.num_vertices(); ++v) os << "  \"" << g.vertex_label(v) << "\";\n";
  for (std::size_t id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    os << "  \"" << g.vertex_label(e.src) << "\" -> \"" << g.vertex_label(e.dst) << "\" [label=\"" << g.edge_key(id)
       << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "key,value,std,verdict,truth\n";
  for (const auto& r : rows) {
    os << '"' << r.key << "\"," << format_double(r.value) << ',' << format_double(r.std) << ',' << r.verdict << ','
       << format_double(r.truth) << '\n';
  }
  return os.str();
}

json report_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    // NaN is not valid JSON; store it as null.
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    out.push_back({{"key", r.key}, {"value", num(r.value)}, {"std", num(r.std)}, {"verdict", r.verdict},
                    {"truth", num(r.truth)}});
  }
  return out;
}

std::string shot_log_csv(const std::vector<ShotRecord>& records, std::size_t n) {
  std::ostringstream os;
  const std::size_t depth = records.empty() ? 0 : records.front().outcomes.size();
  os << "shot";
  for (std::size_t i = 0; i < depth; ++i) os << ",m_" << (i + 1);
  os << ",r\n";
  for (std::size_t s = 0; s < records.size(); ++s) {
    os << s;
    for (uint32_t k : records[s].outcomes) os << ',' << bits_to_string(k, n);
    os << ',' << records[s].r << '\n';
  }
  return os.str();
}

json circuit_to_json(const CircuitSpec& spec) {
  json inter = json::array();
  for (const auto& h : spec.interleavers) inter.push_back(tableau_to_json(h));
  json j = {{"n", spec.n},
            {"m", spec.m},
            {"initial", spec.initial.to_string()},
            {"fourier_masks", spec.fourier_masks},
            {"interleavers", inter}};
  j["terminating"] = spec.terminating ? json(spec.terminating->to_string()) : json(nullptr);
  return j;
}

}  // namespace mcmcb::io
