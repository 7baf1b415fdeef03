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


#ifndef MCMCB_IO_HPP
#define MCMCB_IO_HPP

#include <cstddef>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "mcmcb/channels.hpp"
#include "mcmcb/clifford.hpp"
#include "mcmcb/ptgraph.hpp"
#include "mcmcb/simulator.hpp"

namespace mcmcb::io {

using nlohmann::json;

/// Malformed input files or arguments.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; "nan" and "inf" spelled out.
std::string format_double(double v);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);

/// {"n", "m", "kind", "rates": {"a|b|P": p}}. Missing keys are zero.
json instrument_to_json(const UniformStochasticInstrument& instrument, const std::string& kind = "usi");
UniformStochasticInstrument instrument_from_json(const json& j);

/// {"n_qubits", "x_images": ["+XI", ...], "z_images": [...]}.
json tableau_to_json(const CliffordTableau& t);
CliffordTableau tableau_from_json(const json& j);

json chain_to_json(const PatternTransferGraph& g, const OneChain& chain);
OneChain chain_from_json(const PatternTransferGraph& g, const json& j);

json graph_to_json(const PatternTransferGraph& g, const std::vector<OneChain>& basis);
std::string graph_to_dot(const PatternTransferGraph& g);

/// One reported quantity.
struct ReportRow {
  std::string key;
  double value = 0.0;
  double std = 0.0;
  std::string verdict;
  double truth = std::numeric_limits<double>::quiet_NaN();  // simulated runs only
};

std::string report_csv(const std::vector<ReportRow>& rows);
json report_json(const std::vector<ReportRow>& rows);

/// Columns: shot, m_1..m_l (bit strings), r. The sidecar holds the circuit.
std::string shot_log_csv(const std::vector<ShotRecord>& records, std::size_t n);
json circuit_to_json(const CircuitSpec& spec);

}  // namespace mcmcb::io

#endif  // MCMCB_IO_HPP
