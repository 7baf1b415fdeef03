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


#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mcmcb/analysis.hpp"
#include "mcmcb/io.hpp"
#include "mcmcb/verify.hpp"

namespace fs = std::filesystem;
using namespace mcmcb;
using io::ConfigError;
using io::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kEstimationFailure = 3;
constexpr int kVerifyFailure = 4;

struct Global {
  std::optional<uint64_t> seed;
  std::size_t workers = 1;
  bool exact = false;
  std::string out_dir = ".";
  std::string format = "csv";
};

struct ModelArgs {
  std::size_t n = 1;
  std::size_t m = 1;
  std::string gate = "cnot";
  std::string tableau;
  std::string stabilizers;
  std::string instrument;
  std::string kind = "usi";
  double eps = 0.01;
  double spam_eps = 0.01;
  std::vector<std::string> plant;
};

struct BudgetArgs {
  std::size_t circuits = 100;
  std::size_t shots = 100;
  std::size_t aux_shots = 10000;
  std::size_t replicates = 200;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

uint64_t need_seed(const Global& g) {
  if (!g.seed) throw ConfigError("--seed is required for this command");
  return *g.seed;
}

std::vector<PauliOp> parse_stabilizers(const std::string& s) {
  std::vector<PauliOp> out;
  for (const auto& item : split(s, ',')) out.push_back(PauliOp::from_string(item));
  if (out.empty()) throw ConfigError("empty stabilizer list");
  return out;
}

// Resolves the gate and fixes n and m for stabilizer-built gates.
CliffordTableau resolve_gate(ModelArgs& a) {
  if (!a.stabilizers.empty()) {
    const auto stab = parse_stabilizers(a.stabilizers);
    a.n = stab.size();
    a.m = stab.front().n_qubits();
    return build_syndrome_tableau(stab);
  }
  const std::size_t nq = a.n + a.m;
  if (!a.tableau.empty()) {
    auto t = io::tableau_from_json(io::read_json_file(a.tableau));
    if (t.n_qubits() != nq) throw ConfigError("tableau acts on the wrong number of qubits");
    return t;
  }
  if (a.gate == "identity") return CliffordTableau(nq);
  if (a.gate == "cnot" || a.gate == "cnot-rev") {
    if (nq != 2) throw ConfigError("cnot needs n + m = 2");
    return a.gate == "cnot" ? CliffordTableau::cnot(2, 0, 1) : CliffordTableau::cnot(2, 1, 0);
  }
  throw ConfigError("unknown gate '" + a.gate + "' (use identity, cnot, cnot-rev, --tableau or --stabilizers)");
}

std::vector<PlantedRate> parse_plants(const std::vector<std::string>& items, std::size_t n, std::size_t m) {
  std::vector<PlantedRate> out;
  const InstrumentShape shape{n, m};
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--plant expects a|b|P=mass");
    const std::size_t f = parse_rate_key(shape, item.substr(0, eq));
    out.push_back({shape.first_bits(f), shape.second_bits(f), shape.pauli(f), std::stod(item.substr(eq + 1))});
  }
  return out;
}

UniformStochasticInstrument make_instrument(const ModelArgs& a, uint64_t seed) {
  if (!a.instrument.empty()) {
    auto inst = io::instrument_from_json(io::read_json_file(a.instrument));
    if (inst.n() != a.n || inst.m() != a.m) throw ConfigError("instrument file has the wrong shape");
    return inst;
  }
  if (a.kind == "map") return random_measure_and_prepare(a.n, a.m, a.eps, seed).induced();
  if (a.kind != "usi") throw ConfigError("--kind must be usi or map");
  return random_instrument(a.n, a.m, a.eps, seed, parse_plants(a.plant, a.n, a.m));
}

NoiseModel make_model(ModelArgs& a, uint64_t seed) {
  const CliffordTableau gate = resolve_gate(a);
  return NoiseModel(make_instrument(a, derive_seed(seed, 1)), gate, SpamModel::random(a.n + a.m, a.spam_eps, derive_seed(seed, 2)));
}

void add_model_options(CLI::App* c, ModelArgs& a, bool with_source) {
  c->add_option("--n", a.n, "ancilla count");
  c->add_option("--m", a.m, "system qubit count");
  c->add_option("--gate", a.gate, "identity | cnot | cnot-rev");
  c->add_option("--tableau", a.tableau, "gate tableau JSON file");
  c->add_option("--stabilizers", a.stabilizers, "comma-separated stabilizers for a syndrome gate, e.g. ZZ,XX");
  if (!with_source) return;
  c->add_option("--instrument", a.instrument, "instrument JSON file");
  c->add_option("--kind", a.kind, "usi | map for generated instruments");
  c->add_option("--eps", a.eps, "total error rate of generated instruments");
  c->add_option("--spam-eps", a.spam_eps, "SPAM infidelity scale");
  c->add_option("--plant", a.plant, "planted rate a|b|P=mass (repeatable)");
}

void add_budget_options(CLI::App* c, BudgetArgs& b) {
  c->add_option("--circuits", b.circuits, "compiled circuits per path");
  c->add_option("--shots", b.shots, "shots per compiled circuit");
  c->add_option("--aux-shots", b.aux_shots, "auxiliary shots per path");
  c->add_option("--replicates", b.replicates, "bootstrap replicates");
}

EstimateOptions estimate_options(const Global& g, const BudgetArgs& b) {
  return EstimateOptions{g.exact, b.replicates, g.workers};
}

void emit_report(const Global& g, const std::string& stem, const std::vector<io::ReportRow>& rows) {
  const fs::path dir(g.out_dir);
  if (g.format == "json") {
    io::write_json_file(dir / (stem + ".json"), io::report_json(rows));
  } else {
    io::write_text_file(dir / (stem + ".csv"), io::report_csv(rows));
  }
}

void emit_meta(const Global& g, const std::string& command, json config) {
  config["command"] = command;
  config["seed"] = g.seed ? json(*g.seed) : json(nullptr);
  config["exact"] = g.exact;
  config["timestamp"] = static_cast<long long>(std::time(nullptr));
  io::write_json_file(fs::path(g.out_dir) / (command + ".meta.json"), config);
}

int cmd_generate(const Global& g, ModelArgs a) {
  const uint64_t seed = need_seed(g);
  const auto inst = make_instrument(a, seed);
  io::write_json_file(fs::path(g.out_dir) / "instrument.json", io::instrument_to_json(inst, a.kind));
  std::cout << "wrote " << (fs::path(g.out_dir) / "instrument.json").string() << "\n";
  return 0;
}

int cmd_graph(const Global& g, ModelArgs a) {
  const CliffordTableau gate = resolve_gate(a);
  const PatternTransferGraph ptg(gate, a.n, a.m);
  const auto basis = cycle_basis(ptg);
  const fs::path dir(g.out_dir);
  io::write_json_file(dir / "graph.json", io::graph_to_json(ptg, basis));
  io::write_text_file(dir / "graph.dot", io::graph_to_dot(ptg));
  std::vector<io::ReportRow> rows;
  for (const auto& c : basis) rows.push_back({chain_label(ptg, c), 0.0, 0.0, "cycle"});
  emit_report(g, "cycle_basis", rows);
  std::cout << ptg.num_edges() << " edges, cycle space dimension " << basis.size() << "\n";
  return 0;
}

int cmd_learn(const Global& g, ModelArgs a, const BudgetArgs& b, std::size_t length) {
  const uint64_t seed = need_seed(g);
  const NoiseModel model = make_model(a, seed);
  const PatternTransferGraph ptg(model.mcm.gate, a.n, a.m);
  const SimulatedBackend backend(model);
  CharacterizeOptions opts;
  opts.budget = {b.circuits, b.shots, b.aux_shots};
  opts.estimate = estimate_options(g, b);
  opts.target_length = length;
  const auto res = characterize(backend, ptg, opts, derive_seed(seed, 3));

  std::vector<io::ReportRow> rows;
  std::ostringstream plot;
  plot << "label,y,yerr\n";
  bool failed = false;
  for (const auto& c : res.cycles) {
    const double truth = std::exp(evaluate_log_fidelities(c.cycle, model.fidelities()) / c.weight);
    std::string verdict = c.trivial ? "trivial" : "estimated";
    if (c.estimate.failed) {
      verdict = "failed";
      failed = true;
    }
    rows.push_back({c.label, c.geo_mean, c.geo_std, verdict, truth});
    if (!c.trivial) plot << '"' << c.label << "\"," << io::format_double(c.geo_mean) << ',' << io::format_double(c.geo_std) << '\n';
  }
  emit_report(g, "cycles", rows);
  io::write_text_file(fs::path(g.out_dir) / "cycles_plot.csv", plot.str());
  json combos = json::array();
  for (const auto& rc : learnable_rate_combinations(ptg)) {
    combos.push_back({{"origin", rc.origin}, {"combination", rc.label(ptg.shape())}, {"chain", io::chain_to_json(ptg, rc.chain)}});
  }
  io::write_json_file(fs::path(g.out_dir) / "learnable_rates.json", combos);
  emit_meta(g, "learn", {{"n", a.n}, {"m", a.m}, {"circuits", b.circuits}, {"shots", b.shots}, {"aux_shots", b.aux_shots}});
  std::cout << res.cycles.size() << " cycles estimated\n";
  return failed ? kEstimationFailure : 0;
}

int cmd_independence(const Global& g, ModelArgs a, const BudgetArgs& b) {
  const uint64_t seed = need_seed(g);
  const NoiseModel model = make_model(a, seed);
  const PatternTransferGraph ptg(model.mcm.gate, a.n, a.m);
  const SimulatedBackend backend(model);
  const auto est = independence_test(backend, ptg, default_correlation_queries(ptg), {b.circuits, b.shots, b.aux_shots},
                                     derive_seed(seed, 3), estimate_options(g, b));
  std::vector<io::ReportRow> rows;
  bool failed = false;
  for (const auto& e : est) {
    const auto& q = e.query;
    const std::string key = "c[" + q.q.to_string() + "|" + bits_to_string(q.x1, a.n) + "," + bits_to_string(q.x2, a.n) +
                            "|" + bits_to_string(q.y1, a.n) + "," + bits_to_string(q.y2, a.n) + "]";
    bool bad = std::isnan(e.value);
    for (const auto& t : e.terms) bad = bad || t.failed;
    failed = failed || bad;
    const std::string verdict = bad ? "failed" : (e.consistent_with_zero ? "consistent" : "nonzero");
    rows.push_back({key, e.value, e.std, verdict, correlation_truth(q, model.fidelities())});
  }
  emit_report(g, "correlations", rows);
  emit_meta(g, "independence", {{"n", a.n}, {"m", a.m}, {"kind", a.kind}});
  return failed ? kEstimationFailure : 0;
}

int cmd_error_rate(const Global& g, ModelArgs a, const BudgetArgs& b, const std::string& key, std::size_t reps) {
  const uint64_t seed = need_seed(g);
  const NoiseModel model = make_model(a, seed);
  const PatternTransferGraph ptg(model.mcm.gate, a.n, a.m);
  const SimulatedBackend backend(model);
  const std::size_t f = parse_rate_key(ptg.shape(), key);
  const auto& s = ptg.shape();
  RateEstimate est;
  try {
    est = reconstruct_error_rate(s.first_bits(f), s.second_bits(f), s.pauli(f), ptg, backend,
                                 {b.circuits, b.shots, b.aux_shots}, reps, derive_seed(seed, 3), estimate_options(g, b));
  } catch (const NotLearnableError& e) {
    const auto parts = cycle_cut_decompose(ptg, error_rate_chain<double>(ptg, s.first_bits(f), s.second_bits(f), s.pauli(f)));
    throw ConfigError(std::string(e.what()) + " (cut part max norm " + io::format_double(max_abs(parts.cut)) + ")");
  }
  const bool failed = std::isnan(est.value);
  emit_report(g, "error_rate", {{"p[" + key + "]", est.value, est.std, failed ? "failed" : "estimated",
                                 model.mcm.instrument.rates()[f]}});
  emit_meta(g, "error-rate", {{"rate", key}, {"repetitions", reps}});
  return failed ? kEstimationFailure : 0;
}

int cmd_verify(const Global& g) {
  const uint64_t seed = g.seed.value_or(1);
  const auto checks = run_invariant_suite(seed);
  std::vector<io::ReportRow> rows;
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    rows.push_back({c.name, c.passed ? 1.0 : 0.0, 0.0, c.passed ? "pass" : "fail"});
    ok = ok && c.passed;
  }
  emit_report(g, "verify", rows);
  return ok ? 0 : kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mid-circuit measurement benchmarking toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Global g;
  app.add_option("--seed", g.seed, "random seed")->expected(1);
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--exact", g.exact, "exact expectations instead of sampling");
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

  ModelArgs gen_args, graph_args, learn_args, ind_args, rate_args;
  BudgetArgs learn_budget, ind_budget, rate_budget;
  ind_args.kind = "map";
  rate_budget = {100, 10, 1000, 200};
  std::size_t length = 12;
  std::string rate_key_arg = "1|1|I";
  std::size_t reps = 10;

  auto* gen = app.add_subcommand("generate", "write a random instrument");
  add_model_options(gen, gen_args, true);
  auto* graph = app.add_subcommand("graph", "write the pattern transfer graph and a cycle basis");
  add_model_options(graph, graph_args, false);
  auto* learn = app.add_subcommand("learn", "estimate every basis cycle");
  add_model_options(learn, learn_args, true);
  add_budget_options(learn, learn_budget);
  learn->add_option("--length", length, "target concatenated length (0 disables)");
  auto* ind = app.add_subcommand("independence", "estimate ancilla correlations");
  add_model_options(ind, ind_args, true);
  add_budget_options(ind, ind_budget);
  auto* rate = app.add_subcommand("error-rate", "reconstruct one error rate");
  add_model_options(rate, rate_args, true);
  add_budget_options(rate, rate_budget);
  rate->add_option("--rate", rate_key_arg, "rate key a|b|P");
  rate->add_option("--repetitions", reps, "independent repetitions to average");
  auto* ver = app.add_subcommand("verify", "run the exact-mode invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    fs::create_directories(g.out_dir);
    if (*gen) return cmd_generate(g, gen_args);
    if (*graph) return cmd_graph(g, graph_args);
    if (*learn) return cmd_learn(g, learn_args, learn_budget, length);
    if (*ind) return cmd_independence(g, ind_args, ind_budget);
    if (*rate) return cmd_error_rate(g, rate_args, rate_budget, rate_key_arg, reps);
    if (*ver) return cmd_verify(g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NonPhysicalError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kEstimationFailure;
  }
  return kConfigError;
}
