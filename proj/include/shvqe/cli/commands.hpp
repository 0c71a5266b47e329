// Copyright 2026 The shvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "shvqe/chem/fcidump.hpp"
#include "shvqe/chem/geometry.hpp"
#include "shvqe/workflow.hpp"

namespace shvqe::cli {

inline constexpr int kSchemaVersion = 1;

enum class AnsatzKind { kSubspace, kUccsd };

struct RunConfig {
  std::string molecule = "h2";  // preset name, .xyz file or FCIDUMP file
  std::vector<double> r_values{0.725};
  std::string subspace = "auto";  // auto | rank:<n> | <bitstring contained in the subspace>
  TermMode terms = TermMode::kSingle;
  bool score_order = true;
  AnsatzKind ansatz = AnsatzKind::kSubspace;
  Backend backend = Backend::kStatevector;
  int shots = 1024;
  NoiseModel noise;
  int trials = 1;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_operators;
  bool incremental = false;
  bool excited = false;
  std::string out;           // empty: standard output
  std::string circuit_json;  // optional circuit dump (stats)

  void validate() const {
    if (r_values.empty()) throw DomainError("config: no bond length given");
    for (double r : r_values)
      if (!(r > 0)) throw DomainError("config: r must be positive");
    if (trials < 1) throw DomainError("config: trials must be at least 1");
    if (shots < 1) throw DomainError("config: shots must be at least 1");
    noise.validate();
  }
};

/// "a:b:step", inclusive of b up to rounding.
inline std::vector<double> parse_range(const std::string& s) {
  std::vector<double> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("r-range: bad number '" + item + "'");
    }
  }
  if (parts.size() != 3) throw ParseError("r-range: expected a:b:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0)) throw DomainError("r-range: step must be positive");
  if (b < a) throw DomainError("r-range: end below start");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

/// "p1,p2".
inline NoiseModel parse_noise(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("noise: expected p1,p2");
  NoiseModel n;
  try {
    n.p1 = std::stod(s.substr(0, comma));
    n.p2 = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw ParseError("noise: bad number in '" + s + "'");
  }
  n.validate();
  return n;
}

inline bool is_preset(const std::string& m) {
  return m == "h2" || m == "h4-square" || m == "h4-chain" || m == "h6-hexagon";
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Problem at one bond length; file inputs ignore r.
inline MolecularProblem load_problem(const RunConfig& cfg, double r) {
  if (is_preset(cfg.molecule)) return build_problem(preset_geometry(cfg.molecule, r));
  if (!std::filesystem::exists(cfg.molecule)) {
    throw DomainError("unknown molecule '" + cfg.molecule + "' (not a preset or a file)");
  }
  if (std::filesystem::path(cfg.molecule).extension() == ".xyz") {
    return build_problem(chem::parse_xyz(read_text(cfg.molecule)));
  }
  return build_problem(chem::read_fcidump(read_text(cfg.molecule)));
}

inline std::vector<double> scan_points(const RunConfig& cfg) {
  return is_preset(cfg.molecule) ? cfg.r_values : std::vector<double>{cfg.r_values.front()};
}

inline SubspaceSelection selection(const RunConfig& cfg) {
  SubspaceSelection sel;
  sel.score_order = cfg.score_order;
  if (cfg.excited) sel.energy_rank = 1;
  if (cfg.subspace == "auto") return sel;
  if (cfg.subspace.rfind("rank:", 0) == 0) {
    try {
      sel.energy_rank = std::stoul(cfg.subspace.substr(5));
    } catch (const std::exception&) {
      throw ParseError("subspace: bad rank in '" + cfg.subspace + "'");
    }
    return sel;
  }
  sel.containing = bits_from_string(cfg.subspace);
  return sel;
}

/// Output sink: a file opened for appending, or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool append) : out_(&fallback) {
    if (path.empty()) return;
    fresh_ = !append || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    file_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!file_) throw Error("cannot write '" + path + "'");
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }
  /// False when appending to a file that already has a header.
  bool needs_header() const { return fresh_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
  bool fresh_ = true;
};

inline std::string fmt(double v, int precision = 10) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

inline std::string term_name(TermMode m) { return m == TermMode::kSingle ? "single" : "all"; }
inline std::string backend_name(Backend b) { return b == Backend::kStatevector ? "sv" : "shots"; }

// ---------------------------------------------------------------- partition

inline nlohmann::json partition_report(const MolecularProblem& p, const std::string& molecule, double r) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["molecule"] = molecule;
  j["r"] = r;
  j["n_qubits"] = p.n_qubits();
  j["sector_dimension"] = p.basis.size();
  j["hartree_fock_state"] = p.basis.qubit(p.hartree_fock_index()).to_string();
  const auto ground = p.subspace_ground_energies();
  j["subspaces"] = nlohmann::json::array();
  for (std::size_t s = 0; s < p.subspaces.size(); ++s) {
    const auto& sub = p.subspaces[s];
    nlohmann::json js;
    js["id"] = s;
    js["dimension"] = sub.dimension();
    js["ground_energy"] = ground[s];
    js["initial_state"] = p.basis.qubit(choose_initial_state(sub, p.sector_matrix)).to_string();
    std::vector<std::string> members;
    for (std::size_t m : sub.members) members.push_back(p.basis.qubit(m).to_string());
    js["members"] = members;
    j["subspaces"].push_back(js);
  }
  return j;
}

inline void cmd_partition(const RunConfig& cfg, std::ostream& table) {
  cfg.validate();
  nlohmann::json all = nlohmann::json::array();
  for (double r : scan_points(cfg)) {
    const auto p = load_problem(cfg, r);
    const auto j = partition_report(p, cfg.molecule, r);
    table << cfg.molecule << " r=" << r << "  sector " << p.basis.size() << "  subspaces";
    for (const auto& s : j["subspaces"]) table << ' ' << s["dimension"].get<std::size_t>();
    table << '\n';
    for (const auto& s : j["subspaces"]) {
      table << "  #" << s["id"].get<std::size_t>() << "  dim " << std::setw(4) << s["dimension"].get<std::size_t>()
            << "  E0 " << std::setw(14) << fmt(s["ground_energy"].get<double>()) << "  initial "
            << s["initial_state"].get<std::string>() << '\n';
    }
    all.push_back(j);
  }
  if (!cfg.out.empty()) {
    Sink sink(cfg.out, table, false);
    sink.stream() << (all.size() == 1 ? all[0] : all).dump(2) << '\n';
  }
}

// --------------------------------------------------------------------- rank

inline void cmd_rank(const RunConfig& cfg, std::ostream& console) {
  cfg.validate();
  Sink sink(cfg.out, console, true);
  auto& os = sink.stream();
  if (sink.needs_header()) {
    os << "schema_version,molecule,r,subspace,rank,operator,excitation_rank,score,term,weight,target\n";
  }
  for (double r : scan_points(cfg)) {
    const auto p = load_problem(cfg, r);
    const auto s = setup_subspace(p, selection(cfg));
    if (s.pool.selected.empty()) throw DomainError("rank: the subspace admits no excitation operator");
    for (std::size_t i = 0; i < s.pool.selected.size(); ++i) {
      const auto& op = s.pool.selected[i];
      os << kSchemaVersion << ',' << cfg.molecule << ',' << fmt(r) << ',' << s.subspace << ',' << i + 1 << ",\""
         << op.label() << "\"," << op.rank() << ',' << fmt(op.score) << ',' << op.selected_term.label() << ','
         << popcount(op.selected_term.x_mask() | op.selected_term.z_mask()) << ','
         << p.basis.qubit(*op.target).to_string() << '\n';
    }
  }
}

// ---------------------------------------------------------------------- vqe

struct VqeRow {
  std::string molecule;
  double r = 0.0;
  std::size_t subspace = 0;
  std::size_t k = 0;
  std::string terms;
  std::string backend;
  std::string trial;  // index, or "mean" for the aggregate row
  double energy = 0.0;
  double ed_energy = 0.0;
  double std_error = 0.0;
  double s2 = 0.0;
  double overlap = 0.0;
};

inline void write_vqe_header(std::ostream& os) {
  os << "schema_version,molecule,r,subspace,k,terms,backend,trial,energy,ed_energy,error,std_error,s2,overlap\n";
}

inline void write_vqe_row(std::ostream& os, const VqeRow& row) {
  os << kSchemaVersion << ',' << row.molecule << ',' << fmt(row.r) << ',' << row.subspace << ',' << row.k << ','
     << row.terms << ',' << row.backend << ',' << row.trial << ',' << fmt(row.energy, 12) << ','
     << fmt(row.ed_energy, 12) << ',' << fmt(row.energy - row.ed_energy, 6) << ',' << fmt(row.std_error, 6) << ','
     << fmt(row.s2, 8) << ',' << fmt(row.overlap, 8) << '\n';
}

/// Every trial and an aggregate row (mean energy, standard deviation across
/// trials in std_error) for each scan point and ansatz size.
inline std::vector<VqeRow> run_vqe_scan(const RunConfig& cfg) {
  cfg.validate();
  std::vector<VqeRow> rows;
  VqeOptions opt;
  opt.backend = cfg.backend;
  opt.shots = {cfg.shots, cfg.seed};
  opt.noise = cfg.backend == Backend::kSampled ? cfg.noise : NoiseModel::none();
  const int trials = cfg.backend == Backend::kStatevector ? 1 : cfg.trials;  // statevector runs are deterministic
  for (double r : scan_points(cfg)) {
    const auto p = load_problem(cfg, r);
    const auto s = setup_subspace(p, selection(cfg));
    const AnsatzCircuit circuit = cfg.ansatz == AnsatzKind::kUccsd ? full_uccsd_ansatz(p)
                                                                    : subspace_ansatz(p, s, cfg.terms, cfg.max_operators);
    const std::string terms = cfg.ansatz == AnsatzKind::kUccsd ? "uccsd" : term_name(cfg.terms);
    const auto s2 = spin_squared_observable(p.sector);
    const StateVector exact = subspace_ground_state(p, s);
    const double ed = s.ed.ground_energy();
    std::map<std::size_t, std::vector<VqeResult>> by_k;
    for (int t = 0; t < trials; ++t) {
      opt.trial = t;
      std::vector<VqeResult> results;
      if (cfg.incremental) {
        results = add_operators_incrementally(p.qubit_hamiltonian, circuit, circuit.num_parameters(), opt);
      } else {
        results.push_back(run_vqe(p.qubit_hamiltonian, circuit, opt));
      }
      for (auto& res : results) {
        const std::size_t k = res.theta.size();
        rows.push_back({cfg.molecule, r, s.subspace, k, terms, backend_name(cfg.backend), std::to_string(t),
                        res.energy, ed, res.std_error, s2.expectation(res.state), overlap(res.state, exact)});
        by_k[k].push_back(std::move(res));
      }
    }
    for (const auto& [k, list] : by_k) {
      double mean = 0.0, s2_mean = 0.0, ov_mean = 0.0;
      for (const auto& res : list) {
        mean += res.energy / list.size();
        s2_mean += s2.expectation(res.state) / list.size();
        ov_mean += overlap(res.state, exact) / list.size();
      }
      double var = 0.0;
      for (const auto& res : list) var += (res.energy - mean) * (res.energy - mean);
      const double sd = list.size() > 1 ? std::sqrt(var / (list.size() - 1)) : list.front().std_error;
      rows.push_back({cfg.molecule, r, s.subspace, k, terms, backend_name(cfg.backend), "mean", mean, ed, sd,
                      s2_mean, ov_mean});
    }
  }
  return rows;
}

inline void cmd_vqe(const RunConfig& cfg, std::ostream& console) {
  const auto rows = run_vqe_scan(cfg);
  Sink sink(cfg.out, console, true);
  if (sink.needs_header()) write_vqe_header(sink.stream());
  for (const auto& row : rows) write_vqe_row(sink.stream(), row);
}

// -------------------------------------------------------------------- stats

/// Rotations "R(letters)" in circuit order and compiled gate counts.
inline nlohmann::json circuit_to_json(const AnsatzCircuit& c) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  j["initial_state"] = bits_to_string(c.initial_label, c.n_qubits);
  j["rotations"] = nlohmann::json::array();
  for (std::size_t k = 0; k < c.operators.size(); ++k) {
    for (const auto& g : c.operators[k].generators) {
      j["rotations"].push_back({{"gate", "R(" + g.label() + ")"},
                                {"parameter", k},
                                {"operator", c.operators[k].label},
                                {"generator_scale", g.coeff().imag()}});
    }
  }
  const auto compiled = compile_circuit(c, std::vector<double>(c.num_parameters(), 0.0));
  long single = 0, cnot = 0;
  for (const auto& g : compiled.gates) (g.two_qubit() ? cnot : single)++;
  const auto stats = count_cnots(c);
  j["gate_counts"] = {{"cnot", cnot}, {"single_qubit", single}, {"rotations", stats.rotation_count}};
  return j;
}

inline std::string histogram_text(const CircuitStats& s) {
  std::string out;
  for (const auto& [w, n] : s.weight_histogram) out += (out.empty() ? "" : ";") + std::to_string(w) + ":" + std::to_string(n);
  return out;
}

inline void cmd_stats(const RunConfig& cfg, std::ostream& console) {
  cfg.validate();
  Sink sink(cfg.out, console, true);
  auto& os = sink.stream();
  if (sink.needs_header()) os << "schema_version,molecule,r,ansatz,operators,rotations,cnots,weight_histogram\n";
  for (double r : scan_points(cfg)) {
    const auto p = load_problem(cfg, r);
    const auto s = setup_subspace(p, selection(cfg));
    const std::vector<std::pair<std::string, AnsatzCircuit>> circuits = {
        {"subspace-single", subspace_ansatz(p, s, TermMode::kSingle, cfg.max_operators)},
        {"subspace-all", subspace_ansatz(p, s, TermMode::kAll, cfg.max_operators)},
        {"uccsd", full_uccsd_ansatz(p)}};
    for (const auto& [name, c] : circuits) {
      const auto st = count_cnots(c);
      os << kSchemaVersion << ',' << cfg.molecule << ',' << fmt(r) << ',' << name << ',' << c.num_parameters() << ','
         << st.rotation_count << ',' << st.cnot_count << ',' << histogram_text(st) << '\n';
    }
    if (!cfg.circuit_json.empty()) {
      std::ofstream dump(cfg.circuit_json);
      if (!dump) throw Error("cannot write '" + cfg.circuit_json + "'");
      dump << circuit_to_json(circuits.front().second).dump(2) << '\n';
    }
  }
}

}  // namespace shvqe::cli
