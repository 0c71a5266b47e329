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

// Command-line front end: partition, rank, vqe, stats.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shvqe/cli/commands.hpp"

namespace {

using shvqe::cli::RunConfig;

struct RawFlags {
  std::string molecule = "h2";
  double r = 0.725;
  std::string r_range;
  std::string subspace = "auto";
  std::string order = "score";
  std::string terms = "single";
  std::string ansatz = "subspace";
  std::string backend = "sv";
  int shots = 1024;
  std::string noise = "0.001,0.01";
  int trials = 1;
  std::uint64_t seed = 1;
  std::size_t k = 0;  // 0: all selected operators
  std::string out;
  std::string circuit_json;
  std::string config;
  bool incremental = false;
  bool excited = false;
};

/// Fills every option the command line left unset from the JSON file.
void apply_config_file(CLI::App& app, RawFlags& f) {
  if (f.config.empty()) return;
  const auto j = nlohmann::json::parse(shvqe::cli::read_text(f.config));
  auto take = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    if (app.get_option(std::string("--") + key)->count() > 0) return;
    j.at(key).get_to(field);
  };
  auto take_flag = [&](const char* key, bool& field) {
    if (j.contains(key) && app.get_option(std::string("--") + key)->count() == 0) field = j.at(key).get<bool>();
  };
  take("molecule", f.molecule);
  take("r", f.r);
  take("r-range", f.r_range);
  take("subspace", f.subspace);
  take("order", f.order);
  take("terms", f.terms);
  take("ansatz", f.ansatz);
  take("backend", f.backend);
  take("shots", f.shots);
  take("noise", f.noise);
  take("trials", f.trials);
  take("seed", f.seed);
  take("k", f.k);
  take("out", f.out);
  take("circuit-json", f.circuit_json);
  take_flag("incremental", f.incremental);
  take_flag("excited", f.excited);
}

RunConfig to_config(const RawFlags& f) {
  RunConfig c;
  c.molecule = f.molecule;
  c.r_values = f.r_range.empty() ? std::vector<double>{f.r} : shvqe::cli::parse_range(f.r_range);
  c.subspace = f.subspace;
  c.score_order = f.order == "score";
  c.terms = f.terms == "all" ? shvqe::TermMode::kAll : shvqe::TermMode::kSingle;
  c.ansatz = f.ansatz == "uccsd" ? shvqe::cli::AnsatzKind::kUccsd : shvqe::cli::AnsatzKind::kSubspace;
  c.backend = f.backend == "shots" ? shvqe::Backend::kSampled : shvqe::Backend::kStatevector;
  c.shots = f.shots;
  c.noise = shvqe::cli::parse_noise(f.noise);
  c.trials = f.trials;
  c.seed = f.seed;
  if (f.k > 0) c.max_operators = f.k;
  c.incremental = f.incremental;
  c.excited = f.excited;
  c.out = f.out;
  c.circuit_json = f.circuit_json;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shvqe: subspace-partitioned shallow VQE for hydrogen clusters"};
  app.require_subcommand(1, 1);
  RawFlags f;
  for (const char* name : {"partition", "rank", "vqe", "stats"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--molecule", f.molecule, "h2 | h4-square | h4-chain | h6-hexagon | path to .xyz or FCIDUMP");
    sub->add_option("--r", f.r, "bond length in Angstrom");
    sub->add_option("--r-range", f.r_range, "scan a:b:step in Angstrom");
    sub->add_option("--subspace", f.subspace, "auto | rank:<n> | bitstring of a member state");
    sub->add_option("--order", f.order, "operator order")->check(CLI::IsMember({"score", "lex"}));
    sub->add_option("--terms", f.terms, "single-term or all-term rotations")->check(CLI::IsMember({"single", "all"}));
    sub->add_option("--ansatz", f.ansatz, "subspace pool or full UCCSD")->check(CLI::IsMember({"subspace", "uccsd"}));
    sub->add_option("--backend", f.backend, "statevector or shot sampling")->check(CLI::IsMember({"sv", "shots"}));
    sub->add_option("--shots", f.shots, "shots per Pauli term")->check(CLI::PositiveNumber);
    sub->add_option("--noise", f.noise, "depolarizing probabilities p1,p2");
    sub->add_option("--trials", f.trials, "independent trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--k", f.k, "use only the first k ranked operators");
    sub->add_option("--out", f.out, "output file (CSV appended, JSON overwritten)");
    sub->add_option("--circuit-json", f.circuit_json, "stats: dump the single-term circuit");
    sub->add_option("--config", f.config, "JSON file with the same keys; flags win");
    sub->add_flag("--incremental", f.incremental, "solve every prefix k = 1..K with warm starts");
    sub->add_flag("--excited", f.excited, "use the subspace of the lowest state of another symmetry");
  }
  CLI11_PARSE(app, argc, argv);
  try {
    auto* sub = app.get_subcommands().front();
    apply_config_file(*sub, f);
    const RunConfig cfg = to_config(f);
    const std::string name = sub->get_name();
    if (name == "partition") shvqe::cli::cmd_partition(cfg, std::cout);
    if (name == "rank") shvqe::cli::cmd_rank(cfg, std::cout);
    if (name == "vqe") shvqe::cli::cmd_vqe(cfg, std::cout);
    if (name == "stats") shvqe::cli::cmd_stats(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
