// Copyright 2026 The Teamsolve Authors
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

// teamsolve: command-line front end.
//   teamsolve solve GAME --eq {tme|tmecor|tmecom} [--oracle exact|approx] ...
//   teamsolve generate {random|example1|example2|maxsat} ... -o FILE
//   teamsolve experiment --grid CONFIG --out DIR
//   teamsolve pou GAME

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamsolve/analysis.h"
#include "teamsolve/game_io.h"
#include "teamsolve/generators.h"
#include "teamsolve/tmecor.h"

namespace {

using nlohmann::json;
using namespace teamsolve;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

OracleKind parse_oracle(const std::string& s) {
  if (s == "exact") return OracleKind::kExact;
  if (s == "approx") return OracleKind::kApprox;
  throw std::invalid_argument("oracle must be exact or approx");
}

json record_json(const SolutionRecord& r) {
  return {{"eq", to_string(r.eq)},  {"value", r.value},   {"support", r.support},
          {"iters", r.iters},       {"status", r.status}, {"seconds", r.seconds}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for zero-sum team games: TME, TMECor and TMECom"};
  app.require_subcommand(1);

  SolverSettings settings;
  std::string oracle = "exact";

  auto* solve = app.add_subcommand("solve", "Solve one game for one equilibrium");
  std::string game_path, eq = "tmecor", output, trace_path;
  solve->add_option("game", game_path, "Game file (JSON)")->required();
  solve->add_option("--eq", eq, "tme, tmecor or tmecom")->required();
  solve->add_option("--oracle", oracle, "Best-response oracle for tmecor: exact or approx");
  solve->add_option("--seed", settings.seed, "Seed for randomized components");
  solve->add_option("--time-limit", settings.time_limit, "Seconds; 0 disables");
  solve->add_option("--restarts", settings.tme_restarts, "TME local-search restarts");
  solve->add_option("--rounds", settings.approx.rounds, "Rounding trials of the approx oracle");
  solve->add_option("--trace", trace_path, "Write the column generation trace as CSV");
  solve->add_option("-o,--output", output, "Result file (default stdout)");

  auto* gen = app.add_subcommand("generate", "Write a game file");
  gen->require_subcommand(1);
  std::string gen_out;
  RandomGameConfig rc;
  int fam_n = 3, fam_m = 2;
  auto* g_random = gen->add_subcommand("random", "Random game tree");
  g_random->add_option("--players", rc.players);
  g_random->add_option("--depth", rc.depth);
  g_random->add_option("--nu", rc.nu, "Infoset merge probability");
  g_random->add_option("--branching", rc.branching);
  g_random->add_option("--action-weights", rc.action_weights,
                       "Weights of 1, 2, ... actions (overrides --branching)");
  g_random->add_option("--early-leaf", rc.early_leaf_prob);
  g_random->add_option("--seed", rc.seed);
  auto* g_ex1 = gen->add_subcommand("example1", "Adversary, spy and n-2 guessing teammates");
  auto* g_ex2 = gen->add_subcommand("example2", "n-1 teammates guessing the adversary");
  for (auto* c : {g_ex1, g_ex2}) {
    c->add_option("--n", fam_n, "Players");
    c->add_option("--m", fam_m, "Actions");
  }
  auto* g_sat = gen->add_subcommand("maxsat", "Best-response game of a CNF formula");
  std::string cnf_in, cnf_out;
  int sat_vars = 5, sat_clauses = 8;
  uint64_t sat_seed = 0;
  g_sat->add_option("--cnf", cnf_in, "DIMACS input (otherwise a random satisfiable 3-CNF)");
  g_sat->add_option("--vars", sat_vars);
  g_sat->add_option("--clauses", sat_clauses);
  g_sat->add_option("--seed", sat_seed);
  g_sat->add_option("--cnf-out", cnf_out, "Also write the formula in DIMACS");
  for (auto* c : {g_random, g_ex1, g_ex2, g_sat}) {
    c->add_option("-o,--output", gen_out, "Game file (default stdout)");
  }

  auto* exp = app.add_subcommand("experiment", "Run a grid of random games");
  std::string grid_path, out_dir;
  exp->add_option("--grid", grid_path, "JSON config")->required();
  exp->add_option("--out", out_dir, "Output directory")->required();

  auto* pou = app.add_subcommand("pou", "All three values and the inefficiency indices");
  std::string pou_game;
  bool renormalize = false;
  pou->add_option("game", pou_game)->required();
  pou->add_option("--seed", settings.seed);
  pou->add_option("--time-limit", settings.time_limit);
  pou->add_option("--restarts", settings.tme_restarts);
  pou->add_flag("--renormalize", renormalize, "Map the attained payoff range onto [0, 1]");

  CLI11_PARSE(app, argc, argv);

  try {
    settings.oracle = parse_oracle(oracle);
    if (*solve) {
      const GameTree game = load_game_file(game_path);
      const SolveOutcome out = solve_equilibrium(game, parse_equilibrium(eq), settings);
      json doc = record_json(out.record);
      doc["strategy"] = out.strategy;
      emit(doc.dump(2) + "\n", output);
      if (!trace_path.empty()) {
        std::ostringstream csv;
        write_trace_csv(out.trace, csv);
        emit(csv.str(), trace_path);
      }
      return out.record.status == "error" ? 1 : 0;
    }
    if (*gen) {
      GameTree game;
      if (*g_random) {
        game = generate_random(rc);
      } else if (*g_ex1) {
        game = build_example1(fam_n, fam_m);
      } else if (*g_ex2) {
        game = build_example2(fam_n, fam_m);
      } else {
        const CnfFormula phi = cnf_in.empty()
                                   ? random_satisfiable_3cnf(sat_vars, sat_clauses, sat_seed)
                                   : parse_dimacs(read_file(cnf_in));
        if (!cnf_out.empty()) emit(to_dimacs(phi), cnf_out);
        game = build_maxsat_game(phi);
      }
      emit(save_game(game), gen_out);
      return 0;
    }
    if (*exp) {
      const ExperimentConfig config = parse_experiment_config(json::parse(read_file(grid_path)));
      const ExperimentResult res = run_experiment(config, out_dir);
      std::cout << res.records.size() << " records, " << res.aggregates.size()
                << " aggregate rows written to " << out_dir << "\n";
      return 0;
    }
    if (*pou) {
      const PoURun run = run_pou(load_game_file(pou_game), settings, renormalize);
      json doc = pou_to_json(run.report);
      doc["records"] = {record_json(run.com), record_json(run.cor), record_json(run.no)};
      doc["tme_certified"] = run.tme_certified;
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
