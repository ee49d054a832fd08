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

#include "teamsolve/generators.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace teamsolve {
namespace {

std::vector<std::string> labels(PlayerId p, int infoset, int count) {
  std::vector<std::string> out;
  for (int a = 0; a < count; ++a) {
    out.push_back("p" + std::to_string(p) + ".h" + std::to_string(infoset) + ".a" +
                  std::to_string(a));
  }
  return out;
}

struct RandomBuilder {
  const RandomGameConfig& config;
  GameTree game;
  std::mt19937_64 rng;
  // (prev own sequence, infoset, action) -> own sequence id
  std::map<std::tuple<int, int, int>, int> sequence_ids;
  // (player, own sequence, action count) -> infosets open to new members
  std::map<std::tuple<PlayerId, int, int>, std::vector<int>> compatible;
  std::vector<int> own_sequence;  // current own sequence per player

  int draw_action_count() {
    if (config.action_weights.empty()) return config.branching;
    std::discrete_distribution<int> d(config.action_weights.begin(),
                                      config.action_weights.end());
    return d(rng) + 1;
  }

  void build(NodeId parent, int action, int depth) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const bool early = depth >= config.players && config.early_leaf_prob > 0.0 &&
                       unit(rng) < config.early_leaf_prob;
    if (depth >= config.depth || early) {
      game.add_leaf(parent, action, unit(rng));
      return;
    }
    std::uniform_int_distribution<int> pick_player(0, config.players - 1);
    const PlayerId p = pick_player(rng);
    const int count = draw_action_count();
    auto& candidates = compatible[{p, own_sequence[p], count}];
    int infoset = -1;
    const bool merge = unit(rng) < config.nu;
    if (merge && !candidates.empty()) {
      std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
      infoset = candidates[pick(rng)];
    } else {
      infoset = game.new_infoset(p, labels(p, game.num_infosets(p), count));
      candidates.push_back(infoset);
    }
    const NodeId id = game.add_decision(parent, action, p, infoset);
    const int saved = own_sequence[p];
    for (int a = 0; a < count; ++a) {
      auto key = std::make_tuple(saved, infoset, a);
      auto it = sequence_ids.find(key);
      if (it == sequence_ids.end()) {
        it = sequence_ids.emplace(key, static_cast<int>(sequence_ids.size()) + 1).first;
      }
      own_sequence[p] = it->second;
      build(id, a, depth + 1);
    }
    own_sequence[p] = saved;
  }
};

void check_family_args(int n, int m) {
  if (n < 3 || m < 2) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "worst-case families need n >= 3 and m >= 2");
  }
}

// Shared tail of both families: teammates first..n-2, one infoset per level.
void add_matching_levels(GameTree& g, NodeId parent, int action, int level, int n,
                         int m, int target, bool all_match,
                         const std::vector<int>& level_infoset) {
  if (level > n - 2) {
    g.add_leaf(parent, action, all_match ? 1.0 : 0.0);
    return;
  }
  const NodeId id = g.add_decision(parent, action, level, level_infoset[level]);
  for (int a = 0; a < m; ++a) {
    add_matching_levels(g, id, a, level + 1, n, m, target, all_match && a == target,
                        level_infoset);
  }
}

}  // namespace

GameTree generate_random(const RandomGameConfig& config) {
  if (config.players < 2 || config.depth < 1 || config.nu < 0.0 || config.nu > 1.0 ||
      config.early_leaf_prob < 0.0 || config.early_leaf_prob > 1.0 ||
      (config.action_weights.empty() && config.branching < 1)) {
    throw GameError(GameErrorKind::kInvalidArgument, "invalid random game config");
  }
  RandomBuilder b{config, GameTree(config.players, config.players - 1),
                  std::mt19937_64(config.seed), {}, {}, {}};
  b.own_sequence.assign(config.players, 0);
  b.build(kNoNode, 0, 0);
  validate_game(b.game);
  return std::move(b.game);
}

GameTree build_example1(int n, int m) {
  check_family_args(n, m);
  const PlayerId adv = n - 1;
  GameTree g(n, adv);
  std::vector<std::string> adv_labels;
  for (int k = 0; k < m; ++k) adv_labels.push_back("adv.a" + std::to_string(k));
  const int adv_h = g.new_infoset(adv, adv_labels);
  std::vector<int> level_infoset(n - 1, -1);
  for (PlayerId p = 1; p <= n - 2; ++p) level_infoset[p] = g.new_infoset(p, labels(p, 0, m));
  const NodeId root = g.add_decision(kNoNode, 0, adv, adv_h);
  for (int k = 0; k < m; ++k) {
    const int spy_h = g.new_infoset(0, {"spy.after" + std::to_string(k)});
    const NodeId spy = g.add_decision(root, k, 0, spy_h);
    add_matching_levels(g, spy, 0, 1, n, m, k, true, level_infoset);
  }
  validate_game(g);
  return g;
}

GameTree build_example2(int n, int m) {
  check_family_args(n, m);
  const PlayerId adv = n - 1;
  GameTree g(n, adv);
  std::vector<std::string> adv_labels;
  for (int k = 0; k < m; ++k) adv_labels.push_back("adv.a" + std::to_string(k));
  const int adv_h = g.new_infoset(adv, adv_labels);
  std::vector<int> level_infoset(n - 1, -1);
  for (PlayerId p = 0; p <= n - 2; ++p) level_infoset[p] = g.new_infoset(p, labels(p, 0, m));
  const NodeId root = g.add_decision(kNoNode, 0, adv, adv_h);
  for (int k = 0; k < m; ++k) {
    add_matching_levels(g, root, k, 0, n, m, k, true, level_infoset);
  }
  validate_game(g);
  return g;
}

void validate_formula(const CnfFormula& phi) {
  if (phi.num_variables < 1 || phi.clauses.empty()) {
    throw std::invalid_argument("empty formula");
  }
  for (const auto& clause : phi.clauses) {
    if (clause.empty()) throw std::invalid_argument("empty clause");
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > phi.num_variables) {
        throw std::invalid_argument("literal out of range: " + std::to_string(lit));
      }
    }
  }
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula phi;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  std::vector<int> current;
  int declared_clauses = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first == "%") continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> phi.num_variables >> declared_clauses) || fmt != "cnf") {
        throw std::invalid_argument("bad DIMACS header: " + line);
      }
      header = true;
      continue;
    }
    if (!header) throw std::invalid_argument("DIMACS clause before header");
    std::istringstream body(line);
    int lit;
    while (body >> lit) {
      if (lit == 0) {
        phi.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
    if (!body.eof()) throw std::invalid_argument("bad DIMACS token in: " + line);
  }
  if (!current.empty()) phi.clauses.push_back(current);
  if (!header) throw std::invalid_argument("missing DIMACS header");
  if (declared_clauses != static_cast<int>(phi.clauses.size())) {
    throw std::invalid_argument("DIMACS clause count does not match header");
  }
  validate_formula(phi);
  return phi;
}

std::string to_dimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.num_variables << " " << phi.clauses.size() << "\n";
  for (const auto& clause : phi.clauses) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
  return out.str();
}

CnfFormula random_satisfiable_3cnf(int num_variables, int num_clauses, uint64_t seed) {
  if (num_variables < 1 || num_clauses < 1) {
    throw std::invalid_argument("formula needs variables and clauses");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> planted(num_variables + 1);
  for (int v = 1; v <= num_variables; ++v) planted[v] = coin(rng);
  CnfFormula phi;
  phi.num_variables = num_variables;
  const int width = std::min(3, num_variables);
  std::vector<int> vars(num_variables);
  for (int v = 0; v < num_variables; ++v) vars[v] = v + 1;
  while (static_cast<int>(phi.clauses.size()) < num_clauses) {
    std::shuffle(vars.begin(), vars.end(), rng);
    std::vector<int> clause;
    bool satisfied = false;
    for (int k = 0; k < width; ++k) {
      const bool positive = coin(rng);
      clause.push_back(positive ? vars[k] : -vars[k]);
      satisfied = satisfied || positive == planted[vars[k]];
    }
    if (satisfied) phi.clauses.push_back(clause);
  }
  return phi;
}

GameTree build_maxsat_game(const CnfFormula& phi) {
  validate_formula(phi);
  const int c = static_cast<int>(phi.clauses.size());
  GameTree g(3, 2);
  std::vector<std::string> adv_labels;
  for (int j = 0; j < c; ++j) adv_labels.push_back("clause" + std::to_string(j));
  const NodeId root = g.add_decision(kNoNode, 0, 2, g.new_infoset(2, adv_labels));
  std::map<int, int> variable_infoset;
  for (int j = 0; j < c; ++j) {
    std::vector<int> lits;
    for (int lit : phi.clauses[j]) {
      if (std::find(lits.begin(), lits.end(), lit) == lits.end()) lits.push_back(lit);
    }
    std::vector<std::string> choose;
    for (int lit : lits) {
      choose.push_back("c" + std::to_string(j) + (lit > 0 ? ":x" : ":~x") +
                       std::to_string(std::abs(lit)));
    }
    const NodeId pick = g.add_decision(root, j, 0, g.new_infoset(0, choose));
    for (int k = 0; k < static_cast<int>(lits.size()); ++k) {
      const int v = std::abs(lits[k]);
      auto it = variable_infoset.find(v);
      if (it == variable_infoset.end()) {
        const std::string name = "x" + std::to_string(v);
        it = variable_infoset.emplace(v, g.new_infoset(1, {name + "=T", name + "=F"})).first;
      }
      const NodeId assign = g.add_decision(pick, k, 1, it->second);
      const bool positive = lits[k] > 0;
      g.add_leaf(assign, 0, positive ? 1.0 : 0.0);  // variable set true
      g.add_leaf(assign, 1, positive ? 0.0 : 1.0);
    }
  }
  validate_game(g);
  return g;
}

}  // namespace teamsolve
