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
#include <stdexcept>

#include "doctest.h"
#include "oracles.h"
#include "teamsolve/game_io.h"

namespace teamsolve {
namespace {

// Best team payoff against the uniform choice of clause, by enumerating every
// pair of pure plans.
double brute_force_uniform_br(const GameTree& g) {
  const auto p0 = oracle::pure_reduced_plans(g, 0);
  const auto p1 = oracle::pure_reduced_plans(g, 1);
  const auto adv = oracle::pure_reduced_plans(g, 2);
  double best = -1.0;
  for (const auto& a : p0) {
    for (const auto& b : p1) {
      double total = 0.0;
      for (const auto& c : adv) total += oracle::play(g, {a, b, c});
      best = std::max(best, total / adv.size());
    }
  }
  return best;
}

int depth_of(const GameTree& g) {
  int best = 0;
  for (NodeId id = 0; id < g.num_nodes(); ++id) {
    int d = 0;
    for (NodeId c = id; g.node(c).parent != kNoNode; c = g.node(c).parent) ++d;
    best = std::max(best, d);
  }
  return best;
}

TEST_CASE("nu = 0 gives perfect information") {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    RandomGameConfig cfg;
    cfg.nu = 0.0;
    cfg.depth = 6;
    cfg.seed = seed;
    const GameTree g = generate_random(cfg);
    for (PlayerId p = 0; p < g.num_players(); ++p) {
      for (const Infoset& h : g.infosets()[p]) CHECK(h.nodes.size() == 1);
    }
  }
}

TEST_CASE("random games keep perfect recall and respect the shape parameters") {
  for (int n : {2, 3, 4}) {
    for (double nu : {0.25, 0.5, 0.9, 1.0}) {
      for (uint64_t seed = 0; seed < 5; ++seed) {
        RandomGameConfig cfg;
        cfg.players = n;
        cfg.depth = 7;
        cfg.nu = nu;
        cfg.seed = seed;
        const GameTree g = generate_random(cfg);
        CHECK(validate_perfect_recall(g).empty());
        CHECK(g.num_players() == n);
        CHECK(g.adversary() == n - 1);
        CHECK(g.num_leaves() == 128);
        CHECK(depth_of(g) == 7);
        for (const Node& node : g.nodes()) {
          if (node.is_terminal()) {
            CHECK(node.team_utility >= 0.0);
            CHECK(node.team_utility < 1.0);
          }
        }
      }
    }
  }
}

TEST_CASE("merging actually happens") {
  RandomGameConfig cfg;
  cfg.depth = 8;
  cfg.nu = 0.9;
  const GameTree g = generate_random(cfg);
  int merged = 0;
  for (PlayerId p = 0; p < g.num_players(); ++p) {
    for (const Infoset& h : g.infosets()[p]) merged += h.nodes.size() > 1;
  }
  CHECK(merged > 0);
}

TEST_CASE("action-count distribution and early leaves") {
  RandomGameConfig cfg;
  cfg.depth = 6;
  cfg.action_weights = {0.0, 1.0, 1.0};
  cfg.early_leaf_prob = 0.2;
  cfg.seed = 4;
  const GameTree g = generate_random(cfg);
  CHECK(validate_perfect_recall(g).empty());
  bool saw3 = false;
  for (const Node& node : g.nodes()) {
    if (node.is_terminal()) continue;
    CHECK(node.children.size() >= 2);
    CHECK(node.children.size() <= 3);
    saw3 |= node.children.size() == 3;
  }
  CHECK(saw3);
  RandomGameConfig bad;
  bad.depth = 0;
  CHECK_THROWS_AS(generate_random(bad), GameError);
}

TEST_CASE("determinism") {
  RandomGameConfig cfg;
  cfg.depth = 8;
  cfg.seed = 11;
  CHECK(save_game(generate_random(cfg)) == save_game(generate_random(cfg)));
  RandomGameConfig other = cfg;
  other.seed = 12;
  CHECK_FALSE(generate_random(cfg) == generate_random(other));
}

TEST_CASE("spy family shape and values") {
  const GameTree g = build_example1(3, 2);
  CHECK(g.num_leaves() == 4);
  CHECK(is_spy(g, 0));
  CHECK(oracle::correlated_value(g).value() == doctest::Approx(0.5));
  CHECK(oracle::correlated_value(build_example1(3, 3)).value() == doctest::Approx(1.0 / 3));
  CHECK(oracle::folded_maxmin_value(g).value() == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_example1(2, 2), GameError);
  CHECK_THROWS_AS(build_example1(3, 1), GameError);
}

TEST_CASE("guessing family shape and values") {
  const GameTree g = build_example2(3, 2);
  CHECK(g.num_leaves() == 8);
  CHECK(validate_perfect_recall(g).empty());
  CHECK(oracle::correlated_value(g).value() == doctest::Approx(0.5));
  CHECK(oracle::correlated_value(build_example2(4, 2)).value() == doctest::Approx(0.5));
  CHECK_THROWS_AS(build_example2(1, 2), GameError);
}

TEST_CASE("DIMACS round trip and validation") {
  const CnfFormula phi = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  CHECK(phi.num_variables == 3);
  CHECK(phi.clauses == std::vector<std::vector<int>>{{1, -2}, {2, 3, -1}});
  const CnfFormula again = parse_dimacs(to_dimacs(phi));
  CHECK(again.clauses == phi.clauses);
  CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 5 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(validate_formula(CnfFormula{2, {}}), std::invalid_argument);
  CHECK_THROWS_AS(build_maxsat_game(CnfFormula{2, {}}), std::invalid_argument);
}

TEST_CASE("planted formulas are satisfiable") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const CnfFormula phi = random_satisfiable_3cnf(5, 8, seed);
    CHECK(phi.clauses.size() == 8);
    CHECK(oracle::max_satisfiable_clauses(phi) == 8);
  }
}

TEST_CASE("MAX-SAT game values against a uniform clause choice") {
  CHECK(brute_force_uniform_br(build_maxsat_game(CnfFormula{1, {{1}}})) == doctest::Approx(1.0));
  CHECK(brute_force_uniform_br(build_maxsat_game(CnfFormula{1, {{1}, {-1}}})) ==
        doctest::Approx(0.5));
  const CnfFormula sat{3, {{1, 2, 3}, {-1, 2, -3}, {-2, 3, 1}}};
  REQUIRE(oracle::max_satisfiable_clauses(sat) == 3);
  CHECK(brute_force_uniform_br(build_maxsat_game(sat)) == doctest::Approx(1.0));
  const GameTree g = build_maxsat_game(sat);
  CHECK(validate_perfect_recall(g).empty());
  CHECK(g.num_players() == 3);
  CHECK(g.num_infosets(1) == 3);
}

}  // namespace
}  // namespace teamsolve
