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

#include "teamsolve/game.h"

#include <string>

#include "doctest.h"
#include "teamsolve/game_io.h"
#include "teamsolve/generators.h"

namespace teamsolve {
namespace {

// Player 0 moves, then moves again in one infoset spanning both branches.
GameTree forgetful_game() {
  GameTree g(2, 1);
  const int first = g.new_infoset(0, {"a", "b"});
  const int second = g.new_infoset(0, {"c", "d"});
  const NodeId root = g.add_decision(kNoNode, 0, 0, first);
  for (int a = 0; a < 2; ++a) {
    const NodeId n = g.add_decision(root, a, 0, second);
    g.add_leaf(n, 0, 1.0);
    g.add_leaf(n, 1, 0.0);
  }
  return g;
}

TEST_CASE("perfect-information games have perfect recall") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    RandomGameConfig cfg;
    cfg.nu = 0.0;
    cfg.seed = seed;
    CHECK(validate_perfect_recall(generate_random(cfg)).empty());
  }
}

TEST_CASE("the spy family satisfies perfect recall") {
  const GameTree g = build_example1(3, 2);
  CHECK(validate_perfect_recall(g).empty());
  // The guessing teammate has one infoset covering both adversary branches.
  CHECK(g.num_infosets(1) == 1);
  CHECK(g.infoset(1, 0).nodes.size() == 2);
}

TEST_CASE("an infoset reached through different own actions is a violation") {
  const GameTree g = forgetful_game();
  const auto violations = validate_perfect_recall(g);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].player == 0);
  CHECK(violations[0].infoset == 1);
  CHECK_THROWS_AS(validate_game(g), GameError);
}

TEST_CASE("malformed trees are structural errors, not recall violations") {
  GameTree ok = forgetful_game();
  std::vector<Node> nodes = ok.nodes();
  nodes[1].children[0] = 0;  // points back at the root
  const GameTree cyclic(2, 1, nodes, ok.infosets());
  try {
    validate_perfect_recall(cyclic);
    FAIL("expected a structural error");
  } catch (const GameError& e) {
    CHECK(e.kind() == GameErrorKind::kStructural);
  }
  std::vector<Node> orphan = ok.nodes();
  orphan.push_back(Node{kTerminal, -1, {}, 1, 0, 0.0});
  try {
    validate_structure(GameTree(2, 1, orphan, ok.infosets()));
    FAIL("expected a structural error");
  } catch (const GameError& e) {
    CHECK(e.kind() == GameErrorKind::kStructural);
  }
}

TEST_CASE("spy detection") {
  const GameTree g = build_example1(3, 2);
  CHECK(is_spy(g, 0));
  CHECK_FALSE(is_spy(g, 1));
  CHECK_THROWS_AS(is_spy(g, 7), GameError);
  // Singleton infosets but two actions somewhere.
  RandomGameConfig cfg;
  cfg.nu = 0.0;
  const GameTree pi = generate_random(cfg);
  for (PlayerId p : pi.team().members) CHECK_FALSE(is_spy(pi, p));
}

TEST_CASE("adversary utility is the negated team utility scaled by team size") {
  const GameTree g = build_example2(4, 2);
  for (NodeId id = 0; id < g.num_nodes(); ++id) {
    if (g.node(id).is_terminal()) {
      CHECK(g.adversary_utility(id) == doctest::Approx(-3.0 * g.node(id).team_utility));
    }
  }
}

TEST_CASE("save and load round-trip") {
  const GameTree ex2 = build_example2(3, 2);
  CHECK(load_game(save_game(ex2)) == ex2);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomGameConfig cfg;
    cfg.players = 3 + static_cast<int>(seed % 2);
    cfg.depth = 6;
    cfg.nu = 0.5;
    cfg.seed = seed;
    const GameTree g = generate_random(cfg);
    CHECK(load_game(save_game(g)) == g);
  }
}

TEST_CASE("load rejects malformed documents with a path") {
  const std::string dup = R"({"players": 2, "adversary": 1, "root":
    {"player": 0, "infoset": 0, "actions": [
      {"label": "x", "child": {"player": 1, "infoset": 0, "actions": [
        {"label": "x", "child": {"leaf": {"team_utility": 1}}}]}},
      {"label": "y", "child": {"leaf": {"team_utility": 0}}}]}})";
  try {
    load_game(dup);
    FAIL("expected a schema error");
  } catch (const GameError& e) {
    CHECK(e.kind() == GameErrorKind::kSchema);
  }
  const std::string missing = R"({"players": 2, "adversary": 1, "root":
    {"player": 0, "infoset": 0, "actions": [{"label": "x"}]}})";
  try {
    load_game(missing);
    FAIL("expected a schema error");
  } catch (const GameError& e) {
    CHECK(e.kind() == GameErrorKind::kSchema);
    CHECK(e.path() == "/root/actions/0");
  }
  CHECK_THROWS_AS(load_game("{not json"), GameError);
  CHECK_THROWS_AS(load_game(save_game(forgetful_game())), GameError);
}

}  // namespace
}  // namespace teamsolve
