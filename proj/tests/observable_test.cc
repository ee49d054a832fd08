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

#include "teamsolve/observable.h"

#include <set>

#include "doctest.h"
#include "teamsolve/game_io.h"
#include "teamsolve/generators.h"

namespace teamsolve {
namespace {

// Team histories are shared by every node of each new infoset.
void check_histories(const ObservableGame& obs) {
  const GameTree& g = obs.game;
  for (PlayerId p : g.team().members) {
    for (int h = 0; h < g.num_infosets(p); ++h) {
      std::set<std::vector<TeamAction>> seen;
      for (NodeId n : g.infoset(p, h).nodes) {
        std::vector<TeamAction> hist;
        for (NodeId c = n; g.node(c).parent != kNoNode; c = g.node(c).parent) {
          const Node& par = g.node(g.node(c).parent);
          if (g.is_team(par.player)) {
            hist.insert(hist.begin(), TeamAction{par.player,
                                                 obs.provenance[par.player][par.infoset].original_infoset,
                                                 g.node(c).action_in});
          }
        }
        seen.insert(hist);
        CHECK(hist == obs.provenance[p][h].team_history);
      }
      CHECK(seen.size() == 1);
    }
  }
}

TEST_CASE("perfect information is left alone") {
  RandomGameConfig cfg;
  cfg.nu = 0.0;
  cfg.depth = 6;
  const GameTree g = generate_random(cfg);
  const ObservableGame obs = force_t_observability(g);
  for (PlayerId p = 0; p < g.num_players(); ++p) {
    CHECK(obs.game.num_infosets(p) == g.num_infosets(p));
  }
}

TEST_CASE("the guesser's infoset splits by what the spy saw") {
  for (int m : {2, 3}) {
    const GameTree g = build_example1(3, m);
    const ObservableGame obs = force_t_observability(g);
    CHECK(g.num_infosets(1) == 1);
    CHECK(obs.game.num_infosets(1) == m);
    for (int h = 0; h < m; ++h) CHECK(obs.provenance[1][h].original_infoset == 0);
    CHECK(obs.game.num_infosets(2) == g.num_infosets(2));
    check_histories(obs);
  }
}

TEST_CASE("no spy: later teammates see earlier team moves") {
  // Player 1 acts after player 0 in the same adversary branch, so its
  // infoset splits by player 0's action even though the adversary's move
  // stays hidden.
  const GameTree g = build_example2(3, 2);
  const ObservableGame obs = force_t_observability(g);
  CHECK(obs.game.num_infosets(0) == g.num_infosets(0));
  CHECK(obs.game.num_infosets(1) == 2 * g.num_infosets(1));
  check_histories(obs);
}

TEST_CASE("folding keeps perfect recall") {
  for (int n : {3, 4}) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      RandomGameConfig cfg;
      cfg.players = n;
      cfg.depth = 6;
      cfg.nu = 0.6;
      cfg.seed = seed;
      const ObservableGame obs = force_t_observability(generate_random(cfg));
      check_histories(obs);
      const TeamPlayerGame folded = fold_team(obs);
      CHECK(folded.game.num_players() == 2);
      CHECK(validate_perfect_recall(folded.game).empty());
      CHECK(folded.game.num_nodes() == obs.game.num_nodes());
    }
  }
  const ObservableGame spy = force_t_observability(build_example1(3, 2));
  CHECK(validate_perfect_recall(fold_team(spy).game).empty());
}

TEST_CASE("folding a one-member team changes nothing but player ids") {
  RandomGameConfig cfg;
  cfg.players = 2;
  cfg.depth = 6;
  cfg.nu = 0.5;
  const GameTree g = generate_random(cfg);
  const TeamPlayerGame folded = fold_team(force_t_observability(g));
  REQUIRE(folded.game.num_nodes() == g.num_nodes());
  for (NodeId id = 0; id < g.num_nodes(); ++id) {
    const Node& a = g.node(id);
    const Node& b = folded.game.node(id);
    CHECK(a.children == b.children);
    CHECK(a.team_utility == b.team_utility);
    if (!a.is_terminal()) CHECK(a.infoset == b.infoset);
  }
}

TEST_CASE("provenance serializes") {
  const ObservableGame obs = force_t_observability(build_example1(3, 2));
  const nlohmann::json doc = provenance_to_json(obs);
  CHECK(!doc.empty());
}

}  // namespace
}  // namespace teamsolve
