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

#ifndef TEAMSOLVE_OBSERVABLE_H_
#define TEAMSOLVE_OBSERVABLE_H_

#include <vector>

#include "json.hpp"
#include "teamsolve/game.h"

namespace teamsolve {

// One team move on a root path, identified in the original game.
struct TeamAction {
  PlayerId player = 0;
  int infoset = 0;
  int action = 0;
  friend auto operator<=>(const TeamAction&, const TeamAction&) = default;
};

// Where a team infoset of the transformed game came from: the original
// infoset and the team history that identifies it.
struct InfosetProvenance {
  PlayerId player = 0;
  int original_infoset = 0;
  std::vector<TeamAction> team_history;
};

// Same tree as the input; each team infoset is split so that its nodes also
// share the team's joint history. Adversary infosets are untouched.
struct ObservableGame {
  GameTree game;
  std::vector<std::vector<InfosetProvenance>> provenance;  // [player][infoset]
};

// Nested-table construction: the outer key is the ordered list of team moves
// on the path to a node, the inner key the node's original infoset. New ids
// are handed out per player in DFS order. O(|V| * depth) table work.
ObservableGame force_t_observability(const GameTree& game);

// Two-player game in which a single team player owns every former team node.
struct TeamPlayerGame {
  GameTree game;
  PlayerId team_player = 0;
  PlayerId adversary = 1;
  // For each infoset of the team player: owner and infoset in the observable
  // game it was folded from.
  std::vector<std::pair<PlayerId, int>> origin;
};

// Throws std::logic_error if the folded team player lacks perfect recall,
// which cannot happen for an input produced by force_t_observability.
TeamPlayerGame fold_team(const ObservableGame& obs);

// Provenance of an observable game, emitted next to its game document.
nlohmann::json provenance_to_json(const ObservableGame& obs);

}  // namespace teamsolve

#endif  // TEAMSOLVE_OBSERVABLE_H_
