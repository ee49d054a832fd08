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

#ifndef TEAMSOLVE_GAME_IO_H_
#define TEAMSOLVE_GAME_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "teamsolve/game.h"

namespace teamsolve {

struct LoadOptions {
  // Auxiliary games (e.g. the T-observable transform) legitimately reuse
  // action labels across the infosets a split produced.
  bool require_unique_labels = true;
};

// Game documents are JSON:
//   { "players": int, "adversary": int, "root": Node }
//   Node := { "leaf": { "team_utility": number } }
//         | { "player": int, "infoset": int,
//             "actions": [ { "label": string, "child": Node }, ... ] }
// Node ids are assigned in depth-first preorder and infoset ids are renumbered
// densely per player in order of first appearance. Loading validates the game;
// failures throw GameError carrying a JSON-pointer style path.
GameTree load_game(std::string_view text, const LoadOptions& options = {});
GameTree game_from_json(const nlohmann::json& doc,
                        const LoadOptions& options = {});
GameTree load_game_file(const std::string& path,
                        const LoadOptions& options = {});

std::string save_game(const GameTree& game);
nlohmann::json game_to_json(const GameTree& game);
void save_game_file(const GameTree& game, const std::string& path);

}  // namespace teamsolve

#endif  // TEAMSOLVE_GAME_IO_H_
