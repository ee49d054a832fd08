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

#include "teamsolve/game_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace teamsolve {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw GameError(GameErrorKind::kSchema, msg, path);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path, std::string("missing \"") + key + "\"");
  return *it;
}

int int_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer()) {
    schema_error(path + "/" + key, "expected an integer");
  }
  return v.get<int>();
}

class Loader {
 public:
  explicit Loader(GameTree& game) : game_(game) {}

  void load(const json& node, NodeId parent, int action,
            const std::string& path) {
    if (!node.is_object()) schema_error(path, "node must be an object");
    if (node.contains("leaf")) {
      if (node.size() != 1) schema_error(path, "leaf node has extra keys");
      const json& leaf = node["leaf"];
      const json& u = member(leaf, "team_utility", path + "/leaf");
      if (!u.is_number()) {
        schema_error(path + "/leaf/team_utility", "expected a number");
      }
      game_.add_leaf(parent, action, u.get<double>());
      return;
    }
    const int player = int_member(node, "player", path);
    const int file_infoset = int_member(node, "infoset", path);
    if (!game_.valid_player(player)) {
      schema_error(path + "/player", "unknown player " + std::to_string(player));
    }
    const json& acts = member(node, "actions", path);
    if (!acts.is_array() || acts.empty()) {
      schema_error(path + "/actions", "expected a non-empty array");
    }
    std::vector<std::string> labels;
    for (size_t a = 0; a < acts.size(); ++a) {
      const std::string apath = path + "/actions/" + std::to_string(a);
      const json& label = member(acts[a], "label", apath);
      if (!label.is_string()) schema_error(apath + "/label", "expected a string");
      labels.push_back(label.get<std::string>());
      member(acts[a], "child", apath);
    }
    auto key = std::make_pair(player, file_infoset);
    auto it = remap_.find(key);
    int infoset;
    if (it == remap_.end()) {
      infoset = game_.new_infoset(player, labels);
      remap_.emplace(key, infoset);
    } else {
      infoset = it->second;
      if (game_.infoset(player, infoset).actions != labels) {
        schema_error(path + "/actions",
                     "labels differ from an earlier node of infoset " +
                         std::to_string(file_infoset));
      }
    }
    const NodeId id = game_.add_decision(parent, action, player, infoset);
    for (size_t a = 0; a < acts.size(); ++a) {
      load(acts[a]["child"], id, static_cast<int>(a),
           path + "/actions/" + std::to_string(a) + "/child");
    }
  }

 private:
  GameTree& game_;
  std::map<std::pair<int, int>, int> remap_;
};

json node_to_json(const GameTree& game, NodeId id) {
  const Node& n = game.node(id);
  if (n.is_terminal()) {
    return json{{"leaf", json{{"team_utility", n.team_utility}}}};
  }
  json actions = json::array();
  const auto& labels = game.actions(id);
  for (size_t a = 0; a < n.children.size(); ++a) {
    actions.push_back(
        json{{"label", labels[a]}, {"child", node_to_json(game, n.children[a])}});
  }
  return json{{"player", n.player}, {"infoset", n.infoset}, {"actions", actions}};
}

}  // namespace

GameTree game_from_json(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) schema_error("", "document must be an object");
  const int players = int_member(doc, "players", "");
  const int adversary = int_member(doc, "adversary", "");
  if (players < 2) schema_error("/players", "need at least two players");
  if (adversary < 0 || adversary >= players) {
    schema_error("/adversary", "adversary id out of range");
  }
  GameTree game(players, adversary);
  Loader loader(game);
  loader.load(member(doc, "root", ""), kNoNode, -1, "/root");
  validate_game(game, options.require_unique_labels);
  return game;
}

GameTree load_game(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GameError(GameErrorKind::kSchema, std::string("invalid JSON: ") + e.what());
  }
  return game_from_json(doc, options);
}

GameTree load_game_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw GameError(GameErrorKind::kInvalidArgument, "cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_game(buffer.str(), options);
}

json game_to_json(const GameTree& game) {
  return json{{"players", game.num_players()},
              {"adversary", game.adversary()},
              {"root", node_to_json(game, game.root())}};
}

std::string save_game(const GameTree& game) {
  return game_to_json(game).dump(1) + "\n";
}

void save_game_file(const GameTree& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw GameError(GameErrorKind::kInvalidArgument, "cannot write " + path);
  }
  out << save_game(game);
}

}  // namespace teamsolve
