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

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace teamsolve {
namespace {

struct ObservableBuilder {
  const GameTree& game;
  // history -> (player, original infoset) -> new infoset id
  std::map<std::vector<TeamAction>, std::map<std::pair<PlayerId, int>, int>> table;
  std::vector<int> next_id;
  std::vector<int> node_infoset;
  std::vector<std::vector<InfosetProvenance>> provenance;
  std::vector<TeamAction> history;

  void visit(NodeId id) {
    const Node& node = game.node(id);
    if (node.is_terminal()) return;
    const bool is_team = game.is_team(node.player);
    if (is_team) {
      auto& inner = table[history];
      auto key = std::make_pair(node.player, node.infoset);
      auto it = inner.find(key);
      if (it == inner.end()) {
        const int fresh = next_id[node.player]++;
        it = inner.emplace(key, fresh).first;
        provenance[node.player].push_back(
            InfosetProvenance{node.player, node.infoset, history});
      }
      node_infoset[id] = it->second;
    } else {
      node_infoset[id] = node.infoset;
    }
    for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
      if (is_team) history.push_back(TeamAction{node.player, node.infoset, a});
      visit(node.children[a]);
      if (is_team) history.pop_back();
    }
  }
};

}  // namespace

ObservableGame force_t_observability(const GameTree& game) {
  validate_structure(game);
  ObservableBuilder b{game, {}, {}, {}, {}, {}};
  b.next_id.assign(game.num_players(), 0);
  b.node_infoset.assign(game.num_nodes(), -1);
  b.provenance.resize(game.num_players());
  b.visit(game.root());

  std::vector<std::vector<Infoset>> infosets(game.num_players());
  const PlayerId adv = game.adversary();
  infosets[adv] = game.infosets()[adv];
  for (PlayerId p = 0; p < game.num_players(); ++p) {
    if (p == adv) continue;
    infosets[p].resize(b.next_id[p]);
    for (int h = 0; h < b.next_id[p]; ++h) {
      infosets[p][h].actions =
          game.infoset(p, b.provenance[p][h].original_infoset).actions;
    }
  }
  b.provenance[adv].clear();
  for (int h = 0; h < game.num_infosets(adv); ++h) {
    b.provenance[adv].push_back(InfosetProvenance{adv, h, {}});
  }

  ObservableGame out{game, std::move(b.provenance)};
  out.game.set_infoset_partition(std::move(infosets), b.node_infoset);
  return out;
}

TeamPlayerGame fold_team(const ObservableGame& obs) {
  const GameTree& g = obs.game;
  TeamPlayerGame out;
  out.adversary = g.adversary() == 0 ? 0 : 1;
  out.team_player = 1 - out.adversary;

  std::vector<Node> nodes = g.nodes();
  std::vector<std::vector<Infoset>> infosets(2);
  infosets[out.adversary] = g.infosets()[g.adversary()];
  std::map<std::pair<PlayerId, int>, int> folded_id;
  // Preorder walk so team-player infoset ids follow first appearance.
  std::vector<NodeId> stack{g.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    Node& n = nodes[id];
    if (n.is_terminal()) continue;
    if (n.player == g.adversary()) {
      n.player = out.adversary;
    } else {
      auto key = std::make_pair(n.player, n.infoset);
      auto it = folded_id.find(key);
      if (it == folded_id.end()) {
        it = folded_id.emplace(key, static_cast<int>(out.origin.size())).first;
        out.origin.push_back(key);
        infosets[out.team_player].push_back(
            Infoset{g.infoset(n.player, n.infoset).actions, {}});
      }
      n.player = out.team_player;
      n.infoset = it->second;
    }
    for (auto c = n.children.rbegin(); c != n.children.rend(); ++c) {
      stack.push_back(*c);
    }
  }
  for (auto& per_player : infosets) {
    for (Infoset& h : per_player) h.nodes.clear();
  }
  for (NodeId id = 0; id < static_cast<NodeId>(nodes.size()); ++id) {
    const Node& n = nodes[id];
    if (!n.is_terminal()) infosets[n.player][n.infoset].nodes.push_back(id);
  }
  out.game = GameTree(2, out.adversary, std::move(nodes), std::move(infosets));
  const auto violations = validate_perfect_recall(out.game);
  if (!violations.empty()) {
    throw std::logic_error("folded team player lacks perfect recall at infoset " +
                           std::to_string(violations.front().infoset));
  }
  return out;
}

nlohmann::json provenance_to_json(const ObservableGame& obs) {
  nlohmann::json players = nlohmann::json::array();
  for (const auto& per_player : obs.provenance) {
    nlohmann::json list = nlohmann::json::array();
    for (const InfosetProvenance& p : per_player) {
      nlohmann::json hist = nlohmann::json::array();
      for (const TeamAction& t : p.team_history) {
        hist.push_back({t.player, t.infoset, t.action});
      }
      list.push_back({{"original_infoset", p.original_infoset},
                      {"team_history", hist}});
    }
    players.push_back(list);
  }
  return nlohmann::json{{"provenance", players}};
}

}  // namespace teamsolve
