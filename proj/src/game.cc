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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>

namespace teamsolve {

bool TeamSpec::contains(PlayerId p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

GameTree::GameTree(int num_players, PlayerId adversary)
    : num_players_(num_players), adversary_(adversary) {
  if (num_players < 2) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "a team game needs at least two players");
  }
  if (adversary < 0 || adversary >= num_players) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "adversary id out of range: " + std::to_string(adversary));
  }
  infosets_.resize(num_players);
}

GameTree::GameTree(int num_players, PlayerId adversary, std::vector<Node> nodes,
                   std::vector<std::vector<Infoset>> infosets)
    : num_players_(num_players),
      adversary_(adversary),
      nodes_(std::move(nodes)),
      infosets_(std::move(infosets)) {
  infosets_.resize(num_players);
}

TeamSpec GameTree::team() const {
  TeamSpec spec;
  spec.adversary = adversary_;
  for (PlayerId p = 0; p < num_players_; ++p) {
    if (p != adversary_) spec.members.push_back(p);
  }
  return spec;
}

int GameTree::new_infoset(PlayerId player, std::vector<std::string> actions) {
  if (!valid_player(player)) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "unknown player id " + std::to_string(player));
  }
  if (actions.empty()) {
    throw GameError(GameErrorKind::kSchema, "infoset without actions");
  }
  infosets_[player].push_back(Infoset{std::move(actions), {}});
  return static_cast<int>(infosets_[player].size()) - 1;
}

namespace {

void attach(std::vector<Node>& nodes, NodeId parent, int action, NodeId child) {
  Node& p = nodes.at(parent);
  if (p.is_terminal()) {
    throw GameError(GameErrorKind::kStructural, "cannot attach below a leaf");
  }
  if (action < 0 || action >= static_cast<int>(p.children.size())) {
    throw GameError(GameErrorKind::kStructural,
                    "action index " + std::to_string(action) + " out of range");
  }
  if (p.children[action] != kNoNode) {
    throw GameError(GameErrorKind::kStructural, "child slot already filled");
  }
  p.children[action] = child;
  nodes[child].parent = parent;
  nodes[child].action_in = action;
}

}  // namespace

NodeId GameTree::add_decision(NodeId parent, int action, PlayerId player,
                              int infoset) {
  if (!valid_player(player)) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "unknown player id " + std::to_string(player));
  }
  if (infoset < 0 || infoset >= num_infosets(player)) {
    throw GameError(GameErrorKind::kSchema,
                    "unknown infoset " + std::to_string(infoset) +
                        " of player " + std::to_string(player));
  }
  if (parent == kNoNode && !nodes_.empty()) {
    throw GameError(GameErrorKind::kStructural, "root already exists");
  }
  const NodeId id = num_nodes();
  Node n;
  n.player = player;
  n.infoset = infoset;
  n.children.assign(infosets_[player][infoset].actions.size(), kNoNode);
  nodes_.push_back(std::move(n));
  if (parent != kNoNode) attach(nodes_, parent, action, id);
  infosets_[player][infoset].nodes.push_back(id);
  return id;
}

NodeId GameTree::add_leaf(NodeId parent, int action, double team_utility) {
  if (!std::isfinite(team_utility)) {
    throw GameError(GameErrorKind::kSchema, "non-finite utility");
  }
  if (parent == kNoNode && !nodes_.empty()) {
    throw GameError(GameErrorKind::kStructural, "root already exists");
  }
  const NodeId id = num_nodes();
  Node n;
  n.team_utility = team_utility;
  nodes_.push_back(std::move(n));
  if (parent != kNoNode) attach(nodes_, parent, action, id);
  return id;
}

const std::vector<std::string>& GameTree::actions(NodeId id) const {
  const Node& n = nodes_.at(id);
  if (n.is_terminal()) {
    static const std::vector<std::string> kNone;
    return kNone;
  }
  return infosets_.at(n.player).at(n.infoset).actions;
}

int GameTree::num_actions(NodeId id) const {
  return static_cast<int>(nodes_.at(id).children.size());
}

int GameTree::num_leaves() const {
  return static_cast<int>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_terminal(); }));
}

double GameTree::adversary_utility(NodeId leaf) const {
  return -static_cast<double>(num_players_ - 1) * nodes_.at(leaf).team_utility;
}

double GameTree::max_abs_utility() const {
  double m = 0.0;
  for (const Node& n : nodes_) {
    if (n.is_terminal()) m = std::max(m, std::abs(n.team_utility));
  }
  return m;
}

void GameTree::set_infoset_partition(std::vector<std::vector<Infoset>> infosets,
                                     const std::vector<int>& node_infoset) {
  infosets.resize(num_players_);
  for (auto& per_player : infosets) {
    for (Infoset& h : per_player) h.nodes.clear();
  }
  for (NodeId id = 0; id < num_nodes(); ++id) {
    Node& n = nodes_[id];
    if (n.is_terminal()) continue;
    n.infoset = node_infoset.at(id);
    infosets.at(n.player).at(n.infoset).nodes.push_back(id);
  }
  infosets_ = std::move(infosets);
}

void validate_structure(const GameTree& game) {
  const int n = game.num_nodes();
  if (n == 0) throw GameError(GameErrorKind::kStructural, "empty game");
  if (game.num_players() < 2 || !game.valid_player(game.adversary())) {
    throw GameError(GameErrorKind::kSchema, "bad player/adversary declaration");
  }
  if (game.node(0).parent != kNoNode) {
    throw GameError(GameErrorKind::kStructural, "root has a parent");
  }
  // Iterative DFS from the root; a node seen twice means a cycle or a shared
  // child, a node never seen is an orphan.
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  int visited = 1;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& node = game.node(id);
    if (node.is_terminal()) {
      if (!node.children.empty()) {
        throw GameError(GameErrorKind::kStructural,
                        "leaf " + std::to_string(id) + " has children");
      }
      continue;
    }
    for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
      const NodeId c = node.children[a];
      if (c < 0 || c >= n) {
        throw GameError(GameErrorKind::kStructural,
                        "node " + std::to_string(id) + " has a dangling child");
      }
      if (seen[c]) {
        throw GameError(GameErrorKind::kStructural,
                        "node " + std::to_string(c) +
                            " reached twice (cycle or shared child)");
      }
      if (game.node(c).parent != id || game.node(c).action_in != a) {
        throw GameError(GameErrorKind::kStructural,
                        "parent link of node " + std::to_string(c) +
                            " is inconsistent");
      }
      seen[c] = 1;
      ++visited;
      stack.push_back(c);
    }
  }
  if (visited != n) {
    throw GameError(GameErrorKind::kStructural,
                    std::to_string(n - visited) + " orphan node(s)");
  }

  // Infoset bookkeeping.
  std::vector<int> membership(n, 0);
  for (PlayerId p = 0; p < game.num_players(); ++p) {
    for (int h = 0; h < game.num_infosets(p); ++h) {
      const Infoset& info = game.infoset(p, h);
      if (info.actions.empty()) {
        throw GameError(GameErrorKind::kSchema, "infoset without actions");
      }
      if (info.nodes.empty()) {
        throw GameError(GameErrorKind::kSchema,
                        "empty infoset " + std::to_string(h) + " of player " +
                            std::to_string(p));
      }
      for (NodeId id : info.nodes) {
        if (id < 0 || id >= n) {
          throw GameError(GameErrorKind::kSchema, "infoset lists unknown node");
        }
        const Node& node = game.node(id);
        if (node.player != p || node.infoset != h) {
          throw GameError(GameErrorKind::kSchema,
                          "node " + std::to_string(id) +
                              " disagrees with its infoset owner");
        }
        if (node.children.size() != info.actions.size()) {
          throw GameError(GameErrorKind::kSchema,
                          "node " + std::to_string(id) +
                              " action count differs from its infoset");
        }
        ++membership[id];
      }
    }
  }
  for (NodeId id = 0; id < n; ++id) {
    const Node& node = game.node(id);
    if (node.is_terminal()) {
      if (!std::isfinite(node.team_utility)) {
        throw GameError(GameErrorKind::kSchema, "non-finite utility");
      }
      continue;
    }
    if (!game.valid_player(node.player)) {
      throw GameError(GameErrorKind::kSchema,
                      "node " + std::to_string(id) + " has unknown owner");
    }
    if (membership[id] != 1) {
      throw GameError(GameErrorKind::kSchema,
                      "node " + std::to_string(id) +
                          " must belong to exactly one infoset");
    }
  }
}

std::vector<RecallViolation> validate_perfect_recall(const GameTree& game) {
  validate_structure(game);
  const int n = game.num_nodes();
  const int players = game.num_players();
  // own[id * players + p] = interned id of player p's own action history at id.
  std::vector<int> own(static_cast<size_t>(n) * players, 0);
  std::map<std::tuple<int, int, int>, int> intern;  // (parent seq, infoset, action)
  std::vector<NodeId> order{0};
  for (size_t k = 0; k < order.size(); ++k) {
    const NodeId id = order[k];
    const Node& node = game.node(id);
    for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
      const NodeId c = node.children[a];
      for (PlayerId p = 0; p < players; ++p) {
        own[static_cast<size_t>(c) * players + p] =
            own[static_cast<size_t>(id) * players + p];
      }
      const int prev = own[static_cast<size_t>(id) * players + node.player];
      auto key = std::make_tuple(prev, node.infoset, a);
      auto [it, inserted] = intern.try_emplace(key, static_cast<int>(intern.size()) + 1);
      own[static_cast<size_t>(c) * players + node.player] = it->second;
      order.push_back(c);
    }
  }
  std::vector<RecallViolation> out;
  for (PlayerId p = 0; p < players; ++p) {
    for (int h = 0; h < game.num_infosets(p); ++h) {
      const auto& members = game.infoset(p, h).nodes;
      const NodeId first = members.front();
      for (NodeId other : members) {
        if (own[static_cast<size_t>(other) * players + p] !=
            own[static_cast<size_t>(first) * players + p]) {
          out.push_back(RecallViolation{p, h, first, other});
          break;
        }
      }
    }
  }
  return out;
}

void validate_game(const GameTree& game, bool require_unique_labels) {
  const auto violations = validate_perfect_recall(game);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw GameError(GameErrorKind::kRecall,
                    "perfect recall violated for player " +
                        std::to_string(v.player) + " at infoset " +
                        std::to_string(v.infoset) + " (nodes " +
                        std::to_string(v.witness_a) + ", " +
                        std::to_string(v.witness_b) + ")");
  }
  if (!require_unique_labels) return;
  std::unordered_map<std::string, std::pair<PlayerId, int>> owner;
  for (PlayerId p = 0; p < game.num_players(); ++p) {
    for (int h = 0; h < game.num_infosets(p); ++h) {
      const auto& labels = game.infoset(p, h).actions;
      for (const std::string& label : labels) {
        auto [it, inserted] = owner.try_emplace(label, p, h);
        if (!inserted) {
          throw GameError(GameErrorKind::kSchema,
                          "action label '" + label +
                              "' used by more than one infoset or twice in one");
        }
      }
    }
  }
}

bool is_spy(const GameTree& game, PlayerId player) {
  if (!game.valid_player(player)) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "unknown player id " + std::to_string(player));
  }
  if (!game.is_team(player)) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "the adversary cannot be a spy");
  }
  for (const Infoset& h : game.infosets()[player]) {
    if (h.nodes.size() != 1 || h.actions.size() != 1) return false;
  }
  return true;
}

}  // namespace teamsolve
