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

#ifndef TEAMSOLVE_GAME_H_
#define TEAMSOLVE_GAME_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace teamsolve {

using PlayerId = int;
using NodeId = int;

inline constexpr PlayerId kTerminal = -1;
inline constexpr NodeId kNoNode = -1;

// Failure categories reported by the game model.
enum class GameErrorKind {
  kStructural,      // not a tree: cycle, orphan, dangling child slot
  kSchema,          // malformed document or inconsistent infoset data
  kRecall,          // perfect recall violated
  kInvalidArgument  // bad player id, bad generator parameter, ...
};

class GameError : public std::runtime_error {
 public:
  GameError(GameErrorKind kind, const std::string& message,
            std::string path = {})
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        kind_(kind),
        path_(std::move(path)) {}

  GameErrorKind kind() const { return kind_; }
  // Location inside a game document, e.g. "/root/actions/1/child".
  const std::string& path() const { return path_; }

 private:
  GameErrorKind kind_;
  std::string path_;
};

struct Node {
  PlayerId player = kTerminal;    // kTerminal for leaves
  int infoset = -1;               // infoset id, scoped per player
  std::vector<NodeId> children;   // one per action, in infoset action order
  NodeId parent = kNoNode;
  int action_in = -1;             // action index at the parent leading here
  double team_utility = 0.0;      // leaves only

  bool is_terminal() const { return player == kTerminal; }
  friend bool operator==(const Node&, const Node&) = default;
};

struct Infoset {
  std::vector<std::string> actions;
  std::vector<NodeId> nodes;  // member nodes in insertion order
  friend bool operator==(const Infoset&, const Infoset&) = default;
};

// Team members are every player except the adversary.
struct TeamSpec {
  std::vector<PlayerId> members;  // ascending
  PlayerId adversary = 0;

  bool contains(PlayerId p) const;
};

struct RecallViolation {
  PlayerId player;
  int infoset;
  NodeId witness_a;
  NodeId witness_b;
};

// A zero-sum single-team single-adversary extensive-form game without chance.
//
// Only the team utility is stored; the adversary receives -(n-1) times it.
// Node 0 is the root once the first node is added. Infoset ids are dense per
// player. Construction goes through new_infoset/add_decision/add_leaf; the
// game is treated as immutable once validated.
class GameTree {
 public:
  GameTree() = default;
  GameTree(int num_players, PlayerId adversary);

  // Raw constructor used by deserialization and by tests that need malformed
  // trees. Performs no validation.
  GameTree(int num_players, PlayerId adversary, std::vector<Node> nodes,
           std::vector<std::vector<Infoset>> infosets);

  int new_infoset(PlayerId player, std::vector<std::string> actions);

  // `parent == kNoNode` creates the root.
  NodeId add_decision(NodeId parent, int action, PlayerId player, int infoset);
  NodeId add_leaf(NodeId parent, int action, double team_utility);

  int num_players() const { return num_players_; }
  PlayerId adversary() const { return adversary_; }
  TeamSpec team() const;
  bool is_team(PlayerId p) const { return p != adversary_ && valid_player(p); }
  bool valid_player(PlayerId p) const { return p >= 0 && p < num_players_; }

  NodeId root() const { return nodes_.empty() ? kNoNode : 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }

  int num_infosets(PlayerId p) const {
    return static_cast<int>(infosets_.at(p).size());
  }
  const Infoset& infoset(PlayerId p, int id) const {
    return infosets_.at(p).at(id);
  }
  const std::vector<std::vector<Infoset>>& infosets() const {
    return infosets_;
  }
  const std::vector<std::string>& actions(NodeId id) const;
  int num_actions(NodeId id) const;

  int num_leaves() const;
  int num_decision_nodes() const { return num_nodes() - num_leaves(); }
  // Utility of the adversary at a leaf, -(n-1) * U_T.
  double adversary_utility(NodeId leaf) const;
  double max_abs_utility() const;

  // Reassigns a decision node to another infoset of the same player. Used by
  // transforms that re-partition information.
  void set_infoset_partition(std::vector<std::vector<Infoset>> infosets,
                             const std::vector<int>& node_infoset);

  friend bool operator==(const GameTree&, const GameTree&) = default;

 private:
  int num_players_ = 0;
  PlayerId adversary_ = 0;
  std::vector<Node> nodes_;
  std::vector<std::vector<Infoset>> infosets_;
};

// Throws GameError(kStructural) unless the nodes form a single rooted tree with
// every child slot filled, and GameError(kSchema) when infoset bookkeeping is
// inconsistent (owner mismatch, action count mismatch, bad ids).
void validate_structure(const GameTree& game);

// Empty iff every player has perfect recall. Throws GameError(kStructural) on
// malformed trees.
std::vector<RecallViolation> validate_perfect_recall(const GameTree& game);

// Structure + recall + globally unique action labels (one infoset per label).
// Throws GameError on the first failure.
void validate_game(const GameTree& game, bool require_unique_labels = true);

// True iff every infoset of `player` is a singleton with a single action.
bool is_spy(const GameTree& game, PlayerId player);

}  // namespace teamsolve

#endif  // TEAMSOLVE_GAME_H_
