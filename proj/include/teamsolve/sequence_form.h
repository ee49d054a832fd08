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

#ifndef TEAMSOLVE_SEQUENCE_FORM_H_
#define TEAMSOLVE_SEQUENCE_FORM_H_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "teamsolve/game.h"

namespace teamsolve {

inline constexpr int kEmptySequence = 0;
inline constexpr double kPlanTolerance = 1e-9;

// Sequences of one player, interned as dense indices in tree DFS order.
// Index 0 is the empty sequence. The extensions of an infoset are contiguous:
// sequence first_extension[h] + a is "entry[h] followed by action a".
struct SequenceSet {
  PlayerId player = 0;
  std::vector<int> parent;   // parent sequence, -1 for the empty sequence
  std::vector<int> infoset;  // infoset of the last action, -1 for empty
  std::vector<int> action;   // index of the last action, -1 for empty
  std::vector<int> entry;            // per infoset: sequence leading to it
  std::vector<int> first_extension;  // per infoset
  std::vector<int> num_actions;      // per infoset
  std::vector<std::vector<int>> child_infosets;  // per sequence

  int size() const { return static_cast<int>(parent.size()); }
  int num_infosets() const { return static_cast<int>(entry.size()); }
  int extension(int h, int a) const { return first_extension[h] + a; }
};

// Sparse F r = f. Row 0 is the root constraint r(empty) = 1, row 1 + h is
// -r(entry[h]) + sum_a r(entry[h] a) = 0.
struct ConstraintSystem {
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> rhs;
  int num_columns = 0;

  int num_rows() const { return static_cast<int>(rows.size()); }
  // Largest |F r - f|.
  double residual(std::span<const double> plan) const;
};

ConstraintSystem build_constraints(const SequenceSet& seqs);

// Sequence-form strategy of one player.
struct RealizationPlan {
  PlayerId player = 0;
  std::vector<double> prob;

  bool is_pure(double tol = kPlanTolerance) const;
  // r(empty) = 1, F r = f and r >= -1e-12.
  bool is_valid(const ConstraintSystem& system,
                double tol = kPlanTolerance) const;
};

struct TerminalEntry {
  NodeId leaf = kNoNode;
  std::vector<int> profile;  // one sequence index per player
  double utility = 0.0;      // team utility
};

struct TerminalUtilityMap {
  std::vector<TerminalEntry> entries;  // one per leaf, DFS order
  std::map<std::vector<int>, int> by_profile;

  const TerminalEntry* find(const std::vector<int>& profile) const;
};

// Sequence-form representation of a game: per-player sequences and flow
// constraints, the terminal utility map and the sequence profile lead(x) of
// every node.
struct SequenceForm {
  std::vector<SequenceSet> sequences;       // per player
  std::vector<ConstraintSystem> constraints;  // per player
  TerminalUtilityMap terminals;
  int num_players = 0;

  int sequence_at(NodeId node, PlayerId p) const {
    return lead_[static_cast<size_t>(node) * num_players + p];
  }
  std::vector<int> lead(NodeId node) const;

 private:
  friend SequenceForm build_sequence_form(const GameTree& game);
  std::vector<int> lead_;
};

// Requires a structurally valid perfect-recall game; a recall violation is
// reported as GameError(kRecall) because the infoset entry is not unique.
SequenceForm build_sequence_form(const GameTree& game);

// Restriction of lead(node) to `players` (ascending player order).
std::vector<int> path(const SequenceForm& sf, NodeId node,
                      std::span<const PlayerId> players);

// Per-infoset action distributions of a single player.
using BehavioralStrategy = std::vector<std::vector<double>>;

BehavioralStrategy uniform_behavioral(const SequenceSet& seqs);

// r(qa) = r(q) * pi(h, a). Throws GameError(kInvalidArgument) when a
// distribution does not sum to one within 1e-9 or has negative entries.
RealizationPlan behavioral_to_realization(const SequenceSet& seqs,
                                          const BehavioralStrategy& strategy);

// Conditional action probabilities r(qa) / r(q); infosets reached with zero
// probability get the uniform distribution.
BehavioralStrategy realization_to_behavioral(const SequenceSet& seqs,
                                             std::span<const double> plan);

// Expected team utility of a profile of realization plans, one per player.
double expected_utility(const SequenceForm& sf,
                        std::span<const RealizationPlan> plans);

// Payoff attributed to each sequence of `player` when every other player
// follows `plans` (the entry for `player` itself is ignored):
// c(q) = sum over leaves l with lead(l)_player = q of
//        U_T(l) * prod_{j != player} r_j(lead(l)_j).
std::vector<double> sequence_payoffs(const SequenceForm& sf, PlayerId player,
                                     std::span<const RealizationPlan> plans);

struct BestResponse {
  double value = 0.0;
  RealizationPlan plan;  // pure
};

// Pure best response of a single perfect-recall player to a linear payoff
// over its sequences, by backward induction over the sequence tree. Ties go to
// the lowest action index.
BestResponse best_response(const SequenceSet& seqs,
                           std::span<const double> sequence_payoff,
                           bool maximize);

}  // namespace teamsolve

#endif  // TEAMSOLVE_SEQUENCE_FORM_H_
