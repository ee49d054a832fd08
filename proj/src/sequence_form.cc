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

#include "teamsolve/sequence_form.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace teamsolve {

double ConstraintSystem::residual(std::span<const double> plan) const {
  double worst = 0.0;
  for (int i = 0; i < num_rows(); ++i) {
    double lhs = 0.0;
    for (const auto& [col, coef] : rows[i]) lhs += coef * plan[col];
    worst = std::max(worst, std::abs(lhs - rhs[i]));
  }
  return worst;
}

ConstraintSystem build_constraints(const SequenceSet& seqs) {
  ConstraintSystem sys;
  sys.num_columns = seqs.size();
  sys.rows.resize(1 + seqs.num_infosets());
  sys.rhs.assign(sys.rows.size(), 0.0);
  sys.rows[0].emplace_back(kEmptySequence, 1.0);
  sys.rhs[0] = 1.0;
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    auto& row = sys.rows[1 + h];
    row.emplace_back(seqs.entry[h], -1.0);
    for (int a = 0; a < seqs.num_actions[h]; ++a) {
      row.emplace_back(seqs.extension(h, a), 1.0);
    }
  }
  return sys;
}

bool RealizationPlan::is_pure(double tol) const {
  return std::all_of(prob.begin(), prob.end(), [tol](double p) {
    return std::abs(p) <= tol || std::abs(p - 1.0) <= tol;
  });
}

bool RealizationPlan::is_valid(const ConstraintSystem& system, double tol) const {
  if (static_cast<int>(prob.size()) != system.num_columns) return false;
  if (std::abs(prob[kEmptySequence] - 1.0) > tol) return false;
  for (double p : prob) {
    if (p < -1e-12) return false;
  }
  return system.residual(prob) <= tol;
}

const TerminalEntry* TerminalUtilityMap::find(
    const std::vector<int>& profile) const {
  auto it = by_profile.find(profile);
  return it == by_profile.end() ? nullptr : &entries[it->second];
}

std::vector<int> SequenceForm::lead(NodeId node) const {
  auto first = lead_.begin() + static_cast<long>(node) * num_players;
  return std::vector<int>(first, first + num_players);
}

SequenceForm build_sequence_form(const GameTree& game) {
  validate_structure(game);
  SequenceForm sf;
  const int players = game.num_players();
  sf.num_players = players;
  sf.sequences.resize(players);
  for (PlayerId p = 0; p < players; ++p) {
    SequenceSet& s = sf.sequences[p];
    s.player = p;
    s.parent = {-1};
    s.infoset = {-1};
    s.action = {-1};
    s.child_infosets = {{}};
    s.entry.assign(game.num_infosets(p), -1);
    s.first_extension.assign(game.num_infosets(p), -1);
    s.num_actions.assign(game.num_infosets(p), 0);
    for (int h = 0; h < game.num_infosets(p); ++h) {
      s.num_actions[h] = static_cast<int>(game.infoset(p, h).actions.size());
    }
  }
  sf.lead_.assign(static_cast<size_t>(game.num_nodes()) * players, 0);

  std::vector<NodeId> stack{game.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& node = game.node(id);
    const size_t base = static_cast<size_t>(id) * players;
    if (node.is_terminal()) {
      TerminalEntry e;
      e.leaf = id;
      e.profile.assign(sf.lead_.begin() + static_cast<long>(base),
                       sf.lead_.begin() + static_cast<long>(base) + players);
      e.utility = node.team_utility;
      sf.terminals.by_profile.emplace(e.profile,
                                      static_cast<int>(sf.terminals.entries.size()));
      sf.terminals.entries.push_back(std::move(e));
      continue;
    }
    SequenceSet& s = sf.sequences[node.player];
    const int h = node.infoset;
    const int current = sf.lead_[base + node.player];
    if (s.entry[h] < 0) {
      s.entry[h] = current;
      s.first_extension[h] = s.size();
      s.child_infosets[current].push_back(h);
      for (int a = 0; a < s.num_actions[h]; ++a) {
        s.parent.push_back(current);
        s.infoset.push_back(h);
        s.action.push_back(a);
        s.child_infosets.emplace_back();
      }
    } else if (s.entry[h] != current) {
      throw GameError(GameErrorKind::kRecall,
                      "infoset " + std::to_string(h) + " of player " +
                          std::to_string(node.player) +
                          " has no unique entry sequence");
    }
    for (int a = static_cast<int>(node.children.size()) - 1; a >= 0; --a) {
      const NodeId c = node.children[a];
      const size_t cbase = static_cast<size_t>(c) * players;
      std::copy_n(sf.lead_.begin() + static_cast<long>(base), players,
                  sf.lead_.begin() + static_cast<long>(cbase));
      sf.lead_[cbase + node.player] = s.extension(h, a);
      stack.push_back(c);
    }
  }
  for (PlayerId p = 0; p < players; ++p) {
    sf.constraints.push_back(build_constraints(sf.sequences[p]));
  }
  return sf;
}

std::vector<int> path(const SequenceForm& sf, NodeId node,
                      std::span<const PlayerId> players) {
  std::vector<int> out;
  out.reserve(players.size());
  for (PlayerId p : players) out.push_back(sf.sequence_at(node, p));
  return out;
}

BehavioralStrategy uniform_behavioral(const SequenceSet& seqs) {
  BehavioralStrategy b(seqs.num_infosets());
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    b[h].assign(seqs.num_actions[h], 1.0 / seqs.num_actions[h]);
  }
  return b;
}

RealizationPlan behavioral_to_realization(const SequenceSet& seqs,
                                          const BehavioralStrategy& strategy) {
  if (static_cast<int>(strategy.size()) != seqs.num_infosets()) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "behavioral strategy has wrong number of infosets");
  }
  RealizationPlan plan;
  plan.player = seqs.player;
  plan.prob.assign(seqs.size(), 0.0);
  plan.prob[kEmptySequence] = 1.0;
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    const auto& dist = strategy[h];
    if (static_cast<int>(dist.size()) != seqs.num_actions[h]) {
      throw GameError(GameErrorKind::kInvalidArgument,
                      "distribution size mismatch at infoset " + std::to_string(h));
    }
    double total = 0.0;
    for (double p : dist) {
      if (p < 0.0) {
        throw GameError(GameErrorKind::kInvalidArgument,
                        "negative probability at infoset " + std::to_string(h));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kPlanTolerance) {
      throw GameError(GameErrorKind::kInvalidArgument,
                      "distribution at infoset " + std::to_string(h) +
                          " is not normalized");
    }
  }
  // Parents precede children in sequence order.
  for (int q = 1; q < seqs.size(); ++q) {
    plan.prob[q] = plan.prob[seqs.parent[q]] * strategy[seqs.infoset[q]][seqs.action[q]];
  }
  return plan;
}

BehavioralStrategy realization_to_behavioral(const SequenceSet& seqs,
                                             std::span<const double> plan) {
  BehavioralStrategy b(seqs.num_infosets());
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    const int k = seqs.num_actions[h];
    b[h].assign(k, 1.0 / k);
    double total = 0.0;
    for (int a = 0; a < k; ++a) total += std::max(0.0, plan[seqs.extension(h, a)]);
    if (total <= 1e-12) continue;
    for (int a = 0; a < k; ++a) {
      b[h][a] = std::max(0.0, plan[seqs.extension(h, a)]) / total;
    }
  }
  return b;
}

double expected_utility(const SequenceForm& sf,
                        std::span<const RealizationPlan> plans) {
  double total = 0.0;
  for (const TerminalEntry& e : sf.terminals.entries) {
    double w = e.utility;
    for (int p = 0; p < sf.num_players && w != 0.0; ++p) {
      w *= plans[p].prob[e.profile[p]];
    }
    total += w;
  }
  return total;
}

std::vector<double> sequence_payoffs(const SequenceForm& sf, PlayerId player,
                                     std::span<const RealizationPlan> plans) {
  std::vector<double> c(sf.sequences[player].size(), 0.0);
  for (const TerminalEntry& e : sf.terminals.entries) {
    double w = e.utility;
    for (int p = 0; p < sf.num_players && w != 0.0; ++p) {
      if (p != player) w *= plans[p].prob[e.profile[p]];
    }
    c[e.profile[player]] += w;
  }
  return c;
}

BestResponse best_response(const SequenceSet& seqs,
                           std::span<const double> sequence_payoff,
                           bool maximize) {
  const int n = seqs.size();
  std::vector<double> value(sequence_payoff.begin(), sequence_payoff.end());
  std::vector<int> choice(seqs.num_infosets(), 0);
  // Children have larger indices than their parents.
  for (int q = n - 1; q >= 0; --q) {
    for (int h : seqs.child_infosets[q]) {
      int best = 0;
      double best_value = value[seqs.extension(h, 0)];
      for (int a = 1; a < seqs.num_actions[h]; ++a) {
        const double v = value[seqs.extension(h, a)];
        if (maximize ? v > best_value : v < best_value) {
          best = a;
          best_value = v;
        }
      }
      choice[h] = best;
      value[q] += best_value;
    }
  }
  BestResponse br;
  br.value = value[kEmptySequence];
  br.plan.player = seqs.player;
  br.plan.prob.assign(n, 0.0);
  br.plan.prob[kEmptySequence] = 1.0;
  for (int q = 1; q < n; ++q) {
    const int h = seqs.infoset[q];
    if (br.plan.prob[seqs.parent[q]] > 0.5 && seqs.action[q] == choice[h]) {
      br.plan.prob[q] = 1.0;
    }
  }
  return br;
}

}  // namespace teamsolve
