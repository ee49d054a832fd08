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

#include "teamsolve/tmecom.h"

#include <chrono>
#include <map>
#include <utility>

#include "teamsolve/zero_sum.h"

namespace teamsolve {

TMEComSolution solve_tmecom(const GameTree& game, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  TMEComSolution out;
  out.observable = force_t_observability(game);
  out.folded = fold_team(out.observable);
  out.folded_form = build_sequence_form(out.folded.game);
  const PlayerId team = out.folded.team_player;
  const PlayerId adv = out.folded.adversary;
  const MaxminSolution mm = solve_sequence_maxmin(
      out.folded_form.sequences[team], out.folded_form.sequences[adv],
      two_player_payoff(out.folded_form, team, adv), options);
  out.status = mm.status;
  out.value = mm.value;
  out.iterations = mm.iterations;
  out.lp_rows = mm.rows;
  out.lp_columns = mm.columns;
  out.team_plan = RealizationPlan{team, mm.max_plan};
  out.adversary_plan = RealizationPlan{adv, mm.min_plan};
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

std::vector<Recommendation> extract_recommendations(const TMEComSolution& sol) {
  const SequenceSet& seqs = sol.folded_form.sequences[sol.folded.team_player];
  const BehavioralStrategy behavior =
      realization_to_behavioral(seqs, sol.team_plan.prob);
  std::vector<Recommendation> out;
  out.reserve(seqs.num_infosets());
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    const auto& [player, obs_infoset] = sol.folded.origin[h];
    const InfosetProvenance& prov = sol.observable.provenance[player][obs_infoset];
    Recommendation r;
    r.player = player;
    r.original_infoset = prov.original_infoset;
    r.observable_infoset = obs_infoset;
    r.team_history = prov.team_history;
    r.distribution = behavior[h];
    r.reachable = sol.team_plan.prob[seqs.entry[h]] > 1e-12;
    out.push_back(std::move(r));
  }
  return out;
}

double recommendation_value(const TMEComSolution& sol,
                            const std::vector<Recommendation>& recs) {
  const GameTree& g = sol.observable.game;
  std::map<std::pair<PlayerId, int>, const Recommendation*> lookup;
  for (const Recommendation& r : recs) lookup[{r.player, r.observable_infoset}] = &r;
  const SequenceForm sf = build_sequence_form(g);
  const PlayerId adv = g.adversary();
  std::vector<double> adv_payoff(sf.sequences[adv].size(), 0.0);
  // Depth-first playout of the team's recommended behavior.
  std::vector<std::pair<NodeId, double>> stack{{g.root(), 1.0}};
  while (!stack.empty()) {
    const auto [id, reach] = stack.back();
    stack.pop_back();
    const Node& n = g.node(id);
    if (n.is_terminal()) {
      adv_payoff[sf.sequence_at(id, adv)] += reach * n.team_utility;
      continue;
    }
    for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
      double p = 1.0;
      if (n.player != adv) p = lookup.at({n.player, n.infoset})->distribution[a];
      if (p > 0.0) stack.emplace_back(n.children[a], reach * p);
    }
  }
  return best_response(sf.sequences[adv], adv_payoff, false).value;
}

}  // namespace teamsolve
