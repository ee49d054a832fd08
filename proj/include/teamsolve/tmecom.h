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

#ifndef TEAMSOLVE_TMECOM_H_
#define TEAMSOLVE_TMECOM_H_

#include <vector>

#include "teamsolve/game.h"
#include "teamsolve/lp.h"
#include "teamsolve/observable.h"
#include "teamsolve/sequence_form.h"

namespace teamsolve {

// Team maxmin equilibrium with a communication device, computed on the
// team-observable game with the team folded into one perfect-recall player.
struct TMEComSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double value = 0.0;
  ObservableGame observable;
  TeamPlayerGame folded;
  SequenceForm folded_form;
  RealizationPlan team_plan;       // over the folded team player's sequences
  RealizationPlan adversary_plan;  // over the adversary's sequences
  int64_t iterations = 0;
  int lp_rows = 0;
  int lp_columns = 0;
  double seconds = 0.0;
};

TMEComSolution solve_tmecom(const GameTree& game, const SolveOptions& options = {});

// What the device tells a teammate at one infoset of the observable game: an
// action distribution conditioned on the team history that identifies it.
struct Recommendation {
  PlayerId player = 0;
  int original_infoset = 0;
  int observable_infoset = 0;
  std::vector<TeamAction> team_history;
  std::vector<double> distribution;
  bool reachable = true;  // false: plan probability 0, uniform emitted
};

// One recommendation per team infoset of the observable game, in folded
// infoset order.
std::vector<Recommendation> extract_recommendations(const TMEComSolution& sol);

// Worst-case team utility when every teammate follows the recommendations
// on the observable game, against an exact adversary best response found by
// backward induction.
double recommendation_value(const TMEComSolution& sol,
                            const std::vector<Recommendation>& recs);

}  // namespace teamsolve

#endif  // TEAMSOLVE_TMECOM_H_
