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

#ifndef TEAMSOLVE_TME_H_
#define TEAMSOLVE_TME_H_

#include <cstdint>
#include <vector>

#include "teamsolve/game.h"
#include "teamsolve/lp.h"
#include "teamsolve/sequence_form.h"

namespace teamsolve {

// Team maxmin equilibrium without a device: independent team strategies.
struct TMESolution {
  SolveStatus status = SolveStatus::kOptimal;  // kTimeLimit if cut short
  // Worst-case team utility of `plans`, certified by an exact adversary best
  // response.
  double value = 0.0;
  std::vector<RealizationPlan> plans;  // per player; the adversary's is empty
  RealizationPlan adversary_plan;      // best response to the team plans
  bool global = false;                 // value proven optimal (up to `gap`)
  double gap = 0.0;                    // additive error bound when global
  int restarts = 0;  // starts actually run
  int sweeps = 0;  // total over restarts
  double seconds = 0.0;
};

struct TMELocalOptions {
  int restarts = 16;  // random starts
  // One extra start from the communication-device strategy, marginalized
  // onto each teammate's original infosets (exact in perfect information).
  bool communication_start = true;
  uint64_t seed = 0;
  int max_sweeps = 200;
  double tolerance = 1e-8;
  SolveOptions solve;
};

// Multistart local search on the no-device program. Each random start draws
// every teammate's behavioral strategy from Dirichlet(1, ..., 1) per infoset.
// From every start, sweeps alternate (a) exact maxmin of one teammate at a
// time with the others fixed and (b) a trust-region step that linearizes the
// product of the teammates' realization probabilities around the current
// point and solves the resulting maxmin LP jointly, until two consecutive
// sweeps gain less than the tolerance. With a single teammate the program is
// a plain maxmin LP and the result is global.
TMESolution solve_tme_local(const GameTree& game, const TMELocalOptions& options = {});

// Grid search over the team's behavioral strategies with step `resolution`
// on every infoset simplex; each grid point is evaluated against an exact
// adversary best response. Refuses (GameError kInvalidArgument) games with
// more than max_parameters free team parameters or more than max_points grid
// points. The reported gap is resolution * parameters * max |U_T|.
TMESolution solve_tme_exact_small(const GameTree& game, double resolution,
                                  int max_parameters = 8, long max_points = 5'000'000);

// Worst case of independent team plans: the adversary's exact best response
// value (by backward induction over its sequences) and plan.
BestResponse adversary_response(const SequenceForm& sf, PlayerId adversary,
                                const std::vector<RealizationPlan>& team_plans);

}  // namespace teamsolve

#endif  // TEAMSOLVE_TME_H_
