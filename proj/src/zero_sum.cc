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

#include "teamsolve/zero_sum.h"

#include <algorithm>

namespace teamsolve {

MaxminSolution solve_sequence_maxmin(const SequenceSet& max_seqs,
                                     const SequenceSet& min_seqs,
                                     const std::vector<PayoffEntry>& payoff,
                                     const SolveOptions& options) {
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  const int np = max_seqs.size();
  for (int p = 0; p < np; ++p) lp.add_variable(0.0, kInfinity, 0.0);
  const int v_root = lp.add_variable(-kInfinity, kInfinity, 1.0);
  const int v_first = lp.num_variables();
  for (int h = 0; h < min_seqs.num_infosets(); ++h) {
    lp.add_variable(-kInfinity, kInfinity, 0.0);
  }

  std::vector<std::vector<std::pair<int, double>>> rows(min_seqs.size());
  for (int q = 0; q < min_seqs.size(); ++q) {
    if (q == kEmptySequence) {
      rows[q].emplace_back(v_root, 1.0);
    } else {
      rows[q].emplace_back(v_first + min_seqs.infoset[q], 1.0);
    }
    for (int h : min_seqs.child_infosets[q]) rows[q].emplace_back(v_first + h, -1.0);
  }
  for (const PayoffEntry& e : payoff) {
    if (e.value != 0.0) rows[e.min_seq].emplace_back(e.max_seq, -e.value);
  }
  for (auto& row : rows) lp.add_constraint(std::move(row), Relation::kLessEqual, 0.0);
  const ConstraintSystem fmax = build_constraints(max_seqs);
  for (int i = 0; i < fmax.num_rows(); ++i) {
    lp.add_constraint(fmax.rows[i], Relation::kEqual, fmax.rhs[i]);
  }

  MaxminSolution out;
  out.rows = lp.num_constraints();
  out.columns = lp.num_variables();
  const MPSolution sol = solve_lp(lp, options);
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (!sol.optimal()) return out;
  out.value = sol.objective;
  out.max_plan.assign(sol.primal.begin(), sol.primal.begin() + np);
  out.min_plan.assign(sol.duals.begin(), sol.duals.begin() + min_seqs.size());
  for (double& x : out.max_plan) x = std::max(x, 0.0);
  for (double& x : out.min_plan) x = std::max(x, 0.0);
  return out;
}

std::vector<PayoffEntry> two_player_payoff(const SequenceForm& sf,
                                           PlayerId max_player,
                                           PlayerId min_player) {
  std::vector<PayoffEntry> out;
  out.reserve(sf.terminals.entries.size());
  for (const TerminalEntry& t : sf.terminals.entries) {
    out.push_back(PayoffEntry{t.profile[max_player], t.profile[min_player], t.utility});
  }
  return out;
}

}  // namespace teamsolve
