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

#ifndef TEAMSOLVE_ZERO_SUM_H_
#define TEAMSOLVE_ZERO_SUM_H_

#include <vector>

#include "teamsolve/lp.h"
#include "teamsolve/sequence_form.h"

namespace teamsolve {

// Sparse bilinear payoff between two sequence sets: the maximizer receives
// value * r_max(max_seq) * r_min(min_seq) for every entry.
struct PayoffEntry {
  int max_seq = 0;
  int min_seq = 0;
  double value = 0.0;
};

struct MaxminSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double value = 0.0;
  std::vector<double> max_plan;
  std::vector<double> min_plan;  // read off the duals of the per-sequence rows
  int64_t iterations = 0;
  int rows = 0;
  int columns = 0;
};

// Sequence-form maxmin LP
//   max v(root)  s.t.  F_max r = f_max,  r >= 0,
//   for each minimizer sequence q:
//     [q empty] v(root) + v(infoset of q) - sum_{h entered by q} v(h)
//       <= sum_p A(p, q) r(p),
// with one free v per minimizer infoset plus the root.
MaxminSolution solve_sequence_maxmin(const SequenceSet& max_seqs,
                                     const SequenceSet& min_seqs,
                                     const std::vector<PayoffEntry>& payoff,
                                     const SolveOptions& options = {});

// Team utility entries (team sequence, adversary sequence) of a two-player
// sequence form.
std::vector<PayoffEntry> two_player_payoff(const SequenceForm& sf,
                                           PlayerId max_player,
                                           PlayerId min_player);

}  // namespace teamsolve

#endif  // TEAMSOLVE_ZERO_SUM_H_
