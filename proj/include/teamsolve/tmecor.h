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

#ifndef TEAMSOLVE_TMECOR_H_
#define TEAMSOLVE_TMECOR_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "teamsolve/game.h"
#include "teamsolve/lp.h"
#include "teamsolve/sequence_form.h"

namespace teamsolve {

// Representative of a class of joint pure plans of the team that reach the
// same leaf against every adversary sequence.
struct JointPlan {
  // Pure realization plan per player; the adversary's entry is empty.
  std::vector<RealizationPlan> plans;
  // Per teammate, the sequences played with probability one that are not a
  // prefix of another such sequence.
  std::vector<std::vector<int>> maximal_sequences;
  // Canonical key: the leaves the team plan does not rule out, ascending.
  // For each adversary sequence at most one of them is reachable, so the key
  // is the map from adversary sequences to terminal nodes.
  std::vector<NodeId> key;
  uint64_t key_hash = 0;
};

// Column of the hybrid utility matrix: (adversary sequence, team utility) for
// every adversary sequence that leads to a leaf against the plan.
struct HybridColumn {
  JointPlan plan;
  std::vector<std::pair<int, double>> entries;
};

// Everything the oracles and the restricted LPs need about a game.
class HybridGame {
 public:
  explicit HybridGame(const GameTree& game);

  const GameTree& game() const { return game_; }
  const SequenceForm& form() const { return form_; }
  const SequenceSet& adversary_sequences() const {
    return form_.sequences[game_.adversary()];
  }
  const std::vector<PlayerId>& teammates() const { return teammates_; }

  // Builds the canonical column of a joint pure plan (one plan per player,
  // the adversary's entry ignored).
  HybridColumn make_column(std::vector<RealizationPlan> plans) const;
  // Team utility of a column against an adversary realization plan.
  double column_value(const HybridColumn& column,
                      const std::vector<double>& adversary_plan) const;
  // Uniform behavioral adversary strategy as a realization plan.
  std::vector<double> uniform_adversary() const;

 private:
  GameTree game_;
  SequenceForm form_;
  std::vector<PlayerId> teammates_;
};

struct HybridMaxmin {
  SolveStatus status = SolveStatus::kIterationLimit;
  double value = 0.0;
  std::vector<double> sigma;  // one weight per column
  // Duals of the per-sequence rows: an optimal adversary realization plan.
  std::vector<double> duals;
  int rows = 0;
};

// max over sigma in the simplex of min over adversary plans, with one row per
// adversary sequence plus the simplex row. Utilities are shifted internally so
// the value is positive, which keeps the root value basic and the optimal
// basis within the support bound of one column per adversary sequence.
HybridMaxmin hybrid_maxmin(const HybridGame& hg, const std::vector<HybridColumn>& columns,
                           const SolveOptions& options = {});

struct HybridMinmax {
  SolveStatus status = SolveStatus::kIterationLimit;
  double value = 0.0;
  std::vector<double> adversary_plan;
};

// min over adversary realization plans r of max over columns of
// sum_q U_h(q, column) r(q).
HybridMinmax hybrid_minmax(const HybridGame& hg, const std::vector<HybridColumn>& columns,
                           const SolveOptions& options = {});

struct OracleResult {
  HybridColumn column;
  double value = 0.0;  // team utility of the column against the given plan
  double bound = 0.0;  // proven upper bound on the best response value
  bool optimal = false;
  SolveStatus status = SolveStatus::kOptimal;
};

// Exact best response of the team by branch and bound. Binary sequence
// variables per teammate; a unit of flow enters at the root, is split among
// the children of team nodes (a child may only receive flow if the owner's
// sequence there is played) and copied to every child of adversary nodes.
// Leaf flows are binary and weighted by U_T times the adversary plan.
OracleResult br_oracle_exact(const HybridGame& hg, const std::vector<double>& adversary_plan,
                             const SolveOptions& options = {});

struct ApproxOracleOptions {
  int rounds = 64;
  uint64_t seed = 0;
  // After sampling, let each teammate in turn best-respond to the others'
  // sampled plans. Never lowers the sampled value.
  bool polish = true;
};

// Leaf relaxation (x <= r_i(q_i) for leaves of positive weight, x >= sum_i
// r_i(q_i) - (k - 1) otherwise) followed by top-down randomized rounding of each
// teammate's relaxed plan; best of `rounds` samples, ties to the earliest.
OracleResult br_oracle_approx(const HybridGame& hg, const std::vector<double>& adversary_plan,
                              const ApproxOracleOptions& approx,
                              const SolveOptions& options = {});

enum class OracleKind { kExact, kApprox };

struct TMECorOptions {
  OracleKind oracle = OracleKind::kExact;
  ApproxOracleOptions approx;
  int max_iterations = 100000;
  SolveOptions solve;  // deadline shared by every LP and MILP
};

struct TraceRow {
  int iteration = 0;
  double restricted_value = 0.0;
  double oracle_value = 0.0;
  uint64_t key_hash = 0;
  bool new_column = false;
};

struct TMECorSolution {
  // kOptimal: the oracle returned a known column (exact oracle: value is
  // v_Cor; approximate oracle: a lower bound). Otherwise the loop stopped
  // early and `gap` bounds the distance to v_Cor.
  SolveStatus status = SolveStatus::kIterationLimit;
  bool exact_oracle = true;
  double value = 0.0;
  double gap = 0.0;
  std::vector<HybridColumn> columns;
  std::vector<double> sigma;
  std::vector<double> adversary_plan;
  int iterations = 0;
  int support = 0;
  int adversary_sequences = 0;
  std::vector<TraceRow> trace;
  double seconds = 0.0;
};

TMECorSolution solve_tmecor(const GameTree& game, const TMECorOptions& options = {});

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out);

}  // namespace teamsolve

#endif  // TEAMSOLVE_TMECOR_H_
