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

#ifndef TEAMSOLVE_ANALYSIS_H_
#define TEAMSOLVE_ANALYSIS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "teamsolve/game.h"
#include "teamsolve/tmecor.h"

namespace teamsolve {

struct NormalizedGame {
  GameTree game;
  double offset = 0.0;  // U' = (U - offset) / scale
  double scale = 1.0;
};

// Affine map of the team payoffs onto [0, 1] using the smallest and largest
// leaf payoff. Throws GameError(kInvalidArgument) "degenerate: PoU undefined"
// when every leaf pays the same.
NormalizedGame normalize_payoffs(const GameTree& game);

struct PoUReport {
  double v_com = 0.0;
  double v_cor = 0.0;
  double v_no = 0.0;
  double com_no = 1.0;
  double cor_no = 1.0;
  double com_cor = 1.0;
  // Set when the denominator is zero; the index is then +inf (or 1 when the
  // numerator is zero too).
  bool com_no_infinite = false;
  bool cor_no_infinite = false;
  bool com_cor_infinite = false;
  double offset = 0.0;
  double scale = 1.0;
};

// Ratios of values already expressed on normalized payoffs.
PoUReport compute_pou(double v_com, double v_cor, double v_no);
nlohmann::json pou_to_json(const PoUReport& report);

enum class Equilibrium { kTME, kTMECor, kTMECom };
const char* to_string(Equilibrium eq);
// Accepts "tme", "tmecor", "tmecom" (case-insensitive).
Equilibrium parse_equilibrium(const std::string& text);

struct SolverSettings {
  double time_limit = 300.0;  // seconds per solve; <= 0 disables
  OracleKind oracle = OracleKind::kExact;
  ApproxOracleOptions approx;
  int tme_restarts = 16;
  uint64_t seed = 0;
};

// One solve of one game. status is "optimal", "local" (TME from the local
// search without a certificate), "gap(g)" (stopped with a known bound), or a
// solver status such as "time_limit"/"error".
struct SolutionRecord {
  std::string game_id;
  int n = 0;
  int d = 0;
  double nu = 0.0;
  uint64_t seed = 0;
  Equilibrium eq = Equilibrium::kTME;
  double value = 0.0;
  int support = 0;      // TMECor columns with positive weight
  int64_t iters = 0;    // column generation iterations, TME sweeps, LP pivots
  std::string status;
  double seconds = 0.0;
  bool completed() const;  // the value is usable in comparisons
};

struct SolveOutcome {
  SolutionRecord record;
  nlohmann::json strategy;          // human-readable strategies
  std::vector<TraceRow> trace;      // TMECor only
};

SolveOutcome solve_equilibrium(const GameTree& game, Equilibrium eq,
                               const SolverSettings& settings);

// Values of the three solvers and their inefficiency indices. Payoffs are
// mapped to [0, 1] first if they leave that range or `renormalize` is set.
struct PoURun {
  PoUReport report;
  SolutionRecord com;
  SolutionRecord cor;
  SolutionRecord no;
  // v_No proven: solved globally, or the TME value meets the TMECor value.
  bool tme_certified = false;
};
PoURun run_pou(const GameTree& game, const SolverSettings& settings, bool renormalize);

inline constexpr const char* kRecordHeader =
    "game_id,n,d,nu,seed,eq,value,support,iters,status,seconds";
void write_record_row(const SolutionRecord& r, std::ostream& out);

// Grid of random games; every field of the generator config takes a list.
struct ExperimentConfig {
  std::vector<int> players{3};
  std::vector<int> depths{5};
  std::vector<double> nus{0.5};
  std::vector<int> branching{2};
  std::vector<uint64_t> seeds;  // "seeds": N means 0..N-1
  double early_leaf_prob = 0.0;
  std::vector<Equilibrium> solvers{Equilibrium::kTME, Equilibrium::kTMECor,
                                   Equilibrium::kTMECom};
  SolverSettings settings;
  bool renormalize = false;
  int workers = 1;
};

// Keys: players, depth, nu, branching, seeds (int or list), early_leaf_prob,
// solvers, time_limit, oracle ("exact"|"approx"), approx_rounds, tme_restarts,
// solver_seed, renormalize, workers. Throws std::invalid_argument.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);

struct AggregateRow {
  int n = 0;
  int d = 0;
  double nu = 0.0;
  int instances = 0;
  int incomplete = 0;  // records not optimal/local (time limits, errors)
  // [com_no, cor_no, com_cor] x [mean, q1, median, q3] over finite indices
  double pou[3][4] = {};
  int certified = 0;
  double com_no_certified_mean = 0.0;
  double cor_no_certified_mean = 0.0;
  double seconds_mean[3] = {};  // TME, TMECor, TMECom
};

struct ExperimentResult {
  std::vector<SolutionRecord> records;
  std::vector<AggregateRow> aggregates;
};

// Runs every (config, seed, solver) of the grid in a pool of `workers`
// threads, then writes records.csv, aggregate.csv and the SVG plots to
// out_dir. Records keep grid order regardless of scheduling. An instance with
// v_Com < v_Cor - 1e-6 or a proven v_Cor < v_No - 1e-6 is written to
// out_dir/violation_<game_id>.json and the run throws std::runtime_error.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir);

inline constexpr const char* kAggregateHeader =
    "n,d,nu,instances,incomplete,"
    "com_no_mean,com_no_q1,com_no_median,com_no_q3,"
    "cor_no_mean,cor_no_q1,cor_no_median,cor_no_q3,"
    "com_cor_mean,com_cor_q1,com_cor_median,com_cor_q3,"
    "certified,com_no_certified_mean,cor_no_certified_mean,"
    "tme_seconds_mean,tmecor_seconds_mean,tmecom_seconds_mean";
void write_aggregate_row(const AggregateRow& row, std::ostream& out);

// Quartile by linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

}  // namespace teamsolve

#endif  // TEAMSOLVE_ANALYSIS_H_
