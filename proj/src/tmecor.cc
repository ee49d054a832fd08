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

#include "teamsolve/tmecor.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace teamsolve {
namespace {

constexpr double kSupportThreshold = 1e-9;

uint64_t fnv1a(const std::vector<NodeId>& key) {
  uint64_t h = 1469598103934665603ULL;
  for (NodeId id : key) {
    for (int b = 0; b < 4; ++b) {
      h ^= static_cast<uint64_t>((static_cast<uint32_t>(id) >> (8 * b)) & 0xff);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

double utility_shift(const GameTree& g) {
  double lo = kInfinity;
  for (const Node& n : g.nodes()) {
    if (n.is_terminal()) lo = std::min(lo, n.team_utility);
  }
  return lo < 1.0 ? 1.0 - lo : 0.0;
}

// Binary program of the team best response against a fixed adversary plan.
struct OracleProgram {
  LinearProgram lp;
  std::vector<std::vector<int>> var;  // [player][sequence] -> column, -1 = const 1

  std::vector<RealizationPlan> plans(const HybridGame& hg,
                                     const std::vector<double>& x) const {
    std::vector<RealizationPlan> out(hg.game().num_players());
    for (PlayerId i : hg.teammates()) {
      const int n = hg.form().sequences[i].size();
      out[i].player = i;
      out[i].prob.assign(n, 0.0);
      out[i].prob[kEmptySequence] = 1.0;
      for (int q = 1; q < n; ++q) out[i].prob[q] = x[var[i][q]];
    }
    return out;
  }
};

void add_team_flows(const HybridGame& hg, OracleProgram& op) {
  op.var.resize(hg.game().num_players());
  for (PlayerId i : hg.teammates()) {
    const SequenceSet& seqs = hg.form().sequences[i];
    op.var[i].assign(seqs.size(), -1);
    for (int q = 1; q < seqs.size(); ++q) op.var[i][q] = op.lp.add_binary(0.0);
    for (int h = 0; h < seqs.num_infosets(); ++h) {
      std::vector<std::pair<int, double>> row;
      for (int a = 0; a < seqs.num_actions[h]; ++a) {
        row.emplace_back(op.var[i][seqs.extension(h, a)], 1.0);
      }
      double rhs = 0.0;
      if (seqs.entry[h] == kEmptySequence) {
        rhs = 1.0;
      } else {
        row.emplace_back(op.var[i][seqs.entry[h]], -1.0);
      }
      op.lp.add_constraint(std::move(row), Relation::kEqual, rhs);
    }
  }
}

// Relaxable program with one variable per leaf, x(l) <= r_i(q_i(l)) for every
// teammate: the form whose LP relaxation the approximate oracle rounds.
OracleProgram build_leaf_program(const HybridGame& hg,
                                 const std::vector<double>& adversary_plan) {
  OracleProgram op;
  op.lp.sense = Sense::kMaximize;
  add_team_flows(hg, op);
  const PlayerId adv = hg.game().adversary();
  for (const TerminalEntry& e : hg.form().terminals.entries) {
    const double w = e.utility * adversary_plan[e.profile[adv]];
    if (std::abs(w) <= 1e-15) continue;
    const int x = op.lp.add_binary(w);
    if (w > 0) {
      for (PlayerId i : hg.teammates()) {
        const int q = e.profile[i];
        if (q != kEmptySequence) {
          op.lp.add_constraint({{x, 1.0}, {op.var[i][q], -1.0}}, Relation::kLessEqual, 0.0);
        }
      }
    } else {
      std::vector<std::pair<int, double>> row{{x, 1.0}};
      for (PlayerId i : hg.teammates()) {
        const int q = e.profile[i];
        if (q != kEmptySequence) row.emplace_back(op.var[i][q], -1.0);
      }
      const double k = static_cast<double>(row.size() - 1);
      op.lp.add_constraint(std::move(row), Relation::kGreaterEqual, -(k - 1.0));
    }
  }
  return op;
}

// Same integer solutions, stronger relaxation: y(node) says the team plan
// reaches the node. y(root) = 1, an adversary node passes y on to every child,
// a team node splits it among its children, and a child taken with action a
// at infoset h of teammate i satisfies y <= r_i(entry(h) a). The leaf values
// y(l) are the x(l) of the leaf program.
OracleProgram build_tree_program(const HybridGame& hg,
                                 const std::vector<double>& adversary_plan) {
  OracleProgram op;
  op.lp.sense = Sense::kMaximize;
  add_team_flows(hg, op);
  const GameTree& g = hg.game();
  const SequenceForm& sf = hg.form();
  const PlayerId adv = g.adversary();
  const int one = op.lp.add_variable(1.0, 1.0, 0.0);
  std::vector<int> y(g.num_nodes(), -1);
  y[g.root()] = one;
  // Preorder: node ids are assigned depth first, parents first.
  for (NodeId id = 0; id < g.num_nodes(); ++id) {
    const Node& n = g.node(id);
    if (n.is_terminal()) {
      const double w = n.team_utility * adversary_plan[sf.sequence_at(id, adv)];
      if (w != 0.0) op.lp.variables[y[id]].objective += w;
      continue;
    }
    if (n.player == adv) {
      for (NodeId c : n.children) y[c] = y[id];
      continue;
    }
    std::vector<std::pair<int, double>> split{{y[id], -1.0}};
    for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
      const NodeId c = n.children[a];
      y[c] = g.node(c).is_terminal() ? op.lp.add_binary(0.0)
                                     : op.lp.add_variable(0.0, 1.0, 0.0);
      split.emplace_back(y[c], 1.0);
      const int q = sf.sequence_at(c, n.player);
      op.lp.add_constraint({{y[c], 1.0}, {op.var[n.player][q], -1.0}},
                           Relation::kLessEqual, 0.0);
    }
    op.lp.add_constraint(std::move(split), Relation::kEqual, 0.0);
  }
  return op;
}

// Coordinate ascent over teammates from `plans`: each teammate in turn plays
// an exact best response to the others. Stops when a full pass gains nothing.
void improve_by_best_responses(const HybridGame& hg, std::vector<RealizationPlan>& plans,
                               const std::vector<double>& adversary_plan, int passes) {
  const PlayerId adv = hg.game().adversary();
  plans[adv] = RealizationPlan{adv, adversary_plan};
  double current = -kInfinity;
  for (int pass = 0; pass < passes; ++pass) {
    for (PlayerId i : hg.teammates()) {
      const auto pay = sequence_payoffs(hg.form(), i, plans);
      plans[i] = best_response(hg.form().sequences[i], pay, true).plan;
    }
    const double v = expected_utility(hg.form(), plans);
    if (v <= current + 1e-12) break;
    current = v;
  }
  plans[adv] = RealizationPlan{adv, {}};
}

std::vector<RealizationPlan> default_plans(const HybridGame& hg) {
  std::vector<RealizationPlan> plans(hg.game().num_players());
  for (PlayerId i : hg.teammates()) {
    const SequenceSet& seqs = hg.form().sequences[i];
    BehavioralStrategy first(seqs.num_infosets());
    for (int h = 0; h < seqs.num_infosets(); ++h) {
      first[h].assign(seqs.num_actions[h], 0.0);
      first[h][0] = 1.0;
    }
    plans[i] = behavioral_to_realization(seqs, first);
  }
  return plans;
}

RealizationPlan sample_plan(const SequenceSet& seqs, const std::vector<double>& relaxed,
                            std::mt19937_64& rng) {
  RealizationPlan plan;
  plan.player = seqs.player;
  plan.prob.assign(seqs.size(), 0.0);
  plan.prob[kEmptySequence] = 1.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int q = 0; q < seqs.size(); ++q) {
    if (plan.prob[q] < 0.5) continue;
    for (int h : seqs.child_infosets[q]) {
      const int k = seqs.num_actions[h];
      double total = 0.0;
      for (int a = 0; a < k; ++a) total += std::max(0.0, relaxed[seqs.extension(h, a)]);
      const double u = unit(rng);
      int chosen = k - 1;
      if (total <= 1e-12) {
        chosen = std::min(k - 1, static_cast<int>(u * k));
      } else {
        double acc = 0.0;
        for (int a = 0; a < k; ++a) {
          acc += std::max(0.0, relaxed[seqs.extension(h, a)]) / total;
          if (u < acc) {
            chosen = a;
            break;
          }
        }
      }
      plan.prob[seqs.extension(h, chosen)] = 1.0;
    }
  }
  return plan;
}

}  // namespace

HybridGame::HybridGame(const GameTree& game)
    : game_(game), form_(build_sequence_form(game)), teammates_(game.team().members) {}

HybridColumn HybridGame::make_column(std::vector<RealizationPlan> plans) const {
  HybridColumn col;
  const PlayerId adv = game_.adversary();
  plans.resize(game_.num_players());
  plans[adv] = RealizationPlan{adv, {}};
  for (const TerminalEntry& e : form_.terminals.entries) {
    bool consistent = true;
    for (PlayerId i : teammates_) {
      if (plans[i].prob[e.profile[i]] < 0.5) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    col.plan.key.push_back(e.leaf);
    col.entries.emplace_back(e.profile[adv], e.utility);
  }
  std::sort(col.plan.key.begin(), col.plan.key.end());
  col.plan.key_hash = fnv1a(col.plan.key);
  col.plan.maximal_sequences.resize(game_.num_players());
  for (PlayerId i : teammates_) {
    const SequenceSet& seqs = form_.sequences[i];
    for (int q = 0; q < seqs.size(); ++q) {
      if (plans[i].prob[q] < 0.5) continue;
      bool maximal = true;
      for (int h : seqs.child_infosets[q]) {
        for (int a = 0; a < seqs.num_actions[h]; ++a) {
          if (plans[i].prob[seqs.extension(h, a)] >= 0.5) maximal = false;
        }
      }
      if (maximal) col.plan.maximal_sequences[i].push_back(q);
    }
  }
  col.plan.plans = std::move(plans);
  return col;
}

double HybridGame::column_value(const HybridColumn& column,
                                const std::vector<double>& adversary_plan) const {
  double v = 0.0;
  for (const auto& [q, u] : column.entries) v += u * adversary_plan[q];
  return v;
}

std::vector<double> HybridGame::uniform_adversary() const {
  return behavioral_to_realization(adversary_sequences(),
                                   uniform_behavioral(adversary_sequences()))
      .prob;
}

HybridMaxmin hybrid_maxmin(const HybridGame& hg, const std::vector<HybridColumn>& columns,
                           const SolveOptions& options) {
  const SequenceSet& qa = hg.adversary_sequences();
  const double shift = utility_shift(hg.game());
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  const int k = static_cast<int>(columns.size());
  for (int j = 0; j < k; ++j) lp.add_variable(0.0, kInfinity, 0.0);
  const int v_root = lp.add_variable(-kInfinity, kInfinity, 1.0);
  const int v_first = lp.num_variables();
  for (int h = 0; h < qa.num_infosets(); ++h) lp.add_variable(-kInfinity, kInfinity, 0.0);
  std::vector<std::vector<std::pair<int, double>>> rows(qa.size());
  for (int q = 0; q < qa.size(); ++q) {
    rows[q].emplace_back(q == kEmptySequence ? v_root : v_first + qa.infoset[q], 1.0);
    for (int h : qa.child_infosets[q]) rows[q].emplace_back(v_first + h, -1.0);
  }
  for (int j = 0; j < k; ++j) {
    for (const auto& [q, u] : columns[j].entries) {
      if (u + shift != 0.0) rows[q].emplace_back(j, -(u + shift));
    }
  }
  for (auto& row : rows) lp.add_constraint(std::move(row), Relation::kLessEqual, 0.0);
  std::vector<std::pair<int, double>> simplex;
  for (int j = 0; j < k; ++j) simplex.emplace_back(j, 1.0);
  lp.add_constraint(std::move(simplex), Relation::kEqual, 1.0);

  HybridMaxmin out;
  out.rows = lp.num_constraints();
  const MPSolution sol = solve_lp(lp, options);
  out.status = sol.status;
  if (!sol.optimal()) return out;
  out.value = sol.objective - shift;
  out.sigma.assign(sol.primal.begin(), sol.primal.begin() + k);
  for (double& s : out.sigma) s = std::max(s, 0.0);
  out.duals.assign(sol.duals.begin(), sol.duals.begin() + qa.size());
  for (double& d : out.duals) d = std::max(d, 0.0);
  return out;
}

HybridMinmax hybrid_minmax(const HybridGame& hg, const std::vector<HybridColumn>& columns,
                           const SolveOptions& options) {
  const SequenceSet& qa = hg.adversary_sequences();
  LinearProgram lp;
  lp.sense = Sense::kMinimize;
  for (int q = 0; q < qa.size(); ++q) lp.add_variable(0.0, kInfinity, 0.0);
  const int v = lp.add_variable(-kInfinity, kInfinity, 1.0);
  for (const HybridColumn& c : columns) {
    std::vector<std::pair<int, double>> row{{v, 1.0}};
    for (const auto& [q, u] : c.entries) {
      if (u != 0.0) row.emplace_back(q, -u);
    }
    lp.add_constraint(std::move(row), Relation::kGreaterEqual, 0.0);
  }
  const ConstraintSystem f = build_constraints(qa);
  for (int i = 0; i < f.num_rows(); ++i) {
    lp.add_constraint(f.rows[i], Relation::kEqual, f.rhs[i]);
  }
  HybridMinmax out;
  const MPSolution sol = solve_lp(lp, options);
  out.status = sol.status;
  if (!sol.optimal()) return out;
  out.value = sol.objective;
  out.adversary_plan.assign(sol.primal.begin(), sol.primal.begin() + qa.size());
  for (double& r : out.adversary_plan) r = std::max(r, 0.0);
  return out;
}

OracleResult br_oracle_exact(const HybridGame& hg, const std::vector<double>& adversary_plan,
                             const SolveOptions& options) {
  const OracleProgram op = build_tree_program(hg, adversary_plan);
  const MPSolution sol = solve_milp(op.lp, options);
  OracleResult out;
  out.status = sol.status;
  std::vector<RealizationPlan> plans;
  if (!sol.primal.empty()) {
    plans = op.plans(hg, sol.primal);
  } else {
    plans = default_plans(hg);
    improve_by_best_responses(hg, plans, adversary_plan, 10);
  }
  out.column = hg.make_column(std::move(plans));
  out.value = hg.column_value(out.column, adversary_plan);
  out.optimal = sol.optimal();
  out.bound = out.optimal ? std::max(out.value, sol.objective) : std::max(out.value, sol.bound);
  if (sol.status == SolveStatus::kInfeasible || sol.status == SolveStatus::kUnbounded) {
    throw std::logic_error("best-response program cannot be infeasible or unbounded");
  }
  return out;
}

OracleResult br_oracle_approx(const HybridGame& hg, const std::vector<double>& adversary_plan,
                              const ApproxOracleOptions& approx,
                              const SolveOptions& options) {
  if (approx.rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  const OracleProgram op = build_leaf_program(hg, adversary_plan);
  const MPSolution relaxed = solve_lp(op.lp, options);
  OracleResult out;
  out.status = relaxed.status;
  std::vector<std::vector<double>> relaxed_plans(hg.game().num_players());
  if (relaxed.optimal()) {
    const auto plans = op.plans(hg, relaxed.primal);
    for (PlayerId i : hg.teammates()) relaxed_plans[i] = plans[i].prob;
  } else {
    for (PlayerId i : hg.teammates()) {
      const SequenceSet& seqs = hg.form().sequences[i];
      relaxed_plans[i] = behavioral_to_realization(seqs, uniform_behavioral(seqs)).prob;
    }
  }
  std::mt19937_64 rng(approx.seed);
  bool have = false;
  for (int round = 0; round < approx.rounds; ++round) {
    std::vector<RealizationPlan> plans(hg.game().num_players());
    for (PlayerId i : hg.teammates()) {
      plans[i] = sample_plan(hg.form().sequences[i], relaxed_plans[i], rng);
    }
    if (approx.polish) improve_by_best_responses(hg, plans, adversary_plan, 1);
    HybridColumn col = hg.make_column(std::move(plans));
    const double v = hg.column_value(col, adversary_plan);
    if (!have || v > out.value) {
      out.value = v;
      out.column = std::move(col);
      have = true;
    }
  }
  out.bound = relaxed.optimal() ? std::max(out.value, relaxed.objective) : kInfinity;
  out.optimal = out.value >= out.bound - 1e-9;
  return out;
}

TMECorSolution solve_tmecor(const GameTree& game, const TMECorOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const HybridGame hg(game);
  TMECorSolution out;
  out.exact_oracle = options.oracle == OracleKind::kExact;
  out.adversary_sequences = hg.adversary_sequences().size();
  std::vector<double> adversary_plan = hg.uniform_adversary();
  std::set<std::vector<NodeId>> known;
  double upper = kInfinity;
  double value = -kInfinity;
  out.status = SolveStatus::kIterationLimit;

  for (int it = 1;; ++it) {
    if (options.solve.deadline.expired()) {
      out.status = SolveStatus::kTimeLimit;
      break;
    }
    if (it > options.max_iterations) {
      out.status = SolveStatus::kIterationLimit;
      break;
    }
    OracleResult br = out.exact_oracle
                          ? br_oracle_exact(hg, adversary_plan, options.solve)
                          : br_oracle_approx(hg, adversary_plan, options.approx,
                                             options.solve);
    upper = std::min(upper, br.bound);
    out.iterations = it;
    TraceRow row{it, value, br.value, br.column.plan.key_hash, false};
    if (known.count(br.column.plan.key)) {
      out.trace.push_back(row);
      out.status = (out.exact_oracle && !br.optimal) ? br.status : SolveStatus::kOptimal;
      break;
    }
    if (out.exact_oracle && !br.optimal && !out.columns.empty()) {
      // Oracle stopped early: report the bound instead of trusting the column.
      out.trace.push_back(row);
      out.status = br.status;
      break;
    }
    known.insert(br.column.plan.key);
    out.columns.push_back(std::move(br.column));
    const HybridMaxmin mm = hybrid_maxmin(hg, out.columns, options.solve);
    if (mm.status != SolveStatus::kOptimal) {
      out.status = mm.status;
      break;
    }
    const HybridMinmax mn = hybrid_minmax(hg, out.columns, options.solve);
    if (mn.status != SolveStatus::kOptimal) {
      out.status = mn.status;
      break;
    }
    value = mm.value;
    out.sigma = mm.sigma;
    adversary_plan = mn.adversary_plan;
    row.restricted_value = value;
    row.new_column = true;
    out.trace.push_back(row);
  }

  // One crossover pass if the optimal solution is not basic enough.
  auto support_of = [](const std::vector<double>& sigma) {
    return static_cast<int>(std::count_if(sigma.begin(), sigma.end(),
                                          [](double s) { return s > kSupportThreshold; }));
  };
  if (support_of(out.sigma) > out.adversary_sequences) {
    std::vector<int> keep;
    std::vector<HybridColumn> sub;
    for (int j = 0; j < static_cast<int>(out.sigma.size()); ++j) {
      if (out.sigma[j] > kSupportThreshold) {
        keep.push_back(j);
        sub.push_back(out.columns[j]);
      }
    }
    const HybridMaxmin mm = hybrid_maxmin(hg, sub, options.solve);
    if (mm.status == SolveStatus::kOptimal) {
      std::fill(out.sigma.begin(), out.sigma.end(), 0.0);
      for (size_t t = 0; t < keep.size(); ++t) out.sigma[keep[t]] = mm.sigma[t];
    }
  }
  out.value = value;
  out.adversary_plan = adversary_plan;
  out.support = support_of(out.sigma);
  out.gap = std::isfinite(upper) ? std::max(0.0, upper - value) : kInfinity;
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void write_trace_csv(const std::vector<TraceRow>& trace, std::ostream& out) {
  out << "iteration,restricted_value,oracle_value,key_hash,new_column\n";
  out.precision(17);
  for (const TraceRow& r : trace) {
    out << r.iteration << "," << r.restricted_value << "," << r.oracle_value << ","
        << std::hex << r.key_hash << std::dec << "," << (r.new_column ? 1 : 0) << "\n";
  }
}

}  // namespace teamsolve
