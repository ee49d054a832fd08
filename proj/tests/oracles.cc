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

#include "oracles.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "teamsolve/lp.h"
#include "teamsolve/observable.h"
#include "teamsolve/sequence_form.h"

namespace teamsolve::oracle {
namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask[i]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

// Solves for a mix over `support` rows of m (rows x cols) making every column
// in `against` yield the same payoff v. Returns false when singular.
bool indifference(const Eigen::MatrixXd& m, const std::vector<int>& support,
                  const std::vector<int>& against, Eigen::VectorXd& mix, double& v) {
  const int k = static_cast<int>(support.size());
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) sys(r, c) = m(support[c], against[r]);
    sys(r, k) = -1.0;
  }
  for (int c = 0; c < k; ++c) sys(k, c) = 1.0;
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible()) return false;
  Eigen::VectorXd sol = lu.solve(rhs);
  mix = sol.head(k);
  v = sol(k);
  return true;
}

}  // namespace

double matrix_game_value(const std::vector<std::vector<double>>& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = a[i][j];
  }
  const Eigen::MatrixXd mt = -m.transpose();
  constexpr double kTol = 1e-9;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    for (const auto& rs : subsets_of_size(rows, k)) {
      for (const auto& cs : subsets_of_size(cols, k)) {
        Eigen::VectorXd x, y;
        double v, w;
        if (!indifference(m, rs, cs, x, v)) continue;
        if (!indifference(mt, cs, rs, y, w)) continue;
        if (x.minCoeff() < -kTol || y.minCoeff() < -kTol) continue;
        Eigen::VectorXd full_x = Eigen::VectorXd::Zero(rows);
        Eigen::VectorXd full_y = Eigen::VectorXd::Zero(cols);
        for (int i = 0; i < k; ++i) full_x(rs[i]) = x(i);
        for (int i = 0; i < k; ++i) full_y(cs[i]) = y(i);
        const Eigen::VectorXd col_payoff = m.transpose() * full_x;
        const Eigen::VectorXd row_payoff = m * full_y;
        if (col_payoff.minCoeff() < v - 1e-7) continue;
        if (row_payoff.maxCoeff() > v + 1e-7) continue;
        return v;
      }
    }
  }
  throw std::runtime_error("no equilibrium found by support enumeration");
}

namespace {

using Key = std::pair<int, int>;  // (infoset, action); (-1, -1) is the root

struct PlanBuilder {
  std::map<Key, std::set<int>> children;
  std::map<Key, std::vector<PurePlan>> memo;
  const GameTree& game;
  PlayerId player;

  void walk(NodeId id, Key last) {
    const Node& n = game.node(id);
    if (n.is_terminal()) return;
    if (n.player == player) children[last].insert(n.infoset);
    for (int a = 0; a < static_cast<int>(n.children.size()); ++a) {
      walk(n.children[a], n.player == player ? Key{n.infoset, a} : last);
    }
  }

  const std::vector<PurePlan>& plans(Key key) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<PurePlan> result{PurePlan{}};
    for (int h : children[key]) {
      std::vector<PurePlan> options;
      for (int a = 0; a < static_cast<int>(game.infoset(player, h).actions.size()); ++a) {
        for (const PurePlan& sub : plans({h, a})) {
          PurePlan p = sub;
          p[h] = a;
          options.push_back(std::move(p));
        }
      }
      std::vector<PurePlan> next;
      for (const PurePlan& base : result) {
        for (const PurePlan& o : options) {
          PurePlan merged = base;
          merged.insert(o.begin(), o.end());
          next.push_back(std::move(merged));
        }
      }
      result = std::move(next);
    }
    return memo[key] = std::move(result);
  }
};

double backward(const GameTree& g, NodeId id) {
  const Node& n = g.node(id);
  if (n.is_terminal()) return n.team_utility;
  const bool team = g.is_team(n.player);
  double best = team ? -kInfinity : kInfinity;
  for (NodeId c : n.children) {
    const double v = backward(g, c);
    best = team ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

// Leaves reached by an adversary plan, as an indicator per leaf.
void reached_leaves(const GameTree& g, NodeId id, const PurePlan& adv,
                    std::vector<NodeId>& out) {
  const Node& n = g.node(id);
  if (n.is_terminal()) {
    out.push_back(id);
    return;
  }
  if (n.player == g.adversary()) {
    reached_leaves(g, n.children[adv.at(n.infoset)], adv, out);
    return;
  }
  for (NodeId c : n.children) reached_leaves(g, c, adv, out);
}

}  // namespace

double backward_induction(const GameTree& game) {
  for (PlayerId p = 0; p < game.num_players(); ++p) {
    for (const Infoset& h : game.infosets()[p]) {
      if (h.nodes.size() != 1) throw std::invalid_argument("not perfect information");
    }
  }
  return backward(game, game.root());
}

std::vector<PurePlan> pure_reduced_plans(const GameTree& game, PlayerId player) {
  PlanBuilder b{{}, {}, game, player};
  b.walk(game.root(), {-1, -1});
  return b.plans({-1, -1});
}

double play(const GameTree& game, const std::vector<PurePlan>& plans) {
  NodeId id = game.root();
  while (!game.node(id).is_terminal()) {
    const Node& n = game.node(id);
    id = n.children[plans[n.player].at(n.infoset)];
  }
  return game.node(id).team_utility;
}

std::optional<double> correlated_value(const GameTree& game, long max_cells) {
  const PlayerId adv = game.adversary();
  std::vector<std::vector<PurePlan>> per_player(game.num_players());
  long joint = 1;
  for (PlayerId p = 0; p < game.num_players(); ++p) {
    per_player[p] = pure_reduced_plans(game, p);
    if (p != adv) joint *= static_cast<long>(per_player[p].size());
    if (joint * static_cast<long>(per_player[adv].size()) > max_cells) return std::nullopt;
  }
  const long rows = static_cast<long>(per_player[adv].size());
  if (joint * rows > max_cells) return std::nullopt;
  // Enumerate joint plans in mixed radix over the teammates.
  std::vector<std::vector<double>> payoff(joint, std::vector<double>(rows));
  std::vector<PurePlan> profile(game.num_players());
  for (long j = 0; j < joint; ++j) {
    long rest = j;
    for (PlayerId p = 0; p < game.num_players(); ++p) {
      if (p == adv) continue;
      const long k = static_cast<long>(per_player[p].size());
      profile[p] = per_player[p][rest % k];
      rest /= k;
    }
    for (long r = 0; r < rows; ++r) {
      profile[adv] = per_player[adv][r];
      payoff[j][r] = play(game, profile);
    }
  }
  // Remove duplicate columns (equivalent joint plans) to keep the LP small.
  std::sort(payoff.begin(), payoff.end());
  payoff.erase(std::unique(payoff.begin(), payoff.end()), payoff.end());
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (size_t j = 0; j < payoff.size(); ++j) lp.add_variable(0.0, kInfinity, 0.0);
  const int v = lp.add_variable(-kInfinity, kInfinity, 1.0);
  for (long r = 0; r < rows; ++r) {
    std::vector<std::pair<int, double>> row;
    for (size_t j = 0; j < payoff.size(); ++j) {
      if (payoff[j][r] != 0.0) row.emplace_back(static_cast<int>(j), payoff[j][r]);
    }
    row.emplace_back(v, -1.0);
    lp.add_constraint(row, Relation::kGreaterEqual, 0.0);
  }
  std::vector<std::pair<int, double>> sum;
  for (size_t j = 0; j < payoff.size(); ++j) sum.emplace_back(static_cast<int>(j), 1.0);
  lp.add_constraint(sum, Relation::kEqual, 1.0);
  const MPSolution sol = solve_lp(lp);
  if (!sol.optimal()) throw std::runtime_error("correlated oracle LP failed");
  return sol.objective;
}

std::optional<double> folded_maxmin_value(const GameTree& game, long max_rows) {
  const TeamPlayerGame folded = fold_team(force_t_observability(game));
  const GameTree& g = folded.game;
  const std::vector<PurePlan> adv_plans = pure_reduced_plans(g, folded.adversary);
  if (static_cast<long>(adv_plans.size()) > max_rows) return std::nullopt;
  const SequenceForm sf = build_sequence_form(g);
  const SequenceSet& team = sf.sequences[folded.team_player];
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  for (int q = 0; q < team.size(); ++q) lp.add_variable(0.0, kInfinity, 0.0);
  const int v = lp.add_variable(-kInfinity, kInfinity, 1.0);
  const ConstraintSystem f = build_constraints(team);
  for (int i = 0; i < f.num_rows(); ++i) {
    lp.add_constraint(f.rows[i], Relation::kEqual, f.rhs[i]);
  }
  for (const PurePlan& plan : adv_plans) {
    std::vector<NodeId> leaves;
    reached_leaves(g, g.root(), plan, leaves);
    std::map<int, double> coeff;
    for (NodeId l : leaves) {
      coeff[sf.sequence_at(l, folded.team_player)] += g.node(l).team_utility;
    }
    std::vector<std::pair<int, double>> row(coeff.begin(), coeff.end());
    row.emplace_back(v, -1.0);
    lp.add_constraint(row, Relation::kGreaterEqual, 0.0);
  }
  const MPSolution sol = solve_lp(lp);
  if (!sol.optimal()) throw std::runtime_error("folded maxmin LP failed");
  return sol.objective;
}

int max_satisfiable_clauses(const CnfFormula& phi) {
  int best = 0;
  for (long mask = 0; mask < (1L << phi.num_variables); ++mask) {
    int count = 0;
    for (const auto& clause : phi.clauses) {
      for (int lit : clause) {
        const bool value = (mask >> (std::abs(lit) - 1)) & 1;
        if (value == (lit > 0)) {
          ++count;
          break;
        }
      }
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace teamsolve::oracle
