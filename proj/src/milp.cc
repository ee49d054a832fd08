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

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "simplex.h"
#include "teamsolve/lp.h"

namespace teamsolve {
namespace {

struct BranchNode {
  double bound;  // relaxation value, in maximization terms
  int64_t id;
  std::vector<std::pair<int, double>> fixes;
};

struct WorseNode {
  bool operator()(const BranchNode& a, const BranchNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

}  // namespace

MPSolution solve_milp(const LinearProgram& lp, const SolveOptions& options) {
  if (!lp.has_binaries()) return solve_lp(lp, options);
  const double sign = lp.sense == Sense::kMaximize ? 1.0 : -1.0;
  internal::Tableau tab(lp);
  MPSolution sol;
  const SolveStatus root = tab.optimize(options, sol.iterations);
  if (root != SolveStatus::kOptimal) {
    sol.status = root;
    return sol;
  }

  std::vector<int> binaries;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.variables[j].binary) binaries.push_back(j);
  }
  double incumbent = -kInfinity;
  std::vector<double> best;
  auto prune = [&](double bound) {
    return bound <= incumbent + Tolerances::kDualityGap * std::max(1.0, std::abs(incumbent));
  };

  std::priority_queue<BranchNode, std::vector<BranchNode>, WorseNode> open;
  open.push(BranchNode{sign * tab.objective(), 0, {}});
  int64_t next_id = 1;
  std::vector<std::pair<int, double>> applied;
  SolveStatus stop = SolveStatus::kOptimal;

  while (!open.empty()) {
    if (options.deadline.expired()) {
      stop = SolveStatus::kTimeLimit;
      break;
    }
    if (sol.nodes >= options.max_nodes) {
      stop = SolveStatus::kIterationLimit;
      break;
    }
    BranchNode node = open.top();
    open.pop();
    if (prune(node.bound)) continue;
    ++sol.nodes;

    for (const auto& [j, v] : applied) {
      tab.set_bounds(j, lp.variables[j].lower, lp.variables[j].upper);
    }
    for (const auto& [j, v] : node.fixes) tab.set_bounds(j, v, v);
    applied = node.fixes;

    const SolveStatus s = tab.reoptimize(options, sol.iterations);
    if (s == SolveStatus::kInfeasible) continue;
    if (s != SolveStatus::kOptimal) {
      stop = s;
      open.push(std::move(node));
      break;
    }
    const double value = sign * tab.objective();
    if (prune(value)) continue;
    const std::vector<double> x = tab.primal_values();
    int branch = -1;
    double most = Tolerances::kIntegrality;
    for (int j : binaries) {
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > most) {
        most = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      std::vector<double> rounded = x;
      for (int j : binaries) rounded[j] = std::round(rounded[j]);
      const double rv = sign * lp.evaluate_objective(rounded);
      if (rv > incumbent) {
        incumbent = rv;
        best = std::move(rounded);
      }
      continue;
    }
    for (double v : {0.0, 1.0}) {
      BranchNode child{value, next_id++, node.fixes};
      child.fixes.emplace_back(branch, v);
      open.push(std::move(child));
    }
  }

  if (stop == SolveStatus::kOptimal) {
    sol.status = best.empty() ? SolveStatus::kInfeasible : SolveStatus::kOptimal;
    sol.bound = sign * incumbent;
  } else {
    sol.status = stop;
    double bound = incumbent;
    while (!open.empty()) {
      bound = std::max(bound, open.top().bound);
      open.pop();
    }
    sol.bound = sign * bound;
  }
  if (!best.empty()) {
    sol.primal = std::move(best);
    sol.objective = sign * incumbent;
  }
  return sol;
}

}  // namespace teamsolve
