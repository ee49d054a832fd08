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

#include "teamsolve/tme.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "teamsolve/tmecom.h"
#include "teamsolve/zero_sum.h"

namespace teamsolve {
namespace {

struct Context {
  const GameTree& game;
  SequenceForm sf;
  PlayerId adv;
  std::vector<PlayerId> team;
};

// Rebuilds an exactly feasible plan from an LP output.
RealizationPlan clean_plan(const SequenceSet& seqs, const std::vector<double>& raw) {
  return behavioral_to_realization(seqs, realization_to_behavioral(seqs, raw));
}

double certify(const Context& ctx, const std::vector<RealizationPlan>& plans) {
  return adversary_response(ctx.sf, ctx.adv, plans).value;
}

// Probability that all teammates except `skip` play their part of lead(l).
double others_weight(const Context& ctx, const std::vector<RealizationPlan>& plans,
                     const TerminalEntry& e, PlayerId skip) {
  double w = 1.0;
  for (PlayerId j : ctx.team) {
    if (j != skip) w *= plans[j].prob[e.profile[j]];
    if (w == 0.0) break;
  }
  return w;
}

MaxminSolution teammate_step(const Context& ctx, const std::vector<RealizationPlan>& plans,
                             PlayerId i, const SolveOptions& options) {
  std::vector<PayoffEntry> entries;
  for (const TerminalEntry& e : ctx.sf.terminals.entries) {
    const double w = e.utility * others_weight(ctx, plans, e, i);
    if (w != 0.0) entries.push_back(PayoffEntry{e.profile[i], e.profile[ctx.adv], w});
  }
  return solve_sequence_maxmin(ctx.sf.sequences[i], ctx.sf.sequences[ctx.adv], entries,
                               options);
}

// Maxmin LP of the first-order model of the team payoff around `plans`, with
// every realization probability kept within `radius` of its current value.
bool joint_step(const Context& ctx, const std::vector<RealizationPlan>& plans,
                double radius, const SolveOptions& options,
                std::vector<RealizationPlan>& candidate) {
  const SequenceSet& qa = ctx.sf.sequences[ctx.adv];
  LinearProgram lp;
  lp.sense = Sense::kMaximize;
  std::vector<int> base(ctx.game.num_players(), -1);
  for (PlayerId i : ctx.team) {
    base[i] = lp.num_variables();
    for (double p : plans[i].prob) {
      lp.add_variable(std::max(0.0, p - radius), std::min(1.0, p + radius), 0.0);
    }
  }
  const int v_root = lp.add_variable(-kInfinity, kInfinity, 1.0);
  const int v_first = lp.num_variables();
  for (int h = 0; h < qa.num_infosets(); ++h) lp.add_variable(-kInfinity, kInfinity, 0.0);
  std::vector<std::vector<std::pair<int, double>>> rows(qa.size());
  std::vector<double> rhs(qa.size(), 0.0);
  for (int q = 0; q < qa.size(); ++q) {
    rows[q].emplace_back(q == kEmptySequence ? v_root : v_first + qa.infoset[q], 1.0);
    for (int h : qa.child_infosets[q]) rows[q].emplace_back(v_first + h, -1.0);
  }
  const double k = static_cast<double>(ctx.team.size());
  for (const TerminalEntry& e : ctx.sf.terminals.entries) {
    if (e.utility == 0.0) continue;
    const int q = e.profile[ctx.adv];
    for (PlayerId i : ctx.team) {
      const double w = e.utility * others_weight(ctx, plans, e, i);
      if (w != 0.0) rows[q].emplace_back(base[i] + e.profile[i], -w);
    }
    rhs[q] -= (k - 1.0) * e.utility * others_weight(ctx, plans, e, ctx.adv);
  }
  for (int q = 0; q < qa.size(); ++q) {
    lp.add_constraint(std::move(rows[q]), Relation::kLessEqual, rhs[q]);
  }
  for (PlayerId i : ctx.team) {
    const ConstraintSystem f = build_constraints(ctx.sf.sequences[i]);
    for (int r = 0; r < f.num_rows(); ++r) {
      auto row = f.rows[r];
      for (auto& [col, coef] : row) col += base[i];
      lp.add_constraint(std::move(row), Relation::kEqual, f.rhs[r]);
    }
  }
  const MPSolution sol = solve_lp(lp, options);
  if (!sol.optimal()) return false;
  candidate = plans;
  for (PlayerId i : ctx.team) {
    const int n = ctx.sf.sequences[i].size();
    std::vector<double> raw(sol.primal.begin() + base[i], sol.primal.begin() + base[i] + n);
    candidate[i] = clean_plan(ctx.sf.sequences[i], raw);
  }
  return true;
}

// Scales each distribution to sum to one, putting the rounding on the last
// action so the realization-plan check passes exactly.
void normalize(std::vector<double>& dist) {
  double total = 0.0;
  for (double x : dist) total += x;
  if (!(total > 1e-12)) {
    std::fill(dist.begin(), dist.end(), 1.0 / dist.size());
    return;
  }
  double s = 0.0;
  for (size_t a = 0; a + 1 < dist.size(); ++a) s += (dist[a] /= total);
  dist.back() = std::max(0.0, 1.0 - s);
}

// Marginal of the communication-device strategy on each original infoset:
// the folded plan's mass on every split of the infoset, summed per action.
std::optional<std::vector<RealizationPlan>> communication_start(const Context& ctx,
                                                                const SolveOptions& options) {
  const TMEComSolution com = solve_tmecom(ctx.game, options);
  if (com.status != SolveStatus::kOptimal) return std::nullopt;
  const SequenceSet& folded = com.folded_form.sequences[com.folded.team_player];
  std::vector<BehavioralStrategy> mass(ctx.game.num_players());
  for (PlayerId i : ctx.team) {
    mass[i] = uniform_behavioral(ctx.sf.sequences[i]);
    for (auto& dist : mass[i]) std::fill(dist.begin(), dist.end(), 0.0);
  }
  for (int f = 0; f < folded.num_infosets(); ++f) {
    const auto [player, obs] = com.folded.origin[f];
    const int h = com.observable.provenance[player][obs].original_infoset;
    for (int a = 0; a < folded.num_actions[f]; ++a) {
      mass[player][h][a] += com.team_plan.prob[folded.extension(f, a)];
    }
  }
  std::vector<RealizationPlan> plans(ctx.game.num_players());
  plans[ctx.adv].player = ctx.adv;
  for (PlayerId i : ctx.team) {
    for (auto& dist : mass[i]) normalize(dist);
    plans[i] = behavioral_to_realization(ctx.sf.sequences[i], mass[i]);
  }
  return plans;
}

std::vector<RealizationPlan> random_start(const Context& ctx, std::mt19937_64& rng) {
  std::vector<RealizationPlan> plans(ctx.game.num_players());
  plans[ctx.adv].player = ctx.adv;
  std::gamma_distribution<double> gamma(1.0, 1.0);
  for (PlayerId i : ctx.team) {
    const SequenceSet& seqs = ctx.sf.sequences[i];
    BehavioralStrategy b(seqs.num_infosets());
    for (int h = 0; h < seqs.num_infosets(); ++h) {
      b[h].resize(seqs.num_actions[h]);
      for (double& x : b[h]) x = gamma(rng);
      normalize(b[h]);
    }
    plans[i] = behavioral_to_realization(seqs, b);
  }
  return plans;
}

void finish(const Context& ctx, TMESolution& out) {
  const BestResponse br = adversary_response(ctx.sf, ctx.adv, out.plans);
  out.value = br.value;
  out.adversary_plan = br.plan;
}

}  // namespace

BestResponse adversary_response(const SequenceForm& sf, PlayerId adversary,
                                const std::vector<RealizationPlan>& team_plans) {
  std::vector<double> payoff(sf.sequences[adversary].size(), 0.0);
  for (const TerminalEntry& e : sf.terminals.entries) {
    double w = e.utility;
    for (int p = 0; p < sf.num_players && w != 0.0; ++p) {
      if (p != adversary) w *= team_plans[p].prob[e.profile[p]];
    }
    payoff[e.profile[adversary]] += w;
  }
  return best_response(sf.sequences[adversary], payoff, false);
}

TMESolution solve_tme_local(const GameTree& game, const TMELocalOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx{game, build_sequence_form(game), game.adversary(), game.team().members};
  TMESolution out;
  if (ctx.team.size() == 1) {
    const PlayerId i = ctx.team[0];
    const MaxminSolution mm = solve_sequence_maxmin(
        ctx.sf.sequences[i], ctx.sf.sequences[ctx.adv],
        two_player_payoff(ctx.sf, i, ctx.adv), options.solve);
    out.status = mm.status;
    out.plans.resize(game.num_players());
    out.plans[ctx.adv].player = ctx.adv;
    out.plans[i] = mm.status == SolveStatus::kOptimal
                       ? clean_plan(ctx.sf.sequences[i], mm.max_plan)
                       : behavioral_to_realization(ctx.sf.sequences[i],
                                                   uniform_behavioral(ctx.sf.sequences[i]));
    out.global = mm.status == SolveStatus::kOptimal;
    finish(ctx, out);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }

  double best = -kInfinity;
  const int random_starts = std::max(options.communication_start ? 0 : 1, options.restarts);
  for (int restart = options.communication_start ? -1 : 0; restart < random_starts; ++restart) {
    if (restart > (options.communication_start ? -1 : 0) && options.solve.deadline.expired()) {
      out.status = SolveStatus::kTimeLimit;
      break;
    }
    std::vector<RealizationPlan> plans;
    if (restart < 0) {
      auto com = communication_start(ctx, options.solve);
      if (!com) continue;
      plans = std::move(*com);
    } else {
      std::seed_seq seq{static_cast<uint32_t>(options.seed),
                        static_cast<uint32_t>(options.seed >> 32),
                        static_cast<uint32_t>(restart)};
      std::mt19937_64 rng(seq);
      plans = random_start(ctx, rng);
    }
    double current = certify(ctx, plans);
    double radius = 0.25;
    int stalls = 0;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      if (options.solve.deadline.expired()) {
        out.status = SolveStatus::kTimeLimit;
        break;
      }
      ++out.sweeps;
      const double before = current;
      for (PlayerId i : ctx.team) {
        const MaxminSolution mm = teammate_step(ctx, plans, i, options.solve);
        if (mm.status != SolveStatus::kOptimal) continue;
        std::vector<RealizationPlan> cand = plans;
        cand[i] = clean_plan(ctx.sf.sequences[i], mm.max_plan);
        const double v = certify(ctx, cand);
        if (v > current + 1e-12) {
          current = v;
          plans = std::move(cand);
        }
      }
      while (radius >= 1e-7) {
        std::vector<RealizationPlan> cand;
        if (!joint_step(ctx, plans, radius, options.solve, cand)) break;
        const double v = certify(ctx, cand);
        if (v > current + 1e-12) {
          current = v;
          plans = std::move(cand);
          radius = std::min(0.5, radius * 2.0);
          break;
        }
        radius /= 4.0;
      }
      stalls = current - before < options.tolerance ? stalls + 1 : 0;
      if (stalls >= 2) break;
    }
    ++out.restarts;
    if (current > best) {
      best = current;
      out.plans = plans;
    }
  }
  finish(ctx, out);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

TMESolution solve_tme_exact_small(const GameTree& game, double resolution,
                                  int max_parameters, long max_points) {
  const auto start = std::chrono::steady_clock::now();
  if (!(resolution > 0.0) || resolution > 1.0) {
    throw GameError(GameErrorKind::kInvalidArgument, "resolution must be in (0, 1]");
  }
  const int steps = static_cast<int>(std::lround(1.0 / resolution));
  if (std::abs(steps * resolution - 1.0) > 1e-9) {
    throw GameError(GameErrorKind::kInvalidArgument, "1 / resolution must be an integer");
  }
  Context ctx{game, build_sequence_form(game), game.adversary(), game.team().members};
  // Every composition of `steps` into k parts, per team infoset.
  struct Slot {
    PlayerId player;
    int infoset;
    std::vector<std::vector<double>> grid;
  };
  std::vector<Slot> slots;
  int parameters = 0;
  double points = 1.0;
  for (PlayerId i : ctx.team) {
    const SequenceSet& seqs = ctx.sf.sequences[i];
    for (int h = 0; h < seqs.num_infosets(); ++h) parameters += seqs.num_actions[h] - 1;
  }
  if (parameters > max_parameters) {
    throw GameError(GameErrorKind::kInvalidArgument,
                    "too many team parameters for grid search: " + std::to_string(parameters));
  }
  for (PlayerId i : ctx.team) {
    const SequenceSet& seqs = ctx.sf.sequences[i];
    for (int h = 0; h < seqs.num_infosets(); ++h) {
      const int k = seqs.num_actions[h];
      Slot slot{i, h, {}};
      std::vector<int> parts(k, 0);
      // Enumerate compositions in lexicographic order.
      std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
          parts[pos] = left;
          std::vector<double> dist(k);
          for (int a = 0; a < k; ++a) dist[a] = static_cast<double>(parts[a]) / steps;
          slot.grid.push_back(std::move(dist));
          return;
        }
        for (int x = 0; x <= left; ++x) {
          parts[pos] = x;
          rec(pos + 1, left - x);
        }
      };
      rec(0, steps);
      points *= static_cast<double>(slot.grid.size());
      if (points > static_cast<double>(max_points)) {
        throw GameError(GameErrorKind::kInvalidArgument, "grid too large");
      }
      slots.push_back(std::move(slot));
    }
  }
  std::vector<BehavioralStrategy> behavior(game.num_players());
  for (PlayerId i : ctx.team) {
    behavior[i] = uniform_behavioral(ctx.sf.sequences[i]);
  }
  std::vector<size_t> index(slots.size(), 0);
  TMESolution out;
  double best = -kInfinity;
  std::vector<RealizationPlan> plans(game.num_players());
  plans[ctx.adv].player = ctx.adv;
  while (true) {
    for (size_t s = 0; s < slots.size(); ++s) {
      behavior[slots[s].player][slots[s].infoset] = slots[s].grid[index[s]];
    }
    for (PlayerId i : ctx.team) {
      plans[i] = behavioral_to_realization(ctx.sf.sequences[i], behavior[i]);
    }
    const double v = certify(ctx, plans);
    if (v > best) {
      best = v;
      out.plans = plans;
    }
    size_t s = 0;
    while (s < slots.size() && ++index[s] == slots[s].grid.size()) index[s++] = 0;
    if (s == slots.size()) break;
  }
  out.global = true;
  out.gap = resolution * parameters * game.max_abs_utility();
  out.restarts = 0;
  finish(ctx, out);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace teamsolve
