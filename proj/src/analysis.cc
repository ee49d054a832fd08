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

#include "teamsolve/analysis.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>

#include "teamsolve/tme.h"
#include "teamsolve/tmecom.h"

namespace teamsolve {
namespace {

using nlohmann::json;

double ratio(double num, double den, bool& infinite) {
  if (den <= 1e-12) {
    infinite = true;
    return kInfinity;
  }
  infinite = false;
  return num / den;
}

std::vector<std::string> sequence_labels(const GameTree& game, const SequenceSet& seqs, int q) {
  std::vector<std::string> labels;
  for (; q > kEmptySequence; q = seqs.parent[q]) {
    labels.push_back(game.infoset(seqs.player, seqs.infoset[q]).actions[seqs.action[q]]);
  }
  std::reverse(labels.begin(), labels.end());
  return labels;
}

json plan_to_json(const GameTree& game, const SequenceSet& seqs, std::span<const double> plan) {
  json out = json::array();
  for (int q = 1; q < seqs.size(); ++q) {
    if (plan[q] > 1e-12) {
      out.push_back({{"sequence", sequence_labels(game, seqs, q)}, {"probability", plan[q]}});
    }
  }
  return out;
}

json behavioral_to_json(const GameTree& game, PlayerId p, const BehavioralStrategy& b) {
  json out = json::array();
  for (int h = 0; h < static_cast<int>(b.size()); ++h) {
    out.push_back({{"infoset", h},
                   {"actions", game.infoset(p, h).actions},
                   {"distribution", b[h]}});
  }
  return out;
}

std::string gap_status(double gap) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "gap(%.6g)", gap);
  return buf;
}

SolveOptions make_options(const SolverSettings& settings) {
  SolveOptions opts;
  if (settings.time_limit > 0) opts.deadline = Deadline::after(settings.time_limit);
  return opts;
}

SolveOutcome solve_tmecom_record(const GameTree& game, const SolverSettings& settings) {
  const TMEComSolution sol = solve_tmecom(game, make_options(settings));
  SolveOutcome out;
  out.record.value = sol.value;
  out.record.iters = sol.iterations;
  out.record.seconds = sol.seconds;
  out.record.status = sol.status == SolveStatus::kOptimal ? "optimal" : to_string(sol.status);
  if (sol.status != SolveStatus::kOptimal) return out;
  json recs = json::array();
  for (const Recommendation& r : extract_recommendations(sol)) {
    json history = json::array();
    for (const TeamAction& a : r.team_history) {
      history.push_back(game.infoset(a.player, a.infoset).actions[a.action]);
    }
    recs.push_back({{"player", r.player},
                    {"infoset", r.original_infoset},
                    {"team_history", history},
                    {"actions", game.infoset(r.player, r.original_infoset).actions},
                    {"distribution", r.distribution},
                    {"reachable", r.reachable}});
  }
  out.strategy = {{"recommendations", recs},
                  {"adversary", plan_to_json(sol.folded.game, sol.folded_form.sequences[sol.folded.adversary],
                                             sol.adversary_plan.prob)}};
  return out;
}

SolveOutcome solve_tmecor_record(const GameTree& game, const SolverSettings& settings) {
  TMECorOptions opts;
  opts.oracle = settings.oracle;
  opts.approx = settings.approx;
  opts.approx.seed = settings.seed;
  opts.solve = make_options(settings);
  const TMECorSolution sol = solve_tmecor(game, opts);
  SolveOutcome out;
  out.record.value = sol.value;
  out.record.support = sol.support;
  out.record.iters = sol.iterations;
  out.record.seconds = sol.seconds;
  if (sol.status == SolveStatus::kOptimal && sol.exact_oracle) {
    out.record.status = "optimal";
  } else if (std::isfinite(sol.gap) && !sol.columns.empty()) {
    out.record.status = gap_status(std::max(0.0, sol.gap));
  } else {
    out.record.status = to_string(sol.status);
  }
  out.trace = sol.trace;
  const SequenceForm sf = build_sequence_form(game);
  json columns = json::array();
  for (size_t c = 0; c < sol.columns.size(); ++c) {
    if (sol.sigma[c] <= 1e-9) continue;
    json plans = json::object();
    const JointPlan& jp = sol.columns[c].plan;
    for (PlayerId p : game.team().members) {
      json seqs = json::array();
      for (int q : jp.maximal_sequences[p]) seqs.push_back(sequence_labels(game, sf.sequences[p], q));
      plans[std::to_string(p)] = seqs;
    }
    columns.push_back({{"weight", sol.sigma[c]}, {"plans", plans}});
  }
  out.strategy = {{"correlation", columns},
                  {"adversary", sol.adversary_plan.empty()
                                    ? json::array()
                                    : plan_to_json(game, sf.sequences[game.adversary()],
                                                   sol.adversary_plan)}};
  return out;
}

SolveOutcome solve_tme_record(const GameTree& game, const SolverSettings& settings) {
  TMELocalOptions opts;
  opts.restarts = settings.tme_restarts;
  opts.seed = settings.seed;
  opts.solve = make_options(settings);
  const TMESolution sol = solve_tme_local(game, opts);
  SolveOutcome out;
  out.record.value = sol.value;
  out.record.iters = sol.sweeps;
  out.record.seconds = sol.seconds;
  if (sol.status != SolveStatus::kOptimal) {
    out.record.status = to_string(sol.status);
  } else {
    out.record.status = sol.global ? "optimal" : "local";
  }
  const SequenceForm sf = build_sequence_form(game);
  json team = json::object();
  for (PlayerId p : game.team().members) {
    team[std::to_string(p)] =
        behavioral_to_json(game, p, realization_to_behavioral(sf.sequences[p], sol.plans[p].prob));
  }
  out.strategy = {{"team", team},
                  {"adversary", plan_to_json(game, sf.sequences[game.adversary()],
                                             sol.adversary_plan.prob)}};
  return out;
}

}  // namespace

NormalizedGame normalize_payoffs(const GameTree& game) {
  double lo = kInfinity, hi = -kInfinity;
  for (const Node& n : game.nodes()) {
    if (!n.is_terminal()) continue;
    lo = std::min(lo, n.team_utility);
    hi = std::max(hi, n.team_utility);
  }
  if (!(hi > lo)) {
    throw GameError(GameErrorKind::kInvalidArgument, "degenerate: PoU undefined");
  }
  std::vector<Node> nodes = game.nodes();
  for (Node& n : nodes) {
    if (n.is_terminal()) n.team_utility = (n.team_utility - lo) / (hi - lo);
  }
  return NormalizedGame{GameTree(game.num_players(), game.adversary(), std::move(nodes),
                                 game.infosets()),
                        lo, hi - lo};
}

PoUReport compute_pou(double v_com, double v_cor, double v_no) {
  PoUReport r;
  r.v_com = v_com;
  r.v_cor = v_cor;
  r.v_no = v_no;
  r.com_no = ratio(v_com, v_no, r.com_no_infinite);
  r.cor_no = ratio(v_cor, v_no, r.cor_no_infinite);
  r.com_cor = ratio(v_com, v_cor, r.com_cor_infinite);
  return r;
}

json pou_to_json(const PoUReport& r) {
  auto index = [](double v, bool inf) { return inf ? json("inf") : json(v); };
  return {{"v_com", r.v_com},
          {"v_cor", r.v_cor},
          {"v_no", r.v_no},
          {"pou_com_no", index(r.com_no, r.com_no_infinite)},
          {"pou_cor_no", index(r.cor_no, r.cor_no_infinite)},
          {"pou_com_cor", index(r.com_cor, r.com_cor_infinite)},
          {"normalization", {{"offset", r.offset}, {"scale", r.scale}}}};
}

const char* to_string(Equilibrium eq) {
  switch (eq) {
    case Equilibrium::kTME:
      return "tme";
    case Equilibrium::kTMECor:
      return "tmecor";
    case Equilibrium::kTMECom:
      return "tmecom";
  }
  return "unknown";
}

Equilibrium parse_equilibrium(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "tme") return Equilibrium::kTME;
  if (t == "tmecor") return Equilibrium::kTMECor;
  if (t == "tmecom") return Equilibrium::kTMECom;
  throw std::invalid_argument("unknown equilibrium '" + text + "'");
}

bool SolutionRecord::completed() const { return status == "optimal" || status == "local"; }

SolveOutcome solve_equilibrium(const GameTree& game, Equilibrium eq,
                               const SolverSettings& settings) {
  SolveOutcome out;
  try {
    switch (eq) {
      case Equilibrium::kTME:
        out = solve_tme_record(game, settings);
        break;
      case Equilibrium::kTMECor:
        out = solve_tmecor_record(game, settings);
        break;
      case Equilibrium::kTMECom:
        out = solve_tmecom_record(game, settings);
        break;
    }
  } catch (const std::exception& e) {
    out = SolveOutcome{};
    out.record.status = "error";
    out.strategy = {{"error", e.what()}};
  }
  out.record.eq = eq;
  out.record.n = game.num_players();
  return out;
}

PoURun run_pou(const GameTree& game, const SolverSettings& settings, bool renormalize) {
  double lo = kInfinity, hi = -kInfinity;
  for (const Node& n : game.nodes()) {
    if (!n.is_terminal()) continue;
    lo = std::min(lo, n.team_utility);
    hi = std::max(hi, n.team_utility);
  }
  double offset = 0.0, scale = 1.0;
  if (renormalize || lo < 0.0 || hi > 1.0) {
    const NormalizedGame ng = normalize_payoffs(game);
    offset = ng.offset;
    scale = ng.scale;
  }
  PoURun run;
  run.com = solve_equilibrium(game, Equilibrium::kTMECom, settings).record;
  run.cor = solve_equilibrium(game, Equilibrium::kTMECor, settings).record;
  run.no = solve_equilibrium(game, Equilibrium::kTME, settings).record;
  auto norm = [&](double v) { return (v - offset) / scale; };
  run.report = compute_pou(norm(run.com.value), norm(run.cor.value), norm(run.no.value));
  run.report.offset = offset;
  run.report.scale = scale;
  run.tme_certified = run.no.status == "optimal" ||
                      (run.cor.status == "optimal" && run.no.completed() &&
                       run.cor.value - run.no.value <= 1e-6);
  return run;
}

void write_record_row(const SolutionRecord& r, std::ostream& out) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%d,%d,%.6g,%llu,%s,%.12g,%d,%lld,%s,%.3f\n",
                r.game_id.c_str(), r.n, r.d, r.nu, static_cast<unsigned long long>(r.seed),
                to_string(r.eq), r.value, r.support, static_cast<long long>(r.iters),
                r.status.c_str(), r.seconds);
  out << buf;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t i = static_cast<size_t>(std::floor(pos));
  if (i + 1 >= values.size()) return values.back();
  return values[i] + (pos - i) * (values[i + 1] - values[i]);
}

}  // namespace teamsolve
