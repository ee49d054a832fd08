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

// Acceptance suite: one PASS/FAIL line per criterion, exit status = number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "teamsolve/analysis.h"
#include "teamsolve/game_io.h"
#include "teamsolve/generators.h"
#include "teamsolve/tme.h"
#include "teamsolve/tmecom.h"
#include "teamsolve/tmecor.h"

namespace teamsolve {
namespace {

namespace fs = std::filesystem;

constexpr double kExactTol = 1e-6;
constexpr double kHeuristicTol = 1e-4;
// A ratio with a heuristic denominator inherits its error: |1/v - 1/v*| is
// about 1e-4 / v*^2, so 0.125 gives at most 6.4e-3.
constexpr double kHeuristicRatioTol = 1e-2;
constexpr double kPerfectInfoTol = 1e-5;
constexpr double kOrderingTol = 1e-6;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

GameTree random_game(int n, int d, double nu, uint64_t seed) {
  RandomGameConfig cfg;
  cfg.players = n;
  cfg.depth = d;
  cfg.nu = nu;
  cfg.seed = seed;
  return generate_random(cfg);
}

TMELocalOptions tme_options(int restarts) {
  TMELocalOptions o;
  o.restarts = restarts;
  return o;
}

bool trace_monotone(const TMECorSolution& sol) {
  for (size_t i = 1; i < sol.trace.size(); ++i) {
    if (sol.trace[i].restricted_value < sol.trace[i - 1].restricted_value - 1e-9) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

void criterion1() {
  bool ok = true;
  std::string detail;
  auto t0 = std::chrono::steady_clock::now();
  {
    const GameTree g = build_example1(3, 2);
    const double com = solve_tmecom(g).value;
    const double cor = solve_tmecor(g).value;
    const double no = solve_tme_local(g, tme_options(10)).value;
    const PoUReport p = compute_pou(com, cor, no);
    const double cor3 = solve_tmecor(build_example1(3, 3)).value;
    const double com3 = solve_tmecom(build_example1(3, 3)).value;
    const double pou3 = compute_pou(com3, cor3, cor3).com_cor;
    ok &= std::abs(com - 1.0) <= kExactTol && std::abs(cor - 0.5) <= kExactTol &&
          std::abs(no - 0.5) <= kHeuristicTol && std::abs(p.com_no - 2.0) <= kHeuristicRatioTol &&
          std::abs(p.com_cor - 2.0) <= kExactTol && std::abs(pou3 - 3.0) <= kExactTol;
    const double t = seconds_since(t0);
    ok &= t < 10.0;
    detail += "spy family: vCom=" + fmt("%.9f", com) + " vCor=" + fmt("%.9f", cor) +
              " vNo=" + fmt("%.7f", no) + " PoU_Com/No=" + fmt("%.5f", p.com_no) +
              " PoU_Com/Cor=" + fmt("%.6f", p.com_cor) + " (m=3: " + fmt("%.6f", pou3) +
              ") in " + fmt("%.2fs", t) + "; ";
  }
  t0 = std::chrono::steady_clock::now();
  {
    const GameTree g3 = build_example2(3, 2);
    const double no3 = solve_tme_local(g3, tme_options(10)).value;
    const double cor3 = solve_tmecor(g3).value;
    const GameTree g4 = build_example2(4, 2);
    const double no4 = solve_tme_local(g4, tme_options(10)).value;
    const double cor4 = solve_tmecor(g4).value;
    const double r3 = compute_pou(cor3, cor3, no3).cor_no;
    const double r4 = compute_pou(cor4, cor4, no4).cor_no;
    ok &= std::abs(no3 - 0.25) <= kHeuristicTol && std::abs(cor3 - 0.5) <= kExactTol &&
          std::abs(r3 - 2.0) <= kHeuristicRatioTol && std::abs(r4 - 4.0) <= kHeuristicRatioTol &&
          std::abs(no4 - 0.125) <= kHeuristicTol && std::abs(cor4 - 0.5) <= kExactTol;
    const double t = seconds_since(t0);
    ok &= t < 60.0;
    detail += "guessing family: vNo=" + fmt("%.7f", no3) + " vCor=" + fmt("%.9f", cor3) +
              " PoU_Cor/No=" + fmt("%.5f", r3) + " (n=4: " + fmt("%.5f", r4) + ") in " +
              fmt("%.2fs", t);
  }
  report(1, ok, detail);
}

void criterion2() {
  int bad = 0;
  double worst = 0.0;
  SolverSettings settings;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const GameTree g = random_game(3, 6, 0.0, seed);
    const double bi = oracle::backward_induction(g);
    const PoURun run = run_pou(g, settings, false);
    const double dev = std::max({std::abs(run.com.value - bi), std::abs(run.cor.value - bi),
                                 std::abs(run.no.value - bi), std::abs(run.report.com_no - 1.0),
                                 std::abs(run.report.cor_no - 1.0),
                                 std::abs(run.report.com_cor - 1.0)});
    worst = std::max(worst, dev);
    bad += dev > kPerfectInfoTol;
  }
  report(2, bad == 0,
         "20 perfect-information games (n=3, d=6): " + std::to_string(bad) +
             " mismatches, max deviation " + fmt("%.2e", worst));
}

struct SuiteGame {
  std::string id;
  GameTree game;
  double correlated = 0.0;  // brute force
  double folded = 0.0;      // brute force
};

// n=3, d in {4, 5, 6}, nu in {0.25, 0.5}; seeds in increasing order, keeping
// the games whose brute-force enumeration fits in memory.
std::vector<SuiteGame> oracle_suite() {
  struct Slot {
    int d;
    double nu;
    int count;
  };
  const Slot slots[] = {{4, 0.25, 3}, {4, 0.5, 3}, {5, 0.25, 4},
                        {5, 0.5, 4},  {6, 0.25, 2}, {6, 0.5, 4}};
  std::vector<SuiteGame> out;
  for (const Slot& s : slots) {
    int taken = 0;
    for (uint64_t seed = 0; taken < s.count && seed < 200; ++seed) {
      GameTree g = random_game(3, s.d, s.nu, seed);
      const auto cor = oracle::correlated_value(g, 30'000'000);
      if (!cor) continue;
      const auto fold = oracle::folded_maxmin_value(g);
      if (!fold) continue;
      char id[64];
      std::snprintf(id, sizeof id, "d%d_nu%g_s%llu", s.d, s.nu, static_cast<unsigned long long>(seed));
      out.push_back(SuiteGame{id, std::move(g), *cor, *fold});
      ++taken;
    }
  }
  return out;
}

struct SuiteResult {
  std::vector<TMECorSolution> cor;
  std::vector<double> com;
};

SuiteResult criterion3(const std::vector<SuiteGame>& suite, double oracle_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult res;
  int bad = 0;
  double worst = 0.0;
  for (const SuiteGame& s : suite) {
    res.cor.push_back(solve_tmecor(s.game));
    res.com.push_back(solve_tmecom(s.game).value);
    const double dc = std::abs(res.cor.back().value - s.correlated);
    const double df = std::abs(res.com.back() - s.folded);
    worst = std::max({worst, dc, df});
    if (dc > kExactTol || df > kExactTol || res.cor.back().status != SolveStatus::kOptimal) {
      ++bad;
      std::printf("    mismatch on %s: cor %.9f vs %.9f, com %.9f vs %.9f\n", s.id.c_str(),
                  res.cor.back().value, s.correlated, res.com.back(), s.folded);
    }
  }
  const double t = seconds_since(t0) + oracle_seconds;
  report(3, bad == 0 && suite.size() == 20 && t < 300.0,
         std::to_string(suite.size()) + " games (n=3, d<=6): " + std::to_string(bad) +
             " mismatches, max deviation " + fmt("%.2e", worst) + ", total " + fmt("%.1fs", t));
  return res;
}

void criterion4(std::vector<TMECorSolution>& extra) {
  const double nus[] = {0.25, 0.5, 0.75};
  int violations = 0, worst_support = 0, worst_qa = 0;
  for (int i = 0; i < 100; ++i) {
    const GameTree g = random_game(3 + i % 2, 4 + (i / 2) % 4, nus[i % 3], 1000 + i);
    TMECorSolution sol = solve_tmecor(g);
    if (sol.support > sol.adversary_sequences) ++violations;
    if (sol.support * std::max(worst_qa, 1) >= worst_support * std::max(sol.adversary_sequences, 1)) {
      worst_support = sol.support;
      worst_qa = sol.adversary_sequences;
    }
    extra.push_back(std::move(sol));
  }
  report(4, violations == 0,
         "100 instances (n in {3,4}, d 4..7): " + std::to_string(violations) +
             " support violations; tightest support/|Q_A| = " + std::to_string(worst_support) + "/" +
             std::to_string(worst_qa));
}

void criterion5(const std::vector<SuiteGame>& suite, const SuiteResult& res) {
  int bad = 0, checked = 0;
  auto check = [&](const GameTree& g, double com, double cor, const std::string& id) {
    const double no = solve_tme_local(g, tme_options(8)).value;
    ++checked;
    if (com < cor - kOrderingTol || cor < no - kOrderingTol) {
      ++bad;
      std::printf("    ordering violated on %s: %.9f %.9f %.9f\n", id.c_str(), com, cor, no);
    }
  };
  for (size_t i = 0; i < suite.size(); ++i) check(suite[i].game, res.com[i], res.cor[i].value, suite[i].id);
  const double nus[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 50; ++i) {
    const GameTree g = random_game(3 + i % 2, 5 + i % 3, nus[i % 3], 2000 + i);
    check(g, solve_tmecom(g).value, solve_tmecor(g).value, "extra" + std::to_string(i));
  }
  report(5, bad == 0 && checked == static_cast<int>(suite.size()) + 50,
         std::to_string(checked) + " games: " + std::to_string(bad) +
             " violations of vCom >= vCor >= vNo - 1e-6");
}

// Fraction of clauses satisfied by the assignment in player 1's pure plan.
double assignment_value(const HybridGame& hg, const CnfFormula& phi, const JointPlan& plan) {
  const GameTree& g = hg.game();
  const SequenceSet& seqs = hg.form().sequences[1];
  std::vector<int> truth(phi.num_variables + 1, 0);
  for (int h = 0; h < seqs.num_infosets(); ++h) {
    const std::string& label = g.infoset(1, h).actions[0];  // "x<v>=T"
    const int v = std::stoi(label.substr(1, label.find('=') - 1));
    truth[v] = plan.plans[1].prob[seqs.extension(h, 0)] > 0.5;
  }
  int sat = 0;
  for (const auto& clause : phi.clauses) {
    sat += std::any_of(clause.begin(), clause.end(),
                       [&](int lit) { return truth[std::abs(lit)] == (lit > 0); });
  }
  return static_cast<double>(sat) / phi.clauses.size();
}

void criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const double factor = 1.0 - std::exp(-1.0);
  int bad = 0, joint_below = 0;
  double worst_ratio = kInfinity, worst_joint = kInfinity;
  for (uint64_t i = 0; i < 50; ++i) {
    const int vars = 3 + static_cast<int>(i % 4);
    const int clauses = 4 + static_cast<int>((i / 4) % 5);
    const CnfFormula phi = random_satisfiable_3cnf(vars, clauses, 500 + i);
    const HybridGame hg(build_maxsat_game(phi));
    const auto adv = hg.uniform_adversary();
    const double exact = br_oracle_exact(hg, adv).value;
    double total = 0.0, joint = 0.0;
    for (uint64_t t = 0; t < 1000; ++t) {
      ApproxOracleOptions opts;
      opts.rounds = 1;
      opts.polish = false;
      opts.seed = t;
      const OracleResult r = br_oracle_approx(hg, adv, opts);
      total += assignment_value(hg, phi, r.column.plan);
      joint += r.value;
    }
    const double mean = total / 1000.0;
    worst_ratio = std::min(worst_ratio, mean / exact);
    worst_joint = std::min(worst_joint, joint / 1000.0 / exact);
    bad += mean < factor * exact;
    joint_below += joint / 1000.0 < factor * exact;
  }
  report(6, bad == 0,
         "50 satisfiable 3-CNF games, 1000 single-round unpolished trials each: " +
             std::to_string(bad) + " with the rounded assignment below (1-1/e); worst mean/exact = " +
             fmt("%.4f", worst_ratio) + " vs " + fmt("%.4f", factor) +
             "; finding: value of the jointly rounded column below (1-1/e) on " +
             std::to_string(joint_below) + " (worst " + fmt("%.4f", worst_joint) + ") in " +
             fmt("%.1fs", seconds_since(t0)));
}

void criterion7() {
  int bad = 0;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 20; ++i) {
    CnfFormula phi;
    if (i % 2 == 0) {
      phi = random_satisfiable_3cnf(3 + i % 4, 3 + i % 6, 900 + i);
    } else {
      // Unplanted clauses of length 1..3; often unsatisfiable.
      phi.num_variables = 2 + i % 3;
      const int c = 3 + i % 6;
      for (int j = 0; j < c; ++j) {
        std::vector<int> clause;
        const int len = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < len; ++k) {
          const int v = 1 + static_cast<int>(rng() % phi.num_variables);
          const int lit = rng() % 2 ? v : -v;
          if (std::find(clause.begin(), clause.end(), lit) == clause.end()) clause.push_back(lit);
        }
        phi.clauses.push_back(clause);
      }
    }
    const HybridGame hg(build_maxsat_game(phi));
    const double value = br_oracle_exact(hg, hg.uniform_adversary()).value;
    const double expected =
        static_cast<double>(oracle::max_satisfiable_clauses(phi)) / phi.clauses.size();
    if (std::abs(value - expected) > 1e-9) {
      ++bad;
      std::printf("    formula %d: oracle %.9f, max-sat fraction %.9f\n", i, value, expected);
    }
  }
  report(7, bad == 0, "20 formulas: " + std::to_string(bad) + " mismatches of BR value vs max-sat/c");
}

void criterion8(const std::vector<SuiteGame>& suite, const SuiteResult& res,
                const std::vector<TMECorSolution>& extra) {
  int nonmono = 0, slow = 0, unterminated = 0, total = 0;
  int worst_iter = 0, worst_qa = 0;
  for (const TMECorSolution& s : extra) {
    ++total;
    nonmono += !trace_monotone(s);
  }
  for (const GameTree& g : {build_example1(3, 2), build_example2(3, 2), build_example2(4, 2)}) {
    ++total;
    nonmono += !trace_monotone(solve_tmecor(g));
  }
  for (size_t i = 0; i < suite.size(); ++i) {
    const TMECorSolution& s = res.cor[i];
    ++total;
    nonmono += !trace_monotone(s);
    // Stopped because the oracle returned a column already in the set.
    if (s.status != SolveStatus::kOptimal || s.trace.empty() || s.trace.back().new_column) {
      ++unterminated;
    }
    if (s.iterations > 2 * s.adversary_sequences) {
      ++slow;
      std::printf("    finding: %s took %d iterations with |Q_A| = %d\n", suite[i].id.c_str(),
                  s.iterations, s.adversary_sequences);
    }
    if (s.iterations * std::max(worst_qa, 1) >= worst_iter * std::max(s.adversary_sequences, 1)) {
      worst_iter = s.iterations;
      worst_qa = s.adversary_sequences;
    }
  }
  report(8, nonmono == 0 && unterminated == 0,
         std::to_string(total) + " runs: " + std::to_string(nonmono) +
             " non-monotone traces; oracle-suite runs not ended by the known-column test: " +
             std::to_string(unterminated) + "; over 2|Q_A| iterations: " + std::to_string(slow) +
             " (worst " + std::to_string(worst_iter) + " iterations vs |Q_A| = " +
             std::to_string(worst_qa) + ")");
}

void criterion9() {
  bool ok = true;
  std::string detail;
  {
    const GameTree g = random_game(3, 12, 0.5, 1);
    SolveOptions opts;
    opts.deadline = Deadline::after(300);
    const TMEComSolution com = solve_tmecom(g, opts);
    ok &= com.status == SolveStatus::kOptimal && com.seconds < 300;
    detail += "TMECom d=12 (" + std::to_string(g.num_leaves()) + " leaves) " +
              fmt("%.2fs", com.seconds) + " " + to_string(com.status) + "; ";
  }
  {
    const GameTree g = random_game(3, 9, 0.5, 1);
    TMECorOptions opts;
    opts.solve.deadline = Deadline::after(300);
    const TMECorSolution cor = solve_tmecor(g, opts);
    ok &= cor.status == SolveStatus::kOptimal && cor.seconds < 300;
    detail += "TMECor d=9 (" + std::to_string(g.num_leaves()) + " leaves) " +
              fmt("%.2fs", cor.seconds) + " " + to_string(cor.status) + "; grid mean seconds com/cor:";
  }
  // Three seeds per depth, shared 300 s budget per solve.
  bool ordered = true;
  for (int d = 5; d <= 10; ++d) {
    double tcom = 0.0, tcor = 0.0;
    for (uint64_t seed = 0; seed < 3; ++seed) {
      const GameTree g = random_game(3, d, 0.5, seed);
      SolveOptions so;
      so.deadline = Deadline::after(300);
      const TMEComSolution com = solve_tmecom(g, so);
      TMECorOptions co;
      co.solve.deadline = Deadline::after(300);
      const TMECorSolution cor = solve_tmecor(g, co);
      ok &= com.status == SolveStatus::kOptimal;
      tcom += com.seconds;
      tcor += cor.seconds;
    }
    ordered &= tcom <= tcor;
    detail += " d" + std::to_string(d) + " " + fmt("%.3f", tcom / 3) + "/" + fmt("%.3f", tcor / 3);
  }
  report(9, ok && ordered, detail);
}

std::string strip_seconds(const nlohmann::json& doc) {
  nlohmann::json d = doc;
  d.erase("seconds");
  return d.dump();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string drop_columns(const std::string& csv, int k) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    for (int i = 0; i < k; ++i) line = line.substr(0, line.rfind(','));
    out += line + "\n";
  }
  return out;
}

void criterion10() {
  bool ok = true;
  const GameTree g = random_game(3, 6, 0.5, 7);
  ok &= save_game(g) == save_game(random_game(3, 6, 0.5, 7));
  for (Equilibrium eq : {Equilibrium::kTME, Equilibrium::kTMECor, Equilibrium::kTMECom}) {
    SolverSettings s;
    s.seed = 42;
    const SolveOutcome a = solve_equilibrium(g, eq, s);
    const SolveOutcome b = solve_equilibrium(g, eq, s);
    ok &= a.strategy.dump() == b.strategy.dump();
    ok &= a.record.value == b.record.value && a.record.status == b.record.status &&
          a.record.iters == b.record.iters && a.record.support == b.record.support;
  }
  {
    SolverSettings s;
    s.oracle = OracleKind::kApprox;
    s.seed = 9;
    ok &= solve_equilibrium(g, Equilibrium::kTMECor, s).strategy.dump() ==
          solve_equilibrium(g, Equilibrium::kTMECor, s).strategy.dump();
  }
  const fs::path base = fs::temp_directory_path() / "teamsolve_acceptance";
  fs::remove_all(base);
  ExperimentConfig cfg = parse_experiment_config(nlohmann::json::parse(
      R"({"players": [3], "depth": [5, 6], "nu": [0.25, 0.5], "seeds": 5})"));
  run_experiment(cfg, (base / "a").string());
  cfg.workers = 2;
  run_experiment(cfg, (base / "b").string());
  ok &= drop_columns(slurp(base / "a" / "records.csv"), 1) ==
        drop_columns(slurp(base / "b" / "records.csv"), 1);
  ok &= drop_columns(slurp(base / "a" / "aggregate.csv"), 3) ==
        drop_columns(slurp(base / "b" / "aggregate.csv"), 3);
  fs::remove_all(base);
  report(10, ok,
         "repeated solves (all three equilibria, both oracles) and a 20-instance grid run "
         "with 1 vs 2 workers: identical strategies, values and CSVs (timing columns excluded)");
}

}  // namespace
}  // namespace teamsolve

int main() {
  using namespace teamsolve;
  const auto start = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  const auto t_oracle = std::chrono::steady_clock::now();
  const std::vector<SuiteGame> suite = oracle_suite();
  const double oracle_seconds = seconds_since(t_oracle);
  const SuiteResult res = criterion3(suite, oracle_seconds);
  std::vector<TMECorSolution> extra;
  criterion4(extra);
  criterion5(suite, res);
  criterion6();
  criterion7();
  criterion8(suite, res, extra);
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed; total %.1fs\n", failures, seconds_since(start));
  return failures;
}
