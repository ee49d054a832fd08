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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "teamsolve/analysis.h"
#include "teamsolve/game_io.h"
#include "teamsolve/generators.h"
#include "teamsolve/svg.h"

namespace teamsolve {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename T>
std::vector<T> list_of(const json& v, const char* key) {
  if (v.is_array()) {
    if (v.empty()) throw std::invalid_argument(std::string("'") + key + "' is empty");
    return v.get<std::vector<T>>();
  }
  return {v.get<T>()};
}

struct Instance {
  RandomGameConfig config;
  std::string id;
};

struct InstanceResult {
  std::vector<SolutionRecord> records;  // one per solver, config order
  std::optional<PoUReport> pou;
  bool certified = false;
  std::string violation;
};

std::string instance_id(const RandomGameConfig& c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "n%d_d%d_nu%g_b%d_s%llu", c.players, c.depth, c.nu,
                c.branching, static_cast<unsigned long long>(c.seed));
  return buf;
}

const SolutionRecord* find(const InstanceResult& r, Equilibrium eq) {
  for (const SolutionRecord& rec : r.records) {
    if (rec.eq == eq) return &rec;
  }
  return nullptr;
}

InstanceResult run_instance(const Instance& inst, const ExperimentConfig& config) {
  const GameTree game = generate_random(inst.config);
  InstanceResult out;
  for (Equilibrium eq : config.solvers) {
    SolutionRecord rec = solve_equilibrium(game, eq, config.settings).record;
    rec.game_id = inst.id;
    rec.n = inst.config.players;
    rec.d = inst.config.depth;
    rec.nu = inst.config.nu;
    rec.seed = inst.config.seed;
    out.records.push_back(std::move(rec));
  }
  const SolutionRecord* com = find(out, Equilibrium::kTMECom);
  const SolutionRecord* cor = find(out, Equilibrium::kTMECor);
  const SolutionRecord* no = find(out, Equilibrium::kTME);
  // Any TMECor value is achievable with correlation, any TME value without.
  const bool cor_feasible = cor && (cor->completed() || cor->status.rfind("gap(", 0) == 0);
  if (com && com->status == "optimal" && cor_feasible && com->value < cor->value - 1e-6) {
    out.violation = "v_Com < v_Cor";
  }
  if (cor && cor->status == "optimal" && no && no->completed() &&
      cor->value < no->value - 1e-6) {
    out.violation = "v_Cor < v_No";
  }
  if (com && cor && no && com->status == "optimal" && cor->status == "optimal" &&
      no->completed()) {
    double offset = 0.0, scale = 1.0;
    if (config.renormalize) {
      const NormalizedGame ng = normalize_payoffs(game);
      offset = ng.offset;
      scale = ng.scale;
    }
    auto norm = [&](double v) { return (v - offset) / scale; };
    out.pou = compute_pou(norm(com->value), norm(cor->value), norm(no->value));
    out.pou->offset = offset;
    out.pou->scale = scale;
    out.certified = no->status == "optimal" || cor->value - no->value <= 1e-6;
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

std::string group_label(int n, int d, double nu) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n%d d%d nu%g", n, d, nu);
  return buf;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  static const std::set<std::string> known = {
      "players", "depth", "nu", "branching", "seeds", "early_leaf_prob", "solvers",
      "time_limit", "oracle", "approx_rounds", "tme_restarts", "solver_seed",
      "renormalize", "workers"};
  for (const auto& [k, v] : doc.items()) {
    if (!known.count(k)) throw std::invalid_argument("unknown config key '" + k + "'");
  }
  ExperimentConfig c;
  try {
    if (doc.contains("players")) c.players = list_of<int>(doc["players"], "players");
    if (doc.contains("depth")) c.depths = list_of<int>(doc["depth"], "depth");
    if (doc.contains("nu")) c.nus = list_of<double>(doc["nu"], "nu");
    if (doc.contains("branching")) c.branching = list_of<int>(doc["branching"], "branching");
    if (!doc.contains("seeds")) throw std::invalid_argument("'seeds' is required");
    if (doc["seeds"].is_number_integer()) {
      const int64_t count = doc["seeds"].get<int64_t>();
      if (count <= 0) throw std::invalid_argument("'seeds' must be positive");
      for (int64_t s = 0; s < count; ++s) c.seeds.push_back(static_cast<uint64_t>(s));
    } else {
      c.seeds = list_of<uint64_t>(doc["seeds"], "seeds");
    }
    c.early_leaf_prob = doc.value("early_leaf_prob", 0.0);
    if (doc.contains("solvers")) {
      c.solvers.clear();
      for (const std::string& s : doc["solvers"].get<std::vector<std::string>>()) {
        c.solvers.push_back(parse_equilibrium(s));
      }
    }
    c.settings.time_limit = doc.value("time_limit", 300.0);
    const std::string oracle = doc.value("oracle", std::string("exact"));
    if (oracle == "exact") {
      c.settings.oracle = OracleKind::kExact;
    } else if (oracle == "approx") {
      c.settings.oracle = OracleKind::kApprox;
    } else {
      throw std::invalid_argument("oracle must be 'exact' or 'approx'");
    }
    c.settings.approx.rounds = doc.value("approx_rounds", c.settings.approx.rounds);
    c.settings.tme_restarts = doc.value("tme_restarts", c.settings.tme_restarts);
    c.settings.seed = doc.value("solver_seed", uint64_t{0});
    c.renormalize = doc.value("renormalize", false);
    c.workers = doc.value("workers", 1);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  if (c.solvers.empty()) throw std::invalid_argument("empty solver list");
  if (c.workers < 1) throw std::invalid_argument("workers must be >= 1");
  for (int n : c.players) {
    if (n < 2) throw std::invalid_argument("players must be >= 2");
  }
  for (int d : c.depths) {
    if (d < 1) throw std::invalid_argument("depth must be >= 1");
  }
  for (double nu : c.nus) {
    if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("nu must be in [0, 1]");
  }
  for (int b : c.branching) {
    if (b < 1) throw std::invalid_argument("branching must be >= 1");
  }
  return c;
}

void write_aggregate_row(const AggregateRow& row, std::ostream& out) {
  out << row.n << "," << row.d << "," << csv_number(row.nu) << "," << row.instances << ","
      << row.incomplete;
  for (const auto& idx : row.pou) {
    for (double v : idx) out << "," << csv_number(v);
  }
  out << "," << row.certified << "," << csv_number(row.com_no_certified_mean) << ","
      << csv_number(row.cor_no_certified_mean);
  for (double s : row.seconds_mean) out << "," << csv_number(s);
  out << "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  if (config.solvers.empty()) throw std::invalid_argument("empty solver list");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const fs::path dir(out_dir);
  {
    std::ofstream probe(dir / ".write_test");
    if (!probe) throw std::runtime_error("output directory not writable: " + out_dir);
  }
  fs::remove(dir / ".write_test", ec);

  std::vector<Instance> instances;
  for (int n : config.players) {
    for (int d : config.depths) {
      for (double nu : config.nus) {
        for (int b : config.branching) {
          for (uint64_t seed : config.seeds) {
            RandomGameConfig rc;
            rc.players = n;
            rc.depth = d;
            rc.nu = nu;
            rc.branching = b;
            rc.early_leaf_prob = config.early_leaf_prob;
            rc.seed = seed;
            instances.push_back(Instance{rc, instance_id(rc)});
          }
        }
      }
    }
  }

  std::vector<InstanceResult> results(instances.size());
  std::vector<char> done(instances.size(), 0);
  std::atomic<size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex mu;
  std::ofstream partial(dir / "records.partial.csv", std::ios::trunc);
  partial << kRecordHeader << "\n" << std::flush;
  auto worker = [&] {
    while (!abort.load()) {
      const size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      InstanceResult r = run_instance(instances[i], config);
      std::lock_guard<std::mutex> lock(mu);
      std::ostringstream lines;
      for (const SolutionRecord& rec : r.records) write_record_row(rec, lines);
      partial << lines.str() << std::flush;
      if (!r.violation.empty()) abort.store(true);
      results[i] = std::move(r);
      done[i] = 1;
    }
  };
  const int workers = std::max(1, std::min<int>(config.workers, instances.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  partial.close();

  for (size_t i = 0; i < instances.size(); ++i) {
    if (done[i] && !results[i].violation.empty()) {
      const fs::path path = dir / ("violation_" + instances[i].id + ".json");
      save_game_file(generate_random(instances[i].config), path.string());
      throw std::runtime_error("ordering violated (" + results[i].violation + ") on " +
                               instances[i].id + "; game written to " + path.string());
    }
  }

  ExperimentResult out;
  std::ostringstream records;
  records << kRecordHeader << "\n";
  for (const InstanceResult& r : results) {
    for (const SolutionRecord& rec : r.records) {
      write_record_row(rec, records);
      out.records.push_back(rec);
    }
  }
  write_file_atomic(dir / "records.csv", records.str());
  fs::remove(dir / "records.partial.csv", ec);

  // Aggregation per (n, d, nu), in grid order.
  std::map<std::tuple<int, int, double>, std::vector<size_t>> groups;
  std::vector<std::tuple<int, int, double>> order;
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto key = std::make_tuple(instances[i].config.players, instances[i].config.depth,
                                     instances[i].config.nu);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(i);
  }
  std::vector<BoxGroup> boxes[3];
  std::map<std::tuple<int, double, int>, std::vector<std::pair<double, double>>> times;
  for (const auto& key : order) {
    const auto& [n, d, nu] = key;
    AggregateRow row;
    row.n = n;
    row.d = d;
    row.nu = nu;
    std::vector<double> idx[3], cert[2], secs[3];
    for (size_t i : groups[key]) {
      const InstanceResult& r = results[i];
      ++row.instances;
      for (const SolutionRecord& rec : r.records) {
        if (!rec.completed()) ++row.incomplete;
        secs[static_cast<int>(rec.eq)].push_back(rec.seconds);
      }
      if (!r.pou) continue;
      const PoUReport& p = *r.pou;
      if (!p.com_no_infinite) idx[0].push_back(p.com_no);
      if (!p.cor_no_infinite) idx[1].push_back(p.cor_no);
      if (!p.com_cor_infinite) idx[2].push_back(p.com_cor);
      if (r.certified) {
        ++row.certified;
        if (!p.com_no_infinite) cert[0].push_back(p.com_no);
        if (!p.cor_no_infinite) cert[1].push_back(p.cor_no);
      }
    }
    for (int k = 0; k < 3; ++k) {
      row.pou[k][0] = mean(idx[k]);
      row.pou[k][1] = quantile(idx[k], 0.25);
      row.pou[k][2] = quantile(idx[k], 0.5);
      row.pou[k][3] = quantile(idx[k], 0.75);
      row.seconds_mean[k] = mean(secs[k]);
      boxes[k].push_back(BoxGroup{group_label(n, d, nu), idx[k]});
      if (!secs[k].empty()) times[{n, nu, k}].emplace_back(d, row.seconds_mean[k]);
    }
    row.com_no_certified_mean = mean(cert[0]);
    row.cor_no_certified_mean = mean(cert[1]);
    out.aggregates.push_back(row);
  }
  std::ostringstream agg;
  agg << kAggregateHeader << "\n";
  for (const AggregateRow& row : out.aggregates) write_aggregate_row(row, agg);
  write_file_atomic(dir / "aggregate.csv", agg.str());

  static const char* const kIndexNames[3] = {"PoU Com/No", "PoU Cor/No", "PoU Com/Cor"};
  static const char* const kIndexFiles[3] = {"pou_com_no.svg", "pou_cor_no.svg",
                                             "pou_com_cor.svg"};
  for (int k = 0; k < 3; ++k) {
    std::ostringstream svg;
    write_box_plot(svg, kIndexNames[k], kIndexNames[k], boxes[k]);
    write_file_atomic(dir / kIndexFiles[k], svg.str());
  }
  std::vector<LineSeries> series;
  static const char* const kSolverNames[3] = {"TME", "TMECor", "TMECom"};
  for (const auto& [key, pts] : times) {
    const auto& [n, nu, k] = key;
    char name[64];
    std::snprintf(name, sizeof name, "%s n%d nu%g", kSolverNames[k], n, nu);
    LineSeries s{name, {}, {}};
    for (const auto& [d, t] : pts) {
      s.xs.push_back(d);
      s.ys.push_back(t);
    }
    series.push_back(std::move(s));
  }
  std::ostringstream svg;
  write_line_plot(svg, "Mean compute time", "depth", "seconds", series, true);
  write_file_atomic(dir / "time_by_depth.svg", svg.str());
  return out;
}

}  // namespace teamsolve
