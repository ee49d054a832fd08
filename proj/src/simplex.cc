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

#include "simplex.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace teamsolve::internal {
namespace {

constexpr double kFeas = 1e-9;        // internal primal tolerance
constexpr double kDrop = 1e-13;       // entries below this become exact zeros
constexpr size_t kMaxTableauEntries = size_t{450} * 1000 * 1000;

}  // namespace

Tableau::Tableau(const LinearProgram& lp) {
  lp.check();
  m_ = lp.num_constraints();
  n_ = lp.num_variables();
  cols_ = n_ + m_;
  if (static_cast<size_t>(m_) * static_cast<size_t>(cols_) > kMaxTableauEntries) {
    throw std::length_error("linear program too large for the dense tableau");
  }
  sign_ = lp.sense == Sense::kMinimize ? 1.0 : -1.0;
  t_.assign(static_cast<size_t>(m_) * cols_, 0.0);
  columns_.resize(cols_);
  lo_.resize(cols_);
  hi_.resize(cols_);
  x_.assign(cols_, 0.0);
  orig_cost_.assign(cols_, 0.0);
  b_.resize(m_);
  for (int j = 0; j < n_; ++j) {
    const auto& v = lp.variables[j];
    lo_[j] = v.lower;
    hi_[j] = v.upper;
    orig_cost_[j] = sign_ * v.objective;
  }
  for (int i = 0; i < m_; ++i) {
    const auto& c = lp.constraints[i];
    for (const auto& [j, v] : c.coeffs) at(i, j) += v;
    at(i, n_ + i) = 1.0;
    b_[i] = c.rhs;
    switch (c.relation) {
      case Relation::kLessEqual:
        lo_[n_ + i] = 0.0;
        hi_[n_ + i] = kInfinity;
        break;
      case Relation::kGreaterEqual:
        lo_[n_ + i] = -kInfinity;
        hi_[n_ + i] = 0.0;
        break;
      case Relation::kEqual:
        lo_[n_ + i] = 0.0;
        hi_[n_ + i] = 0.0;
        break;
    }
  }
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (at(i, j) != 0.0) columns_[j].emplace_back(i, at(i, j));
    }
    columns_[n_ + i].emplace_back(i, 1.0);
  }
  for (int j = 0; j < n_; ++j) {
    if (std::isfinite(lo_[j])) {
      x_[j] = lo_[j];
    } else if (std::isfinite(hi_[j])) {
      x_[j] = hi_[j];
    }
  }
  basis_.resize(m_);
  row_of_.assign(cols_, -1);
  for (int i = 0; i < m_; ++i) {
    basis_[i] = n_ + i;
    row_of_[n_ + i] = i;
  }
  cost_ = orig_cost_;
  d_.assign(cols_, 0.0);
  refresh_basic_values();
}

void Tableau::compute_reduced_costs() {
  d_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &t_[static_cast<size_t>(i) * cols_];
    for (int j = 0; j < cols_; ++j) d_[j] -= cb * row[j];
  }
  for (int i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
}

void Tableau::refresh_basic_values() {
  std::vector<double> r = b_;
  for (int j = 0; j < cols_; ++j) {
    if (is_basic(j) || x_[j] == 0.0) continue;
    for (const auto& [i, v] : columns_[j]) r[i] -= v * x_[j];
  }
  for (int i = 0; i < m_; ++i) {
    const double* row = &t_[static_cast<size_t>(i) * cols_ + n_];
    double s = 0.0;
    for (int k = 0; k < m_; ++k) s += row[k] * r[k];
    x_[basis_[i]] = s;
  }
}

double Tableau::max_primal_infeasibility() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    const int k = basis_[i];
    worst = std::max({worst, lo_[k] - x_[k], x_[k] - hi_[k]});
  }
  return worst;
}

bool Tableau::dual_feasible() const {
  constexpr double kTol = 1e-7;
  for (int j = 0; j < cols_; ++j) {
    if (is_basic(j) || lo_[j] == hi_[j]) continue;
    const bool can_inc = x_[j] < hi_[j];
    const bool can_dec = x_[j] > lo_[j];
    if (can_inc && d_[j] < -kTol) return false;
    if (can_dec && d_[j] > kTol) return false;
  }
  return true;
}

void Tableau::pivot(int r, int j) {
  double* pr = &t_[static_cast<size_t>(r) * cols_];
  const double inv = 1.0 / pr[j];
  nz_.clear();
  for (int c = 0; c < cols_; ++c) {
    if (pr[c] == 0.0) continue;
    pr[c] *= inv;
    if (std::abs(pr[c]) < kDrop) {
      pr[c] = 0.0;
    } else {
      nz_.push_back(c);
    }
  }
  pr[j] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* pi = &t_[static_cast<size_t>(i) * cols_];
    const double f = pi[j];
    if (f == 0.0) continue;
    for (int c : nz_) {
      double v = pi[c] - f * pr[c];
      pi[c] = std::abs(v) < kDrop ? 0.0 : v;
    }
    pi[j] = 0.0;
  }
  const double f = d_[j];
  if (f != 0.0) {
    for (int c : nz_) d_[c] -= f * pr[c];
  }
  d_[j] = 0.0;
  const int leaving = basis_[r];
  row_of_[leaving] = -1;
  basis_[r] = j;
  row_of_[j] = r;
}

SolveStatus Tableau::run_primal(const SolveOptions& options, int64_t& iterations) {
  compute_reduced_costs();
  const int64_t degenerate_limit = 10LL * (m_ + cols_);
  int64_t degenerate = 0;
  bool bland = false;
  while (true) {
    if (iterations >= options.max_iterations) return SolveStatus::kIterationLimit;
    if ((iterations & 31) == 0 && options.deadline.expired()) {
      return SolveStatus::kTimeLimit;
    }
    // Pricing.
    int enter = -1;
    double dir = 0.0;
    double best = Tolerances::kOptimality;
    for (int k = 0; k < cols_; ++k) {
      if (is_basic(k) || lo_[k] == hi_[k]) continue;
      const double dk = d_[k];
      double score;
      double dr;
      if (dk < -Tolerances::kOptimality && x_[k] < hi_[k]) {
        score = -dk;
        dr = 1.0;
      } else if (dk > Tolerances::kOptimality && x_[k] > lo_[k]) {
        score = dk;
        dr = -1.0;
      } else {
        continue;
      }
      if (bland) {
        enter = k;
        dir = dr;
        break;
      }
      if (score > best) {
        best = score;
        enter = k;
        dir = dr;
      }
    }
    if (enter < 0) return SolveStatus::kOptimal;

    // Ratio test (Harris two-pass, or plain minimum ratio under Bland).
    const double flip = (std::isfinite(lo_[enter]) && std::isfinite(hi_[enter]))
                            ? hi_[enter] - lo_[enter]
                            : kInfinity;
    int leave_row = -1;
    double leave_ratio = kInfinity;
    if (bland) {
      int leave_var = -1;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (std::abs(a) <= Tolerances::kPivot) continue;
        const double rate = -dir * a;
        const int k = basis_[i];
        double ratio;
        if (rate < 0 && std::isfinite(lo_[k])) {
          ratio = (x_[k] - lo_[k]) / -rate;
        } else if (rate > 0 && std::isfinite(hi_[k])) {
          ratio = (hi_[k] - x_[k]) / rate;
        } else {
          continue;
        }
        ratio = std::max(ratio, 0.0);
        if (ratio < leave_ratio - 1e-12 ||
            (ratio <= leave_ratio + 1e-12 && k < leave_var)) {
          leave_ratio = ratio;
          leave_row = i;
          leave_var = k;
        }
      }
    } else {
      double tmax = kInfinity;
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (std::abs(a) <= Tolerances::kPivot) continue;
        const double rate = -dir * a;
        const int k = basis_[i];
        if (rate < 0 && std::isfinite(lo_[k])) {
          tmax = std::min(tmax, (x_[k] - lo_[k] + kFeas) / -rate);
        } else if (rate > 0 && std::isfinite(hi_[k])) {
          tmax = std::min(tmax, (hi_[k] - x_[k] + kFeas) / rate);
        }
      }
      double best_pivot = 0.0;
      for (int i = 0; i < m_ && std::isfinite(tmax); ++i) {
        const double a = at(i, enter);
        if (std::abs(a) <= Tolerances::kPivot) continue;
        const double rate = -dir * a;
        const int k = basis_[i];
        double ratio;
        if (rate < 0 && std::isfinite(lo_[k])) {
          ratio = (x_[k] - lo_[k]) / -rate;
        } else if (rate > 0 && std::isfinite(hi_[k])) {
          ratio = (hi_[k] - x_[k]) / rate;
        } else {
          continue;
        }
        if (ratio <= tmax && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          leave_row = i;
          leave_ratio = std::max(ratio, 0.0);
        }
      }
    }

    ++iterations;
    if (leave_row < 0 && !std::isfinite(flip)) return SolveStatus::kUnbounded;
    const bool do_flip = flip <= leave_ratio;
    const double step = do_flip ? flip : leave_ratio;
    if (step != 0.0) {
      for (int i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a != 0.0) x_[basis_[i]] -= dir * a * step;
      }
    }
    if (do_flip) {
      x_[enter] = dir > 0 ? hi_[enter] : lo_[enter];
    } else {
      x_[enter] += dir * step;
      const int k = basis_[leave_row];
      const double rate = -dir * at(leave_row, enter);
      x_[k] = rate < 0 ? lo_[k] : hi_[k];
      pivot(leave_row, enter);
    }
    if (step <= 1e-12) {
      if (++degenerate > degenerate_limit) bland = true;
    } else {
      degenerate = 0;
      bland = false;
    }
  }
}

SolveStatus Tableau::primal(const SolveOptions& options, int64_t& iterations) {
  // Phase 1: each infeasible basic variable gets its violated bound as the
  // only finite bound and a unit cost pushing it back.
  std::vector<std::tuple<int, double, double>> saved;
  cost_.assign(cols_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const int k = basis_[i];
    if (x_[k] < lo_[k] - Tolerances::kFeasibility * 0.01) {
      saved.emplace_back(k, lo_[k], hi_[k]);
      cost_[k] = -1.0;
      hi_[k] = lo_[k];
      lo_[k] = -kInfinity;
    } else if (x_[k] > hi_[k] + Tolerances::kFeasibility * 0.01) {
      saved.emplace_back(k, lo_[k], hi_[k]);
      cost_[k] = 1.0;
      lo_[k] = hi_[k];
      hi_[k] = kInfinity;
    }
  }
  if (!saved.empty()) {
    const SolveStatus s = run_primal(options, iterations);
    for (const auto& [k, lo, hi] : saved) {
      lo_[k] = lo;
      hi_[k] = hi;
    }
    if (s != SolveStatus::kOptimal) {
      cost_ = orig_cost_;
      compute_reduced_costs();
      return s;
    }
    if (max_primal_infeasibility() > Tolerances::kFeasibility) {
      cost_ = orig_cost_;
      compute_reduced_costs();
      return SolveStatus::kInfeasible;
    }
  }
  cost_ = orig_cost_;
  return run_primal(options, iterations);
}

SolveStatus Tableau::dual(const SolveOptions& options, int64_t& iterations) {
  const int64_t degenerate_limit = 10LL * (m_ + cols_);
  int64_t degenerate = 0;
  bool bland = false;
  while (true) {
    if (iterations >= options.max_iterations) return SolveStatus::kIterationLimit;
    if ((iterations & 31) == 0 && options.deadline.expired()) {
      return SolveStatus::kTimeLimit;
    }
    int r = -1;
    double worst = kFeas;
    for (int i = 0; i < m_; ++i) {
      const int k = basis_[i];
      const double viol = std::max(lo_[k] - x_[k], x_[k] - hi_[k]);
      if (viol <= kFeas) continue;
      if (bland) {
        if (r < 0 || k < basis_[r]) r = i;
      } else if (viol > worst) {
        worst = viol;
        r = i;
      }
    }
    if (r < 0) return SolveStatus::kOptimal;
    const int leaving = basis_[r];
    const bool increase = x_[leaving] < lo_[leaving];
    const double target = increase ? lo_[leaving] : hi_[leaving];
    const double delta = x_[leaving] - target;
    const double* row = &t_[static_cast<size_t>(r) * cols_];

    auto eligible = [&](int j, double a) {
      const bool can_inc = x_[j] < hi_[j];
      const bool can_dec = x_[j] > lo_[j];
      if (increase) return (a < 0 && can_inc) || (a > 0 && can_dec);
      return (a > 0 && can_inc) || (a < 0 && can_dec);
    };
    int enter = -1;
    if (bland) {
      double best_ratio = kInfinity;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic(j) || lo_[j] == hi_[j]) continue;
        const double a = row[j];
        if (std::abs(a) <= Tolerances::kPivot || !eligible(j, a)) continue;
        const double ratio = std::abs(d_[j]) / std::abs(a);
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          enter = j;
        }
      }
    } else {
      double tmax = kInfinity;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic(j) || lo_[j] == hi_[j]) continue;
        const double a = row[j];
        if (std::abs(a) <= Tolerances::kPivot || !eligible(j, a)) continue;
        tmax = std::min(tmax, (std::abs(d_[j]) + Tolerances::kOptimality) / std::abs(a));
      }
      double best_pivot = 0.0;
      for (int j = 0; j < cols_ && std::isfinite(tmax); ++j) {
        if (is_basic(j) || lo_[j] == hi_[j]) continue;
        const double a = row[j];
        if (std::abs(a) <= Tolerances::kPivot || !eligible(j, a)) continue;
        if (std::abs(d_[j]) / std::abs(a) <= tmax && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          enter = j;
        }
      }
    }
    if (enter < 0) return SolveStatus::kInfeasible;
    ++iterations;
    const double step_dual = std::abs(d_[enter]) / std::abs(row[enter]);
    const double dx = delta / row[enter];
    x_[enter] += dx;
    for (int i = 0; i < m_; ++i) {
      const double a = at(i, enter);
      if (a != 0.0) x_[basis_[i]] -= a * dx;
    }
    x_[leaving] = target;
    pivot(r, enter);
    if (step_dual <= 1e-12) {
      if (++degenerate > degenerate_limit) bland = true;
    } else {
      degenerate = 0;
      bland = false;
    }
  }
}

SolveStatus Tableau::optimize(const SolveOptions& options, int64_t& iterations) {
  SolveStatus s = primal(options, iterations);
  for (int pass = 0; pass < 4 && s == SolveStatus::kOptimal; ++pass) {
    refresh_basic_values();
    compute_reduced_costs();
    const bool pfeas = max_primal_infeasibility() <= Tolerances::kFeasibility;
    const bool dfeas = dual_feasible();
    if (pfeas && dfeas) break;
    s = (!pfeas && dfeas) ? dual(options, iterations) : primal(options, iterations);
  }
  return s;
}

SolveStatus Tableau::reoptimize(const SolveOptions& options, int64_t& iterations) {
  SolveStatus s = dual(options, iterations);
  for (int pass = 0; pass < 4 && s == SolveStatus::kOptimal; ++pass) {
    refresh_basic_values();
    compute_reduced_costs();
    const bool pfeas = max_primal_infeasibility() <= Tolerances::kFeasibility;
    const bool dfeas = dual_feasible();
    if (pfeas && dfeas) break;
    s = (!pfeas && dfeas) ? dual(options, iterations) : primal(options, iterations);
  }
  return s;
}

void Tableau::set_bounds(int j, double lo, double hi) {
  lo_[j] = lo;
  hi_[j] = hi;
  if (is_basic(j)) return;
  double target;
  if (lo == hi) {
    target = lo;
  } else if (d_[j] > Tolerances::kOptimality && std::isfinite(lo)) {
    target = lo;
  } else if (d_[j] < -Tolerances::kOptimality && std::isfinite(hi)) {
    target = hi;
  } else if (x_[j] >= hi && std::isfinite(hi)) {
    target = hi;
  } else if (std::isfinite(lo)) {
    target = lo;
  } else if (std::isfinite(hi)) {
    target = hi;
  } else {
    target = 0.0;
  }
  const double delta = target - x_[j];
  if (delta == 0.0) return;
  x_[j] = target;
  for (int i = 0; i < m_; ++i) {
    const double a = at(i, j);
    if (a != 0.0) x_[basis_[i]] -= a * delta;
  }
}

double Tableau::objective() const {
  double v = 0.0;
  for (int j = 0; j < n_; ++j) v += orig_cost_[j] * x_[j];
  return sign_ * v;
}

std::vector<double> Tableau::primal_values() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

std::vector<double> Tableau::duals() const {
  std::vector<double> y(m_);
  for (int i = 0; i < m_; ++i) y[i] = -sign_ * d_[n_ + i];
  return y;
}

std::vector<double> Tableau::reduced_costs() const {
  std::vector<double> rc(n_);
  for (int j = 0; j < n_; ++j) rc[j] = sign_ * d_[j];
  return rc;
}

}  // namespace teamsolve::internal
