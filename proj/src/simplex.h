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

#ifndef TEAMSOLVE_SRC_SIMPLEX_H_
#define TEAMSOLVE_SRC_SIMPLEX_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "teamsolve/lp.h"

namespace teamsolve::internal {

// Dense bounded-variable simplex tableau for
//   min  c'x   s.t.  A x + s = b,  lo <= (x, s) <= hi
// where the slack s_i carries the row relation in its bounds. The tableau
// T = B^-1 [A I] is kept explicitly; its slack block is B^-1, which lets the
// basic values be recomputed from the original data.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp);

  int num_rows() const { return m_; }
  int num_structural() const { return n_; }

  // Two-phase primal simplex from the current basis.
  SolveStatus primal(const SolveOptions& options, int64_t& iterations);
  // Dual simplex; requires a dual feasible basis.
  SolveStatus dual(const SolveOptions& options, int64_t& iterations);
  // Primal simplex followed by clean-up passes that recompute basic values
  // and reduced costs from scratch.
  SolveStatus optimize(const SolveOptions& options, int64_t& iterations);
  // Dual simplex with the same clean-up.
  SolveStatus reoptimize(const SolveOptions& options, int64_t& iterations);

  // Changes the bounds of a structural column keeping dual feasibility
  // (a nonbasic column moves to the bound its reduced cost prefers).
  void set_bounds(int j, double lo, double hi);
  double lower(int j) const { return lo_[j]; }
  double upper(int j) const { return hi_[j]; }

  double objective() const;  // in the LP's own sense
  std::vector<double> primal_values() const;
  std::vector<double> duals() const;
  std::vector<double> reduced_costs() const;

 private:
  double& at(int i, int j) { return t_[static_cast<size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return t_[static_cast<size_t>(i) * cols_ + j]; }
  bool is_basic(int j) const { return row_of_[j] >= 0; }

  void compute_reduced_costs();
  void refresh_basic_values();
  double max_primal_infeasibility() const;
  bool dual_feasible() const;
  void pivot(int r, int j);
  SolveStatus run_primal(const SolveOptions& options, int64_t& iterations);

  int m_ = 0;
  int n_ = 0;
  int cols_ = 0;
  double sign_ = 1.0;  // internal cost = sign * LP objective
  std::vector<double> t_;
  std::vector<double> cost_;
  std::vector<double> orig_cost_;
  std::vector<double> d_;
  std::vector<double> x_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> b_;
  std::vector<int> basis_;
  std::vector<int> row_of_;
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<int> nz_;
};

}  // namespace teamsolve::internal

#endif  // TEAMSOLVE_SRC_SIMPLEX_H_
