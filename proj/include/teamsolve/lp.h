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

#ifndef TEAMSOLVE_LP_H_
#define TEAMSOLVE_LP_H_

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace teamsolve {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Solver tolerances, shared by every mathematical program in the library.
struct Tolerances {
  static constexpr double kFeasibility = 1e-7;
  static constexpr double kIntegrality = 1e-6;
  static constexpr double kDualityGap = 1e-6;
  static constexpr double kPivot = 1e-9;
  static constexpr double kOptimality = 1e-9;
};

// Wall-clock budget shared by nested solves. A default-constructed deadline
// never expires.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after(double seconds);
  bool expired() const;
  bool is_set() const { return at_.has_value(); }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kTimeLimit,
};
const char* to_string(SolveStatus status);

struct LinearProgram {
  struct Variable {
    double lower = 0.0;
    double upper = kInfinity;
    double objective = 0.0;
    bool binary = false;
    std::string name;
  };
  struct Constraint {
    std::vector<std::pair<int, double>> coeffs;
    Relation relation = Relation::kLessEqual;
    double rhs = 0.0;
    std::string name;
  };

  Sense sense = Sense::kMaximize;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;

  int add_variable(double lower, double upper, double objective,
                   std::string name = {});
  // Binary variable with bounds [0, 1].
  int add_binary(double objective, std::string name = {});
  int add_constraint(std::vector<std::pair<int, double>> coeffs, Relation rel,
                     double rhs, std::string name = {});

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  bool has_binaries() const;

  // Throws std::invalid_argument on out-of-range column indices, lower > upper
  // or binaries with bounds outside [0, 1].
  void check() const;
  double evaluate_objective(const std::vector<double>& x) const;
  // Largest bound or row violation of x.
  double max_violation(const std::vector<double>& x) const;
};

struct MPSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> primal;
  // Shadow prices d objective / d rhs (LP only). For a maximization, rows
  // with <= carry nonnegative duals.
  std::vector<double> duals;
  // Reduced costs d objective / d x_j of the structural columns (LP only).
  std::vector<double> reduced_costs;
  // Best proven bound on the optimum (MILP); equals objective for LPs.
  double bound = 0.0;
  int64_t iterations = 0;
  int64_t nodes = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

struct SolveOptions {
  int64_t max_iterations = 5'000'000;
  int64_t max_nodes = 200'000;
  Deadline deadline;
};

// Bounded-variable primal simplex on a dense tableau (two phases, Dantzig
// pricing with a Bland fallback after 10 * (rows + cols) consecutive
// degenerate pivots). Binary markers are ignored: this solves the relaxation.
MPSolution solve_lp(const LinearProgram& lp, const SolveOptions& options = {});

// Best-first branch and bound over the binary variables, most-fractional
// branching with ties to the lowest index. Node relaxations are re-optimized
// by the dual simplex on one shared tableau.
MPSolution solve_milp(const LinearProgram& lp, const SolveOptions& options = {});

// Free-format MPS dump (ROWS / COLUMNS / RHS / BOUNDS) for debugging.
void write_mps(const LinearProgram& lp, std::ostream& out,
               const std::string& name = "TEAMSOLVE");

}  // namespace teamsolve

#endif  // TEAMSOLVE_LP_H_
