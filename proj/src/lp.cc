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

#include "teamsolve/lp.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "simplex.h"

namespace teamsolve {

Deadline Deadline::after(double seconds) {
  Deadline d;
  if (std::isfinite(seconds) && seconds > 0) {
    d.at_ = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds));
  }
  return d;
}

bool Deadline::expired() const {
  return at_.has_value() && std::chrono::steady_clock::now() >= *at_;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
  }
  return "unknown";
}

int LinearProgram::add_variable(double lower, double upper, double objective,
                                std::string name) {
  variables.push_back(Variable{lower, upper, objective, false, std::move(name)});
  return num_variables() - 1;
}

int LinearProgram::add_binary(double objective, std::string name) {
  variables.push_back(Variable{0.0, 1.0, objective, true, std::move(name)});
  return num_variables() - 1;
}

int LinearProgram::add_constraint(std::vector<std::pair<int, double>> coeffs,
                                  Relation rel, double rhs, std::string name) {
  constraints.push_back(Constraint{std::move(coeffs), rel, rhs, std::move(name)});
  return num_constraints() - 1;
}

bool LinearProgram::has_binaries() const {
  return std::any_of(variables.begin(), variables.end(),
                     [](const Variable& v) { return v.binary; });
}

void LinearProgram::check() const {
  for (int j = 0; j < num_variables(); ++j) {
    const Variable& v = variables[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      throw std::invalid_argument("variable " + std::to_string(j) +
                                  " has inconsistent bounds");
    }
    if (v.binary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw std::invalid_argument("binary variable " + std::to_string(j) +
                                  " has bounds outside [0, 1]");
    }
    if (!std::isfinite(v.objective)) {
      throw std::invalid_argument("variable " + std::to_string(j) +
                                  " has a non-finite objective coefficient");
    }
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const Constraint& c = constraints[i];
    if (!std::isfinite(c.rhs)) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " has a non-finite right-hand side");
    }
    for (const auto& [j, v] : c.coeffs) {
      if (j < 0 || j >= num_variables() || !std::isfinite(v)) {
        throw std::invalid_argument("row " + std::to_string(i) +
                                    " has an invalid coefficient");
      }
    }
  }
}

double LinearProgram::evaluate_objective(const std::vector<double>& x) const {
  double v = 0.0;
  for (int j = 0; j < num_variables(); ++j) v += variables[j].objective * x[j];
  return v;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max({worst, variables[j].lower - x[j], x[j] - variables[j].upper});
  }
  for (const Constraint& c : constraints) {
    double lhs = 0.0;
    for (const auto& [j, v] : c.coeffs) lhs += v * x[j];
    if (c.relation != Relation::kGreaterEqual) worst = std::max(worst, lhs - c.rhs);
    if (c.relation != Relation::kLessEqual) worst = std::max(worst, c.rhs - lhs);
  }
  return worst;
}

MPSolution solve_lp(const LinearProgram& lp, const SolveOptions& options) {
  internal::Tableau tab(lp);
  MPSolution sol;
  sol.status = tab.optimize(options, sol.iterations);
  sol.primal = tab.primal_values();
  sol.objective = tab.objective();
  sol.bound = sol.objective;
  if (sol.optimal()) {
    sol.duals = tab.duals();
    sol.reduced_costs = tab.reduced_costs();
  }
  return sol;
}

void write_mps(const LinearProgram& lp, std::ostream& out, const std::string& name) {
  auto row_name = [&](int i) {
    return lp.constraints[i].name.empty() ? "R" + std::to_string(i)
                                          : lp.constraints[i].name;
  };
  auto col_name = [&](int j) {
    return lp.variables[j].name.empty() ? "C" + std::to_string(j)
                                        : lp.variables[j].name;
  };
  out << "NAME " << name << "\n";
  out << "OBJSENSE " << (lp.sense == Sense::kMaximize ? "MAX" : "MIN") << "\n";
  out << "ROWS\n N OBJ\n";
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const char* tag = lp.constraints[i].relation == Relation::kLessEqual  ? "L"
                      : lp.constraints[i].relation == Relation::kEqual ? "E"
                                                                      : "G";
    out << " " << tag << " " << row_name(i) << "\n";
  }
  std::vector<std::map<int, double>> cols(lp.num_variables());
  for (int i = 0; i < lp.num_constraints(); ++i) {
    for (const auto& [j, v] : lp.constraints[i].coeffs) cols[j][i] += v;
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int markers = 0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.variables[j].binary != in_int) {
      out << " M" << markers++ << " 'MARKER' "
          << (in_int ? "'INTEND'" : "'INTORG'") << "\n";
      in_int = lp.variables[j].binary;
    }
    if (lp.variables[j].objective != 0.0) {
      out << " " << col_name(j) << " OBJ " << lp.variables[j].objective << "\n";
    }
    for (const auto& [i, v] : cols[j]) {
      out << " " << col_name(j) << " " << row_name(i) << " " << v << "\n";
    }
  }
  if (in_int) out << " M" << markers << " 'MARKER' 'INTEND'\n";
  out << "RHS\n";
  for (int i = 0; i < lp.num_constraints(); ++i) {
    if (lp.constraints[i].rhs != 0.0) {
      out << " RHS " << row_name(i) << " " << lp.constraints[i].rhs << "\n";
    }
  }
  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const auto& v = lp.variables[j];
    if (v.binary) {
      out << " BV BND " << col_name(j) << "\n";
      continue;
    }
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << " FR BND " << col_name(j) << "\n";
      continue;
    }
    if (v.lower == v.upper) {
      out << " FX BND " << col_name(j) << " " << v.lower << "\n";
      continue;
    }
    if (v.lower == -kInfinity) {
      out << " MI BND " << col_name(j) << "\n";
    } else if (v.lower != 0.0) {
      out << " LO BND " << col_name(j) << " " << v.lower << "\n";
    }
    if (v.upper != kInfinity) out << " UP BND " << col_name(j) << " " << v.upper << "\n";
  }
  out << "ENDATA\n";
}

}  // namespace teamsolve
