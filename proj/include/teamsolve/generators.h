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

#ifndef TEAMSOLVE_GENERATORS_H_
#define TEAMSOLVE_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teamsolve/game.h"

namespace teamsolve {

// Players are numbered 0..n-1; the team is 0..n-2 and the adversary n-1.
struct RandomGameConfig {
  int players = 3;
  int depth = 5;     // maximum number of moves on a root-to-leaf path
  double nu = 0.5;   // probability of joining an existing compatible infoset
  int branching = 2;
  // If non-empty, entry k is the weight of infosets with k + 1 actions and the
  // fixed branching factor is ignored.
  std::vector<double> action_weights;
  // Probability that a node below depth n becomes a leaf early.
  double early_leaf_prob = 0.0;
  uint64_t seed = 0;
};

// Depth-first random tree. Each decision node goes to a uniformly drawn
// player; with probability nu it joins a uniformly drawn existing infoset of
// that player with the same action count and the same own history (so perfect
// recall is preserved), otherwise it opens a new infoset. Leaf utilities are
// i.i.d. uniform on [0, 1). Deterministic for a given config.
GameTree generate_random(const RandomGameConfig& config);

// Adversary moves first with m actions; player 0 observes the move through a
// chain of one-action singleton infosets; players 1..n-2 then each choose one
// of m actions inside a single infoset per level. The team gets 1 iff every
// non-spy teammate names the adversary's action.
GameTree build_example1(int n, int m);

// Adversary then players 0..n-2, one infoset per level, m actions each. The
// team gets 1 iff every teammate names the adversary's action.
GameTree build_example2(int n, int m);

// Literals are DIMACS style: +v / -v for variable v in 1..num_variables.
struct CnfFormula {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;
};

// Throws std::invalid_argument on empty clauses or out-of-range literals.
void validate_formula(const CnfFormula& phi);
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula& phi);
// Every clause has min(3, num_variables) distinct variables and is satisfied by
// a hidden uniformly drawn assignment.
CnfFormula random_satisfiable_3cnf(int num_variables, int num_clauses, uint64_t seed);

// Three players: the adversary (2) picks a clause, player 0 then picks one of
// the clause's distinct literals in a singleton infoset, and player 1 assigns
// the literal's variable in an infoset shared by every node that asks about
// that variable. The team gets 1 iff the chosen literal comes out true.
GameTree build_maxsat_game(const CnfFormula& phi);

}  // namespace teamsolve

#endif  // TEAMSOLVE_GENERATORS_H_
