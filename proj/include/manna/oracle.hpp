#pragma once

#include <vector>

#include "manna/instance.hpp"
#include "manna/solution.hpp"

namespace manna {

// One enumeration cell: per (agent, item) block a count of forced leading
// segments and an optional flexible segment right after them; every remaining
// segment is undesirable. Items surviving preprocessing are always sold out;
// undersold items are exactly the ones preprocessing removed at price zero.
struct Configuration {
  // per block: (forcedCount, hasFlexible)
  std::vector<std::pair<int, bool>> blocks;
};

struct OracleResult {
  std::vector<Equilibrium> equilibria;  // deduplicated, canonical scale
  int degenerateConfigs = 0;  // configurations whose induced system was
                              // underdetermined ("degenerate family detected")
};

// Brute-force ground truth: enumerates every feasible configuration, solves
// the induced linear system (flexible ratio equalities, forced full-length
// spending, budgets, money-form clearing, scale normalization) in exact
// rationals, keeps solutions passing the sign/bound/ordering checks.
// Throws std::invalid_argument when the instance has more than `cap` total
// active segments.
OracleResult enumerate_equilibria(const Instance& inst, int cap = 12);

}  // namespace manna
