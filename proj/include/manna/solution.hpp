#pragma once

#include <vector>

#include "manna/instance.hpp"
#include "manna/lcp.hpp"
#include "manna/rational.hpp"

namespace manna {

struct Equilibrium {
  std::vector<Rat> prices;  // per item, signed: > 0 goods, < 0 bads, 0 removed
  // alloc[i][j][k]: per segment of the instance the equilibrium refers to.
  std::vector<std::vector<std::vector<Rat>>> alloc;
  std::vector<Rat> budgets;  // per agent: sum_j W_ij * price_j

  std::vector<std::vector<Rat>> aggregated() const;  // x_ij = sum_k x_ijk
};

// Recomputes budgets from prices and the instance's endowment.
void fill_budgets(const Instance& inst, Equilibrium& eq);

// Maps an LCP solution vertex (z = 0) back to market prices/allocations of the
// instance the LCP was built from. Throws std::runtime_error on vertices with
// any p_j = P (the dummy non-equilibrium solution) or r_i = R.
Equilibrium extract_equilibrium(const std::vector<Rat>& y, const LcpSystem& lcp,
                                const Instance& inst,
                                const std::vector<ItemClass>& cls);

// Re-indexes an equilibrium of a preprocessed+normalized instance back to the
// original: undoes the unit change, shifts segment indices past absorbed
// leading segments, adds the price-zero fixed amounts, recomputes budgets.
Equilibrium restore_equilibrium(const Equilibrium& reduced, const Instance& original,
                                const Preprocessed& pre, const Normalized& norm);

// Multiplies prices and budgets by factor > 0; allocation unchanged.
Equilibrium rescale(const Equilibrium& eq, const Rat& factor);

// Canonical presentation: max |price| = 1 (identity if all prices are zero).
Equilibrium canonical_scale(const Equilibrium& eq);

}  // namespace manna
