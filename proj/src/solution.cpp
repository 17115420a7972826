#include "manna/solution.hpp"

#include <stdexcept>

namespace manna {

std::vector<std::vector<Rat>> Equilibrium::aggregated() const {
  std::vector<std::vector<Rat>> agg(alloc.size());
  for (std::size_t i = 0; i < alloc.size(); ++i) {
    agg[i].resize(alloc[i].size());
    for (std::size_t j = 0; j < alloc[i].size(); ++j) {
      Rat total = 0;
      for (const Rat& x : alloc[i][j]) total += x;
      agg[i][j] = total;
    }
  }
  return agg;
}

void fill_budgets(const Instance& inst, Equilibrium& eq) {
  eq.budgets.assign(inst.numAgents, Rat(0));
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numItems; ++j)
      eq.budgets[i] += inst.endowment[i][j] * eq.prices[j];
}

Equilibrium extract_equilibrium(const std::vector<Rat>& y, const LcpSystem& lcp,
                                const Instance& inst,
                                const std::vector<ItemClass>& cls) {
  Equilibrium eq;
  eq.prices.assign(inst.numItems, Rat(0));
  eq.alloc.resize(inst.numAgents);
  for (int i = 0; i < inst.numAgents; ++i) {
    eq.alloc[i].resize(inst.numItems);
    for (int j = 0; j < inst.numItems; ++j)
      eq.alloc[i][j].assign(inst.utility[i][j].size(), Rat(0));
  }

  for (int i = 0; i < inst.numAgents; ++i)
    if (!(y[lcp.rCol[i]] < lcp.R))
      throw std::runtime_error("extract_equilibrium: r_i = R at LCP solution");

  for (int j = 0; j < inst.numItems; ++j) {
    if (lcp.pCol[j] < 0) continue;  // zero-price item, reinserted by the caller
    Rat pj = y[lcp.pCol[j]];
    if (!(pj < lcp.P))
      throw std::runtime_error(
          "extract_equilibrium: p_j = P (dummy LCP solution, not an equilibrium)");
    Rat star = lcp.P - pj;  // |price|
    eq.prices[j] = cls[j].kind == ItemKind::Good ? star : -star;
    for (int i = 0; i < inst.numAgents; ++i)
      for (std::size_t k = 0; k < lcp.fCol[i][j].size(); ++k)
        eq.alloc[i][j][k] = y[lcp.fCol[i][j][k]] / star;
  }

  fill_budgets(inst, eq);
  return eq;
}

Equilibrium restore_equilibrium(const Equilibrium& reduced, const Instance& original,
                                const Preprocessed& pre, const Normalized& norm) {
  Equilibrium eq;
  eq.prices.assign(original.numItems, Rat(0));
  eq.alloc.resize(original.numAgents);
  for (int i = 0; i < original.numAgents; ++i) {
    eq.alloc[i].resize(original.numItems);
    for (int j = 0; j < original.numItems; ++j)
      eq.alloc[i][j].assign(original.utility[i][j].size(), Rat(0));
  }
  for (int j = 0; j < original.numItems; ++j) {
    if (pre.cls[j].status != ItemStatus::Active) continue;
    eq.prices[j] = reduced.prices[j] / norm.scale[j];
    for (int i = 0; i < original.numAgents; ++i)
      for (std::size_t k = 0; k < reduced.alloc[i][j].size(); ++k)
        eq.alloc[i][j][k + pre.leadDrop[i][j]] = reduced.alloc[i][j][k] * norm.scale[j];
  }
  for (const auto& [key, amount] : pre.fixed.amount) {
    auto [i, j, k] = key;
    eq.alloc[i][j][k] += amount;
  }
  fill_budgets(original, eq);
  return eq;
}

Equilibrium rescale(const Equilibrium& eq, const Rat& factor) {
  if (factor <= 0) throw std::invalid_argument("rescale: factor must be positive");
  Equilibrium out = eq;
  for (Rat& p : out.prices) p *= factor;
  for (Rat& b : out.budgets) b *= factor;
  return out;
}

Equilibrium canonical_scale(const Equilibrium& eq) {
  Rat maxabs = 0;
  for (const Rat& p : eq.prices)
    if (rat_abs(p) > maxabs) maxabs = rat_abs(p);
  if (maxabs == 0) return eq;
  return rescale(eq, 1 / maxabs);
}

}  // namespace manna
