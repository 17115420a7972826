#pragma once

#include <vector>

#include "manna/instance.hpp"
#include "manna/rational.hpp"

namespace manna {

struct BimatrixGame {
  int n = 0;                       // strategy count
  std::vector<std::vector<Rat>> R;  // row player payoffs, entries in [0,1]
  std::vector<std::vector<Rat>> C;  // column player payoffs

  void validate() const;  // throws std::invalid_argument
};

using MixedStrategy = std::vector<Rat>;  // non-negative, sums to 1

// §7.1 construction: m = 2n+2 bads, 6n^2+6n+2 agents (price-regulating,
// deficit, row-player and column-player families), disutility slopes from
// {1/3, 1, 2, 3, H = 10}, at most two segments per function. All-bads
// exchange instance; total endowment of every bad is at most 3.
Instance reduce_game_to_exchange(const BimatrixGame& game);

// Theorem 12 extraction: rescale so min |price| over the 2n strategy bads is
// 1, set u_s = 2 - |p_s|, v_s = 2 - |p_(n+s)|, normalize to distributions.
// Throws std::runtime_error if u or v is identically zero (invalid input
// equilibrium) or prices are not all negative.
std::pair<MixedStrategy, MixedStrategy> extract_strategies(
    const std::vector<Rat>& equilibriumPrices, int n);

// Eq. (14): (R beta)_s <= (R beta)_t - eps implies alpha_s = 0, and
// (alpha^T C)_s <= (alpha^T C)_t - eps implies beta_s = 0.
bool check_well_supported(const BimatrixGame& game, const MixedStrategy& alpha,
                          const MixedStrategy& beta, const Rat& eps);

// Theorem 13 conversion: every agent endowed t = max_ij W_ij of every bad and
// a leading zero-disutility segment of length t - W_ij added (omitted when
// zero). Output setting is CEEI. Requires a bads-only exchange instance.
Instance exchange_to_fisher(const Instance& inst);

}  // namespace manna
