#pragma once

#include <string>
#include <utility>
#include <vector>

#include "manna/instance.hpp"
#include "manna/solution.hpp"

namespace manna {

enum class SegLabel { Forced, Flexible, Undesirable };

struct RatioClass {
  Rat ratio;  // bpb (goods side) or ppb (bads side), exact
  std::vector<std::pair<int, int>> segments;  // (item, segment index)
  SegLabel label = SegLabel::Undesirable;
};

// Equivalence classes of one agent's priced segments: goods side ordered by
// decreasing bang-per-buck, bads side by increasing pain-per-buck. Labels are
// derived from the agent's budget via the spending sweep over the threshold
// lambda (the common flexible ratio).
struct PartitionReport {
  std::vector<RatioClass> goodClasses;
  std::vector<RatioClass> badClasses;
  bool budgetAttainable = false;
  Rat lambda;  // valid when budgetAttainable
};

// Throws std::invalid_argument on a zero price unless allowZeroPrices is set,
// in which case zero-priced items are skipped (the verifier checks them by
// their own price-zero rules instead).
PartitionReport partition_segments(const Instance& inst, const std::vector<Rat>& prices,
                                   int agent, bool allowZeroPrices = false);

struct VerifyReport {
  bool malformed = false;       // allocation shape / bounds / fill order broken
  std::string malformedReason;
  bool priceSigns = true;       // goods priced >= 0, bads <= 0
  std::vector<char> optimalBundles;  // per agent
  std::vector<char> budgetBalanced;  // per agent
  std::vector<char> clearing;        // per item
  bool overall = false;
};

// Exact structural check of the equilibrium conditions; clearing is relaxed to
// |sum_i x_ij - supply_j| <= epsilon * supply_j when epsilon > 0, optimality
// is always exact. Zero-price items are checked by their special rules
// (undersold goods allow free disposal; zero-price bads must be absorbed at
// zero disutility).
VerifyReport verify_equilibrium(const Instance& inst, const Equilibrium& eq,
                                const Rat& epsilon = Rat(0));

struct FairnessReport {
  bool applicable = false;  // CEEI, or Fisher with weights
  bool envyFree = false;    // weighted envy-freeness
  bool proportional = false;
};

// Utility of `agent` for a per-item bundle, filling the agent's own segments
// in order.
Rat bundle_utility(const Instance& inst, int agent, const std::vector<Rat>& bundle);

FairnessReport check_fairness(const Instance& inst, const Equilibrium& eq);

}  // namespace manna
