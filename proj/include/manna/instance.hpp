#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "manna/rational.hpp"

namespace manna {

// One linear piece of a separable piecewise-linear concave utility function.
// Slopes within an (agent, item) function are strictly decreasing; the last
// segment is padded to length 1 + kLastSegmentPad so an agent can always
// absorb the whole (unit) supply on it.
struct Segment {
  Rat slope;   // U_ijk, signed: > 0 on goods, <= 0 on bads
  Rat length;  // L_ijk > 0

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.slope == b.slope && a.length == b.length;
  }
};

// Last-segment padding beyond the unit supply ("1 plus some small constant").
inline const Rat kLastSegmentPad(1, 10);

enum class Setting { Exchange, Fisher, CEEI };

struct Instance {
  int numAgents = 0;
  int numItems = 0;
  // utility[i][j]: ordered segments of agent i's function for item j.
  std::vector<std::vector<std::vector<Segment>>> utility;
  // endowment[i][j] = W_ij >= 0 (may be negative only transiently inside the
  // preprocessing pipeline; user-facing instances are non-negative).
  std::vector<std::vector<Rat>> endowment;
  // Optional per-agent budget weights (Fisher mode); empty otherwise.
  std::vector<Rat> weights;
  Setting setting = Setting::Exchange;

  Rat supply(int item) const;

  // Throws std::invalid_argument with a description on a malformed instance
  // (shape mismatches, non-positive lengths, non-decreasing slopes, empty
  // utility functions, sign-mixing within one function, zero supply).
  void validate() const;
};

enum class ItemKind { Good, Bad };
enum class ItemStatus { Active, ZeroPriceGood, ZeroPriceBad };

struct ItemClass {
  ItemKind kind = ItemKind::Bad;
  ItemStatus status = ItemStatus::Active;
};

// Good iff some agent's first-segment slope is positive.
std::vector<ItemClass> classify_items(const Instance& inst);

// Maximum demand for good j at any price: total length of positive segments.
Rat desire(const Instance& inst, int item);
// Maximum amount of bad j absorbable at zero disutility: total length of
// zero-slope first segments.
Rat indifference(const Instance& inst, int item);

// Allocation amounts fixed by preprocessing before the LCP ever runs, keyed by
// (agent, item, segment index in the *original* instance).
struct FixedAllocations {
  std::map<std::tuple<int, int, int>, Rat> amount;
  // Undersold zero-price goods: leftover supply beyond total desire, recorded
  // as free disposal per item (zero where not applicable).
  std::vector<Rat> freeDisposal;
};

struct Preprocessed {
  Instance inst;                 // same shape as the input; inactive items keep
                                 // their data but are skipped by the LCP
  std::vector<ItemClass> cls;    // per-item kind + Active/ZeroPrice status
  FixedAllocations fixed;
  // leadDrop[i][j] = number of leading segments removed from utility[i][j]
  // (zero-slope bad segments absorbed into the endowment; 0 or 1).
  std::vector<std::vector<int>> leadDrop;
};

// Removes goods with desire < supply and bads with indifference >= supply at
// price zero, and absorbs zero-slope leading segments of surviving bads into
// endowments (inverse of the Fisher-conversion map). Total; never fails.
Preprocessed preprocess(const Instance& inst);

struct SufficiencyReport {
  bool allBads = false;       // no goods: connectivity condition is vacuous
  bool condition1 = false;    // every agent brings some good and some bad
  bool stronglyConnected = false;
  bool satisfied() const { return allBads || (condition1 && stronglyConnected); }
};

// Economy graph: edge i -> j iff agent i is non-satiated for some good that
// agent j brings a positive amount of.
std::vector<std::vector<int>> economy_graph(const Instance& inst,
                                            const std::vector<ItemClass>& cls);

SufficiencyReport check_sufficiency(const Instance& inst,
                                    const std::vector<ItemClass>& cls);

// Change of units making every active item's supply exactly 1:
// W,L scaled by 1/S_j, slopes by S_j. scale[j] = S_j maps solutions back
// (x_orig = x_norm * S_j, p_orig = p_norm / S_j).
struct Normalized {
  Instance inst;
  std::vector<Rat> scale;
};
Normalized normalize(const Instance& inst, const std::vector<ItemClass>& cls);

}  // namespace manna
