#include "manna/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace manna {

namespace {

struct PricedSeg {
  int item, seg;
  Rat ratio;   // slope / price
  Rat money;   // length * price (signed spending if fully consumed)
  bool goodSide;  // price > 0
};

std::vector<PricedSeg> priced_segments(const Instance& inst,
                                       const std::vector<Rat>& prices, int agent) {
  std::vector<PricedSeg> out;
  for (int j = 0; j < inst.numItems; ++j) {
    if (prices[j] == 0) continue;
    const auto& segs = inst.utility[agent][j];
    for (std::size_t k = 0; k < segs.size(); ++k)
      out.push_back({j, static_cast<int>(k), segs[k].slope / prices[j],
                     segs[k].length * prices[j], prices[j] > 0});
  }
  return out;
}

}  // namespace

PartitionReport partition_segments(const Instance& inst, const std::vector<Rat>& prices,
                                   int agent, bool allowZeroPrices) {
  if (!allowZeroPrices)
    for (int j = 0; j < inst.numItems; ++j)
      if (prices[j] == 0)
        throw std::invalid_argument("partition_segments: zero price on item " +
                                    std::to_string(j + 1));

  PartitionReport report;
  auto segs = priced_segments(inst, prices, agent);

  // Group into equivalence classes by exact ratio, per side.
  std::map<Rat, RatioClass> goods, bads;
  for (const PricedSeg& s : segs) {
    auto& side = s.goodSide ? goods : bads;
    auto [it, fresh] = side.try_emplace(s.ratio);
    if (fresh) it->second.ratio = s.ratio;
    it->second.segments.emplace_back(s.item, s.seg);
  }

  // Budget and the spending sweep: S(lambda) = forced spending, decreasing in
  // lambda; the flexible class at lambda spans [lo, hi] around it.
  Rat budget = 0;
  for (int j = 0; j < inst.numItems; ++j)
    budget += inst.endowment[agent][j] * prices[j];

  std::vector<Rat> candidates{Rat(0)};
  for (const PricedSeg& s : segs)
    if (s.ratio >= 0) candidates.push_back(s.ratio);
  std::sort(candidates.begin(), candidates.end(), std::greater<Rat>());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  bool found = false;
  Rat lambda;
  for (const Rat& r : candidates) {
    Rat lo = 0, hi = 0;
    for (const PricedSeg& s : segs) {
      bool forced = s.goodSide ? s.ratio > r : s.ratio < r;
      if (forced) {
        lo += s.money;
        hi += s.money;
      } else if (s.ratio == r) {
        (s.goodSide ? hi : lo) += s.money;  // good money > 0, bad money < 0
      }
    }
    if (lo <= budget && budget <= hi) {
      lambda = r;
      found = true;
      break;  // candidates are sorted descending: take the largest threshold
    }
  }
  report.budgetAttainable = found;
  if (found) report.lambda = lambda;

  auto emit = [&](std::map<Rat, RatioClass>& side, bool goodSide,
                  std::vector<RatioClass>& out) {
    for (auto& [ratio, cls] : side) {
      if (found) {
        bool forced = goodSide ? ratio > lambda : ratio < lambda;
        cls.label = forced ? SegLabel::Forced
                           : (ratio == lambda ? SegLabel::Flexible : SegLabel::Undesirable);
      }
      out.push_back(std::move(cls));
    }
  };
  emit(goods, true, report.goodClasses);
  std::reverse(report.goodClasses.begin(), report.goodClasses.end());  // bpb decreasing
  emit(bads, false, report.badClasses);  // ppb increasing
  return report;
}

VerifyReport verify_equilibrium(const Instance& inst, const Equilibrium& eq,
                                const Rat& epsilon) {
  VerifyReport report;
  report.optimalBundles.assign(inst.numAgents, 0);
  report.budgetBalanced.assign(inst.numAgents, 0);
  report.clearing.assign(inst.numItems, 0);

  // Shape, bounds and fill order.
  auto malformed = [&](const std::string& why) {
    report.malformed = true;
    report.malformedReason = why;
  };
  if (static_cast<int>(eq.prices.size()) != inst.numItems ||
      static_cast<int>(eq.alloc.size()) != inst.numAgents) {
    malformed("size mismatch");
    return report;
  }
  for (int i = 0; i < inst.numAgents; ++i) {
    if (static_cast<int>(eq.alloc[i].size()) != inst.numItems) {
      malformed("size mismatch");
      return report;
    }
    for (int j = 0; j < inst.numItems; ++j) {
      const auto& segs = inst.utility[i][j];
      const auto& x = eq.alloc[i][j];
      if (x.size() != segs.size()) {
        malformed("segment count mismatch");
        return report;
      }
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] < 0 || x[k] > segs[k].length) {
          malformed("allocation outside segment bounds");
          return report;
        }
        if (k > 0 && x[k] > 0 && x[k - 1] != segs[k - 1].length) {
          malformed("segments not filled in order");
          return report;
        }
      }
    }
  }

  auto cls = classify_items(inst);
  for (int j = 0; j < inst.numItems; ++j) {
    if (cls[j].kind == ItemKind::Good && eq.prices[j] < 0) report.priceSigns = false;
    if (cls[j].kind == ItemKind::Bad && eq.prices[j] > 0) report.priceSigns = false;
  }

  // Per-agent optimal bundle: budget balance plus the exact threshold test.
  // Lower bounds on lambda come from goods not fully bought and bads being
  // taken; upper bounds from goods being bought and bads not fully taken.
  for (int i = 0; i < inst.numAgents; ++i) {
    Rat budget = 0, spending = 0;
    for (int j = 0; j < inst.numItems; ++j) {
      budget += inst.endowment[i][j] * eq.prices[j];
      for (const Rat& x : eq.alloc[i][j]) spending += x * eq.prices[j];
    }
    report.budgetBalanced[i] = spending == budget;

    bool ok = true;
    Rat lower = 0;  // lambda >= 0
    bool haveUpper = false;
    Rat upper;
    for (int j = 0; j < inst.numItems; ++j) {
      const auto& segs = inst.utility[i][j];
      const auto& x = eq.alloc[i][j];
      if (eq.prices[j] == 0) {
        // Price-zero items: positive segments of an undersold good must be
        // taken in full; negative segments must stay empty either way.
        for (std::size_t k = 0; k < segs.size(); ++k) {
          if (segs[k].slope > 0 && x[k] != segs[k].length) ok = false;
          if (segs[k].slope < 0 && x[k] != 0) ok = false;
        }
        continue;
      }
      for (std::size_t k = 0; k < segs.size(); ++k) {
        Rat ratio = segs[k].slope / eq.prices[j];
        bool goodSide = eq.prices[j] > 0;
        bool lowerBound = goodSide ? x[k] < segs[k].length : x[k] > 0;
        bool upperBound = goodSide ? x[k] > 0 : x[k] < segs[k].length;
        if (lowerBound && ratio > lower) lower = ratio;
        if (upperBound && (!haveUpper || ratio < upper)) {
          upper = ratio;
          haveUpper = true;
        }
      }
    }
    if (haveUpper && lower > upper) ok = false;
    report.optimalBundles[i] = ok && report.budgetBalanced[i];
  }

  // Clearing.
  for (int j = 0; j < inst.numItems; ++j) {
    Rat total = 0;
    for (int i = 0; i < inst.numAgents; ++i)
      for (const Rat& x : eq.alloc[i][j]) total += x;
    Rat supply = inst.supply(j);
    Rat slack = epsilon * supply;
    if (eq.prices[j] == 0 && cls[j].kind == ItemKind::Good)
      report.clearing[j] = total <= supply + slack;  // free disposal
    else
      report.clearing[j] = rat_abs(total - supply) <= slack;
  }

  bool all = report.priceSigns && !report.malformed;
  for (char b : report.optimalBundles) all = all && b;
  for (char b : report.budgetBalanced) all = all && b;
  for (char b : report.clearing) all = all && b;
  report.overall = all;
  return report;
}

Rat bundle_utility(const Instance& inst, int agent, const std::vector<Rat>& bundle) {
  Rat total = 0;
  for (int j = 0; j < inst.numItems; ++j) {
    Rat remaining = bundle[j];
    const auto& segs = inst.utility[agent][j];
    for (std::size_t k = 0; k < segs.size() && remaining > 0; ++k) {
      Rat take = (k + 1 == segs.size()) ? remaining  // last segment absorbs the rest
                                        : std::min(remaining, segs[k].length);
      total += take * segs[k].slope;
      remaining -= take;
    }
  }
  return total;
}

FairnessReport check_fairness(const Instance& inst, const Equilibrium& eq) {
  FairnessReport report;
  std::vector<Rat> eta(inst.numAgents, Rat(1));
  if (inst.setting == Setting::CEEI) {
    report.applicable = true;
  } else if (inst.setting == Setting::Fisher && !inst.weights.empty()) {
    report.applicable = true;
    eta = inst.weights;
  } else {
    return report;
  }

  auto bundles = eq.aggregated();
  std::vector<Rat> own(inst.numAgents);
  for (int i = 0; i < inst.numAgents; ++i) own[i] = bundle_utility(inst, i, bundles[i]);

  report.envyFree = true;
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numAgents; ++j) {
      if (i == j) continue;
      // u_i(x_i)/eta_i >= u_i(x_j)/eta_j, cross-multiplied (eta > 0).
      if (own[i] * eta[j] < bundle_utility(inst, i, bundles[j]) * eta[i])
        report.envyFree = false;
    }

  std::vector<Rat> supply(inst.numItems);
  Rat etaTotal = 0;
  for (const Rat& e : eta) etaTotal += e;
  for (int j = 0; j < inst.numItems; ++j) supply[j] = inst.supply(j);
  report.proportional = true;
  for (int i = 0; i < inst.numAgents; ++i)
    if (own[i] * etaTotal < bundle_utility(inst, i, supply) * eta[i])
      report.proportional = false;
  return report;
}

}  // namespace manna
