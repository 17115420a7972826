#include "manna/instance.hpp"

#include <stdexcept>
#include <string>

namespace manna {

namespace {

std::string loc(int agent, int item) {
  return "agent " + std::to_string(agent + 1) + ", item " + std::to_string(item + 1);
}

}  // namespace

Rat Instance::supply(int item) const {
  Rat total = 0;
  for (int i = 0; i < numAgents; ++i) total += endowment[i][item];
  return total;
}

void Instance::validate() const {
  if (numAgents <= 0 || numItems <= 0)
    throw std::invalid_argument("instance must have at least one agent and one item");
  if (static_cast<int>(utility.size()) != numAgents ||
      static_cast<int>(endowment.size()) != numAgents)
    throw std::invalid_argument("utility/endowment row count does not match numAgents");
  for (int i = 0; i < numAgents; ++i) {
    if (static_cast<int>(utility[i].size()) != numItems ||
        static_cast<int>(endowment[i].size()) != numItems)
      throw std::invalid_argument("utility/endowment column count does not match numItems");
    for (int j = 0; j < numItems; ++j) {
      const auto& segs = utility[i][j];
      if (segs.empty())
        throw std::invalid_argument("empty utility function for " + loc(i, j));
      int first_sign = sgn(segs.front().slope);
      for (std::size_t k = 0; k < segs.size(); ++k) {
        if (segs[k].length <= 0)
          throw std::invalid_argument("non-positive segment length for " + loc(i, j));
        if (k > 0 && !(segs[k].slope < segs[k - 1].slope))
          throw std::invalid_argument("slopes not strictly decreasing for " + loc(i, j));
        // A function may not mix strictly positive and strictly negative
        // slopes: that would make the item a good the agent can be hurt by.
        if (first_sign > 0 && segs[k].slope < 0)
          throw std::invalid_argument("sign-mixing utility function for " + loc(i, j));
      }
      if (endowment[i][j] < 0)
        throw std::invalid_argument("negative endowment for " + loc(i, j));
    }
  }
  if (!weights.empty() && static_cast<int>(weights.size()) != numAgents)
    throw std::invalid_argument("weights size does not match numAgents");
  for (int j = 0; j < numItems; ++j)
    if (supply(j) <= 0)
      throw std::invalid_argument("item " + std::to_string(j + 1) + " has zero supply");
}

std::vector<ItemClass> classify_items(const Instance& inst) {
  std::vector<ItemClass> cls(inst.numItems);
  for (int j = 0; j < inst.numItems; ++j) {
    bool liked = false;
    for (int i = 0; i < inst.numAgents; ++i) {
      if (inst.utility[i][j].empty())
        throw std::invalid_argument("empty utility function for " + loc(i, j));
      if (inst.utility[i][j].front().slope > 0) liked = true;
    }
    cls[j].kind = liked ? ItemKind::Good : ItemKind::Bad;
    cls[j].status = ItemStatus::Active;
  }
  return cls;
}

Rat desire(const Instance& inst, int item) {
  Rat total = 0;
  for (int i = 0; i < inst.numAgents; ++i)
    for (const Segment& s : inst.utility[i][item])
      if (s.slope > 0) total += s.length;
  return total;
}

Rat indifference(const Instance& inst, int item) {
  Rat total = 0;
  for (int i = 0; i < inst.numAgents; ++i) {
    const auto& segs = inst.utility[i][item];
    if (segs.front().slope == 0) total += segs.front().length;
  }
  return total;
}

Preprocessed preprocess(const Instance& inst) {
  Preprocessed out;
  out.inst = inst;
  out.cls = classify_items(inst);
  out.fixed.freeDisposal.assign(inst.numItems, Rat(0));
  out.leadDrop.assign(inst.numAgents, std::vector<int>(inst.numItems, 0));

  for (int j = 0; j < inst.numItems; ++j) {
    Rat supply_j = inst.supply(j);
    if (out.cls[j].kind == ItemKind::Good) {
      if (desire(inst, j) < supply_j) {
        // Undersold good: price 0, every agent takes her positive segments in
        // full, the remainder is free disposal.
        out.cls[j].status = ItemStatus::ZeroPriceGood;
        Rat allocated = 0;
        for (int i = 0; i < inst.numAgents; ++i)
          for (std::size_t k = 0; k < inst.utility[i][j].size(); ++k)
            if (inst.utility[i][j][k].slope > 0) {
              out.fixed.amount[{i, j, static_cast<int>(k)}] = inst.utility[i][j][k].length;
              allocated += inst.utility[i][j][k].length;
            }
        out.fixed.freeDisposal[j] = supply_j - allocated;
      }
    } else {
      if (indifference(inst, j) >= supply_j) {
        // The whole supply fits on zero-disutility segments: price 0, fill the
        // zero-slope first segments greedily in agent order.
        out.cls[j].status = ItemStatus::ZeroPriceBad;
        Rat remaining = supply_j;
        for (int i = 0; i < inst.numAgents && remaining > 0; ++i) {
          const Segment& first = inst.utility[i][j].front();
          if (first.slope == 0) {
            Rat take = first.length < remaining ? first.length : remaining;
            out.fixed.amount[{i, j, 0}] = take;
            remaining -= take;
          }
        }
      }
    }
  }

  // Absorb zero-slope leading segments of surviving bads into endowments
  // (inverse of the Fisher-conversion map, Eq. (19)): such a segment earns
  // money at zero disutility and is always fully consumed at a negative
  // price, so it is equivalent to extra endowment the agent buys back.
  for (int j = 0; j < inst.numItems; ++j) {
    if (out.cls[j].kind != ItemKind::Bad || out.cls[j].status != ItemStatus::Active)
      continue;
    for (int i = 0; i < inst.numAgents; ++i) {
      auto& segs = out.inst.utility[i][j];
      if (segs.front().slope == 0) {
        out.fixed.amount[{i, j, 0}] = segs.front().length;
        out.inst.endowment[i][j] -= segs.front().length;
        segs.erase(segs.begin());
        out.leadDrop[i][j] = 1;
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> economy_graph(const Instance& inst,
                                            const std::vector<ItemClass>& cls) {
  // Agent i is non-satiated for good l if she can always gain utility from
  // more of it within the supply: positive-slope length covers the supply, or
  // the (padded) last segment still has positive slope.
  auto non_satiated = [&](int i, int l) {
    const auto& segs = inst.utility[i][l];
    if (segs.back().slope > 0) return true;
    Rat positive_len = 0;
    for (const Segment& s : segs)
      if (s.slope > 0) positive_len += s.length;
    return positive_len >= inst.supply(l);
  };
  std::vector<std::vector<int>> adj(inst.numAgents);
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numAgents; ++j) {
      bool edge = false;
      for (int l = 0; l < inst.numItems && !edge; ++l)
        if (cls[l].kind == ItemKind::Good && cls[l].status == ItemStatus::Active &&
            inst.endowment[j][l] > 0 && non_satiated(i, l))
          edge = true;
      if (edge) adj[i].push_back(j);
    }
  return adj;
}

namespace {

// Reachability of every node from `start` along `adj`.
bool reaches_all(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == adj.size();
}

}  // namespace

SufficiencyReport check_sufficiency(const Instance& inst,
                                    const std::vector<ItemClass>& cls) {
  SufficiencyReport report;
  bool any_good = false;
  for (const ItemClass& c : cls)
    if (c.kind == ItemKind::Good && c.status == ItemStatus::Active) any_good = true;
  report.allBads = !any_good;
  if (report.allBads) {
    report.condition1 = true;
    report.stronglyConnected = true;  // vacuous in the all-bads case
    return report;
  }

  report.condition1 = true;
  for (int i = 0; i < inst.numAgents; ++i) {
    bool has_good = false, has_bad = false;
    for (int j = 0; j < inst.numItems; ++j) {
      if (cls[j].status != ItemStatus::Active || inst.endowment[i][j] <= 0) continue;
      (cls[j].kind == ItemKind::Good ? has_good : has_bad) = true;
    }
    if (!has_good || !has_bad) report.condition1 = false;
  }

  auto adj = economy_graph(inst, cls);
  auto rev = std::vector<std::vector<int>>(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u)
    for (int v : adj[u]) rev[v].push_back(static_cast<int>(u));
  report.stronglyConnected = reaches_all(adj, 0) && reaches_all(rev, 0);
  return report;
}

Normalized normalize(const Instance& inst, const std::vector<ItemClass>& cls) {
  Normalized out;
  out.inst = inst;
  out.scale.assign(inst.numItems, Rat(1));
  for (int j = 0; j < inst.numItems; ++j) {
    if (cls[j].status != ItemStatus::Active) continue;
    Rat s = inst.supply(j);
    if (s == 1) continue;
    out.scale[j] = s;
    for (int i = 0; i < inst.numAgents; ++i) {
      out.inst.endowment[i][j] /= s;
      for (Segment& seg : out.inst.utility[i][j]) {
        seg.length /= s;
        seg.slope *= s;
      }
    }
  }
  return out;
}

}  // namespace manna
