#include "manna/oracle.hpp"

#include <optional>
#include <stdexcept>

namespace manna {

namespace {

struct Block {
  int agent, item;
  int nseg;
};

// Exact Gaussian elimination on an augmented system rows x (cols + 1).
enum class LinStatus { Unique, Inconsistent, Underdetermined };

LinStatus solve_linear(std::vector<std::vector<Rat>> aug, int cols,
                       std::vector<Rat>& out) {
  const int rows = static_cast<int>(aug.size());
  std::vector<int> pivotRow(cols, -1);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int sel = -1;
    for (int r = rank; r < rows; ++r)
      if (aug[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(aug[sel], aug[rank]);
    Rat inv = 1 / aug[rank][col];
    for (int t = col; t <= cols; ++t) aug[rank][t] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || aug[r][col] == 0) continue;
      Rat factor = aug[r][col];
      for (int t = col; t <= cols; ++t) aug[r][t] -= factor * aug[rank][t];
    }
    pivotRow[col] = rank;
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (aug[r][cols] != 0) return LinStatus::Inconsistent;
  for (int col = 0; col < cols; ++col)
    if (pivotRow[col] < 0) return LinStatus::Underdetermined;
  out.assign(cols, Rat(0));
  for (int col = 0; col < cols; ++col) out[col] = aug[pivotRow[col]][cols];
  return LinStatus::Unique;
}

bool same_equilibrium(const Equilibrium& a, const Equilibrium& b) {
  return a.prices == b.prices && a.alloc == b.alloc;
}

}  // namespace

OracleResult enumerate_equilibria(const Instance& inst, int cap) {
  inst.validate();
  OracleResult result;
  Preprocessed pre = preprocess(inst);
  Normalized norm = normalize(pre.inst, pre.cls);
  const Instance& red = norm.inst;
  const int n = red.numAgents;
  const int m = red.numItems;

  auto active = [&](int j) { return pre.cls[j].status == ItemStatus::Active; };
  auto is_good = [&](int j) { return pre.cls[j].kind == ItemKind::Good; };

  std::vector<Block> blocks;
  int totalSegs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (!active(j) || red.utility[i][j].empty()) continue;
      if (is_good(j) && red.utility[i][j].front().slope <= 0) continue;
      blocks.push_back({i, j, static_cast<int>(red.utility[i][j].size())});
      totalSegs += static_cast<int>(red.utility[i][j].size());
    }
  if (totalSegs > cap)
    throw std::invalid_argument("enumerate_equilibria: instance exceeds segment cap");

  int firstActive = -1;
  for (int j = 0; j < m && firstActive < 0; ++j)
    if (active(j)) firstActive = j;
  if (firstActive < 0) {
    // Everything was settled at price zero by preprocessing.
    Equilibrium empty;
    empty.prices.assign(m, Rat(0));
    empty.alloc.resize(n);
    for (int i = 0; i < n; ++i) {
      empty.alloc[i].resize(m);
      for (int j = 0; j < m; ++j) empty.alloc[i][j].assign(red.utility[i][j].size(), Rat(0));
    }
    result.equilibria.push_back(restore_equilibrium(empty, inst, pre, norm));
    return result;
  }

  // Walk the cross product of per-block label patterns:
  // forcedCount in 0..nseg, plus optionally one flexible segment after them.
  const int B = static_cast<int>(blocks.size());
  Configuration config;
  config.blocks.assign(B, {0, false});

  auto try_config = [&]() {
    // Unknown layout: active prices, rho for agents owning a flexible
    // segment, spending f per flexible segment.
    std::vector<int> pIdx(m, -1), rhoIdx(n, -1), fIdx(B, -1);
    int cols = 0;
    for (int j = 0; j < m; ++j)
      if (active(j)) pIdx[j] = cols++;
    for (int b = 0; b < B; ++b)
      if (config.blocks[b].second && rhoIdx[blocks[b].agent] < 0)
        rhoIdx[blocks[b].agent] = cols++;
    for (int b = 0; b < B; ++b)
      if (config.blocks[b].second) fIdx[b] = cols++;

    std::vector<std::vector<Rat>> aug;
    // Reserve up front: later code keeps pointers into `aug`.
    aug.reserve(static_cast<std::size_t>(B + n + m + 1));
    auto new_row = [&]() -> std::vector<Rat>& {
      aug.emplace_back(cols + 1, Rat(0));
      return aug.back();
    };

    // Flexible ratio equalities: U * rho_i - p_j = 0.
    for (int b = 0; b < B; ++b) {
      if (!config.blocks[b].second) continue;
      const auto& [c, flex] = config.blocks[b];
      auto& row = new_row();
      row[rhoIdx[blocks[b].agent]] = red.utility[blocks[b].agent][blocks[b].item][c].slope;
      row[pIdx[blocks[b].item]] = -1;
    }
    // Budgets: sum of spending equals endowment value.
    std::vector<std::vector<Rat>*> budgetRows(n);
    for (int i = 0; i < n; ++i) {
      auto& row = new_row();
      for (int j = 0; j < m; ++j)
        if (active(j)) row[pIdx[j]] -= red.endowment[i][j];
      budgetRows[i] = &aug.back();
    }
    // Money-form clearing: total spending on j equals supply (=1) * p_j.
    std::vector<std::vector<Rat>*> clearRows(m, nullptr);
    for (int j = 0; j < m; ++j) {
      if (!active(j)) continue;
      auto& row = new_row();
      row[pIdx[j]] = -1;
      clearRows[j] = &aug.back();
    }
    for (int b = 0; b < B; ++b) {
      const auto& [c, flex] = config.blocks[b];
      const Block& blk = blocks[b];
      for (int k = 0; k < c; ++k) {
        Rat len = red.utility[blk.agent][blk.item][k].length;
        (*budgetRows[blk.agent])[pIdx[blk.item]] += len;
        (*clearRows[blk.item])[pIdx[blk.item]] += len;
      }
      if (flex) {
        (*budgetRows[blk.agent])[fIdx[b]] += 1;
        (*clearRows[blk.item])[fIdx[b]] += 1;
      }
    }
    // Scale normalization on the first active item.
    {
      auto& row = new_row();
      row[pIdx[firstActive]] = 1;
      row[cols] = is_good(firstActive) ? 1 : -1;
    }

    std::vector<Rat> sol;
    LinStatus status = solve_linear(std::move(aug), cols, sol);
    if (status == LinStatus::Inconsistent) return;
    if (status == LinStatus::Underdetermined) {
      ++result.degenerateConfigs;
      return;
    }

    // Sign checks.
    for (int j = 0; j < m; ++j) {
      if (!active(j)) continue;
      if (is_good(j) ? sol[pIdx[j]] <= 0 : sol[pIdx[j]] >= 0) return;
    }
    for (int i = 0; i < n; ++i)
      if (rhoIdx[i] >= 0 && sol[rhoIdx[i]] <= 0) return;

    // Label-consistency: per agent an interval of admissible thresholds.
    std::vector<Rat> lower(n, Rat(0)), upper(n);
    std::vector<char> haveUpper(n, 0);
    auto add_lower = [&](int i, const Rat& v) {
      if (v > lower[i]) lower[i] = v;
    };
    auto add_upper = [&](int i, const Rat& v) {
      if (!haveUpper[i] || v < upper[i]) {
        upper[i] = v;
        haveUpper[i] = 1;
      }
    };
    for (int b = 0; b < B; ++b) {
      const auto& [c, flex] = config.blocks[b];
      const Block& blk = blocks[b];
      bool good = is_good(blk.item);
      const Rat& pj = sol[pIdx[blk.item]];
      for (int k = 0; k < blk.nseg; ++k) {
        Rat ratio = red.utility[blk.agent][blk.item][k].slope / pj;
        if (k < c) {  // forced
          if (good)
            add_upper(blk.agent, ratio);
          else
            add_lower(blk.agent, ratio);
        } else if (flex && k == c) {  // flexible: threshold equals the ratio
          add_lower(blk.agent, ratio);
          add_upper(blk.agent, ratio);
        } else {  // undesirable
          if (good)
            add_lower(blk.agent, ratio);
          else
            add_upper(blk.agent, ratio);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (haveUpper[i] && lower[i] > upper[i]) return;
      if (rhoIdx[i] >= 0) {
        Rat lambda = 1 / sol[rhoIdx[i]];
        if (lambda < lower[i] || (haveUpper[i] && lambda > upper[i])) return;
      }
    }

    // Assemble the allocation; flexible amounts must fit their segment.
    Equilibrium eq;
    eq.prices.assign(m, Rat(0));
    eq.alloc.resize(n);
    for (int i = 0; i < n; ++i) {
      eq.alloc[i].resize(m);
      for (int j = 0; j < m; ++j) eq.alloc[i][j].assign(red.utility[i][j].size(), Rat(0));
    }
    for (int j = 0; j < m; ++j)
      if (active(j)) eq.prices[j] = sol[pIdx[j]];
    for (int b = 0; b < B; ++b) {
      const auto& [c, flex] = config.blocks[b];
      const Block& blk = blocks[b];
      for (int k = 0; k < c; ++k)
        eq.alloc[blk.agent][blk.item][k] = red.utility[blk.agent][blk.item][k].length;
      if (flex) {
        Rat x = sol[fIdx[b]] / sol[pIdx[blk.item]];
        if (x < 0 || x > red.utility[blk.agent][blk.item][c].length) return;
        eq.alloc[blk.agent][blk.item][c] = x;
      }
    }

    Equilibrium full = canonical_scale(restore_equilibrium(eq, inst, pre, norm));
    for (const Equilibrium& known : result.equilibria)
      if (same_equilibrium(known, full)) return;
    result.equilibria.push_back(std::move(full));
  };

  // Odometer over block patterns.
  std::vector<int> pattern(B, 0);  // 0..2*nseg: even = (c, no flex), odd = (c, flex)
  auto decode = [&](int b) {
    int v = pattern[b];
    config.blocks[b] = {v / 2, v % 2 == 1};
  };
  for (int b = 0; b < B; ++b) decode(b);
  while (true) {
    try_config();
    int b = 0;
    while (b < B) {
      if (++pattern[b] <= 2 * blocks[b].nseg) {
        decode(b);
        break;
      }
      pattern[b] = 0;
      decode(b);
      ++b;
    }
    if (b == B) break;
  }
  return result;
}

}  // namespace manna
