#include "manna/reduction.hpp"

#include <stdexcept>

namespace manna {

void BimatrixGame::validate() const {
  if (n < 1) throw std::invalid_argument("game: need at least one strategy");
  auto check = [&](const std::vector<std::vector<Rat>>& M, const char* name) {
    if (static_cast<int>(M.size()) != n)
      throw std::invalid_argument(std::string("game: ") + name + " has wrong row count");
    for (const auto& row : M) {
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument(std::string("game: ") + name +
                                    " has wrong column count");
      for (const Rat& v : row)
        if (v < 0 || v > 1)
          throw std::invalid_argument(std::string("game: ") + name +
                                      " entry outside [0,1]");
    }
  };
  check(R, "R");
  check(C, "C");
}

namespace {

const Rat kH = 10;

// Per-(agent,item) disutility spec before padding: positive slopes; a
// negative firstLength marks a linear (single-segment) function.
struct CostSpec {
  Rat firstSlope = kH;
  Rat firstLength = -1;
};

Rat pos(const Rat& v) { return v > 0 ? v : Rat(0); }

}  // namespace

Instance reduce_game_to_exchange(const BimatrixGame& game) {
  game.validate();
  const int n = game.n;
  const int m = 2 * n + 2;
  const Rat N(n);
  const Rat N4 = N * N * N * N;
  const Rat N6 = N4 * N * N;
  const Rat N8 = N6 * N * N;

  std::vector<std::vector<Rat>> endow;          // per agent, size m
  std::vector<std::vector<CostSpec>> cost;      // per agent, size m
  auto add_agent = [&]() -> int {
    endow.emplace_back(m, Rat(0));
    cost.emplace_back(m);
    return static_cast<int>(endow.size()) - 1;
  };

  // Price-regulating agents: one per ordered pair (j, j'), j != j'.
  for (int j = 0; j < m; ++j)
    for (int jp = 0; jp < m; ++jp) {
      if (jp == j) continue;
      int i = add_agent();
      endow[i][j] = 1 / N;
      cost[i][j].firstSlope = 1;
      cost[i][jp].firstSlope = 2;
    }

  // Deficit agents: one per strategy bad j in [2n], endowed in bad m-1.
  for (int j = 0; j < 2 * n; ++j) {
    int i = add_agent();
    endow[i][m - 2] = 1 / N8;
    cost[i][j].firstSlope = 1;
  }

  // Row-player's agents: for each ordered pair (s, s'), s != s', agent
  // a_{s,s',R} with r_k = R_{s'k} - R_{sk} and r = sum_k r_k.
  for (int s = 0; s < n; ++s)
    for (int sp = 0; sp < n; ++sp) {
      if (sp == s) continue;
      int i = add_agent();
      Rat r = 0;
      endow[i][s] = 1 / N4;
      cost[i][s] = {Rat(1), 1 / N4};
      for (int k = 0; k < n; ++k) {
        Rat rk = game.R[sp][k] - game.R[s][k];
        r += rk;
        endow[i][n + k] = pos(rk) / N6;
        cost[i][n + k] = {Rat(1, 3), pos(-rk) / N6};
      }
      endow[i][m - 2] = pos(-r) / N6;
      cost[i][m - 2] = {Rat(1, 3), pos(r) / N6};
      cost[i][m - 1].firstSlope = 3;
    }

  // Column-player's agents: agent a_{s,s',C} with c_k = C_{ks'} - C_{ks}.
  for (int s = 0; s < n; ++s)
    for (int sp = 0; sp < n; ++sp) {
      if (sp == s) continue;
      int i = add_agent();
      Rat c = 0;
      endow[i][n + s] = 1 / N4;
      cost[i][n + s] = {Rat(1), 1 / N4};
      for (int k = 0; k < n; ++k) {
        Rat ck = game.C[k][sp] - game.C[k][s];
        c += ck;
        endow[i][k] = pos(ck) / N6;
        cost[i][k] = {Rat(1, 3), pos(-ck) / N6};
      }
      endow[i][m - 2] = pos(-c) / N6;
      cost[i][m - 2] = {Rat(1, 3), pos(c) / N6};
      cost[i][m - 1].firstSlope = 3;
    }

  Instance inst;
  inst.numAgents = static_cast<int>(endow.size());
  inst.numItems = m;
  inst.setting = Setting::Exchange;
  inst.endowment = std::move(endow);

  std::vector<Rat> supply(m, Rat(0));
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < m; ++j) supply[j] += inst.endowment[i][j];

  inst.utility.resize(inst.numAgents);
  for (int i = 0; i < inst.numAgents; ++i) {
    inst.utility[i].resize(m);
    for (int j = 0; j < m; ++j) {
      const CostSpec& cs = cost[i][j];
      Rat pad = supply[j] * (1 + kLastSegmentPad);
      auto& segs = inst.utility[i][j];
      if (cs.firstLength > 0) {
        segs.push_back({-cs.firstSlope, cs.firstLength});
        segs.push_back({-kH, pad});
      } else {
        // Zero-length or linear first segment: one padded segment.
        Rat slope = cs.firstLength < 0 ? cs.firstSlope : kH;
        segs.push_back({-slope, pad});
      }
    }
  }
  inst.validate();
  return inst;
}

std::pair<MixedStrategy, MixedStrategy> extract_strategies(
    const std::vector<Rat>& equilibriumPrices, int n) {
  if (static_cast<int>(equilibriumPrices.size()) < 2 * n)
    throw std::runtime_error("extract_strategies: need at least 2n prices");
  Rat minAbs = 0;
  for (int j = 0; j < 2 * n; ++j) {
    const Rat& p = equilibriumPrices[j];
    if (p >= 0) throw std::runtime_error("extract_strategies: prices must be negative");
    Rat a = -p;
    if (minAbs == 0 || a < minAbs) minAbs = a;
  }
  MixedStrategy u(n), v(n);
  Rat usum = 0, vsum = 0;
  for (int s = 0; s < n; ++s) {
    u[s] = pos(2 - (-equilibriumPrices[s]) / minAbs);
    v[s] = pos(2 - (-equilibriumPrices[n + s]) / minAbs);
    usum += u[s];
    vsum += v[s];
  }
  if (usum == 0 || vsum == 0)
    throw std::runtime_error("extract_strategies: degenerate prices, u or v is zero");
  for (int s = 0; s < n; ++s) {
    u[s] /= usum;
    v[s] /= vsum;
  }
  return {std::move(u), std::move(v)};
}

bool check_well_supported(const BimatrixGame& game, const MixedStrategy& alpha,
                          const MixedStrategy& beta, const Rat& eps) {
  const int n = game.n;
  std::vector<Rat> rowPayoff(n, Rat(0)), colPayoff(n, Rat(0));
  for (int s = 0; s < n; ++s)
    for (int k = 0; k < n; ++k) {
      rowPayoff[s] += game.R[s][k] * beta[k];   // (R beta)_s
      colPayoff[s] += alpha[k] * game.C[k][s];  // (alpha^T C)_s
    }
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (rowPayoff[s] < rowPayoff[t] - eps && alpha[s] != 0) return false;
      if (colPayoff[s] < colPayoff[t] - eps && beta[s] != 0) return false;
    }
  return true;
}

Instance exchange_to_fisher(const Instance& inst) {
  inst.validate();
  for (const auto& agent : inst.utility)
    for (const auto& segs : agent)
      for (const Segment& seg : segs)
        if (seg.slope > 0)
          throw std::invalid_argument("exchange_to_fisher: instance must be bads-only");

  Rat t = 0;
  for (const auto& row : inst.endowment)
    for (const Rat& w : row)
      if (w > t) t = w;
  if (t == 0) throw std::invalid_argument("exchange_to_fisher: zero total endowment");

  Instance out = inst;
  out.setting = Setting::CEEI;
  out.weights.clear();
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numItems; ++j) {
      Rat lead = t - inst.endowment[i][j];
      out.endowment[i][j] = t;
      if (lead == 0) continue;
      auto& segs = out.utility[i][j];
      if (segs.front().slope == 0)
        segs.front().length += lead;  // keep slopes strictly decreasing
      else
        segs.insert(segs.begin(), {Rat(0), lead});
    }
  out.validate();
  return out;
}

}  // namespace manna
