#include "manna/lcp.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace manna {

std::string label_str(const VariableLabel& label) {
  std::ostringstream out;
  switch (label.kind) {
    case VarKind::Price:
      out << "p[" << label.item + 1 << "]";
      break;
    case VarKind::Spending:
      out << "f[" << label.agent + 1 << "," << label.item + 1 << "," << label.segment + 1 << "]";
      break;
    case VarKind::InverseBpb:
      out << "r[" << label.agent + 1 << "]";
      break;
    case VarKind::Supplement:
      out << "s[" << label.agent + 1 << "," << label.item + 1 << "," << label.segment + 1 << "]";
      break;
    case VarKind::Z:
      out << "z";
      break;
  }
  return out.str();
}

std::pair<Rat, Rat> choose_constants(const Instance& inst) {
  const Rat P = 1;
  Rat u_min;
  bool have_min = false;
  Rat u_max = 0;  // largest positive slope (0 if all-bads)
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numItems; ++j)
      for (const Segment& s : inst.utility[i][j]) {
        if (s.slope == 0) continue;
        Rat mag = rat_abs(s.slope);
        if (!have_min || mag < u_min) {
          u_min = mag;
          have_min = true;
        }
        if (s.slope > u_max) u_max = s.slope;
      }
  if (!have_min) throw std::invalid_argument("choose_constants: all slopes are zero");

  Rat total_endowment = 0;
  for (int i = 0; i < inst.numAgents; ++i)
    for (int j = 0; j < inst.numItems; ++j) total_endowment += inst.endowment[i][j];

  Rat R = (P / u_min) * (2 + total_endowment);

  // Primary-ray dominance: with goods present, the starting z = U_max*R - P
  // must dominate every budget deficit and every good-spending row. The
  // formula already guarantees this for non-negative endowments; double R
  // defensively until it holds in general.
  if (u_max > 0) {
    auto cls = classify_items(inst);
    Rat worst_deficit = 0;  // max over agents of P*(sum W over bads - over goods)
    for (int i = 0; i < inst.numAgents; ++i) {
      Rat deficit = 0;
      for (int j = 0; j < inst.numItems; ++j)
        deficit += (cls[j].kind == ItemKind::Bad ? P : -P) * inst.endowment[i][j];
      if (deficit > worst_deficit) worst_deficit = deficit;
    }
    while (u_max * R - P <= worst_deficit || u_max * R - P <= P) R *= 2;
  }
  return {P, R};
}

LcpSystem build_mixed_lcp(const Instance& inst, const std::vector<ItemClass>& cls,
                          const Rat& P, const Rat& R, std::uint64_t seed) {
  const int n = inst.numAgents;
  const int m = inst.numItems;
  LcpSystem lcp;
  lcp.P = P;
  lcp.R = R;
  lcp.rCol.assign(n, -1);
  lcp.pCol.assign(m, -1);
  lcp.fCol.assign(n, std::vector<std::vector<int>>(m));
  lcp.sCol.assign(n, std::vector<std::vector<int>>(m));
  lcp.delta.assign(m, Rat(0));

  // Perturbations for the good-spending rows: delta_j = 1 + eps_j with
  // eps_j uniform in (0, 1/m), exact dyadic rationals, seed-deterministic.
  std::seed_seq seq{static_cast<std::uint64_t>(0x6d616e6e61ULL), seed};
  std::mt19937_64 rng(seq);
  constexpr std::uint64_t kDenom = 1u << 16;
  for (int j = 0; j < m; ++j)
    if (cls[j].status == ItemStatus::Active && cls[j].kind == ItemKind::Good) {
      std::uint64_t k = rng() % (kDenom - 1) + 1;  // 1 .. 2^16 - 1
      lcp.delta[j] = 1 + frac(static_cast<unsigned long>(k),
                              static_cast<unsigned long>(m) * kDenom);
    }

  // Column/row layout. `segs(i, j)` is the list of active segment indices for
  // the pair; goods an agent does not like (first slope <= 0) get no block.
  auto active = [&](int j) { return cls[j].status == ItemStatus::Active; };
  auto has_block = [&](int i, int j) {
    if (!active(j) || inst.utility[i][j].empty()) return false;
    if (cls[j].kind == ItemKind::Good) return inst.utility[i][j].front().slope > 0;
    return true;
  };

  int cols = 0;
  for (int i = 0; i < n; ++i) lcp.rCol[i] = cols++;
  for (int j = 0; j < m; ++j)
    if (active(j)) lcp.pCol[j] = cols++;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      if (!has_block(i, j)) continue;
      const auto& segs = inst.utility[i][j];
      if (cls[j].kind == ItemKind::Bad)
        for (const Segment& s : segs)
          if (s.slope >= 0)
            throw std::invalid_argument(
                "build_mixed_lcp: zero-slope bad segment (instance not preprocessed)");
      lcp.fCol[i][j].resize(segs.size());
      for (std::size_t k = 0; k < segs.size(); ++k) lcp.fCol[i][j][k] = cols++;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      lcp.sCol[i][j].assign(lcp.fCol[i][j].size(), -1);
      for (std::size_t k = 0; k < lcp.fCol[i][j].size(); ++k) lcp.sCol[i][j][k] = cols++;
    }

  lcp.rows = cols;
  lcp.A.assign(cols, std::vector<Rat>(cols, Rat(0)));
  lcp.q.assign(cols, Rat(0));
  lcp.c.assign(cols, Rat(0));
  lcp.colLabel.assign(cols, VariableLabel{});

  for (int i = 0; i < n; ++i)
    lcp.colLabel[lcp.rCol[i]] = {VarKind::InverseBpb, i, -1, -1};
  for (int j = 0; j < m; ++j)
    if (lcp.pCol[j] >= 0) lcp.colLabel[lcp.pCol[j]] = {VarKind::Price, -1, j, -1};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < lcp.fCol[i][j].size(); ++k) {
        lcp.colLabel[lcp.fCol[i][j][k]] = {VarKind::Spending, i, j, static_cast<int>(k)};
        lcp.colLabel[lcp.sCol[i][j][k]] = {VarKind::Supplement, i, j, static_cast<int>(k)};
      }

  // Budget rows (paired with r_i): z on every one of them.
  for (int i = 0; i < n; ++i) {
    int row = lcp.rCol[i];
    Rat q_i = 0;
    for (int j = 0; j < m; ++j) {
      if (!active(j)) continue;
      bool good = cls[j].kind == ItemKind::Good;
      lcp.A[row][lcp.pCol[j]] = good ? inst.endowment[i][j] : -inst.endowment[i][j];
      q_i += (good ? P : -P) * inst.endowment[i][j];
      for (int col : lcp.fCol[i][j]) lcp.A[row][col] = good ? Rat(1) : Rat(-1);
    }
    lcp.q[row] = q_i;
    lcp.c[row] = 1;
  }

  // Spending rows (paired with p_j).
  for (int j = 0; j < m; ++j) {
    if (!active(j)) continue;
    int row = lcp.pCol[j];
    bool good = cls[j].kind == ItemKind::Good;
    lcp.A[row][lcp.pCol[j]] = good ? Rat(-1) : Rat(1);
    for (int i = 0; i < n; ++i)
      for (int col : lcp.fCol[i][j]) lcp.A[row][col] = good ? Rat(-1) : Rat(1);
    lcp.q[row] = good ? -P : P;
    lcp.c[row] = good ? lcp.delta[j] : Rat(0);
  }

  // MBB/MPB rows (paired with f_ijk) and capacity rows (paired with s_ijk).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < lcp.fCol[i][j].size(); ++k) {
        const Segment& seg = inst.utility[i][j][k];
        int row = lcp.fCol[i][j][k];
        if (cls[j].kind == ItemKind::Bad) {
          Rat D = -seg.slope;
          lcp.A[row][lcp.rCol[i]] = D;
          lcp.A[row][lcp.pCol[j]] = -1;
          lcp.A[row][lcp.sCol[i][j][k]] = -1;
          lcp.q[row] = D * R - P;
        } else {
          lcp.A[row][lcp.rCol[i]] = -seg.slope;
          lcp.A[row][lcp.pCol[j]] = 1;
          lcp.A[row][lcp.sCol[i][j][k]] = -1;
          lcp.q[row] = P - seg.slope * R;
          lcp.c[row] = 1;
        }
        int cap = lcp.sCol[i][j][k];
        lcp.A[cap][lcp.fCol[i][j][k]] = 1;
        lcp.A[cap][lcp.pCol[j]] = seg.length;
        lcp.q[cap] = seg.length * P;
      }

  return lcp;
}

std::string dump_lcp(const LcpSystem& lcp) {
  std::ostringstream out;
  out << "rows " << lcp.rows << "\nP " << rat_str(lcp.P) << "\nR " << rat_str(lcp.R) << "\n";
  for (int a = 0; a < lcp.rows; ++a) {
    out << "row " << label_str(lcp.colLabel[a]) << " :";
    for (int b = 0; b < lcp.rows; ++b)
      if (lcp.A[a][b] != 0)
        out << " " << label_str(lcp.colLabel[b]) << "=" << rat_str(lcp.A[a][b]);
    out << " | q=" << rat_str(lcp.q[a]) << " c=" << rat_str(lcp.c[a]) << "\n";
  }
  return out.str();
}

}  // namespace manna
