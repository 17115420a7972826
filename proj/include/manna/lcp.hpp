#pragma once

#include <cstdint>
#include <vector>

#include "manna/instance.hpp"
#include "manna/rational.hpp"

namespace manna {

enum class VarKind { Price, Spending, InverseBpb, Supplement, Z };

struct VariableLabel {
  VarKind kind = VarKind::Z;
  int agent = -1;    // InverseBpb, Spending, Supplement
  int item = -1;     // Price, Spending, Supplement
  int segment = -1;  // Spending, Supplement (index into the preprocessed function)
};

std::string label_str(const VariableLabel& label);

// The augmented LCP:  A y - c z <= q,  y >= 0,  z >= 0,  y_a (q - A y + c z)_a = 0,
// with row a complementary-paired with column a. Row/column order:
// budget rows (one per agent, paired with r_i), spending rows (one per active
// item, paired with p_j), MBB/MPB rows (one per active segment, paired with
// f_ijk), capacity rows (one per active segment, paired with s_ijk).
struct LcpSystem {
  int rows = 0;
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> q;
  std::vector<Rat> c;
  std::vector<VariableLabel> colLabel;  // also labels the paired row
  Rat P, R;
  std::vector<Rat> delta;  // per item: 1 + eps_j for active goods, 0 otherwise

  // Column lookup tables (index -1 where no variable exists).
  std::vector<int> rCol;                             // per agent
  std::vector<int> pCol;                             // per item
  std::vector<std::vector<std::vector<int>>> fCol;   // per (agent, item, segment)
  std::vector<std::vector<std::vector<int>>> sCol;   // per (agent, item, segment)
};

// P = 1; R = (P / U_min) * (2 + B) with U_min the smallest nonzero |slope| and
// B the total endowment. Guarantees strictly positive MPB right-hand sides,
// strictly negative MBB right-hand sides, and primary-ray dominance.
// Throws std::invalid_argument if every slope is zero.
std::pair<Rat, Rat> choose_constants(const Instance& inst);

// Builds the system from a preprocessed, normalized instance. `seed` fixes the
// draw of the eps_j perturbations (each in (0, 1/m)). Deterministic.
// Throws std::invalid_argument on instances that still contain zero-price
// items or zero-slope bad segments (i.e. not preprocessed).
LcpSystem build_mixed_lcp(const Instance& inst, const std::vector<ItemClass>& cls,
                          const Rat& P, const Rat& R, std::uint64_t seed);

// Debug dump: one line per row with labels and nonzero entries.
std::string dump_lcp(const LcpSystem& lcp);

}  // namespace manna
