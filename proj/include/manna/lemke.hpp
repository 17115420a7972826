#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "manna/lcp.hpp"
#include "manna/rational.hpp"

namespace manna {

enum class TermKind { Solution, SecondaryRay, IterationLimit, DegeneracyDetected };

struct TraceEntry {
  long iter = 0;
  std::string entering, leaving;
  Rat z;
};

// Complementary-pivot working state. Each of the K LCP rows
//   sum_j A[a][j] y_j + v_a - c_a z = q_a
// is kept in basic form over columns [y_0..y_{K-1} | v_0..v_{K-1} | z | rhs].
// Variable ids: y_a = a, v_a = K + a, z = 2K.
class Tableau {
 public:
  enum class InitStatus { Pivoted, TrivialSolution, Degenerate };
  enum class StepStatus { Vertex, Solution, Ray, Degenerate };

  explicit Tableau(const LcpSystem& lcp);

  // Brings z into the basis at the lexicographic max of -q_a/c_a (the primary
  // ray). With lexicographic_ties = false a plain-ratio tie reports
  // Degenerate instead of resolving it.
  InitStatus init_primary_ray(bool lexicographic_ties = false);

  // One complementary pivot: enter the complement of the last leaving
  // variable, leave by exact lexicographic minimum ratio.
  StepStatus step();

  Rat value(int var) const;  // current value (0 if nonbasic)
  Rat z_value() const { return value(zVar_); }
  int last_leaving() const { return lastLeaving_; }
  std::string var_name(int var) const;

  // Values of all LCP y-variables at the current vertex.
  std::vector<Rat> y_values() const;

  const LcpSystem& lcp() const { return *lcp_; }
  long pivots() const { return pivots_; }

 private:
  int complement(int var) const;
  // True if ratio vector of row a (scaled by 1/d_a) is lexicographically
  // smaller than that of row b; false on exact tie (impossible with the full
  // slack block, kept as a guard).
  bool lex_less(int a, int b, const Rat& da, const Rat& db) const;
  void pivot(int row, int col);
  void check_invariants();

  const LcpSystem* lcp_;
  int K_;
  int zVar_, rhsCol_;
  std::vector<std::vector<Rat>> mat_;
  std::vector<int> basic_;       // per row: basic variable id
  std::vector<int> whereBasic_;  // per variable id: row or -1
  int lastLeaving_ = -1;
  long pivots_ = 0;
  std::unordered_set<std::string> visitedBases_;
};

struct LemkeResult {
  TermKind status = TermKind::IterationLimit;
  std::vector<Rat> y;  // per LCP column; valid when status == Solution
  long iterations = 0;
  std::vector<TraceEntry> trace;
  std::string diagnostic;
};

// Runs Algorithm 1 to completion. maxIters < 0 selects the default
// 50 * rows. Throws std::runtime_error if a path invariant is violated
// (p_j >= P or r_i >= R at a visited vertex, revisited basis, infeasible
// tableau) — these indicate a bug or a violated model assumption.
LemkeResult run_lemke(const LcpSystem& lcp, long maxIters = -1, bool wantTrace = false);

}  // namespace manna
