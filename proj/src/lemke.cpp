#include "manna/lemke.hpp"

#include <sstream>
#include <stdexcept>

namespace manna {

Tableau::Tableau(const LcpSystem& lcp)
    : lcp_(&lcp), K_(lcp.rows), zVar_(2 * lcp.rows), rhsCol_(2 * lcp.rows + 1) {
  mat_.assign(K_, std::vector<Rat>(2 * K_ + 2, Rat(0)));
  basic_.resize(K_);
  whereBasic_.assign(2 * K_ + 1, -1);
  for (int a = 0; a < K_; ++a) {
    for (int j = 0; j < K_; ++j) mat_[a][j] = lcp.A[a][j];
    mat_[a][K_ + a] = 1;
    mat_[a][zVar_] = -lcp.c[a];
    mat_[a][rhsCol_] = lcp.q[a];
    basic_[a] = K_ + a;
    whereBasic_[K_ + a] = a;
  }
}

int Tableau::complement(int var) const {
  if (var == zVar_) return -1;
  return var < K_ ? var + K_ : var - K_;
}

std::string Tableau::var_name(int var) const {
  if (var == zVar_) return "z";
  if (var < K_) return label_str(lcp_->colLabel[var]);
  return "v(" + label_str(lcp_->colLabel[var - K_]) + ")";
}

Rat Tableau::value(int var) const {
  int row = whereBasic_[var];
  return row >= 0 ? mat_[row][rhsCol_] : Rat(0);
}

std::vector<Rat> Tableau::y_values() const {
  std::vector<Rat> y(K_);
  for (int j = 0; j < K_; ++j) y[j] = value(j);
  return y;
}

bool Tableau::lex_less(int a, int b, const Rat& da, const Rat& db) const {
  // Compare (rhs, v-block) / d entrywise; d > 0 so cross-multiplying is safe.
  Rat lhs = mat_[a][rhsCol_] * db;
  Rat rhs = mat_[b][rhsCol_] * da;
  if (lhs != rhs) return lhs < rhs;
  for (int t = 0; t < K_; ++t) {
    lhs = mat_[a][K_ + t] * db;
    rhs = mat_[b][K_ + t] * da;
    if (lhs != rhs) return lhs < rhs;
  }
  return false;
}

Tableau::InitStatus Tableau::init_primary_ray(bool lexicographic_ties) {
  bool any_negative = false;
  for (int a = 0; a < K_; ++a) {
    if (mat_[a][rhsCol_] < 0) {
      any_negative = true;
      if (lcp_->c[a] <= 0)
        throw std::runtime_error("init_primary_ray: negative rhs row without covering entry");
    }
  }
  if (!any_negative) return InitStatus::TrivialSolution;

  // z must reach max(-q_a/c_a): pick the row minimizing q_a/c_a.
  int best = -1;
  bool plain_tie = false;
  for (int a = 0; a < K_; ++a) {
    if (lcp_->c[a] <= 0) continue;
    if (best < 0) {
      best = a;
      continue;
    }
    Rat lhs = mat_[a][rhsCol_] * lcp_->c[best];
    Rat rhs = mat_[best][rhsCol_] * lcp_->c[a];
    if (lhs == rhs) {
      plain_tie = true;
      if (lex_less(a, best, lcp_->c[a], lcp_->c[best])) best = a;
    } else if (lhs < rhs) {
      best = a;
      plain_tie = false;
    }
  }
  if (plain_tie && !lexicographic_ties) return InitStatus::Degenerate;

  int leaving = basic_[best];
  pivot(best, zVar_);
  lastLeaving_ = leaving;
  check_invariants();
  return InitStatus::Pivoted;
}

Tableau::StepStatus Tableau::step() {
  int entering = complement(lastLeaving_);
  if (entering < 0) throw std::logic_error("step: no entering variable (z already left)");

  int best = -1;
  for (int a = 0; a < K_; ++a) {
    if (mat_[a][entering] <= 0) continue;
    if (best < 0 || lex_less(a, best, mat_[a][entering], mat_[best][entering]))
      best = a;
  }
  if (best < 0) return StepStatus::Ray;

  // Guard against an exact lexicographic tie (theoretically impossible since
  // the slack block rows are linearly independent).
  for (int a = 0; a < K_; ++a) {
    if (a == best || mat_[a][entering] <= 0) continue;
    if (!lex_less(best, a, mat_[best][entering], mat_[a][entering]) &&
        !lex_less(a, best, mat_[a][entering], mat_[best][entering]))
      return StepStatus::Degenerate;
  }

  int leaving = basic_[best];
  pivot(best, entering);
  lastLeaving_ = leaving;
  check_invariants();
  return leaving == zVar_ ? StepStatus::Solution : StepStatus::Vertex;
}

void Tableau::pivot(int row, int col) {
  std::vector<int> nz;
  nz.reserve(2 * K_ + 2);
  const Rat pivotval = mat_[row][col];
  if (pivotval == 0) throw std::logic_error("pivot on zero element");
  Rat inv = 1 / pivotval;
  for (int t = 0; t < 2 * K_ + 2; ++t) {
    if (mat_[row][t] == 0) continue;
    mat_[row][t] *= inv;
    nz.push_back(t);
  }
  for (int a = 0; a < K_; ++a) {
    if (a == row) continue;
    const Rat factor = mat_[a][col];
    if (factor == 0) continue;
    for (int t : nz) mat_[a][t] -= factor * mat_[row][t];
    mat_[a][col] = 0;  // cancel any residual round-off (exact: always 0)
  }
  int old = basic_[row];
  whereBasic_[old] = -1;
  basic_[row] = col;
  whereBasic_[col] = row;
  ++pivots_;
}

void Tableau::check_invariants() {
  std::string signature;
  for (int a = 0; a < K_; ++a) {
    if (mat_[a][rhsCol_] < 0)
      throw std::runtime_error("lemke: infeasible tableau after pivot");
    signature += std::to_string(basic_[a]);
    signature += ',';
  }
  if (!visitedBases_.insert(signature).second)
    throw std::runtime_error("lemke: basis revisited (cycling)");
  // Path bounds: every visited vertex keeps p_j < P and r_i < R strictly.
  for (int a = 0; a < K_; ++a) {
    int var = basic_[a];
    if (var >= K_) continue;
    const VariableLabel& label = lcp_->colLabel[var];
    if (label.kind == VarKind::Price && !(mat_[a][rhsCol_] < lcp_->P))
      throw std::runtime_error("lemke: path invariant violated (p_j >= P) at " +
                               label_str(label));
    if (label.kind == VarKind::InverseBpb && !(mat_[a][rhsCol_] < lcp_->R))
      throw std::runtime_error("lemke: path invariant violated (r_i >= R) at " +
                               label_str(label));
  }
}

LemkeResult run_lemke(const LcpSystem& lcp, long maxIters, bool wantTrace) {
  if (maxIters < 0) maxIters = 50L * lcp.rows;
  LemkeResult result;
  Tableau tab(lcp);

  auto record = [&](const std::string& entering, const std::string& leaving) {
    if (!wantTrace) return;
    result.trace.push_back({tab.pivots(), entering, leaving, tab.z_value()});
  };
  auto complement_name = [&](int var) {
    return tab.var_name(var >= lcp.rows ? var - lcp.rows : var + lcp.rows);
  };

  Tableau::InitStatus init = tab.init_primary_ray(/*lexicographic_ties=*/true);
  if (init == Tableau::InitStatus::TrivialSolution) {
    result.status = TermKind::Solution;
    result.y = tab.y_values();
    return result;
  }
  if (init == Tableau::InitStatus::Degenerate) {
    result.status = TermKind::DegeneracyDetected;
    result.diagnostic = "tie in initial double label";
    return result;
  }
  record("z", tab.var_name(tab.last_leaving()));

  while (tab.pivots() < maxIters) {
    int prevLeaving = tab.last_leaving();  // its complement enters next
    Tableau::StepStatus s = tab.step();
    switch (s) {
      case Tableau::StepStatus::Solution:
        record(complement_name(prevLeaving), "z");
        result.status = TermKind::Solution;
        result.y = tab.y_values();
        result.iterations = tab.pivots();
        return result;
      case Tableau::StepStatus::Ray:
        result.status = TermKind::SecondaryRay;
        result.iterations = tab.pivots();
        result.diagnostic =
            "secondary ray at entering variable " + complement_name(prevLeaving);
        return result;
      case Tableau::StepStatus::Degenerate:
        result.status = TermKind::DegeneracyDetected;
        result.iterations = tab.pivots();
        result.diagnostic = "lexicographic ratio test tie";
        return result;
      case Tableau::StepStatus::Vertex:
        record(complement_name(prevLeaving), tab.var_name(tab.last_leaving()));
        break;
    }
  }
  result.status = TermKind::IterationLimit;
  result.iterations = tab.pivots();
  return result;
}

}  // namespace manna
