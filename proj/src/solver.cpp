#include "manna/solver.hpp"

#include "manna/lcp.hpp"

namespace manna {

SolveResult solve_instance(const Instance& inst, const SolveOptions& opts) {
  inst.validate();
  SolveResult result;

  Preprocessed pre = preprocess(inst);
  result.sufficiency = check_sufficiency(pre.inst, pre.cls);

  bool any_active = false;
  for (const ItemClass& c : pre.cls)
    if (c.status == ItemStatus::Active) any_active = true;

  if (!any_active) {
    // Everything was allocated at price zero by preprocessing.
    result.status = TermKind::Solution;
    Equilibrium empty;
    empty.prices.assign(inst.numItems, Rat(0));
    empty.alloc.resize(inst.numAgents);
    for (int i = 0; i < inst.numAgents; ++i) {
      empty.alloc[i].resize(inst.numItems);
      for (int j = 0; j < inst.numItems; ++j)
        empty.alloc[i][j].assign(inst.utility[i][j].size(), Rat(0));
    }
    Normalized identity{pre.inst, std::vector<Rat>(inst.numItems, Rat(1))};
    result.eq = restore_equilibrium(empty, inst, pre, identity);
    return result;
  }

  Normalized norm = normalize(pre.inst, pre.cls);
  auto [P, R] = choose_constants(norm.inst);
  LcpSystem lcp = build_mixed_lcp(norm.inst, pre.cls, P, R, opts.seed);
  LemkeResult lemke = run_lemke(lcp, opts.maxIters, opts.trace);

  result.status = lemke.status;
  result.iterations = lemke.iterations;
  result.trace = std::move(lemke.trace);
  result.diagnostic = std::move(lemke.diagnostic);
  if (lemke.status != TermKind::Solution) return result;

  Equilibrium reduced = extract_equilibrium(lemke.y, lcp, norm.inst, pre.cls);
  result.eq = canonical_scale(restore_equilibrium(reduced, inst, pre, norm));
  return result;
}

std::string dump_instance_lcp(const Instance& inst, std::uint64_t seed) {
  inst.validate();
  Preprocessed pre = preprocess(inst);
  Normalized norm = normalize(pre.inst, pre.cls);
  auto [P, R] = choose_constants(norm.inst);
  return dump_lcp(build_mixed_lcp(norm.inst, pre.cls, P, R, seed));
}

}  // namespace manna
