#include <doctest.h>

#include "helpers.hpp"
#include "manna/harness.hpp"
#include "manna/lemke.hpp"
#include "manna/solver.hpp"
#include "manna/verify.hpp"

using namespace manna;
using namespace testutil;

namespace {

// Synthetic 1x1 or diagonal systems for the pivot-mechanics pins. Labels use
// Spending so the price/r path assertions do not apply.
LcpSystem tiny(std::vector<std::vector<Rat>> A, std::vector<Rat> q, std::vector<Rat> c) {
  LcpSystem lcp;
  lcp.rows = static_cast<int>(q.size());
  lcp.A = std::move(A);
  lcp.q = std::move(q);
  lcp.c = std::move(c);
  lcp.P = 1;
  lcp.R = 1000;
  for (int a = 0; a < lcp.rows; ++a) {
    VariableLabel label;
    label.kind = VarKind::Spending;
    label.agent = 0;
    label.item = a;
    label.segment = 0;
    lcp.colLabel.push_back(label);
  }
  return lcp;
}

LcpSystem pipeline_lcp(const Instance& inst, std::uint64_t seed = 1) {
  Preprocessed pre = preprocess(inst);
  Normalized norm = normalize(pre.inst, pre.cls);
  auto [P, R] = choose_constants(norm.inst);
  return build_mixed_lcp(norm.inst, pre.cls, P, R, seed);
}

}  // namespace

TEST_CASE("1x1 system A=[-1], q=[-1], c=[1] solves in one step") {
  LcpSystem lcp = tiny({{Q("-1")}}, {Q("-1")}, {Q("1")});
  Tableau tab(lcp);
  CHECK(tab.init_primary_ray() == Tableau::InitStatus::Pivoted);
  CHECK(tab.z_value() == 1);  // z = |min q|
  CHECK(tab.value(0) == 0);
  CHECK(tab.step() == Tableau::StepStatus::Solution);
  CHECK(tab.value(0) == 1);  // y1 = 1 solves -y <= -1 with complementarity
  CHECK(tab.z_value() == 0);

  LemkeResult res = run_lemke(lcp);
  CHECK(res.status == TermKind::Solution);
  CHECK(res.y == std::vector<Rat>{Q("1")});
}

TEST_CASE("1x1 system A=[1], q=[-1], c=[1] ends on a secondary ray") {
  // y <= -1 is infeasible for y >= 0: the entering variable is unbounded.
  LcpSystem lcp = tiny({{Q("1")}}, {Q("-1")}, {Q("1")});
  Tableau tab(lcp);
  CHECK(tab.init_primary_ray() == Tableau::InitStatus::Pivoted);
  CHECK(tab.step() == Tableau::StepStatus::Ray);
  CHECK(run_lemke(lcp).status == TermKind::SecondaryRay);
}

TEST_CASE("non-negative q is a trivial solution with zero pivots") {
  LcpSystem lcp = tiny({{Q("1"), Q("0")}, {Q("0"), Q("1")}}, {Q("2"), Q("0")},
                       {Q("1"), Q("1")});
  Tableau tab(lcp);
  CHECK(tab.init_primary_ray() == Tableau::InitStatus::TrivialSolution);
  LemkeResult res = run_lemke(lcp);
  CHECK(res.status == TermKind::Solution);
  CHECK(res.iterations == 0);
  CHECK(res.y == std::vector<Rat>(2, Rat(0)));
}

TEST_CASE("Example-1 initial double label ties without lexicographic resolution") {
  // Both good segments give U * R - P = 3: a plain-ratio tie.
  LcpSystem lcp = pipeline_lcp(example1());
  Tableau strict(lcp);
  CHECK(strict.init_primary_ray(/*lexicographic_ties=*/false) ==
        Tableau::InitStatus::Degenerate);
  Tableau lex(lcp);
  CHECK(lex.init_primary_ray(/*lexicographic_ties=*/true) ==
        Tableau::InitStatus::Pivoted);
  CHECK(lex.z_value() == 3);
}

TEST_CASE("all-bads primary ray: z equals the largest endowment value") {
  // One agent, two bads, W = (1, 1), P = 1 -> z = 2 at that budget row.
  Instance inst;
  inst.numAgents = 1;
  inst.numItems = 2;
  inst.utility = {{{lin("-1")}, {lin("-2")}}};
  inst.endowment = {{Q("1"), Q("1")}};
  LcpSystem lcp = pipeline_lcp(inst);
  Tableau tab(lcp);
  CHECK(tab.init_primary_ray() == Tableau::InitStatus::Pivoted);
  CHECK(tab.z_value() == 2);
  CHECK(tab.last_leaving() == lcp.rows + 0);  // the budget row's slack
}

TEST_CASE("run on Example 1 reaches a verified solution") {
  SolveResult res = solve_instance(example1());
  REQUIRE(res.status == TermKind::Solution);
  CHECK(res.iterations > 0);
  VerifyReport rep = verify_equilibrium(example1(), res.eq);
  CHECK(rep.overall);
}

TEST_CASE("run on Appendix A reaches a verified solution") {
  SolveResult res = solve_instance(appendix_a());
  REQUIRE(res.status == TermKind::Solution);
  CHECK(verify_equilibrium(appendix_a(), res.eq).overall);
}

TEST_CASE("random 5x5x5 all-bads instance solves within a few hundred pivots") {
  BenchConfig config;
  config.n = config.m = config.segmentsPerPair = 5;
  config.seed = 424242;
  Instance inst = gen_random_instance(config, 0);
  SolveResult res = solve_instance(inst);
  REQUIRE(res.status == TermKind::Solution);
  CHECK(res.iterations < 600);  // Table-1 scale: mean 137.3, max 297
  CHECK(verify_equilibrium(inst, res.eq).overall);
}

TEST_CASE("trace never repeats a basis and records the double labels") {
  SolveOptions opts;
  opts.trace = true;
  SolveResult res = solve_instance(example1(), opts);
  REQUIRE(res.status == TermKind::Solution);
  REQUIRE_FALSE(res.trace.empty());
  CHECK(res.trace.front().entering == "z");
  // z leaves at the last recorded pivot.
  CHECK(res.trace.back().leaving == "z");
  CHECK(res.trace.back().z == 0);
}

TEST_CASE("iteration limit is reported") {
  LcpSystem lcp = pipeline_lcp(example1());
  LemkeResult res = run_lemke(lcp, 2);
  CHECK(res.status == TermKind::IterationLimit);
  CHECK(res.iterations == 2);
}
