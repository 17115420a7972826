#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "manna/harness.hpp"
#include "manna/oracle.hpp"
#include "manna/solver.hpp"
#include "manna/verify.hpp"

using namespace manna;
using namespace testutil;

namespace {

bool same_eq(const Equilibrium& a, const Equilibrium& b) {
  return a.prices == b.prices && a.alloc == b.alloc;
}

bool oracle_contains(const OracleResult& oracle, const Equilibrium& eq) {
  Equilibrium canon = canonical_scale(eq);
  for (const Equilibrium& known : oracle.equilibria)
    if (same_eq(known, canon)) return true;
  return false;
}

}  // namespace

TEST_CASE("oracle finds the Example-1 equilibrium") {
  OracleResult oracle = enumerate_equilibria(example1());
  bool found = false;
  for (const Equilibrium& eq : oracle.equilibria) {
    // Canonical scale of the paper's (2, -4) is (1/2, -1).
    if (eq.prices == std::vector<Rat>{Q("1/2"), Q("-1")} &&
        eq.alloc[0][0][0] == 1 && eq.alloc[0][1][0] == Q("3/4") &&
        eq.alloc[1][0][0] == 0 && eq.alloc[1][1][0] == Q("1/4"))
      found = true;
  }
  CHECK(found);
}

TEST_CASE("oracle finds the Appendix-A equilibrium") {
  OracleResult oracle = enumerate_equilibria(appendix_a());
  bool found = false;
  for (const Equilibrium& eq : oracle.equilibria)
    // (-20/13, -4/13, -2/13) in canonical scale (max |p| = 1).
    if (eq.prices == std::vector<Rat>{Q("-1"), Q("-1/5"), Q("-1/10")}) found = true;
  CHECK(found);
  // The count over all configurations is odd here (Theorem 11 flavor).
  CHECK(oracle.equilibria.size() % 2 == 1);
}

TEST_CASE("oracle count is odd on random 2x2 linear all-bads instances") {
  BenchConfig config;
  config.n = config.m = 2;
  config.segmentsPerPair = 1;
  config.seed = 20240817;
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = gen_random_instance(config, trial);
    OracleResult oracle = enumerate_equilibria(inst);
    if (oracle.degenerateConfigs > 0) continue;  // odd-count claim needs nondegeneracy
    CHECK(oracle.equilibria.size() % 2 == 1);
  }
}

TEST_CASE("solver outputs are contained in the oracle enumeration") {
  BenchConfig config;
  config.n = config.m = 2;
  config.segmentsPerPair = 1;
  config.seed = 777;
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = gen_random_instance(config, trial);
    SolveResult res = solve_instance(inst);
    REQUIRE(res.status == TermKind::Solution);
    CHECK(oracle_contains(enumerate_equilibria(inst), res.eq));
  }
}

TEST_CASE("oracle equilibria all pass the verifier") {
  Instance inst;
  inst.numAgents = 2;
  inst.numItems = 2;
  inst.utility = {{{seg("-1", "1/2"), lin("-3")}, {lin("-2")}},
                  {{lin("-2")}, {seg("-1", "1/3"), lin("-4")}}};
  inst.endowment = {{Q("1/2"), Q("1/2")}, {Q("1/2"), Q("1/2")}};
  OracleResult oracle = enumerate_equilibria(inst);
  REQUIRE_FALSE(oracle.equilibria.empty());
  for (const Equilibrium& eq : oracle.equilibria)
    CHECK(verify_equilibrium(inst, eq).overall);
}

TEST_CASE("the segment cap is enforced") {
  BenchConfig config;
  config.n = config.m = 3;
  config.segmentsPerPair = 2;  // 18 segments > default cap of 12
  config.seed = 5;
  Instance inst = gen_random_instance(config, 0);
  CHECK_THROWS_AS(enumerate_equilibria(inst), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_equilibria(example1(), 3), std::invalid_argument);
}
