#include <doctest.h>

#include "helpers.hpp"
#include "manna/lcp.hpp"

using namespace manna;
using namespace testutil;

namespace {

LcpSystem build(const Instance& inst, std::uint64_t seed = 1) {
  Preprocessed pre = preprocess(inst);
  Normalized norm = normalize(pre.inst, pre.cls);
  auto [P, R] = choose_constants(norm.inst);
  return build_mixed_lcp(norm.inst, pre.cls, P, R, seed);
}

}  // namespace

TEST_CASE("choose_constants") {
  SUBCASE("Example 1: U_min = 1, total endowment 2 -> P = 1, R = 4") {
    auto [P, R] = choose_constants(example1());
    CHECK(P == 1);
    CHECK(R == 4);
  }
  SUBCASE("single bad, slope -1, W = 1 -> P = 1, R = 3") {
    auto [P, R] = choose_constants(single_bad());
    CHECK(P == 1);
    CHECK(R == 3);
  }
  SUBCASE("R * U_min > P always") {
    for (const Instance& inst : {example1(), appendix_a(), single_bad()}) {
      auto [P, R] = choose_constants(inst);
      Rat umin = 0;
      for (const auto& agent : inst.utility)
        for (const auto& fn : agent)
          for (const Segment& s : fn) {
            Rat a = s.slope < 0 ? Rat(-s.slope) : s.slope;
            if (a != 0 && (umin == 0 || a < umin)) umin = a;
          }
      CHECK(R * umin > P);
    }
  }
  SUBCASE("all slopes zero is rejected") {
    Instance inst = single_bad();
    inst.utility[0][0] = {seg("0", "2")};
    CHECK_THROWS_AS(choose_constants(inst), std::invalid_argument);
  }
}

TEST_CASE("build_mixed_lcp on Example 1") {
  LcpSystem lcp = build(example1());
  // 2 budget + 2 spending + 4 MBB/MPB + 4 capacity rows.
  CHECK(lcp.rows == 12);

  // Row order and complementary pairing.
  CHECK(lcp.colLabel[lcp.rCol[0]].kind == VarKind::InverseBpb);
  CHECK(lcp.colLabel[lcp.pCol[1]].kind == VarKind::Price);

  // Budget rows carry the covering entry.
  CHECK(lcp.c[lcp.rCol[0]] == 1);
  CHECK(lcp.c[lcp.rCol[1]] == 1);
  // Bad spending row: c = 0; good spending row: c = delta in (1, 1 + 1/m).
  CHECK(lcp.c[lcp.pCol[1]] == 0);
  CHECK(lcp.c[lcp.pCol[0]] == lcp.delta[0]);
  CHECK(lcp.delta[0] > 1);
  CHECK(lcp.delta[0] < Q("3/2"));

  // Bad-MPB right-hand side: D * R - P = 2 * 4 - 1 for agent A on item 2.
  CHECK(lcp.q[lcp.fCol[0][1][0]] == 7);
  CHECK(lcp.q[lcp.fCol[1][1][0]] == 11);  // 3 * 4 - 1
  // Good-MBB right-hand side: P - U * R = 1 - 4 < 0, with c = 1.
  CHECK(lcp.q[lcp.fCol[0][0][0]] == -3);
  CHECK(lcp.c[lcp.fCol[0][0][0]] == 1);
  // Capacity rows: f + L p <= L P with L = 11/10.
  int cap = lcp.sCol[0][0][0];
  CHECK(lcp.A[cap][lcp.pCol[0]] == Q("11/10"));
  CHECK(lcp.q[cap] == Q("11/10"));
  CHECK(lcp.c[cap] == 0);
}

TEST_CASE("all-bads systems have no good rows") {
  LcpSystem lcp = build(appendix_a());
  CHECK(lcp.rows == 2 + 3 + 6 + 6);
  for (const Rat& d : lcp.delta) CHECK(d == 0);
  for (int a = 0; a < lcp.rows; ++a) CHECK((lcp.c[a] == 0 || lcp.c[a] == 1));
  // Bad-MPB rhs strictly positive everywhere.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(lcp.q[lcp.fCol[i][j][0]] > 0);
}

TEST_CASE("construction is deterministic in the seed") {
  LcpSystem a = build(example1(), 7);
  LcpSystem b = build(example1(), 7);
  CHECK(a.A == b.A);
  CHECK(a.q == b.q);
  CHECK(a.c == b.c);
  LcpSystem c = build(example1(), 8);
  CHECK(a.delta != c.delta);
}

TEST_CASE("primary ray feasibility: y = 0 with large z satisfies the system") {
  for (const Instance& inst : {example1(), appendix_a()}) {
    LcpSystem lcp = build(inst);
    // z = max over rows with a covering entry of -q_a / c_a.
    Rat z = 0;
    for (int a = 0; a < lcp.rows; ++a)
      if (lcp.c[a] > 0 && -lcp.q[a] / lcp.c[a] > z) z = -lcp.q[a] / lcp.c[a];
    CHECK(z > 0);
    for (int a = 0; a < lcp.rows; ++a) CHECK(-lcp.c[a] * z <= lcp.q[a]);
  }
}

TEST_CASE("zero-slope bad segments are rejected (not preprocessed)") {
  Instance inst = single_bad();
  inst.utility[0][0] = {seg("0", "1/2"), lin("-1")};
  auto cls = classify_items(inst);
  auto [P, R] = choose_constants(inst);
  CHECK_THROWS_AS(build_mixed_lcp(inst, cls, P, R, 1), std::invalid_argument);
}
