#include <gtest/gtest.h>

#include "ddpp/bramble.hpp"
#include "ddpp/error.hpp"
#include "ddpp/gadget.hpp"
#include "ddpp/oracle.hpp"
#include "support.hpp"

namespace ddpp {
namespace {

TEST(Oracle, SingleEdge) {
  const LinkageInstance inst(Digraph(2, {{0, 1}}), {0}, {1});
  const auto r = brute_force_linkage(inst, 1);
  ASSERT_EQ(r.verdict, Verdict::Feasible);
  EXPECT_EQ(r.solution.paths, (std::vector<Path>{{0, 1}}));
  EXPECT_TRUE(verify_solution(inst, r.solution, 1).ok());
}

TEST(Oracle, SharedMidpointNeedsHalfIntegrality) {
  const Digraph g(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  const LinkageInstance inst(g, {0, 1}, {3, 4});
  EXPECT_EQ(brute_force_linkage(inst, 1).verdict, Verdict::Infeasible);
  const auto half = brute_force_linkage(inst, 2);
  ASSERT_EQ(half.verdict, Verdict::Feasible);
  EXPECT_TRUE(verify_solution(inst, half.solution, 2).ok());
}

TEST(Oracle, ContradictoryGadgetIsInfeasible) {
  // (x1) ∧ (¬x1) at ε = 1/4: M = 2 hub vertices.
  const CnfFormula f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", true);
  const Gadget gadget = build_gadget(f, parse_rational("1/4"));
  EXPECT_EQ(gadget.layout.w_count, 2);
  EXPECT_EQ(brute_force_linkage(gadget.instance, 2, 100000000).verdict, Verdict::Infeasible);
}

TEST(Oracle, BudgetExceededIsDistinct) {
  testing::Rng rng(9);
  const LinkageInstance inst = testing::random_instance(12, 3, 0.4, rng, false);
  const auto r = brute_force_linkage(inst, 2, 3);
  EXPECT_EQ(r.verdict, Verdict::BudgetExceeded);
  EXPECT_STREQ(to_string(r.verdict), "budget-exceeded");
}

TEST(Oracle, RejectsBadCongestion) {
  const LinkageInstance inst(Digraph(2, {{0, 1}}), {0}, {1});
  EXPECT_THROW(brute_force_linkage(inst, 3), Error);
}

TEST(Oracle, MonotoneInCongestion) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const LinkageInstance inst = testing::random_instance(testing::pick(rng, 3, 7), testing::pick(rng, 1, 2), 0.3, rng);
    const auto one = brute_force_linkage(inst, 1);
    const auto two = brute_force_linkage(inst, 2);
    if (one.verdict == Verdict::Feasible) {
      EXPECT_EQ(two.verdict, Verdict::Feasible) << "trial " << trial;
      EXPECT_TRUE(verify_solution(inst, one.solution, 1).ok());
    }
    if (two.verdict == Verdict::Feasible) EXPECT_TRUE(verify_solution(inst, two.solution, 2).ok());
  }
}

TEST(Oracle, InvariantUnderRelabeling) {
  testing::Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testing::pick(rng, 3, 7);
    const LinkageInstance inst = testing::random_instance(n, testing::pick(rng, 1, 2), 0.35, rng);
    const auto perm = testing::sample(n, n, rng);
    std::vector<Edge> edges;
    for (auto [u, v] : inst.graph.edges()) edges.emplace_back(perm[u], perm[v]);
    std::vector<Vertex> s, t;
    for (Vertex v : inst.sources) s.push_back(perm[v]);
    for (Vertex v : inst.sinks) t.push_back(perm[v]);
    const LinkageInstance moved(Digraph(n, edges), s, t);
    for (int c : {1, 2}) {
      EXPECT_EQ(brute_force_linkage(inst, c).verdict, brute_force_linkage(moved, c).verdict) << "trial " << trial;
    }
  }
}

TEST(BrambleOrder, Examples) {
  const Digraph g(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}});
  Bramble common;
  common.bags = {{0, 1}, {1, 2}, {1}};
  EXPECT_EQ(bramble_order(g, common, 4), 1);
  EXPECT_EQ(bramble_order(g, Bramble{}, 4), 0);
  Bramble spread;
  spread.bags = {{0, 1}, {2, 3}};
  EXPECT_EQ(bramble_order(g, spread, 4), 2);
}

TEST(BrambleOrder, GridAndCap) {
  const Grid grid = gen_grid(4);
  const Bramble b = grid_bramble(grid.graph, grid.labels);
  EXPECT_GE(bramble_order(grid.graph, b, 4), 2);
  try {
    bramble_order(grid.graph, b, 0);
    FAIL() << "no size limit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

TEST(EnumerateSeparation, CycleAndClique) {
  const Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto w = enumerate_min_separation(c4);
  EXPECT_EQ(w.connectivity, 1);
  ASSERT_TRUE(w.separation);
  EXPECT_EQ(check_separation(c4, *w.separation), "");
  EXPECT_FALSE(w.separation->trivial());
  std::vector<Edge> e;
  for (Vertex u = 0; u < 4; ++u) {
    for (Vertex v = 0; v < 4; ++v) {
      if (u != v) e.emplace_back(u, v);
    }
  }
  const auto k4 = enumerate_min_separation(Digraph(4, e));
  EXPECT_EQ(k4.connectivity, 3);
  EXPECT_FALSE(k4.separation);
}

TEST(EnumerateSeparation, Cap) {
  EXPECT_THROW(enumerate_min_separation(Digraph(11)), Error);
}

}  // namespace
}  // namespace ddpp
