#include <gtest/gtest.h>

#include "ddpp/bramble.hpp"
#include "ddpp/error.hpp"
#include "ddpp/flow.hpp"
#include "ddpp/oracle.hpp"
#include "support.hpp"

namespace ddpp {
namespace {

Digraph bidirected_clique(int n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) e.emplace_back(u, v);
    }
  }
  return Digraph(n, e);
}

// Paths are simple, pairwise disjoint, start in S and end in T.
void expect_linkage(const Digraph& g, const MengerResult& r, const VertexSet& s, const VertexSet& t) {
  std::vector<int> use(static_cast<std::size_t>(g.vertex_count()), 0);
  for (const Path& p : r.paths) {
    ASSERT_FALSE(p.empty());
    EXPECT_TRUE(set_contains(s, p.front()));
    EXPECT_TRUE(set_contains(t, p.back()));
    for (std::size_t i = 0; i + 1 < p.size(); ++i) EXPECT_TRUE(g.has_edge(p[i], p[i + 1]));
    for (Vertex v : p) EXPECT_EQ(++use[static_cast<std::size_t>(v)], 1) << "vertex " << v;
  }
}

TEST(Menger, SameSingletonGivesTrivialPath) {
  const Digraph g(3, {{0, 1}});
  const auto r = max_disjoint_paths(g, {2}, {2});
  ASSERT_EQ(r.count(), 1);
  EXPECT_EQ(r.paths[0], (Path{2}));
  EXPECT_EQ(r.separation.order(), 1);
}

TEST(Menger, CliqueHasTwoDisjointPairs) {
  const Digraph g = bidirected_clique(5);
  const auto r = max_disjoint_paths(g, {0, 1}, {2, 3});
  EXPECT_EQ(r.count(), 2);
  expect_linkage(g, r, {0, 1}, {2, 3});
}

TEST(Menger, DualityOnRandomGraphs) {
  testing::Rng rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = testing::pick(rng, 3, 11);
    const Digraph g = testing::random_digraph(n, 0.25, rng);
    const int ks = testing::pick(rng, 1, n / 2);
    const VertexSet s = make_set(testing::sample(n, ks, rng));
    const VertexSet t = make_set(testing::sample(n, testing::pick(rng, 1, n / 2), rng));
    const auto r = max_disjoint_paths(g, s, t);
    expect_linkage(g, r, s, t);
    EXPECT_EQ(check_separation(g, r.separation), "") << "trial " << trial;
    EXPECT_EQ(r.separation.order(), r.count());
    EXPECT_TRUE(is_subset(s, r.separation.side_a));
    EXPECT_TRUE(is_subset(t, r.separation.side_b));
    if (n <= 9) EXPECT_EQ(enumerate_min_st_separation(g, s, t).order(), r.count());
  }
}

TEST(Menger, BlockedVerticesAreAvoided) {
  // Two routes 0 -> 3, through 1 or through 2.
  const Digraph g(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  std::vector<bool> blocked(4, false);
  blocked[1] = true;
  const auto r = max_disjoint_paths(g, {0}, {3}, blocked);
  ASSERT_EQ(r.count(), 1);
  EXPECT_EQ(r.paths[0], (Path{0, 2, 3}));
  EXPECT_FALSE(set_contains(r.separation.side_a, 1));
  EXPECT_FALSE(set_contains(r.separation.side_b, 1));
}

TEST(ProperSeparation, PathCutsMiddle) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  const auto sep = min_proper_separation(g, {0}, {2});
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->cut(), (VertexSet{1}));
}

TEST(ProperSeparation, BidirectedK4IsInseparable) {
  // Every vertex of S∖B would be adjacent to every vertex of K∖A.
  const Digraph k4 = bidirected_clique(4);
  EXPECT_FALSE(min_proper_separation(k4, {0, 1}, {2, 3}));
  EXPECT_FALSE(enumerate_min_proper_separation(k4, {0, 1}, {2, 3}));
}

TEST(ProperSeparation, BidirectedFourCycleCutsBothMiddles) {
  const Digraph c4(4, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 0}, {0, 3}});
  const auto sep = min_proper_separation(c4, {0}, {2});
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->cut(), (VertexSet{1, 3}));
  EXPECT_EQ(enumerate_min_proper_separation(c4, {0}, {2})->order(), 2);
}

TEST(ProperSeparation, ThreeInternallyDisjointRoutes) {
  const Digraph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  const auto sep = min_proper_separation(g, {0}, {4});
  ASSERT_TRUE(sep);
  EXPECT_EQ(sep->cut(), (VertexSet{1, 2, 3}));
}

TEST(ProperSeparation, AdjacentPairIsInseparable) {
  EXPECT_FALSE(min_proper_separation(Digraph(2, {{0, 1}, {1, 0}}), {0}, {1}));
}

TEST(ProperSeparation, Preconditions) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(min_proper_separation(g, {0}, {0, 2}), Error);
  EXPECT_THROW(min_proper_separation(g, {0, 2}, {2}), Error);
}

TEST(ProperSeparation, MatchesEnumeration) {
  testing::Rng rng(77);
  int separable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::pick(rng, 3, 8);
    const Digraph g = testing::random_digraph(n, 0.35, rng);
    auto all = testing::sample(n, n, rng);
    const int cs = testing::pick(rng, 1, n - 2);
    const VertexSet s = make_set({all.begin(), all.begin() + cs});
    const VertexSet k = make_set({all.begin() + cs, all.begin() + testing::pick(rng, cs + 1, n)});
    const auto fast = min_proper_separation(g, s, k);
    const auto slow = enumerate_min_proper_separation(g, s, k);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << "trial " << trial;
    if (!fast) continue;
    ++separable;
    EXPECT_EQ(check_separation(g, *fast), "");
    EXPECT_EQ(fast->order(), slow->order()) << "trial " << trial;
    EXPECT_FALSE(set_difference(s, fast->side_b).empty());
    EXPECT_FALSE(set_difference(k, fast->side_a).empty());
  }
  EXPECT_GT(separable, 50);
}

TEST(AlphaConnected, PathExample) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  EXPECT_TRUE(is_alpha_connected(g, {0}, {2}, 0));
  EXPECT_TRUE(is_alpha_connected(g, {0}, {2}, 1));
  EXPECT_FALSE(is_alpha_connected(g, {0}, {2}, 2));
}

TEST(WellLinked, SmallSetsInConnectedGraphs) {
  const Digraph k5 = bidirected_clique(5);
  EXPECT_TRUE(is_well_linked(k5, {0, 1, 2}));
  EXPECT_TRUE(is_well_linked(k5, {0, 1, 2, 3, 4}));
  // One-way edge: nothing links 1 back to 0.
  EXPECT_FALSE(is_well_linked(Digraph(2, {{0, 1}}), {0, 1}));
}

TEST(WellLinked, GridPathSubset) {
  const Grid grid = gen_grid(4);
  const Path cycle = grid.labels.cycle(1);
  const auto x = well_linked_on_path(grid.graph, cycle, 3);
  ASSERT_TRUE(x);
  EXPECT_EQ(x->size(), 3u);
  EXPECT_TRUE(is_well_linked(grid.graph, *x));
}

TEST(WellLinked, SizeCap) {
  const Digraph g = bidirected_clique(14);
  VertexSet x(13);
  std::iota(x.begin(), x.end(), 0);
  try {
    is_well_linked(g, x);
    FAIL() << "no size limit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SizeLimit);
  }
}

}  // namespace
}  // namespace ddpp
