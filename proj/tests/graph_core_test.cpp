#include <gtest/gtest.h>

#include "ddpp/digraph.hpp"
#include "ddpp/error.hpp"
#include "ddpp/io.hpp"
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

Digraph directed_cycle(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Digraph(n, e);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no ddpp::Error thrown";
  return ErrorKind::InvalidInput;
}

TEST(Digraph, CollapsesDuplicatesAndSortsNeighbours) {
  Digraph g(3, {{0, 2}, {0, 1}, {0, 2}, {2, 1}});
  EXPECT_EQ(g.edge_count(), 3u);
  ASSERT_EQ(g.out(0).size(), 2u);
  EXPECT_EQ(g.out(0)[0], 1);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.in(1).size(), 2u);
}

TEST(Digraph, RejectsLoopsAndBadEndpoints) {
  EXPECT_EQ(kind_of([] { Digraph(2, {{1, 1}}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { Digraph(2, {{0, 2}}); }), ErrorKind::InvalidInput);
}

TEST(Digraph, ReversedTwiceIsIdentity) {
  testing::Rng rng(5);
  const Digraph g = testing::random_digraph(9, 0.3, rng);
  EXPECT_EQ(g.reversed().reversed(), g);
  for (auto [u, v] : g.edges()) EXPECT_TRUE(g.reversed().has_edge(v, u));
}

TEST(Sets, BasicAlgebra) {
  const VertexSet a = make_set({3, 1, 2, 3});
  EXPECT_EQ(a, (VertexSet{1, 2, 3}));
  const VertexSet b{2, 5};
  EXPECT_EQ(set_union(a, b), (VertexSet{1, 2, 3, 5}));
  EXPECT_EQ(set_intersection(a, b), (VertexSet{2}));
  EXPECT_EQ(set_difference(a, b), (VertexSet{1, 3}));
  EXPECT_TRUE(sets_intersect(a, b));
  EXPECT_TRUE(is_subset(VertexSet{1, 3}, a));
}

TEST(StrongConnectivity, SpecExamples) {
  EXPECT_EQ(strong_connectivity(bidirected_clique(5)), 4);
  EXPECT_EQ(strong_connectivity(directed_cycle(4)), 1);
  EXPECT_EQ(strong_connectivity(Digraph(3, {{0, 1}, {1, 2}})), 0);
  EXPECT_EQ(kind_of([] { strong_connectivity(Digraph(1)); }), ErrorKind::InvalidInput);
}

TEST(StrongConnectivity, MatchesEnumeration) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = testing::pick(rng, 2, 7);
    const Digraph g = testing::random_digraph(n, 0.55, rng);
    EXPECT_EQ(strong_connectivity(g), enumerate_min_separation(g).connectivity) << "trial " << trial;
  }
}

TEST(Separation, Checks) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(check_separation(g, {{0, 1}, {1, 2}}), "");
  EXPECT_NE(check_separation(g, {{0}, {2}}), "");  // misses vertex 1
  EXPECT_NE(check_separation(g, {{0, 1}, {2}}), "");  // edge 1 -> 2 crosses
  EXPECT_EQ(Separation({{0, 1}, {1, 2}}).order(), 1);
}

TEST(Instance, Validation) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(kind_of([&] { LinkageInstance(g, {0, 0}, {1, 2}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([&] { LinkageInstance(g, {0}, {1, 2}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([&] { LinkageInstance(g, {5}, {1}); }), ErrorKind::InvalidInput);
  // A source may be another pair's sink.
  EXPECT_NO_THROW(LinkageInstance(g, {0, 1}, {1, 2}));
}

TEST(Verify, SingleEdge) {
  const LinkageInstance inst(Digraph(2, {{0, 1}}), {0}, {1});
  EXPECT_TRUE(verify_solution(inst, {{{0, 1}}, 1}, 1).ok());
}

TEST(Verify, ReportsFirstProblem) {
  const Digraph g(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  const LinkageInstance inst(g, {0, 1}, {3, 4});
  using F = VerifyResult::Failure;
  EXPECT_EQ(verify_solution(inst, {{{0, 2, 3}}, 1}, 2).failure, F::PathCount);
  EXPECT_EQ(verify_solution(inst, {{{0, 2, 3}, {}}, 1}, 2).failure, F::EmptyPath);
  EXPECT_EQ(verify_solution(inst, {{{0, 2, 4}, {1, 2, 3}}, 1}, 2).failure, F::WrongEndpoint);
  const auto missing = verify_solution(inst, {{{0, 3}, {1, 2, 4}}, 1}, 2);
  EXPECT_EQ(missing.failure, F::MissingEdge);
  EXPECT_EQ(missing.edge, (Edge{0, 3}));
  EXPECT_EQ(missing.path_index, 0);
  EXPECT_EQ(verify_solution(inst, {{{0, 9}, {1, 2, 4}}, 1}, 2).failure, F::InvalidVertex);
  const auto shared = verify_solution(inst, {{{0, 2, 3}, {1, 2, 4}}, 1}, 1);
  EXPECT_EQ(shared.failure, F::Congestion);
  EXPECT_EQ(shared.vertex, 2);
  EXPECT_TRUE(verify_solution(inst, {{{0, 2, 3}, {1, 2, 4}}, 2}, 2).ok());
}

TEST(Verify, ThreePathsThroughOneVertex) {
  const Digraph g(7, {{0, 3}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {3, 6}});
  const LinkageInstance inst(g, {0, 1, 2}, {4, 5, 6});
  const auto r = verify_solution(inst, {{{0, 3, 4}, {1, 3, 5}, {2, 3, 6}}, 2}, 2);
  EXPECT_EQ(r.failure, VerifyResult::Failure::Congestion);
  EXPECT_EQ(r.vertex, 3);
}

TEST(Verify, RepeatedVertexAndZeroLength) {
  const Digraph g(3, {{0, 1}, {1, 0}, {1, 2}});
  const LinkageInstance inst(g, {0}, {2});
  EXPECT_EQ(verify_solution(inst, {{{0, 1, 0, 1, 2}}, 1}, 1).failure, VerifyResult::Failure::RepeatedVertex);
  const LinkageInstance fixed(g, {1}, {1});
  EXPECT_TRUE(verify_solution(fixed, {{{1}}, 1}, 1).ok());
}

TEST(WalkToPath, CutsCycles) {
  EXPECT_EQ(walk_to_path({0, 1, 2, 1, 3}), (Path{0, 1, 3}));
  EXPECT_EQ(walk_to_path({4, 5, 4, 6, 7, 6, 8}), (Path{4, 6, 8}));
  EXPECT_EQ(walk_to_path({2}), (Path{2}));
}

TEST(DoubleVertex, SpecExample) {
  const Digraph g(3, {{0, 1}, {1, 2}});
  const Digraph d = double_vertex(g, 1);
  EXPECT_EQ(d.vertex_count(), 4);
  EXPECT_EQ(d.edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {1, 3}, {3, 1}, {3, 2}}));
  // a <-> b with a doubled: the two originals, a' <-> b, a <-> a'.
  EXPECT_EQ(double_vertex(Digraph(2, {{0, 1}, {1, 0}}), 0).edge_count(), 6u);
  EXPECT_EQ(kind_of([&] { double_vertex(g, 3); }), ErrorKind::InvalidInput);
}

TEST(DoubleVertex, DoubledVertexHasSameNeighbours) {
  testing::Rng rng(17);
  const Digraph g = testing::random_digraph(8, 0.35, rng);
  const Digraph d = double_vertex(g, 3);
  const Vertex copy = 8;
  for (Vertex u = 0; u < 8; ++u) {
    if (u == 3) continue;
    EXPECT_EQ(d.has_edge(u, copy), g.has_edge(u, 3));
    EXPECT_EQ(d.has_edge(copy, u), g.has_edge(3, u));
  }
  EXPECT_TRUE(d.has_edge(3, copy));
  EXPECT_TRUE(d.has_edge(copy, 3));
  EXPECT_EQ(d.edge_count(), g.edge_count() + g.out(3).size() + g.in(3).size() + 2);
}

TEST(HalfToIntegral, EveryVertexDoubledAndLiftVerifies) {
  const Digraph g(5, {{0, 2}, {1, 2}, {2, 3}, {2, 4}});
  const LinkageInstance inst(g, {0, 1}, {3, 4});
  const auto red = reduce_half_to_integral(inst);
  EXPECT_EQ(red.instance.graph.vertex_count(), 10);
  EXPECT_EQ(red.instance.sources, inst.sources);
  const auto ans = brute_force_linkage(red.instance, 1);
  ASSERT_EQ(ans.verdict, Verdict::Feasible);
  const PathSystem lifted = lift_doubled_solution(red.map, ans.solution);
  EXPECT_TRUE(verify_solution(inst, lifted, 2).ok());
  EXPECT_EQ(brute_force_linkage(inst, 1).verdict, Verdict::Infeasible);
}

TEST(ContractSet, ThreeCycleBecomesTwoCycle) {
  const Contraction c = contract_set(Digraph(3, {{0, 1}, {1, 2}, {2, 0}, {1, 0}}), {0, 1});
  EXPECT_EQ(c.graph.vertex_count(), 2);
  EXPECT_EQ(c.graph.edge_count(), 2u);
  EXPECT_TRUE(c.graph.has_edge(c.merged, c.image[2]));
  EXPECT_TRUE(c.graph.has_edge(c.image[2], c.merged));
  EXPECT_EQ(c.image[0], c.merged);
}

TEST(ContractSet, WholeGraphAndErrors) {
  const Contraction all = contract_set(directed_cycle(4), {0, 1, 2, 3});
  EXPECT_EQ(all.graph.vertex_count(), 1);
  EXPECT_EQ(all.graph.edge_count(), 0u);
  EXPECT_EQ(kind_of([] { contract_set(directed_cycle(3), {}); }), ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { contract_set(Digraph(3, {{0, 1}}), {0, 1}); }), ErrorKind::PreconditionViolation);
}

TEST(Io, InstanceRoundTrip) {
  testing::Rng rng(23);
  const LinkageInstance inst = testing::random_instance(7, 2, 0.3, rng);
  const std::string text = format_instance(inst, {"hello"});
  const LinkageInstance back = parse_instance(text);
  EXPECT_EQ(back.graph, inst.graph);
  EXPECT_EQ(back.sources, inst.sources);
  EXPECT_EQ(back.sinks, inst.sinks);
  EXPECT_NE(text.find("# hello"), std::string::npos);
}

TEST(Io, SolutionAndBrambleRoundTrip) {
  const PathSystem sol{{{0, 1, 2}, {3}}, 2};
  EXPECT_EQ(parse_solution(format_solution(sol)).paths, sol.paths);
  Bramble b;
  b.bags = {{0, 1}, {1, 2, 3}};
  EXPECT_EQ(parse_bramble(format_bramble(b)).bags, b.bags);
}

TEST(Io, ParseErrorsCarryLines) {
  try {
    parse_instance("ddpp 1\nn 3\ne 0 7\n");
    FAIL() << "accepted an out-of-range edge";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_instance("ddpp 2\nn 1\n"), ParseError);
  EXPECT_THROW(parse_instance("ddpp 1\nn 2\nz 1\n"), ParseError);
  EXPECT_THROW(parse_solution("sol 1\npath 1 0 1\n"), ParseError);
  EXPECT_THROW(parse_bramble("bramble 1\nbag x: 1\n"), ParseError);
}

}  // namespace
}  // namespace ddpp
