#include <gtest/gtest.h>

#include <algorithm>

#include "ddpp/error.hpp"
#include "ddpp/gadget.hpp"
#include "ddpp/oracle.hpp"

namespace ddpp {
namespace {

constexpr const char* kThreeClauses =
    "c three clauses over three variables\n"
    "p cnf 3 3\n"
    "1 2 3 0\n"
    "1 -2 3 0\n"
    "-1 -2 -3 0\n";

std::vector<bool> bits(unsigned mask, int n) {
  std::vector<bool> out;
  for (int i = 0; i < n; ++i) out.push_back(((mask >> (n - 1 - i)) & 1u) != 0);
  return out;
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

TEST(Dimacs, ParsesThreeClauseFormula) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  EXPECT_EQ(f.variable_count, 3);
  ASSERT_EQ(f.clauses.size(), 3u);
  EXPECT_EQ(f.clauses[1][1], (Literal{2, false}));
  const CnfFormula back = parse_dimacs(format_dimacs(f));
  EXPECT_EQ(back.clauses, f.clauses);
}

TEST(Dimacs, StrictAndPadded) {
  try {
    parse_dimacs("p cnf 1 1\n1 0\n");
    FAIL() << "strict mode accepted a unit clause";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  const CnfFormula padded = parse_dimacs("p cnf 2 1\n1 -2 0\n", true);
  EXPECT_EQ(padded.clauses[0][2], (Literal{2, false}));
  EXPECT_EQ(parse_dimacs("p cnf 2 0\n").clauses.size(), 0u);
}

TEST(Dimacs, Errors) {
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 1 2 0\n"), ParseError);           // repeated literal
  EXPECT_THROW(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), ParseError);           // clause count
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 2 4 0\n"), ParseError);           // variable range
  EXPECT_THROW(parse_dimacs("p cnf 3 1\n1 x 3 0\n"), ParseError);           // token
  EXPECT_THROW(parse_dimacs("1 2 3 0\n"), ParseError);                      // no header
  EXPECT_NO_THROW(parse_dimacs("p cnf 3 1\n1 -1 2 0\n"));                   // x and ¬x together
}

TEST(Assignments, ThreeClauseFormulaHasFiveModels) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  std::vector<unsigned> models;
  for (unsigned mask = 0; mask < 8; ++mask) {
    if (satisfies(f, bits(mask, 3))) models.push_back(mask);
  }
  EXPECT_EQ(models, (std::vector<unsigned>{0b001, 0b011, 0b100, 0b101, 0b110}));
  EXPECT_EQ(first_falsified(f, bits(0b000, 3)), 0);
  EXPECT_EQ(first_falsified(f, bits(0b111, 3)), 2);
  EXPECT_EQ(first_falsified(f, bits(0b101, 3)), -1);
}

TEST(Rational, Parse) {
  const Rational r = parse_rational("1/3");
  EXPECT_EQ(r.p, 1);
  EXPECT_EQ(r.q, 3);
  for (const char* bad : {"0/2", "2/2", "3/2", "1/0", "x", "1/", "-1/2"}) {
    EXPECT_EQ(kind_of([&] { parse_rational(bad); }), ErrorKind::InvalidInput) << bad;
  }
}

TEST(Gadget, ThreeClauseSizes) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  const Gadget g = build_gadget(f, Rational{1, 2});
  EXPECT_EQ(g.layout.v1_count, 39);
  EXPECT_EQ(g.layout.k_prime, 9);
  EXPECT_EQ(g.layout.w_count, 10);
  EXPECT_EQ(g.layout.k, 19);
  EXPECT_EQ(g.instance.graph.vertex_count(), 49);
  EXPECT_EQ(g.instance.k(), 19);
  EXPECT_GE(strong_connectivity(g.instance.graph), g.layout.w_count);
  EXPECT_EQ(g.layout.roles().size(), 49u);
}

TEST(Gadget, HubCountCoversEpsilonShare) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  for (const char* eps : {"1/4", "1/3", "1/2", "2/3", "9/10"}) {
    const Rational r = parse_rational(eps);
    const Gadget g = build_gadget(f, r);
    EXPECT_EQ(g.layout.w_count % 2, 0) << eps;
    EXPECT_GE(g.layout.w_count * r.q, r.p * g.layout.k) << eps;
  }
  const CnfFormula unit = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n", true);
  EXPECT_EQ(build_gadget(unit, parse_rational("1/4")).layout.w_count, 2);
}

TEST(Gadget, HugeEpsilonHitsSizeLimit) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  EXPECT_EQ(kind_of([&] { build_gadget(f, Rational{999999999, 1000000000}); }), ErrorKind::SizeLimit);
  EXPECT_EQ(kind_of([&] { build_gadget(CnfFormula{}, Rational{1, 2}); }), ErrorKind::InvalidInput);
}

TEST(Gadget, ClauseVertexOrientation) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  const Gadget gadget = build_gadget(f, Rational{1, 2});
  const auto& L = gadget.layout;
  const Digraph& g = gadget.instance.graph;
  for (int j = 0; j < L.m; ++j) {
    VertexSet expected;
    for (int i = 0; i < L.n; ++i) {
      for (auto [clause, v] : L.occurrences[i]) {
        if (clause == j) expected.push_back(v);
      }
      for (auto [clause, v] : L.occurrences_bar[i]) {
        if (clause == j) expected.push_back(v);
      }
    }
    expected = make_set(expected);
    EXPECT_EQ(expected.size(), 3u);
    VertexSet out;
    for (Vertex v : g.out(L.c[j])) {
      if (v < L.v1_count) out.push_back(v);
    }
    EXPECT_EQ(out, expected) << "clause " << j;
    for (Vertex v : expected) {
      EXPECT_FALSE(g.has_edge(v, L.c[j]));
      EXPECT_TRUE(g.has_edge(v, L.c_prime[j]));
    }
  }
  // Positive literals sit on P_i, negative ones on the barred path.
  ASSERT_EQ(L.occurrences[0].size(), 2u);  // x1 in clauses 1 and 2
  EXPECT_EQ(L.occurrences[0][0].first, 0);
  EXPECT_EQ(L.occurrences[0][1].first, 1);
  EXPECT_EQ(L.occurrences[1].size(), 1u);      // x2 is positive in clause 1 only
  EXPECT_EQ(L.occurrences_bar[1].size(), 2u);  // ¬x2 in clauses 2 and 3
}

TEST(Gadget, HubsAreTerminalsOnceEach) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  const Gadget gadget = build_gadget(f, Rational{1, 2});
  const auto& inst = gadget.instance;
  for (Vertex w : gadget.layout.w) {
    EXPECT_EQ(std::count(inst.sources.begin(), inst.sources.end(), w), 1);
    EXPECT_EQ(std::count(inst.sinks.begin(), inst.sinks.end(), w), 1);
    for (Vertex v = 0; v < gadget.layout.v1_count; ++v) {
      EXPECT_TRUE(inst.graph.has_edge(w, v));
      EXPECT_TRUE(inst.graph.has_edge(v, w));
    }
  }
}

TEST(Gadget, EncodeDecodeThreeClauses) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  const Gadget gadget = build_gadget(f, Rational{1, 2});
  for (unsigned mask = 0; mask < 8; ++mask) {
    const auto a = bits(mask, 3);
    if (!satisfies(f, a)) {
      try {
        encode_assignment(gadget, f, a);
        FAIL() << "encoded a falsifying assignment";
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PreconditionViolation);
        EXPECT_NE(std::string(e.what()).find("clause"), std::string::npos);
      }
      continue;
    }
    const PathSystem sol = encode_assignment(gadget, f, a);
    EXPECT_TRUE(verify_solution(gadget.instance, sol, 2).ok());
    EXPECT_EQ(decode_solution(gadget, f, sol), a) << "mask " << mask;
  }
}

TEST(Gadget, AllPositiveFormulaUsesPositiveOccurrences) {
  const CnfFormula f = parse_dimacs("p cnf 3 1\n1 2 3 0\n");
  const Gadget gadget = build_gadget(f, Rational{1, 2});
  const PathSystem sol = encode_assignment(gadget, f, {true, true, true});
  EXPECT_TRUE(verify_solution(gadget.instance, sol, 2).ok());
  // The clause path passes an occurrence vertex on P_1.
  const Vertex occurrence = gadget.layout.occurrences[0][0].second;
  const auto& clause_path = sol.paths[3];
  EXPECT_EQ(clause_path.front(), gadget.layout.c[0]);
  EXPECT_NE(std::find(clause_path.begin(), clause_path.end(), occurrence), clause_path.end());
}

TEST(Gadget, DecodeRejectsBadSolutions) {
  const CnfFormula f = parse_dimacs(kThreeClauses);
  const Gadget gadget = build_gadget(f, Rational{1, 2});
  PathSystem sol = encode_assignment(gadget, f, bits(0b001, 3));
  sol.paths.pop_back();
  EXPECT_EQ(kind_of([&] { decode_solution(gadget, f, sol); }), ErrorKind::InvariantViolation);
}

TEST(Gadget, OracleAgreesOnSmallFormulas) {
  const char* formulas[] = {
      "p cnf 1 1\n1 0\n",
      "p cnf 1 2\n1 0\n-1 0\n",
      "p cnf 2 2\n1 2 0\n-1 0\n",
      "p cnf 2 2\n1 0\n-2 0\n",
  };
  for (const char* text : formulas) {
    const CnfFormula f = parse_dimacs(text, true);
    bool sat = false;
    for (unsigned mask = 0; mask < (1u << f.variable_count); ++mask) sat = sat || satisfies(f, bits(mask, f.variable_count));
    const Gadget gadget = build_gadget(f, Rational{1, 4});
    const auto r = brute_force_linkage(gadget.instance, 2, 100000000);
    ASSERT_NE(r.verdict, Verdict::BudgetExceeded) << text;
    EXPECT_EQ(r.verdict == Verdict::Feasible, sat) << text;
    if (sat) EXPECT_TRUE(satisfies(f, decode_solution(gadget, f, r.solution))) << text;
  }
}

}  // namespace
}  // namespace ddpp
