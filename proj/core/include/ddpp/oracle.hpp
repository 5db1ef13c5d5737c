#pragma once

#include <cstdint>
#include <optional>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp {

enum class Verdict { Feasible, Infeasible, BudgetExceeded };

const char* to_string(Verdict v);

struct OracleResult {
  Verdict verdict = Verdict::Infeasible;
  PathSystem solution;  // set when feasible
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Exhaustive DFS over simple paths, pair by pair in index order, successors
/// ascending. The first solution found is returned; the search never reports
/// Infeasible unless the whole tree was explored.
OracleResult brute_force_linkage(const LinkageInstance& inst, int congestion,
                                 std::uint64_t budget = kDefaultBudget);

/// Exact minimum cover size. Throws SizeLimit when it exceeds `cap`.
int bramble_order(const Digraph& g, const Bramble& b, int cap);

inline constexpr int kEnumerationCap = 10;

struct SeparationWitness {
  std::optional<Separation> separation;  // minimum nontrivial one; none for complete graphs
  int connectivity = 0;
};

/// Strong connectivity by enumerating all 3^n side assignments.
SeparationWitness enumerate_min_separation(const Digraph& g, int cap = kEnumerationCap);

/// Minimum separation with S ⊆ A and T ⊆ B, by enumeration.
Separation enumerate_min_st_separation(const Digraph& g, const VertexSet& s_set,
                                       const VertexSet& t_set, int cap = kEnumerationCap);

/// Minimum proper separation of S from K by enumeration (nullopt if none).
std::optional<Separation> enumerate_min_proper_separation(const Digraph& g, const VertexSet& s_set,
                                                          const VertexSet& k_set,
                                                          int cap = kEnumerationCap);

}  // namespace ddpp
