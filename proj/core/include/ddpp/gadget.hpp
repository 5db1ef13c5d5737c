#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddpp/digraph.hpp"

namespace ddpp {

struct Literal {
  int variable = 1;  // 1-based
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// 3-CNF. Padded clauses may repeat a literal; the gadget treats a clause
/// as the set of its literals.
struct CnfFormula {
  int variable_count = 0;
  std::vector<Clause> clauses;
};

/// DIMACS `p cnf n m`. Without `pad`, every clause needs exactly three
/// distinct literals; with it, shorter clauses repeat their last literal.
/// Throws ParseError with the offending line.
CnfFormula parse_dimacs(std::string_view text, bool pad = false);
std::string format_dimacs(const CnfFormula& f);

/// assignment[i] is the value of variable i+1.
bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);
/// Index of the first clause the assignment falsifies, or -1.
int first_falsified(const CnfFormula& f, const std::vector<bool>& assignment);

/// p/q with 0 < p < q.
struct Rational {
  std::int64_t p = 1;
  std::int64_t q = 2;
};

/// Parses `p/q`. Throws InvalidInput unless 0 < p/q < 1.
Rational parse_rational(std::string_view text);

struct GadgetLayout {
  Rational epsilon;
  int n = 0;
  int m = 0;
  int k_prime = 0;
  int w_count = 0;  // M, even
  int k = 0;
  int v1_count = 0;

  // Per variable (0-based).
  std::vector<Vertex> u, v, u_bar, v_bar, b, b_prime;
  /// Occurrence vertices along P_i and P̄_i as (clause index, vertex).
  std::vector<std::vector<std::pair<int, Vertex>>> occurrences, occurrences_bar;
  std::vector<Path> var_path, var_path_bar;
  // Per clause.
  std::vector<Vertex> c, c_prime;
  std::array<Vertex, 3> s{};
  std::array<Vertex, 3> t{};
  std::vector<Vertex> w;

  /// Human-readable name for every vertex, in id order.
  std::vector<std::pair<std::string, Vertex>> roles() const;
};

struct Gadget {
  LinkageInstance instance;
  GadgetLayout layout;
};

/// The hardness graph G(F) with k = k' + M pairs, k' = 3 + m + n, and M the
/// even member of {ceil(eps/(1-eps) k'), that + 1}. Needs n >= 1. Throws
/// InvalidInput for eps outside (0, 1), SizeLimit when M overflows.
Gadget build_gadget(const CnfFormula& f, Rational epsilon);

/// The linkage built from a satisfying assignment. Throws
/// PreconditionViolation naming a falsified clause.
PathSystem encode_assignment(const Gadget& gadget, const CnfFormula& f, const std::vector<bool>& assignment);

/// Reads an assignment off a half-integral solution: x_i is true iff P̄_i
/// carries two of the three s-t paths. Throws InvariantViolation if the
/// solution does not verify or the assignment falsifies F.
std::vector<bool> decode_solution(const Gadget& gadget, const CnfFormula& f, const PathSystem& sol);

}  // namespace ddpp
