#pragma once

#include <optional>
#include <vector>

#include "ddpp/digraph.hpp"

namespace ddpp {

/// A maximum family of vertex-disjoint S-T paths together with a separation
/// (A, B), S ⊆ A, T ⊆ B, whose order equals the number of paths.
struct MengerResult {
  std::vector<Path> paths;
  Separation separation;

  int count() const noexcept { return static_cast<int>(paths.size()); }
};

MengerResult max_disjoint_paths(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set);

/// Same, in g with the `blocked` vertices deleted. The separation lists
/// surviving vertices only.
MengerResult max_disjoint_paths(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set,
                                const std::vector<bool>& blocked);

/// Minimum-order separation (A, B) with S ⊆ A, K ⊆ B, S∖B ≠ ∅ and K∖A ≠ ∅.
/// Ties go to the lexicographically least A∩B. nullopt when no such
/// separation exists. Throws PreconditionViolation when S ⊆ K or K ⊆ S.
std::optional<Separation> min_proper_separation(const Digraph& g, const VertexSet& s_set,
                                                const VertexSet& k_set);

/// True iff every separation that properly separates S from T has order
/// >= alpha (vacuously true when there is none).
bool is_alpha_connected(const Digraph& g, const VertexSet& s_set, const VertexSet& t_set, int alpha);

struct WellLinkedOptions {
  int max_set_size = 12;
  /// Only test pairs with U1 ∩ U2 = ∅.
  bool disjoint_only = false;
};

/// For every pair of equal-size U1, U2 ⊆ x: a U1 -> U2 linkage of order |U1|.
/// Exhaustive; throws SizeLimit when |x| > options.max_set_size.
bool is_well_linked(const Digraph& g, const VertexSet& x, const WellLinkedOptions& options = {});

namespace detail {

/// Checks only the subset pairs that involve bit `fresh` of `x` (both sets
/// drawn from x, given as a list). Used for incremental searches, since
/// subsets of a well-linked set are well-linked.
bool well_linked_pairs_with(const Digraph& g, const std::vector<Vertex>& x, int fresh,
                            bool disjoint_only);

}  // namespace detail

}  // namespace ddpp
