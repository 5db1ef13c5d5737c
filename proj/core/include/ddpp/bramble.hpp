#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddpp/digraph.hpp"

namespace ddpp {

/// Ordered list of bags. Validity (strongly connected bags, pairwise
/// touching) is checked by validate_bramble, not enforced on construction.
struct Bramble {
  std::vector<VertexSet> bags;

  int size() const noexcept { return static_cast<int>(bags.size()); }
};

struct BrambleCheck {
  bool ok = true;
  int bag = -1;    // failing bag, or first bag of the failing pair
  int other = -1;  // second bag of the failing pair
  std::string message;

  explicit operator bool() const noexcept { return ok; }
};

/// Intersect, or edges in both directions between them.
bool bags_touch(const Digraph& g, const VertexSet& a, const VertexSet& b);

BrambleCheck validate_bramble(const Digraph& g, const Bramble& b);

/// Largest number of bags sharing one vertex (0 for the empty bramble).
int depth(const Bramble& b);

/// Coordinates of the directed grid J_r: position i in 1..2r along each
/// cycle, cycle j in 1..r. vertex(i, j) = (i-1)*r + (j-1).
struct GridLabels {
  int order = 0;

  Vertex vertex(int i, int j) const { return (i - 1) * order + (j - 1); }
  /// C_j as a vertex sequence v_1^j .. v_2r^j.
  Path cycle(int j) const;
  /// P_i: ascending v_i^1 .. v_i^r for odd i, descending for even i.
  Path radial(int i) const;
};

struct Grid {
  Digraph graph;
  GridLabels labels;
};

/// J_r for r >= 2: 2r^2 vertices, 4r^2 - 2r edges.
Grid gen_grid(int r);

/// r bags of depth two: C'_1 = C_1 and, for 2 <= i <= r, the cycle through
/// all of C_i, down P_2i to ring 1, one step along C_1 and up P_2i+1
/// (index 2r+1 wraps to 1).
Bramble grid_bramble(const Digraph& g, const GridLabels& labels);

/// A directed path meeting every bag. Requires a valid bramble.
Path hitting_path(const Digraph& g, const Bramble& b);

/// Long simple path by greedy extension at both ends, restarted from every
/// vertex (order shuffled by `seed`, identity for 0); the longest wins.
/// Extension prefers the neighbour with the fewest free onward neighbours.
Path greedy_long_path(const Digraph& g, std::uint64_t seed = 0);

/// Exhaustive search for a well-linked subset of V(p) of the given size,
/// taking vertices in path order. Throws SizeLimit when target_size > cap.
std::optional<VertexSet> well_linked_on_path(const Digraph& g, const Path& p, int target_size,
                                             int cap = 12);

}  // namespace ddpp
