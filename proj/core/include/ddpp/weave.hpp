#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"

namespace ddpp {

/// A positive integer that may be far too large for any machine type.
/// `exact` is set when the value fits in 62 bits; `tower` marks values
/// whose base-2 logarithm does not fit in a double either.
struct Magnitude {
  std::optional<std::uint64_t> exact;
  double log2 = 0.0;
  bool tower = false;

  static Magnitude from_log2(double bits);
  bool exceeds(std::uint64_t n) const;
  std::string describe() const;
};

/// (10k) 2^(2(t+k)): linkage size for the single-linkage uncrossing.
Magnitude uncross_pair_threshold(int k, int t);
/// 2^k 2^T with T = (10t) 2^(4t): linkage size for the two-linkage uncrossing.
Magnitude uncross_two_threshold(int k, int t);
/// 2^(2t): side of the block grid used to assemble a bramble.
Magnitude grid_side_threshold(int t);
/// T^4 f_t^(T^8)(2): well-linked set size needed for a bramble of size t.
Magnitude well_linked_threshold(int t);

struct WeaveConfig {
  /// Allow inputs below the structural thresholds. Every output is still
  /// certified; a stage that cannot finish reports a WeaveFailure.
  bool relaxed = false;
  std::optional<int> pair_threshold;     // overrides (10k) 2^(2(t+k))
  std::optional<int> two_threshold;      // overrides 2^k 2^T
  std::optional<int> grid_side;          // overrides 2^(2t); relaxed default max(2, t)
  std::optional<int> block_size;         // relaxed default |x| / (4 * side^2)
};

struct WeaveFailure {
  std::string stage;
  std::string reason;
};

using IndexSet = std::vector<int>;

/// Red/blue coloring of pairs of items 0..m-1; called with i < j.
using PairColoring = std::function<bool(int, int)>;

struct RamseyResult {
  bool red = false;
  IndexSet items;  // ascending
};

/// Halving walk with least-index pivots. Needs m >= 2^(r+t) (InvalidInput
/// otherwise). Returns exactly r red-clique items or t blue-clique items.
RamseyResult ramsey_monochromatic(int m, const PairColoring& is_red, int r, int t);

/// Halving walk when m is large enough, otherwise exhaustive search (red
/// clique of size r first, then blue of size t). nullopt if neither exists.
std::optional<RamseyResult> ramsey_search(int m, const PairColoring& is_red, int r, int t);

/// P_i runs x_i -> y_i, Q_i runs y_i -> x_pi(i) (0-based indices). Either a
/// bramble of size t and depth <= 2, or k indices j whose subgraphs
/// P_j ∪ Q_j ∪ P_pi(j) ∪ Q_pi(j) ∪ P_pi(pi(j)) are pairwise disjoint.
using PairOutcome = std::variant<Bramble, IndexSet, WeaveFailure>;
PairOutcome uncross_pair(const Digraph& g, const std::vector<Path>& p, const std::vector<Path>& q,
                         const std::vector<int>& pi, int k, int t, const WeaveConfig& cfg);

/// Index sets into the two input linkages; every chosen P misses every chosen R.
struct DisjointSublinkages {
  IndexSet p;
  IndexSet r;
};

using TwoLinkageOutcome = std::variant<DisjointSublinkages, Bramble, WeaveFailure>;
/// p links X1 -> X2 and r links Y1 -> Y2, all four endpoint sets disjoint
/// subsets of the well-linked set x.
TwoLinkageOutcome uncross_two_linkages(const Digraph& g, const VertexSet& x,
                                       const std::vector<Path>& p, const std::vector<Path>& r,
                                       int k, int t, const WeaveConfig& cfg);

using BrambleOutcome = std::variant<Bramble, WeaveFailure>;
/// Bramble of size t and depth <= 2 from a well-linked set x on the path p.
BrambleOutcome bramble_from_well_linked(const Digraph& g, const Path& p, const VertexSet& x, int t,
                                        const WeaveConfig& cfg);

}  // namespace ddpp
