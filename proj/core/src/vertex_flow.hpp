#pragma once

#include <vector>

#include "ddpp/digraph.hpp"

namespace ddpp::detail {

/// Unit-capacity vertex-split max flow: each vertex v becomes v_in -> v_out
/// with capacity 1 (or unbounded when flagged uncuttable); edges, source arcs
/// and sink arcs are unbounded. Augmenting paths are found by BFS with arcs
/// scanned in ascending order of head node, so results are reproducible.
class VertexSplitFlow {
 public:
  static constexpr int kUnbounded = 1 << 28;

  struct Options {
    std::vector<bool> blocked;     // vertices deleted from the graph
    std::vector<bool> uncuttable;  // vertices with unbounded capacity
  };

  VertexSplitFlow(const Digraph& g, const VertexSet& sources, const VertexSet& sinks,
                  const Options& options = {});

  /// Augments until the flow value reaches `limit` or no path remains.
  /// Returns the value, which is >= kUnbounded when no finite cut exists.
  int run(int limit = kUnbounded);

  int value() const noexcept { return value_; }

  /// Decomposes the flow into source-to-sink vertex paths (unit capacities).
  std::vector<Path> paths() const;

  /// Minimum cut read off the residual graph: A = {v : v_in reachable},
  /// B = {v : v_out unreachable}. Blocked vertices appear on neither side.
  Separation min_cut() const;

 private:
  struct Arc {
    int to;
    int cap;
    int flow;
  };

  int in_node(Vertex v) const { return 2 * v; }
  int out_node(Vertex v) const { return 2 * v + 1; }
  void add_arc(int from, int to, int cap);
  std::vector<bool> residual_reachable() const;

  const Digraph& graph_;
  std::vector<bool> blocked_;
  int source_ = 0;
  int sink_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adj_;
  int value_ = 0;
};

/// Number of internally disjoint a->b paths, capped at `limit`. Requires a != b
/// and (a, b) not an edge.
int local_vertex_connectivity(const Digraph& g, Vertex a, Vertex b, int limit);

}  // namespace ddpp::detail
