#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ddpp {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;
/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;
/// Vertex sequence of a directed path (or walk, where stated).
using Path = std::vector<Vertex>;

VertexSet make_set(std::vector<Vertex> vertices);
bool set_contains(const VertexSet& set, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool sets_intersect(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& sub, const VertexSet& super);

/// Immutable simple digraph on vertices 0..n-1 with sorted adjacency lists.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int vertex_count);
  /// Self-loops are rejected; repeated edges collapse to one.
  Digraph(int vertex_count, std::span<const Edge> edges);
  Digraph(int vertex_count, std::initializer_list<Edge> edges);

  int vertex_count() const noexcept { return static_cast<int>(out_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool valid(Vertex v) const noexcept { return v >= 0 && v < vertex_count(); }

  std::span<const Vertex> out(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const Vertex> in(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }
  bool has_edge(Vertex u, Vertex v) const;

  /// Edges in ascending (tail, head) order.
  std::vector<Edge> edges() const;
  Digraph reversed() const;

  friend bool operator==(const Digraph& a, const Digraph& b) { return a.out_ == b.out_; }

 private:
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t edge_count_ = 0;
};

/// Graph induced on `keep`, with the map from new ids back to the parent.
struct InducedSubgraph {
  Digraph graph;
  std::vector<Vertex> to_parent;
  std::vector<Vertex> from_parent;  // -1 where the vertex was dropped
};

InducedSubgraph induced_subgraph(const Digraph& g, const VertexSet& keep);
InducedSubgraph remove_vertices(const Digraph& g, const VertexSet& removed);

/// Vertices reachable from `from` without entering `blocked` (a mask, may be empty).
std::vector<bool> reachable_from(const Digraph& g, Vertex from, const std::vector<bool>& blocked = {});
/// Shortest path from `from` to any vertex flagged in `targets`, staying inside `allowed`
/// (empty mask = everything allowed). Ties resolve toward smaller vertex ids.
std::optional<Path> shortest_path(const Digraph& g, Vertex from, const std::vector<bool>& targets,
                                  const std::vector<bool>& allowed = {});

/// Strong connectivity of the subgraph induced by `vertices` (empty set counts as false).
bool induces_strongly_connected(const Digraph& g, const VertexSet& vertices);

/// Pair (A, B) with A ∪ B = V and no edge from A∖B to B∖A.
struct Separation {
  VertexSet side_a;
  VertexSet side_b;

  int order() const;
  VertexSet cut() const { return set_intersection(side_a, side_b); }
  bool trivial() const { return is_subset(side_a, side_b) || is_subset(side_b, side_a); }
};

/// Empty string when `sep` is a separation of `g`, otherwise the violated condition.
std::string check_separation(const Digraph& g, const Separation& sep);

/// Largest k such that g is strongly k-connected: |V| >= k+1 and every
/// nontrivial separation has order >= k.
int strong_connectivity(const Digraph& g);

struct LinkageInstance {
  Digraph graph;
  std::vector<Vertex> sources;
  std::vector<Vertex> sinks;

  LinkageInstance() = default;
  /// Validates: equal lengths, vertices in range, sources distinct, sinks distinct.
  LinkageInstance(Digraph g, std::vector<Vertex> s, std::vector<Vertex> t);

  int k() const noexcept { return static_cast<int>(sources.size()); }
};

struct PathSystem {
  std::vector<Path> paths;
  int congestion_bound = 1;
};

struct VerifyResult {
  enum class Failure {
    None,
    PathCount,
    EmptyPath,
    WrongEndpoint,
    InvalidVertex,
    MissingEdge,
    RepeatedVertex,
    Congestion,
  };

  Failure failure = Failure::None;
  int path_index = -1;
  Vertex vertex = -1;
  Edge edge{-1, -1};
  std::string message;

  bool ok() const noexcept { return failure == Failure::None; }
  explicit operator bool() const noexcept { return ok(); }
};

VerifyResult verify_solution(const LinkageInstance& inst, const PathSystem& sol, int congestion);

/// Number of distinct paths through each vertex.
std::vector<int> vertex_usage(int vertex_count, const std::vector<Path>& paths);

/// Shortcuts a walk into a path with the same endpoints: scanning left to
/// right, a revisit of v deletes the closed sub-walk since v's first visit.
Path walk_to_path(const Path& walk);

struct DoublingMap {
  int original_count = 0;
  std::vector<Vertex> double_of;  // indexed by original vertex; -1 if not doubled

  Vertex original_of(Vertex v) const;
};

/// Adds v' with N+(v') = N+(v), N-(v') = N-(v) and both edges between v and v'.
/// The new vertex gets id vertex_count().
Digraph double_vertex(const Digraph& g, Vertex v);

struct DoubledInstance {
  LinkageInstance instance;
  DoublingMap map;
};

/// Doubles every vertex (v' = v + n) and moves each sink t_i to t_i'.
DoubledInstance reduce_half_to_integral(const LinkageInstance& inst);

/// Maps an integral solution of the doubled instance back to a half-integral
/// solution of the original one.
PathSystem lift_doubled_solution(const DoublingMap& map, const PathSystem& doubled);

struct Contraction {
  Digraph graph;
  Vertex merged = -1;
  std::vector<Vertex> image;  // image[v] for every original vertex
};

/// Replaces the strongly connected set `u` by a single vertex. Remaining
/// vertices keep their relative order; the merged vertex is last.
Contraction contract_set(const Digraph& g, const VertexSet& u);

}  // namespace ddpp
