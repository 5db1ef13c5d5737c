#include "ddpp/digraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "ddpp/error.hpp"
#include "vertex_flow.hpp"

namespace ddpp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::PreconditionViolation: return "precondition-violation";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::InvariantViolation: return "invariant-violation";
    case ErrorKind::Parse: return "parse-error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(int line, const std::string& message)
    : Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message), line_(line) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

// ---- vertex sets ----------------------------------------------------------

VertexSet make_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool set_contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sets_intersect(const VertexSet& a, const VertexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool is_subset(const VertexSet& sub, const VertexSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

// ---- Digraph ----------------------------------------------------------------

Digraph::Digraph(int vertex_count) {
  require(vertex_count >= 0, ErrorKind::InvalidInput, "negative vertex count");
  out_.resize(static_cast<std::size_t>(vertex_count));
  in_.resize(static_cast<std::size_t>(vertex_count));
}

Digraph::Digraph(int vertex_count, std::span<const Edge> edges) : Digraph(vertex_count) {
  for (const auto& [u, v] : edges) {
    require(valid(u) && valid(v), ErrorKind::InvalidInput,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    require(u != v, ErrorKind::InvalidInput, "self-loop at vertex " + std::to_string(u));
    out_[u].push_back(v);
  }
  for (Vertex u = 0; u < vertex_count; ++u) {
    auto& list = out_[u];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edge_count_ += list.size();
    for (Vertex v : list) in_[v].push_back(u);
  }
}

Digraph::Digraph(int vertex_count, std::initializer_list<Edge> edges)
    : Digraph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

bool Digraph::has_edge(Vertex u, Vertex v) const {
  if (!valid(u) || !valid(v)) return false;
  const auto& list = out_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : out_[u]) result.emplace_back(u, v);
  }
  return result;
}

Digraph Digraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : out_[u]) rev.emplace_back(v, u);
  }
  return Digraph(vertex_count(), rev);
}

InducedSubgraph induced_subgraph(const Digraph& g, const VertexSet& keep) {
  InducedSubgraph sub;
  sub.from_parent.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  for (Vertex v : keep) {
    require(g.valid(v), ErrorKind::InvalidInput, "induced_subgraph: vertex out of range");
    sub.from_parent[v] = static_cast<Vertex>(sub.to_parent.size());
    sub.to_parent.push_back(v);
  }
  std::vector<Edge> edges;
  for (Vertex v : keep) {
    for (Vertex w : g.out(v)) {
      if (sub.from_parent[w] >= 0) edges.emplace_back(sub.from_parent[v], sub.from_parent[w]);
    }
  }
  sub.graph = Digraph(static_cast<int>(keep.size()), edges);
  return sub;
}

InducedSubgraph remove_vertices(const Digraph& g, const VertexSet& removed) {
  VertexSet all(static_cast<std::size_t>(g.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  return induced_subgraph(g, set_difference(all, removed));
}

std::vector<bool> reachable_from(const Digraph& g, Vertex from, const std::vector<bool>& blocked) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  auto is_blocked = [&](Vertex v) { return !blocked.empty() && blocked[v]; };
  if (is_blocked(from)) return seen;
  std::deque<Vertex> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.out(v)) {
      if (!seen[w] && !is_blocked(w)) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::optional<Path> shortest_path(const Digraph& g, Vertex from, const std::vector<bool>& targets,
                                  const std::vector<bool>& allowed) {
  auto ok = [&](Vertex v) { return allowed.empty() || allowed[v]; };
  if (!ok(from)) return std::nullopt;
  std::vector<Vertex> parent(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
  std::deque<Vertex> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (targets[v]) {
      Path path;
      for (Vertex x = v; x != -1; x = parent[x]) path.push_back(x);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex w : g.out(v)) {
      if (!seen[w] && ok(w)) {
        seen[w] = true;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

bool induces_strongly_connected(const Digraph& g, const VertexSet& vertices) {
  if (vertices.empty()) return false;
  std::vector<bool> outside(static_cast<std::size_t>(g.vertex_count()), true);
  for (Vertex v : vertices) outside[v] = false;
  const auto fwd = reachable_from(g, vertices.front(), outside);
  const Digraph rev = g.reversed();
  const auto bwd = reachable_from(rev, vertices.front(), outside);
  return std::all_of(vertices.begin(), vertices.end(), [&](Vertex v) { return fwd[v] && bwd[v]; });
}

// ---- separations --------------------------------------------------------------

int Separation::order() const { return static_cast<int>(cut().size()); }

std::string check_separation(const Digraph& g, const Separation& sep) {
  const int n = g.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), 0);  // bit 1 = A, bit 2 = B
  for (Vertex v : sep.side_a) {
    if (!g.valid(v)) return "vertex out of range in side A";
    side[v] |= 1;
  }
  for (Vertex v : sep.side_b) {
    if (!g.valid(v)) return "vertex out of range in side B";
    side[v] |= 2;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] == 0) return "vertex " + std::to_string(v) + " on neither side";
  }
  for (Vertex u = 0; u < n; ++u) {
    if (side[u] != 1) continue;
    for (Vertex w : g.out(u)) {
      if (side[w] == 2) {
        return "edge (" + std::to_string(u) + "," + std::to_string(w) + ") crosses from A\\B to B\\A";
      }
    }
  }
  return {};
}

int strong_connectivity(const Digraph& g) {
  const int n = g.vertex_count();
  require(n >= 2, ErrorKind::InvalidInput, "strong connectivity needs at least two vertices");
  // A minimum nontrivial separation X has some vertex among the first |X|+1
  // that lies outside X; that vertex is on a strict side, so testing each of
  // the first (best+1) vertices against all non-adjacent partners suffices.
  int best = n - 1;
  for (Vertex v = 0; v < n && v <= best; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      if (!g.has_edge(v, w)) {
        best = std::min(best, detail::local_vertex_connectivity(g, v, w, best));
      }
      if (!g.has_edge(w, v)) {
        best = std::min(best, detail::local_vertex_connectivity(g, w, v, best));
      }
      if (best == 0) return 0;
    }
  }
  return best;
}

// ---- linkage instances and solutions ------------------------------------------------

LinkageInstance::LinkageInstance(Digraph g, std::vector<Vertex> s, std::vector<Vertex> t)
    : graph(std::move(g)), sources(std::move(s)), sinks(std::move(t)) {
  require(sources.size() == sinks.size(), ErrorKind::InvalidInput,
          "source and sink tuples differ in length");
  for (Vertex v : sources) {
    require(graph.valid(v), ErrorKind::InvalidInput, "source vertex out of range");
  }
  for (Vertex v : sinks) {
    require(graph.valid(v), ErrorKind::InvalidInput, "sink vertex out of range");
  }
  require(make_set(sources).size() == sources.size(), ErrorKind::InvalidInput,
          "sources must be pairwise distinct");
  require(make_set(sinks).size() == sinks.size(), ErrorKind::InvalidInput,
          "sinks must be pairwise distinct");
}

std::vector<int> vertex_usage(int vertex_count, const std::vector<Path>& paths) {
  std::vector<int> usage(static_cast<std::size_t>(vertex_count), 0);
  for (const auto& path : paths) {
    for (Vertex v : make_set(path)) {
      if (v >= 0 && v < vertex_count) ++usage[v];
    }
  }
  return usage;
}

VerifyResult verify_solution(const LinkageInstance& inst, const PathSystem& sol, int congestion) {
  VerifyResult r;
  auto failure = [&r](VerifyResult::Failure f, int index, std::string message) {
    r.failure = f;
    r.path_index = index;
    r.message = std::move(message);
    return r;
  };
  const Digraph& g = inst.graph;
  if (static_cast<int>(sol.paths.size()) != inst.k()) {
    return failure(VerifyResult::Failure::PathCount, -1,
                   "expected " + std::to_string(inst.k()) + " paths, got " +
                       std::to_string(sol.paths.size()));
  }
  for (int i = 0; i < inst.k(); ++i) {
    const Path& p = sol.paths[i];
    const std::string label = "path " + std::to_string(i + 1);
    if (p.empty()) return failure(VerifyResult::Failure::EmptyPath, i, label + " is empty");
    for (Vertex v : p) {
      if (!g.valid(v)) {
        r.vertex = v;
        return failure(VerifyResult::Failure::InvalidVertex, i,
                       label + " uses invalid vertex " + std::to_string(v));
      }
    }
    if (p.front() != inst.sources[i] || p.back() != inst.sinks[i]) {
      return failure(VerifyResult::Failure::WrongEndpoint, i,
                     label + " must run " + std::to_string(inst.sources[i]) + " -> " +
                         std::to_string(inst.sinks[i]));
    }
    for (std::size_t j = 0; j + 1 < p.size(); ++j) {
      if (!g.has_edge(p[j], p[j + 1])) {
        r.edge = {p[j], p[j + 1]};
        return failure(VerifyResult::Failure::MissingEdge, i,
                       label + " step " + std::to_string(j) + " uses non-edge (" +
                           std::to_string(p[j]) + "," + std::to_string(p[j + 1]) + ")");
      }
    }
    if (make_set(p).size() != p.size()) {
      std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
      for (Vertex v : p) {
        if (seen[v]) {
          r.vertex = v;
          break;
        }
        seen[v] = true;
      }
      return failure(VerifyResult::Failure::RepeatedVertex, i,
                     label + " repeats vertex " + std::to_string(r.vertex));
    }
  }
  const auto usage = vertex_usage(g.vertex_count(), sol.paths);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (usage[v] > congestion) {
      r.vertex = v;
      return failure(VerifyResult::Failure::Congestion, -1,
                     "vertex " + std::to_string(v) + " lies on " + std::to_string(usage[v]) +
                         " paths (limit " + std::to_string(congestion) + ")");
    }
  }
  return r;
}

Path walk_to_path(const Path& walk) {
  Path path;
  std::map<Vertex, std::size_t> position;
  for (Vertex v : walk) {
    auto it = position.find(v);
    if (it != position.end()) {
      for (std::size_t j = it->second + 1; j < path.size(); ++j) position.erase(path[j]);
      path.resize(it->second + 1);
      continue;
    }
    position[v] = path.size();
    path.push_back(v);
  }
  return path;
}

// ---- doubling ---------------------------------------------------------------------

Vertex DoublingMap::original_of(Vertex v) const {
  if (v < original_count) return v;
  for (Vertex u = 0; u < original_count; ++u) {
    if (double_of[u] == v) return u;
  }
  fail(ErrorKind::InvalidInput, "vertex " + std::to_string(v) + " is not a double");
}

Digraph double_vertex(const Digraph& g, Vertex v) {
  require(g.valid(v), ErrorKind::InvalidInput, "double_vertex: vertex out of range");
  const Vertex d = g.vertex_count();
  auto edges = g.edges();
  for (Vertex u : g.in(v)) edges.emplace_back(u, d);
  for (Vertex u : g.out(v)) edges.emplace_back(d, u);
  edges.emplace_back(v, d);
  edges.emplace_back(d, v);
  return Digraph(g.vertex_count() + 1, edges);
}

DoubledInstance reduce_half_to_integral(const LinkageInstance& inst) {
  const Digraph& g = inst.graph;
  const int n = g.vertex_count();
  // Doubling every vertex: all copies of u link to all copies of w for (u,w) in E,
  // plus v <-> v'.
  std::vector<Edge> edges;
  edges.reserve(4 * g.edge_count() + 2 * static_cast<std::size_t>(n));
  for (const auto& [u, w] : g.edges()) {
    edges.emplace_back(u, w);
    edges.emplace_back(u + n, w);
    edges.emplace_back(u, w + n);
    edges.emplace_back(u + n, w + n);
  }
  for (Vertex v = 0; v < n; ++v) {
    edges.emplace_back(v, v + n);
    edges.emplace_back(v + n, v);
  }
  DoubledInstance out;
  out.map.original_count = n;
  out.map.double_of.resize(static_cast<std::size_t>(n));
  std::iota(out.map.double_of.begin(), out.map.double_of.end(), n);
  std::vector<Vertex> sinks;
  for (Vertex t : inst.sinks) sinks.push_back(t + n);
  out.instance = LinkageInstance(Digraph(2 * n, edges), inst.sources, std::move(sinks));
  return out;
}

PathSystem lift_doubled_solution(const DoublingMap& map, const PathSystem& doubled) {
  PathSystem lifted;
  lifted.congestion_bound = 2;
  for (const auto& path : doubled.paths) {
    Path walk;
    for (Vertex v : path) {
      const Vertex o = map.original_of(v);
      if (walk.empty() || walk.back() != o) walk.push_back(o);
    }
    lifted.paths.push_back(walk_to_path(walk));
  }
  return lifted;
}

// ---- contraction ---------------------------------------------------------------

Contraction contract_set(const Digraph& g, const VertexSet& u) {
  require(!u.empty(), ErrorKind::InvalidInput, "contract_set: empty set");
  for (Vertex v : u) require(g.valid(v), ErrorKind::InvalidInput, "contract_set: vertex out of range");
  require(induces_strongly_connected(g, u), ErrorKind::PreconditionViolation,
          "contract_set: set does not induce a strongly connected subgraph");
  Contraction c;
  c.image.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  Vertex next = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!set_contains(u, v)) c.image[v] = next++;
  }
  c.merged = next;
  for (Vertex v : u) c.image[v] = c.merged;
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges()) {
    if (c.image[a] != c.image[b]) edges.emplace_back(c.image[a], c.image[b]);
  }
  c.graph = Digraph(next + 1, edges);
  return c;
}

}  // namespace ddpp
