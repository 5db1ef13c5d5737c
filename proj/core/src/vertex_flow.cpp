#include "vertex_flow.hpp"

#include <algorithm>
#include <deque>

#include "ddpp/error.hpp"

namespace ddpp::detail {

VertexSplitFlow::VertexSplitFlow(const Digraph& g, const VertexSet& sources, const VertexSet& sinks,
                                 const Options& options)
    : graph_(g) {
  const int n = g.vertex_count();
  blocked_ = options.blocked;
  blocked_.resize(static_cast<std::size_t>(n), false);
  std::vector<bool> uncuttable = options.uncuttable;
  uncuttable.resize(static_cast<std::size_t>(n), false);

  source_ = 2 * n;
  sink_ = 2 * n + 1;
  adj_.resize(static_cast<std::size_t>(2 * n + 2));

  for (Vertex v = 0; v < n; ++v) {
    if (blocked_[v]) continue;
    add_arc(in_node(v), out_node(v), uncuttable[v] ? kUnbounded : 1);
    for (Vertex w : g.out(v)) {
      if (!blocked_[w]) add_arc(out_node(v), in_node(w), kUnbounded);
    }
  }
  for (Vertex s : sources) {
    require(g.valid(s), ErrorKind::InvalidInput, "flow source out of range");
    if (!blocked_[s]) add_arc(source_, in_node(s), kUnbounded);
  }
  for (Vertex t : sinks) {
    require(g.valid(t), ErrorKind::InvalidInput, "flow sink out of range");
    if (!blocked_[t]) add_arc(out_node(t), sink_, kUnbounded);
  }
  for (auto& list : adj_) {
    std::stable_sort(list.begin(), list.end(),
                     [this](int a, int b) { return arcs_[a].to < arcs_[b].to; });
  }
}

void VertexSplitFlow::add_arc(int from, int to, int cap) {
  adj_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, cap, 0});
  adj_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0, 0});
}

int VertexSplitFlow::run(int limit) {
  std::vector<int> parent_arc(adj_.size());
  while (value_ < limit) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    std::deque<int> queue{source_};
    std::vector<bool> seen(adj_.size(), false);
    seen[source_] = true;
    while (!queue.empty() && !seen[sink_]) {
      const int node = queue.front();
      queue.pop_front();
      for (int a : adj_[node]) {
        const Arc& arc = arcs_[a];
        if (seen[arc.to] || arc.cap - arc.flow <= 0) continue;
        seen[arc.to] = true;
        parent_arc[arc.to] = a;
        queue.push_back(arc.to);
      }
    }
    if (!seen[sink_]) break;

    int bottleneck = kUnbounded;
    for (int node = sink_; node != source_;) {
      const int a = parent_arc[node];
      bottleneck = std::min(bottleneck, arcs_[a].cap - arcs_[a].flow);
      node = arcs_[a ^ 1].to;
    }
    if (bottleneck >= kUnbounded) {
      value_ = kUnbounded;
      return value_;
    }
    bottleneck = std::min(bottleneck, limit - value_);
    for (int node = sink_; node != source_;) {
      const int a = parent_arc[node];
      arcs_[a].flow += bottleneck;
      arcs_[a ^ 1].flow -= bottleneck;
      node = arcs_[a ^ 1].to;
    }
    value_ += bottleneck;
  }
  return value_;
}

std::vector<Path> VertexSplitFlow::paths() const {
  std::vector<int> remaining(arcs_.size());
  for (std::size_t a = 0; a < arcs_.size(); ++a) remaining[a] = std::max(0, arcs_[a].flow);

  std::vector<Path> result;
  for (int first : adj_[source_]) {
    while ((first & 1) == 0 && remaining[first] > 0) {
      Path path;
      int node = source_;
      int arc = first;
      while (true) {
        --remaining[arc];
        node = arcs_[arc].to;
        if (node == sink_) break;
        if ((node & 1) == 0) path.push_back(node / 2);
        arc = -1;
        for (int a : adj_[node]) {
          if ((a & 1) == 0 && remaining[a] > 0) {
            arc = a;
            break;
          }
        }
        if (arc < 0) fail(ErrorKind::InvariantViolation, "flow decomposition lost conservation");
      }
      result.push_back(std::move(path));
    }
  }
  return result;
}

std::vector<bool> VertexSplitFlow::residual_reachable() const {
  std::vector<bool> seen(adj_.size(), false);
  std::deque<int> queue{source_};
  seen[source_] = true;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    for (int a : adj_[node]) {
      const Arc& arc = arcs_[a];
      if (!seen[arc.to] && arc.cap - arc.flow > 0) {
        seen[arc.to] = true;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

Separation VertexSplitFlow::min_cut() const {
  const auto seen = residual_reachable();
  Separation sep;
  for (Vertex v = 0; v < graph_.vertex_count(); ++v) {
    if (blocked_[v]) continue;
    if (seen[in_node(v)]) sep.side_a.push_back(v);
    if (!seen[out_node(v)]) sep.side_b.push_back(v);
  }
  return sep;
}

int local_vertex_connectivity(const Digraph& g, Vertex a, Vertex b, int limit) {
  VertexSplitFlow::Options options;
  options.uncuttable.assign(static_cast<std::size_t>(g.vertex_count()), false);
  options.uncuttable[a] = true;
  options.uncuttable[b] = true;
  VertexSplitFlow flow(g, {a}, {b}, options);
  return flow.run(limit);
}

}  // namespace ddpp::detail
