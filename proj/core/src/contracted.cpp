#include "ddpp/contracted.hpp"

#include <algorithm>

#include "ddpp/error.hpp"

namespace ddpp {

namespace {

IndexSet sorted_unique(IndexSet items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

}  // namespace

ContractedView::ContractedView(const Digraph& g, const Bramble& b, IndexSet reference, IndexSet sub)
    : base_(g), bramble_(b), reference_(sorted_unique(std::move(reference))), sub_(sorted_unique(std::move(sub))) {
  const int n = g.vertex_count();
  for (int idx : reference_) {
    require(idx >= 0 && idx < b.size(), ErrorKind::PreconditionViolation, "bag index out of range");
  }
  require(std::includes(reference_.begin(), reference_.end(), sub_.begin(), sub_.end()),
          ErrorKind::PreconditionViolation, "sub-bramble must be contained in the reference bramble");

  bags_of_.assign(static_cast<std::size_t>(n), {});
  for (int idx : reference_) {
    for (Vertex v : b.bags[idx]) {
      require(g.valid(v), ErrorKind::InvalidInput, "bag vertex out of range");
      auto& list = bags_of_[v];
      if (std::find(list.begin(), list.end(), idx) == list.end()) list.push_back(idx);
      require(list.size() <= 2, ErrorKind::PreconditionViolation,
              "vertex " + std::to_string(v) + " lies in more than two bags");
    }
  }
  std::vector<bool> in_sub(b.bags.size(), false);
  for (int idx : sub_) in_sub[idx] = true;

  id_of_base_.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> sub_bags(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    for (int idx : bags_of_[v]) {
      if (in_sub[idx]) sub_bags[v].push_back(idx);
    }
    const bool two = bags_of_[v].size() == 2;
    if (two && !sub_bags[v].empty()) doubled_.push_back(v);
    // The uncontracted copy survives unless every copy went into a sub bag.
    if (sub_bags[v].empty() || (two && sub_bags[v].size() == 1)) {
      id_of_base_[v] = static_cast<Vertex>(base_of_.size());
      base_of_.push_back(v);
    }
  }
  node_of_bag_.assign(b.bags.size(), -1);
  for (std::size_t i = 0; i < sub_.size(); ++i) {
    node_of_bag_[sub_[i]] = static_cast<Vertex>(base_of_.size() + i);
  }

  locations_.assign(static_cast<std::size_t>(n), {});
  for (Vertex v = 0; v < n; ++v) {
    if (id_of_base_[v] >= 0) locations_[v].push_back(id_of_base_[v]);
    for (int idx : sub_bags[v]) locations_[v].push_back(node_of_bag_[idx]);
  }

  std::vector<Edge> edges;
  for (const auto& [x, u] : g.edges()) {
    for (Vertex a : locations_[x]) {
      for (Vertex c : locations_[u]) {
        if (a != c) edges.emplace_back(a, c);
      }
    }
  }
  for (Vertex v : doubled_) {
    const auto& loc = locations_[v];
    for (Vertex a : loc) {
      for (Vertex c : loc) {
        if (a != c) edges.emplace_back(a, c);
      }
    }
  }
  graph_ = Digraph(static_cast<int>(base_of_.size() + sub_.size()), edges);
}

Vertex ContractedView::base_vertex(Vertex id) const {
  require(graph_.valid(id), ErrorKind::InvalidInput, "view id out of range");
  return is_node(id) ? -1 : base_of_[id];
}

int ContractedView::bag_of(Vertex id) const {
  require(graph_.valid(id), ErrorKind::InvalidInput, "view id out of range");
  return is_node(id) ? sub_[static_cast<std::size_t>(id - base_count())] : -1;
}

Vertex ContractedView::id_of_bag(int b) const {
  if (b < 0 || b >= static_cast<int>(node_of_bag_.size())) return -1;
  return node_of_bag_[b];
}

VertexSet ContractedView::clique() const {
  VertexSet out;
  for (std::size_t i = 0; i < sub_.size(); ++i) out.push_back(static_cast<Vertex>(base_of_.size() + i));
  return out;
}

const VertexSet& ContractedView::image(Vertex id) const {
  const int idx = bag_of(id);
  require(idx >= 0, ErrorKind::InvalidInput, "im() is defined for clique nodes only");
  return bramble_.bags[idx];
}

Vertex ContractedView::label(Vertex id) const {
  return is_node(id) ? base_.vertex_count() + bag_of(id) : base_vertex(id);
}

Vertex ContractedView::id_of_label(Vertex label) const {
  const int n = base_.vertex_count();
  if (label < 0) return -1;
  if (label < n) return id_of_base_[label];
  return id_of_bag(label - n);
}

VertexSet ContractedView::labels(const VertexSet& ids) const {
  std::vector<Vertex> out;
  for (Vertex id : ids) out.push_back(label(id));
  return make_set(std::move(out));
}

VertexSet ContractedView::ids(const VertexSet& labels) const {
  std::vector<Vertex> out;
  for (Vertex l : labels) {
    if (const Vertex id = id_of_label(l); id >= 0) out.push_back(id);
  }
  return make_set(std::move(out));
}

ContractedView build_contracted(const Digraph& g, const Bramble& b, const IndexSet& sub) {
  IndexSet all(static_cast<std::size_t>(b.size()));
  for (int i = 0; i < b.size(); ++i) all[i] = i;
  return ContractedView(g, b, std::move(all), sub);
}

}  // namespace ddpp
