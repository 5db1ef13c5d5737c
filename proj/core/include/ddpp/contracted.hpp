#pragma once

#include <vector>

#include "ddpp/bramble.hpp"
#include "ddpp/digraph.hpp"
#include "ddpp/weave.hpp"

namespace ddpp {

/// The graph G(B1; B): vertices lying in two bags of the reference family
/// B and in some bag of B1 are doubled, the copies are spread so the B1 bags
/// become disjoint, and each B1 bag is contracted to one clique node.
///
/// `reference` and `sub` are index lists into one bramble, so views built
/// for different sub-families agree on bag numbering. View ids: surviving
/// base vertices first in ascending order, then one node per `sub` bag.
///
/// Labels give a view-independent name to every view vertex: base vertex v
/// is labelled v, the node of bag b is labelled n + b.
class ContractedView {
 public:
  ContractedView(const Digraph& g, const Bramble& b, IndexSet reference, IndexSet sub);

  const Digraph& graph() const noexcept { return graph_; }
  const Digraph& base() const noexcept { return base_; }
  const Bramble& bramble() const noexcept { return bramble_; }
  const IndexSet& reference() const noexcept { return reference_; }
  const IndexSet& sub() const noexcept { return sub_; }

  int base_count() const noexcept { return static_cast<int>(base_of_.size()); }
  bool is_node(Vertex id) const { return id >= base_count(); }
  /// Base vertex behind an uncontracted id; -1 for clique nodes.
  Vertex base_vertex(Vertex id) const;
  /// Bramble index of a clique node; -1 for base ids.
  int bag_of(Vertex id) const;
  /// View id of the uncontracted copy of v, or -1.
  Vertex id_of_base(Vertex v) const { return id_of_base_[static_cast<std::size_t>(v)]; }
  /// View id of the node of bag b, or -1 when b is not in `sub`.
  Vertex id_of_bag(int b) const;
  /// Every view id standing for base vertex v (one or two).
  const std::vector<Vertex>& locations(Vertex v) const { return locations_[static_cast<std::size_t>(v)]; }
  /// Reference bags containing v (at most two).
  const std::vector<int>& bags_containing(Vertex v) const { return bags_of_[static_cast<std::size_t>(v)]; }
  /// The clique K_{B1}, as view ids.
  VertexSet clique() const;
  /// im(id) for a clique node.
  const VertexSet& image(Vertex id) const;
  /// Base vertices that were doubled.
  const VertexSet& doubled() const noexcept { return doubled_; }

  Vertex label(Vertex id) const;
  /// -1 when the label does not occur in this view.
  Vertex id_of_label(Vertex label) const;
  VertexSet labels(const VertexSet& ids) const;
  /// Labels missing from the view are dropped.
  VertexSet ids(const VertexSet& labels) const;

 private:
  Digraph base_;
  Bramble bramble_;
  IndexSet reference_;
  IndexSet sub_;
  Digraph graph_;
  std::vector<Vertex> base_of_;
  std::vector<Vertex> id_of_base_;
  std::vector<int> node_of_bag_;
  std::vector<std::vector<Vertex>> locations_;
  std::vector<std::vector<int>> bags_of_;
  VertexSet doubled_;
};

/// G(sub; all bags). Throws PreconditionViolation for depth > 2 or a sub
/// index outside the bramble.
ContractedView build_contracted(const Digraph& g, const Bramble& b, const IndexSet& sub);

}  // namespace ddpp
